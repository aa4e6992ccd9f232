#include <cmath>
#include <random>

#include "doctest.h"
#include "kvar/complex_ops.hpp"
#include "kvar/metric.hpp"
#include "kvar/spectral.hpp"

namespace {

const double kPi = 3.14159265358979323846;

kvar::TensorField flat_metric(const kvar::TorusGrid& grid) {
  kvar::TensorField g(grid, {kvar::Slot::Cov, kvar::Slot::Cov});
  const int N = grid.dim();
  for (int i = 0; i < N; ++i) {
    double* d = g.comp(static_cast<std::size_t>(i) * N + i);
    for (std::size_t p = 0; p < grid.points(); ++p) d[p] = 1.0;
  }
  return g;
}

kvar::TensorField sample_potential_metric(const kvar::TorusGrid& grid, std::uint64_t seed,
                                          double amplitude) {
  // keep the base band at 1 mode per axis so nonlinear harmonics of the
  // curved state decay well before Nyquist even at resolution 16
  std::mt19937_64 rng(seed);
  kvar::FourierSpec spec = kvar::random_spec(rng, grid, 3, 1, amplitude);
  kvar::TensorField phi = kvar::synthesize_scalar(grid, kvar::normalize_potential(spec));
  return kvar::potential_metric(phi);
}

kvar::VolumeDensityField sample_density(const kvar::TorusGrid& grid, std::uint64_t seed,
                                        double amplitude) {
  std::mt19937_64 rng(seed);
  kvar::TensorField h = kvar::random_scalar(rng, grid, 3, 2, amplitude);
  kvar::TensorField rho = kvar::TensorField::scalar(grid);
  for (std::size_t p = 0; p < grid.points(); ++p) rho.comp(0)[p] = std::exp(-h.comp(0)[p]);
  return kvar::VolumeDensityField(std::move(rho));
}

}  // namespace

TEST_CASE("flat metric has zero connection, curvature and plain covariant derivative") {
  kvar::TorusGrid grid(1, 32);
  kvar::MetricField m(flat_metric(grid));
  CHECK(kvar::linf(m.christoffel()) == 0.0);
  CHECK(kvar::linf(kvar::ricci(m)) < 1e-13);

  std::mt19937_64 rng(11);
  kvar::TensorField v = kvar::random_symmetric2(rng, grid, 2, 2, 1.0);
  kvar::TensorField plain = kvar::gradient_all_axes(v);
  kvar::TensorField covar = kvar::covariant_derivative(v, m);
  CHECK(kvar::rel_residual(covar, plain) < 1e-13);
}

TEST_CASE("flat rough Laplacian has positive spectrum") {
  kvar::TorusGrid grid(1, 32);
  kvar::MetricField m(flat_metric(grid));
  kvar::FourierSpec spec;
  spec.modes.push_back({{1, 0}, 1.0, 0.0});
  kvar::TensorField f = kvar::synthesize_scalar(grid, spec);
  kvar::TensorField lap = kvar::rough_laplacian(f, m);
  CHECK(kvar::rel_residual(lap, kvar::scale(f, 4.0 * kPi * kPi)) < 1e-10);
}

TEST_CASE("potential metric is parallel and its complex structure is parallel") {
  kvar::TorusGrid grid(1, 64);
  kvar::MetricField m(sample_potential_metric(grid, 21, 0.1));
  CHECK(kvar::linf(kvar::covariant_derivative(m.g(), m)) < 1e-9);
  CHECK(kvar::linf(kvar::d_operator(m.g(), m)) < 1e-9);
  kvar::TensorField J = kvar::standard_complex_structure(grid);
  CHECK(kvar::linf(kvar::covariant_derivative(J, m)) < 1e-9);
}

TEST_CASE("hessian is symmetric and traces to the negative Laplacian") {
  kvar::TorusGrid grid(1, 64);
  kvar::MetricField m(sample_potential_metric(grid, 22, 0.1));
  std::mt19937_64 rng(23);
  kvar::TensorField u = kvar::random_scalar(rng, grid, 3, 3, 1.0);
  kvar::TensorField H = kvar::hessian(u, m);
  CHECK(kvar::rel_gap(H, kvar::transpose_slots(H, 0, 1)) < 1e-10);
  kvar::TensorField tr = kvar::trace_with_metric(H, 0, 1, m.gInv());
  CHECK(kvar::rel_gap(tr, kvar::scale(kvar::rough_laplacian(u, m), -1.0)) < 1e-12);
}

TEST_CASE("weighted divergence agrees with the conjugated route") {
  kvar::TorusGrid grid(1, 64);
  kvar::MetricField m(sample_potential_metric(grid, 24, 0.1));
  kvar::VolumeDensityField vol = sample_density(grid, 25, 0.3);
  kvar::TensorField f = kvar::log_volume_ratio(m, vol);
  std::mt19937_64 rng(26);
  kvar::TensorField alpha = kvar::gradient_all_axes(kvar::random_scalar(rng, grid, 3, 3, 1.0));

  kvar::TensorField direct = kvar::omega_divergence(alpha, m, vol);

  kvar::TensorField damp = kvar::TensorField::scalar(grid);
  kvar::TensorField amp = kvar::TensorField::scalar(grid);
  for (std::size_t p = 0; p < grid.points(); ++p) {
    damp.comp(0)[p] = std::exp(-f.comp(0)[p]);
    amp.comp(0)[p] = std::exp(f.comp(0)[p]);
  }
  kvar::TensorField conj =
      kvar::mul_scalar_field(kvar::divergence(kvar::mul_scalar_field(alpha, damp), m), amp);
  CHECK(kvar::rel_gap(direct, conj) < 1e-9);
}

TEST_CASE("covariant derivative is adjoint to the weighted divergence") {
  kvar::TorusGrid grid(1, 32);
  kvar::MetricField m(sample_potential_metric(grid, 27, 0.1));
  kvar::VolumeDensityField vol = sample_density(grid, 28, 0.3);
  kvar::TensorField gradF = kvar::gradient(kvar::log_volume_ratio(m, vol), m);

  std::mt19937_64 rng(29);
  kvar::TensorField T = kvar::random_symmetric2(rng, grid, 2, 2, 1.0);
  kvar::TensorField beta = kvar::gradient_all_axes(kvar::random_scalar(rng, grid, 2, 2, 1.0));
  kvar::TensorField S = kvar::outer_product(beta, kvar::random_symmetric2(rng, grid, 2, 2, 1.0));

  double lhs = kvar::l2_omega_inner(kvar::covariant_derivative(T, m), S, m, vol);
  double rhs = kvar::l2_omega_inner(T, kvar::scale(kvar::omega_divergence(S, m, gradF), -1.0), m, vol);
  CHECK(std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)) < 1e-8);

  kvar::TensorField T2 = kvar::random_symmetric2(rng, grid, 2, 2, 1.0);
  double dlhs = kvar::l2_omega_inner(kvar::omega_laplacian(T, m, gradF), T2, m, vol);
  double drhs = kvar::l2_omega_inner(kvar::covariant_derivative(T, m),
                                     kvar::covariant_derivative(T2, m), m, vol);
  CHECK(std::abs(dlhs - drhs) / std::max(1.0, std::abs(dlhs)) < 1e-8);
}

TEST_CASE("contracted Bianchi identity") {
  kvar::TorusGrid grid(1, 64);
  kvar::MetricField m(sample_potential_metric(grid, 31, 0.12));
  kvar::TensorField divRic = kvar::divergence(kvar::ricci(m), m);
  kvar::TensorField dScal = kvar::gradient_all_axes(kvar::scalar_curvature(m));
  CHECK(kvar::rel_gap(divRic, kvar::scale(dScal, 0.5)) < 1e-7);
}

TEST_CASE("Ricci tensor matches the determinant oracle on potential metrics") {
  auto run = [](int n, int res, std::uint64_t seed) {
    kvar::TorusGrid grid(n, res);
    kvar::MetricField m(sample_potential_metric(grid, seed, 0.1));
    kvar::TensorField J = kvar::standard_complex_structure(grid);

    kvar::TensorField u = kvar::TensorField::scalar(grid);
    kvar::TensorField det = kvar::det2(m.g());
    for (std::size_t p = 0; p < grid.points(); ++p)
      u.comp(0)[p] = 0.5 * std::log(det.comp(0)[p]);
    kvar::TensorField hess0 = kvar::gradient_all_axes(kvar::gradient_all_axes(u));
    kvar::TensorField oracle = kvar::scale(kvar::j_invariant_part(hess0, J), -1.0);

    return kvar::rel_residual(kvar::ricci(m), oracle);
  };
  CHECK(run(1, 64, 41) < 1e-7);
  CHECK(run(2, 16, 42) < 1e-7);
}

TEST_CASE("musical isomorphisms round trip and the metric transpose flips J") {
  kvar::TorusGrid grid(1, 32);
  kvar::MetricField m(sample_potential_metric(grid, 51, 0.1));
  std::mt19937_64 rng(52);

  kvar::TensorField v = kvar::random_symmetric2(rng, grid, 2, 2, 1.0);
  CHECK(kvar::rel_gap(kvar::flat(kvar::sharp(v, m), m), v) < 1e-12);

  kvar::TensorField xi = kvar::random_vector(rng, grid, 2, 2, 1.0);
  CHECK(kvar::rel_gap(kvar::sharp1(kvar::flat1(xi, m), m), xi) < 1e-12);

  kvar::TensorField J = kvar::standard_complex_structure(grid);
  CHECK(kvar::rel_gap(kvar::transpose_g(J, m), kvar::scale(J, -1.0)) < 1e-12);
}

TEST_CASE("slot moves invert and the metric pairs to the dimension") {
  kvar::TorusGrid grid(2, 8);
  kvar::MetricField m(sample_potential_metric(grid, 61, 0.1));
  std::mt19937_64 rng(62);
  kvar::TensorField beta = kvar::gradient_all_axes(kvar::random_scalar(rng, grid, 2, 1, 1.0));
  kvar::TensorField S = kvar::outer_product(beta, kvar::random_symmetric2(rng, grid, 2, 1, 1.0));
  CHECK(kvar::rel_gap(kvar::move_slot(kvar::move_slot(S, 0, 2), 2, 0), S) == 0.0);

  kvar::TensorField pairing = kvar::inner_g(m.g(), m.g(), m);
  double worst = 0.0;
  for (std::size_t p = 0; p < grid.points(); ++p)
    worst = std::max(worst, std::abs(pairing.comp(0)[p] - grid.dim()));
  CHECK(worst < 1e-11);
}

TEST_CASE("exterior derivative squares to zero and kills gradients") {
  kvar::TorusGrid grid(2, 16);
  std::mt19937_64 rng(71);
  kvar::TensorField du = kvar::gradient_all_axes(kvar::random_scalar(rng, grid, 3, 2, 1.0));
  CHECK(kvar::linf(kvar::exterior_derivative(du)) < 1e-11);

  kvar::TensorField beta(grid, {kvar::Slot::Cov});
  {
    kvar::TensorField b0 = kvar::random_scalar(rng, grid, 3, 2, 1.0);
    kvar::TensorField b1 = kvar::random_scalar(rng, grid, 3, 2, 1.0);
    for (std::size_t p = 0; p < grid.points(); ++p) {
      beta.comp(0)[p] = b0.comp(0)[p];
      beta.comp(1)[p] = b1.comp(0)[p];
    }
  }
  kvar::TensorField dbeta = kvar::exterior_derivative(beta);
  CHECK(kvar::linf(kvar::exterior_derivative(dbeta)) < 1e-10);
}

TEST_CASE("indefinite metrics are rejected") {
  kvar::TorusGrid grid(1, 32);
  kvar::FourierSpec spec;
  spec.modes.push_back({{1, 0}, 2.0, 0.0});
  kvar::TensorField s = kvar::synthesize_scalar(grid, spec);
  for (std::size_t p = 0; p < grid.points(); ++p) s.comp(0)[p] += 1.0;
  kvar::TensorField g = kvar::mul_scalar_field(flat_metric(grid), s);
  CHECK(kvar::spd_min_pivot(g) <= 0.0);
  CHECK_THROWS_AS([&] { kvar::MetricField reject(g); }(), std::runtime_error);
}
