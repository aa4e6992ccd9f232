#include "kvar/metric.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "kvar/spectral.hpp"

namespace kvar {

namespace {

void decode(std::size_t c, int rank, int N, int* idx) {
  for (int s = rank - 1; s >= 0; --s) {
    idx[s] = static_cast<int>(c % N);
    c /= N;
  }
}

std::size_t encode(const int* idx, int rank, int N) {
  std::size_t c = 0;
  for (int s = 0; s < rank; ++s) c = c * N + static_cast<std::size_t>(idx[s]);
  return c;
}

constexpr int kMaxRank = 6;

}  // namespace

namespace detail {

// assemble out(i0..ip) = sum_j sign_j * D(i_j; i0..skip j..ip) from a tensor D
// whose first slot is the derivative slot; sign_j is (-1)^j when alternating
TensorField spread_first_slot(const TensorField& D, bool alternate, int spreadCount) {
  const int N = D.grid().dim();
  const std::size_t P = D.grid().points();
  const int rank = D.rank();
  const int nSpread = spreadCount < 0 ? rank : spreadCount;
  TensorField out(D.grid(), D.slots());
  int idx[kMaxRank];
  int src[kMaxRank];
  for (std::size_t c = 0; c < out.comps(); ++c) {
    decode(c, rank, N, idx);
    double* o = out.comp(c);
    for (int j = 0; j < nSpread; ++j) {
      src[0] = idx[j];
      int w = 1;
      for (int s = 0; s < nSpread; ++s)
        if (s != j) src[w++] = idx[s];
      for (int s = nSpread; s < rank; ++s) src[w++] = idx[s];
      const double* d = D.comp(encode(src, rank, N));
      const double sign = (alternate && (j % 2 == 1)) ? -1.0 : 1.0;
      for (std::size_t p = 0; p < P; ++p) o[p] += sign * d[p];
    }
  }
  return out;
}

}  // namespace detail

double spd_min_pivot(const TensorField& g) {
  const int N = g.grid().dim();
  const std::size_t P = g.grid().points();
  double A[16], L[16], d[4];
  double minPivot = std::numeric_limits<double>::infinity();
  for (std::size_t p = 0; p < P; ++p) {
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) A[i * N + j] = g.comp(static_cast<std::size_t>(i) * N + j)[p];
    for (int j = 0; j < N; ++j) {
      double dj = A[j * N + j];
      for (int k = 0; k < j; ++k) dj -= L[j * N + k] * L[j * N + k] * d[k];
      minPivot = std::min(minPivot, dj);
      if (!(dj > 0.0)) return minPivot;
      d[j] = dj;
      for (int i = j + 1; i < N; ++i) {
        double v = A[i * N + j];
        for (int k = 0; k < j; ++k) v -= L[i * N + k] * L[j * N + k] * d[k];
        L[i * N + j] = v / dj;
      }
    }
  }
  return minPivot;
}

MetricField::MetricField(TensorField g) : g_(std::move(g)) {
  if (g_.rank() != 2 || g_.slot(0) != Slot::Cov || g_.slot(1) != Slot::Cov)
    throw std::invalid_argument("MetricField: expected a covariant 2-tensor");
  if (!g_.finite()) throw std::runtime_error("MetricField: non-finite metric components");
  minPivot_ = spd_min_pivot(g_);
  if (!(minPivot_ > 0.0)) throw std::runtime_error("MetricField: metric is not positive definite");

  gInv_ = pointwise_inverse2(g_);
  sqrtDet_ = TensorField::scalar(g_.grid());
  {
    TensorField det = det2(g_);
    const std::size_t P = g_.grid().points();
    for (std::size_t p = 0; p < P; ++p) sqrtDet_.comp(0)[p] = std::sqrt(det.comp(0)[p]);
  }

  const int N = g_.grid().dim();
  const std::size_t P = g_.grid().points();
  TensorField dg = gradient_all_axes(g_);  // (e, a, b) = partial_e g_ab
  christoffel_ = TensorField(g_.grid(), {Slot::Cov, Slot::Cov, Slot::Con});
  auto dgc = [&](int e, int a, int b) { return dg.comp((static_cast<std::size_t>(e) * N + a) * N + b); };
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      for (int c = 0; c < N; ++c) {
        double* out = christoffel_.comp((static_cast<std::size_t>(a) * N + b) * N + c);
        for (int dd = 0; dd < N; ++dd) {
          const double* gi = gInv_.comp(static_cast<std::size_t>(c) * N + dd);
          const double* t1 = dgc(a, dd, b);
          const double* t2 = dgc(b, dd, a);
          const double* t3 = dgc(dd, a, b);
          for (std::size_t p = 0; p < P; ++p)
            out[p] += 0.5 * gi[p] * (t1[p] + t2[p] - t3[p]);
        }
      }
}

VolumeDensityField::VolumeDensityField(TensorField rho) : rho_(std::move(rho)) {
  if (rho_.rank() != 0) throw std::invalid_argument("VolumeDensityField: expected a scalar field");
  if (!rho_.finite()) throw std::runtime_error("VolumeDensityField: non-finite density");
  const std::size_t P = rho_.grid().points();
  for (std::size_t p = 0; p < P; ++p)
    if (!(rho_.comp(0)[p] > 0.0)) throw std::runtime_error("VolumeDensityField: density must be positive");
}

VolumeDensityField VolumeDensityField::lebesgue(const TorusGrid& grid) {
  TensorField one = TensorField::scalar(grid);
  const std::size_t P = grid.points();
  for (std::size_t p = 0; p < P; ++p) one.comp(0)[p] = 1.0;
  return VolumeDensityField(std::move(one));
}

TensorField covariant_derivative(const TensorField& T, const MetricField& m) {
  if (!T.grid().same(m.grid())) throw std::invalid_argument("covariant_derivative: grid mismatch");
  const int N = T.grid().dim();
  const std::size_t P = T.grid().points();
  const int rank = T.rank();
  if (rank + 1 > kMaxRank) throw std::invalid_argument("covariant_derivative: rank too high");
  TensorField out = gradient_all_axes(T);
  const TensorField& Gam = m.christoffel();
  auto gam = [&](int up, int lo1, int lo2) {
    return Gam.comp((static_cast<std::size_t>(lo1) * N + lo2) * N + up);
  };
  int idx[kMaxRank];
  int src[kMaxRank];
  for (std::size_t c = 0; c < out.comps(); ++c) {
    decode(c, rank + 1, N, idx);  // idx[0] = derivative index e
    double* o = out.comp(c);
    for (int s = 0; s < rank; ++s) {
      for (int t = 0; t < rank; ++t) src[t] = idx[t + 1];
      const int held = idx[s + 1];
      for (int dd = 0; dd < N; ++dd) {
        src[s] = dd;
        const double* tv = T.comp(encode(src, rank, N));
        if (T.slot(s) == Slot::Cov) {
          const double* gv = gam(dd, idx[0], held);
          for (std::size_t p = 0; p < P; ++p) o[p] -= gv[p] * tv[p];
        } else {
          const double* gv = gam(held, idx[0], dd);
          for (std::size_t p = 0; p < P; ++p) o[p] += gv[p] * tv[p];
        }
      }
    }
  }
  return out;
}

TensorField curvature(const MetricField& m) {
  const int N = m.grid().dim();
  const std::size_t P = m.grid().points();
  const TensorField& Gam = m.christoffel();
  TensorField dGam = gradient_all_axes(Gam);  // (e, a, b, c) = partial_e Gamma^c_ab
  TensorField R(m.grid(), {Slot::Cov, Slot::Cov, Slot::Cov, Slot::Con});
  auto gam = [&](int lo1, int lo2, int up) {
    return Gam.comp((static_cast<std::size_t>(lo1) * N + lo2) * N + up);
  };
  auto dgam = [&](int e, int lo1, int lo2, int up) {
    return dGam.comp(((static_cast<std::size_t>(e) * N + lo1) * N + lo2) * N + up);
  };
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      for (int c = 0; c < N; ++c)
        for (int dd = 0; dd < N; ++dd) {
          double* o = R.comp(((static_cast<std::size_t>(a) * N + b) * N + c) * N + dd);
          const double* t1 = dgam(a, b, c, dd);
          const double* t2 = dgam(b, a, c, dd);
          for (std::size_t p = 0; p < P; ++p) o[p] = t1[p] - t2[p];
          for (int e = 0; e < N; ++e) {
            const double* ae = gam(a, e, dd);
            const double* bc = gam(b, c, e);
            const double* be = gam(b, e, dd);
            const double* ac = gam(a, c, e);
            for (std::size_t p = 0; p < P; ++p) o[p] += ae[p] * bc[p] - be[p] * ac[p];
          }
        }
  return R;
}

TensorField ricci(const MetricField& m) { return self_contract(curvature(m), 0, 3); }

TensorField scalar_curvature(const MetricField& m) {
  return trace_with_metric(ricci(m), 0, 1, m.gInv());
}

TensorField gradient(const TensorField& f, const MetricField& m) {
  return sharp1(gradient_all_axes(f), m);
}

TensorField hessian(const TensorField& f, const MetricField& m) {
  if (f.rank() != 0) throw std::invalid_argument("hessian: expected a scalar field");
  return covariant_derivative(gradient_all_axes(f), m);
}

TensorField rough_laplacian(const TensorField& T, const MetricField& m) {
  TensorField DDT = covariant_derivative(covariant_derivative(T, m), m);
  return scale(trace_with_metric(DDT, 0, 1, m.gInv()), -1.0);
}

TensorField omega_laplacian(const TensorField& T, const MetricField& m, const TensorField& gradF) {
  TensorField DT = covariant_derivative(T, m);
  TensorField out = scale(trace_with_metric(covariant_derivative(DT, m), 0, 1, m.gInv()), -1.0);
  return add(out, contract(gradF, 0, DT, 0));
}

TensorField divergence(const TensorField& T, const MetricField& m) {
  if (T.rank() < 1 || T.slot(0) != Slot::Cov)
    throw std::invalid_argument("divergence: first slot must be covariant");
  return trace_with_metric(covariant_derivative(T, m), 0, 1, m.gInv());
}

TensorField omega_divergence(const TensorField& T, const MetricField& m, const TensorField& gradF) {
  return sub(divergence(T, m), contract(gradF, 0, T, 0));
}

TensorField omega_divergence(const TensorField& T, const MetricField& m,
                             const VolumeDensityField& vol) {
  return omega_divergence(T, m, gradient(log_volume_ratio(m, vol), m));
}

TensorField symmetrized_nabla(const TensorField& alpha, const MetricField& m) {
  for (int s = 0; s < alpha.rank(); ++s)
    if (alpha.slot(s) != Slot::Cov)
      throw std::invalid_argument("symmetrized_nabla: expected a covariant tensor");
  return detail::spread_first_slot(covariant_derivative(alpha, m), false);
}

TensorField d_operator(const TensorField& u, const MetricField& m) {
  if (u.rank() != 2 || u.slot(0) != Slot::Cov || u.slot(1) != Slot::Cov)
    throw std::invalid_argument("d_operator: expected a covariant 2-tensor");
  TensorField Du = covariant_derivative(u, m);
  return sub(detail::spread_first_slot(Du, false), scale(Du, 2.0));
}

TensorField sharp(const TensorField& form2, const MetricField& m) {
  if (form2.rank() != 2 || form2.slot(0) != Slot::Cov || form2.slot(1) != Slot::Cov)
    throw std::invalid_argument("sharp: expected a covariant 2-tensor");
  const int N = m.grid().dim();
  const std::size_t P = m.grid().points();
  TensorField E = TensorField::endo(m.grid());
  for (int in = 0; in < N; ++in)
    for (int o = 0; o < N; ++o) {
      double* out = E.comp(static_cast<std::size_t>(in) * N + o);
      for (int k = 0; k < N; ++k) {
        const double* gi = m.gInv().comp(static_cast<std::size_t>(o) * N + k);
        const double* v = form2.comp(static_cast<std::size_t>(k) * N + in);
        for (std::size_t p = 0; p < P; ++p) out[p] += gi[p] * v[p];
      }
    }
  return E;
}

TensorField flat(const TensorField& endo, const MetricField& m) {
  return form_times_endo(m.g(), endo);
}

TensorField sharp1(const TensorField& oneForm, const MetricField& m) {
  if (oneForm.rank() != 1 || oneForm.slot(0) != Slot::Cov)
    throw std::invalid_argument("sharp1: expected a 1-form");
  return contract(m.gInv(), 0, oneForm, 0);
}

TensorField flat1(const TensorField& vec, const MetricField& m) {
  if (vec.rank() != 1 || vec.slot(0) != Slot::Con)
    throw std::invalid_argument("flat1: expected a vector field");
  return contract(m.g(), 0, vec, 0);
}

TensorField transpose_g(const TensorField& endo, const MetricField& m) {
  return sharp(transpose_slots(flat(endo, m), 0, 1), m);
}

TensorField move_slot(const TensorField& T, int from, int to) {
  const int rank = T.rank();
  if (from < 0 || from >= rank || to < 0 || to >= rank)
    throw std::invalid_argument("move_slot: slot out of range");
  if (from == to) return T;
  const int N = T.grid().dim();
  const std::size_t P = T.grid().points();
  std::vector<Slot> slots;
  for (int s = 0; s < rank; ++s)
    if (s != from) slots.push_back(T.slot(s));
  slots.insert(slots.begin() + to, T.slot(from));
  TensorField out(T.grid(), slots);
  int idx[kMaxRank];
  int src[kMaxRank];
  for (std::size_t c = 0; c < out.comps(); ++c) {
    decode(c, rank, N, idx);
    // undo the permutation: out slot `to` came from T slot `from`
    int w = 0;
    for (int s = 0; s < rank; ++s) {
      if (s == to) continue;
      int orig = (w < from) ? w : w + 1;
      src[orig] = idx[s];
      ++w;
    }
    src[from] = idx[to];
    const double* in = T.comp(encode(src, rank, N));
    double* o = out.comp(c);
    for (std::size_t p = 0; p < P; ++p) o[p] = in[p];
  }
  return out;
}

TensorField inner_g(const TensorField& S, const TensorField& T, const MetricField& m) {
  if (S.rank() != T.rank()) throw std::invalid_argument("inner_g: rank mismatch");
  for (int s = 0; s < S.rank(); ++s)
    if (S.slot(s) != T.slot(s)) throw std::invalid_argument("inner_g: slot mismatch");
  TensorField Sd = S;
  for (int s = 0; s < S.rank(); ++s) {
    const TensorField& pair = (S.slot(s) == Slot::Cov) ? m.gInv() : m.g();
    Sd = move_slot(contract(pair, 1, Sd, s), 0, s);
  }
  const std::size_t P = S.grid().points();
  TensorField out = TensorField::scalar(S.grid());
  for (std::size_t c = 0; c < S.comps(); ++c) {
    const double* a = Sd.comp(c);
    const double* b = T.comp(c);
    double* o = out.comp(0);
    for (std::size_t p = 0; p < P; ++p) o[p] += a[p] * b[p];
  }
  return out;
}

double l2_omega_inner(const TensorField& S, const TensorField& T, const MetricField& m,
                      const VolumeDensityField& vol) {
  TensorField dot = inner_g(S, T, m);
  const std::size_t P = S.grid().points();
  double acc = 0.0;
  for (std::size_t p = 0; p < P; ++p) acc += dot.comp(0)[p] * vol.rho().comp(0)[p];
  return acc * S.grid().cell_volume();
}

TensorField log_volume_ratio(const MetricField& m, const VolumeDensityField& vol) {
  const std::size_t P = m.grid().points();
  TensorField out = TensorField::scalar(m.grid());
  const double* sd = m.sqrt_det().comp(0);
  const double* rho = vol.rho().comp(0);
  for (std::size_t p = 0; p < P; ++p) out.comp(0)[p] = std::log(sd[p]) - std::log(rho[p]);
  return out;
}

TensorField exterior_derivative(const TensorField& form) {
  for (int s = 0; s < form.rank(); ++s)
    if (form.slot(s) != Slot::Cov)
      throw std::invalid_argument("exterior_derivative: expected a covariant form");
  if (form.rank() + 1 > kMaxRank) throw std::invalid_argument("exterior_derivative: rank too high");
  return detail::spread_first_slot(gradient_all_axes(form), true);
}

}  // namespace kvar
