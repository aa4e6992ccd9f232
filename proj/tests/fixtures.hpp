#pragma once

// Shared state builders for the test binaries: flat and curved-potential
// metrics plus background densities, all band-limited so nonlinear harmonics
// decay well before Nyquist even at resolution 16.

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>

#include "kvar/complex_ops.hpp"
#include "kvar/metric.hpp"
#include "kvar/spectral.hpp"

namespace fix {

inline kvar::TensorField flat_metric(const kvar::TorusGrid& grid) {
  kvar::TensorField g(grid, {kvar::Slot::Cov, kvar::Slot::Cov});
  const int N = grid.dim();
  for (int i = 0; i < N; ++i) {
    double* d = g.comp(static_cast<std::size_t>(i) * N + i);
    for (std::size_t p = 0; p < grid.points(); ++p) d[p] = 1.0;
  }
  return g;
}

inline kvar::TensorField sample_potential(const kvar::TorusGrid& grid, std::uint64_t seed,
                                          double amplitude) {
  std::mt19937_64 rng(seed);
  kvar::FourierSpec spec = kvar::random_spec(rng, grid, 3, 1, amplitude);
  return kvar::synthesize_scalar(grid, kvar::normalize_potential(spec));
}

inline kvar::TensorField sample_potential_metric(const kvar::TorusGrid& grid, std::uint64_t seed,
                                                 double amplitude) {
  return kvar::potential_metric(sample_potential(grid, seed, amplitude));
}

inline kvar::VolumeDensityField sample_density(const kvar::TorusGrid& grid, std::uint64_t seed,
                                               double amplitude) {
  std::mt19937_64 rng(seed);
  kvar::TensorField h = kvar::random_scalar(rng, grid, 3, 2, amplitude);
  kvar::TensorField rho = kvar::TensorField::scalar(grid);
  for (std::size_t p = 0; p < grid.points(); ++p) rho.comp(0)[p] = std::exp(-h.comp(0)[p]);
  return kvar::VolumeDensityField(std::move(rho));
}

}  // namespace fix
