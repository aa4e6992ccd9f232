#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "kvar/field.hpp"
#include "kvar/grid.hpp"

namespace kvar {

// One real Fourier mode: amplitude pair for cos/sin of 2*pi*(k . x).
struct FourierMode {
  std::vector<int> k;
  double cosAmp = 0.0;
  double sinAmp = 0.0;
};

// Band-limited real scalar field prescription.
struct FourierSpec {
  std::vector<FourierMode> modes;
  bool empty() const { return modes.empty(); }
};

// FFT workspace shared by all fields on a grid. Single threaded, plans built
// with FFTW_ESTIMATE so repeated runs take identical code paths.
class Fft {
public:
  explicit Fft(const TorusGrid& grid);
  ~Fft();
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  // d/dx_axis of one scalar component; in/out may alias
  void derivative_axis(const double* in, double* out, int axis);
  // zero all modes with any |k_axis| > band limit
  void truncate_to_band(double* data);

private:
  struct Impl;
  Impl* impl_;
};

// componentwise spectral derivative along one real axis
TensorField partial_derivative(const TensorField& field, int axis);
// all axis derivatives at once, prepended as a new covariant slot
TensorField gradient_all_axes(const TensorField& field);

void truncate_field_to_band(TensorField& field);

// direct trigonometric synthesis; throws if a mode exceeds the band limit
TensorField synthesize_scalar(const TorusGrid& grid, const FourierSpec& spec);
// analytic axis derivative of a synthesized spec (oracle-grade reference)
TensorField synthesize_derivative(const TorusGrid& grid, const FourierSpec& spec, int axis);

// per-mode 1/(2 pi^2 |k|^2) scaling so listed amplitudes set the size of the
// induced metric perturbation rather than of the potential itself
FourierSpec normalize_potential(const FourierSpec& spec);

FourierSpec random_spec(std::mt19937_64& rng, const TorusGrid& grid, int modeCount,
                        int maxMode, double amplitude);
TensorField random_symmetric2(std::mt19937_64& rng, const TorusGrid& grid, int modeCount,
                              int maxMode, double amplitude);
TensorField random_vector(std::mt19937_64& rng, const TorusGrid& grid, int modeCount,
                          int maxMode, double amplitude);
TensorField random_scalar(std::mt19937_64& rng, const TorusGrid& grid, int modeCount,
                          int maxMode, double amplitude);

namespace detail {
// process-wide engine cache so all grids of one shape share FFTW plans
std::shared_ptr<Fft> shared_fft(int n, int resolution);
}  // namespace detail

}  // namespace kvar
