#pragma once

// Test-side reference implementations: a high-order periodic finite
// difference stencil (independent of the FFT path), grid quadrature, and
// fixed-frame complex-coordinate formulas valid at the standard J.

#include <complex>
#include <vector>

#include "kvar/field.hpp"
#include "kvar/grid.hpp"

namespace kvar::oracle {

// 8th-order centered first derivative along one axis, periodic wraparound
TensorField fd8_derivative(const TensorField& field, int axis);

// grid quadrature of a scalar field over the unit torus
double integrate(const TensorField& scalar);

// complex n x n matrix sampled over the grid, row-major components
struct ComplexMatrixField {
  int n = 0;
  std::size_t points = 0;
  std::vector<std::complex<double>> a;  // [(i*n + j)*points + p]
  std::complex<double>& at(int i, int j, std::size_t p) { return a[(static_cast<std::size_t>(i) * n + j) * points + p]; }
  std::complex<double> at(int i, int j, std::size_t p) const { return a[(static_cast<std::size_t>(i) * n + j) * points + p]; }
};

// hermitian components g(zeta_k, conj(zeta_l)) of a real metric at standard J
ComplexMatrixField hermitian_components(const TensorField& g);

// holomorphic-frame connection coefficients of a Kahler potential metric at
// the standard J: the zeta_k component of the zeta_p covariant derivative of
// zeta_l, computed purely from the hermitian components and their
// holomorphic derivatives (no real-coordinate Christoffels)
// index layout out[p][l][k]
std::vector<ComplexMatrixField> connection_coefficients(const TensorField& g);

// d/dz_p and d/dzbar_p of a real scalar field (spectral halves)
void holomorphic_derivative(const TensorField& scalar, int p, TensorField& re, TensorField& im);

}  // namespace kvar::oracle
