#pragma once

#include <complex>
#include <vector>

#include "kvar/metric.hpp"

namespace kvar {

// the constant complex structure sending d/dx_k to d/dy_k on R^2n = C^n
TensorField standard_complex_structure(const TorusGrid& grid);

// h(E ., E .)
TensorField pullback_form2(const TensorField& h, const TensorField& endo);

// J-invariant and J-anti-invariant parts of a covariant 2-tensor
TensorField j_invariant_part(const TensorField& h, const TensorField& J);
TensorField j_anti_part(const TensorField& h, const TensorField& J);

// commuting and anticommuting parts of an endomorphism
TensorField endo_linear_part(const TensorField& e, const TensorField& J);
TensorField endo_antilinear_part(const TensorField& e, const TensorField& J);

// metric of a Kaehler potential over the flat background at the standard
// complex structure: delta + the J-invariant part of the flat Hessian
TensorField potential_metric(const TensorField& phi);

// residuals of the compatibility conditions tying J to a metric
struct KahlerResiduals {
  double square;         // |J^2 + I|
  double compatibility;  // |g - g(J., J.)|
  double parallel;       // |nabla_g J|
};

KahlerResiduals complex_structure_residuals(const TensorField& J, const MetricField& m);

// omega(xi, eta) = g(J xi, eta)
TensorField kahler_form(const MetricField& m, const TensorField& J);

// endomorphism omega^{-1} alpha of an antisymmetric 2-form alpha
TensorField omega_inverse_sharp(const TensorField& alpha, const MetricField& m,
                                const TensorField& J);

// worst antisymmetry violation over the form slots of a vector-valued form
double form_antisymmetry_residual(const TensorField& S);

// complex-linear and conjugate-linear halves of the covariant derivative of a
// vector-valued tensor; the split touches the new derivative slot and the
// value slot only: 2 nabla10 S (xi; ...) = nabla S (xi; ...) - J nabla S (J xi; ...)
TensorField nabla_10(const TensorField& S, const MetricField& m, const TensorField& J);
TensorField nabla_01(const TensorField& S, const MetricField& m, const TensorField& J);

// alternating derivatives taking vector-valued q-forms to (q+1)-forms, the
// unweighted sums over insertions of the derivative slot
TensorField nabla_TX(const TensorField& S, const MetricField& m);
TensorField del_TX(const TensorField& S, const MetricField& m, const TensorField& J);
TensorField dbar_TX(const TensorField& S, const MetricField& m, const TensorField& J);

// adjoints of the alternating derivatives for the plain tensor pairing, on
// q-forms with q >= 1: -q times the g-trace of the matching derivative half
TensorField adjoint_nabla(const TensorField& S, const MetricField& m);
TensorField adjoint_del(const TensorField& S, const MetricField& m, const TensorField& J);
TensorField adjoint_dbar(const TensorField& S, const MetricField& m, const TensorField& J);

// adjoints for the pairing weighted by e^{-f} dV_g, realized literally as the
// conjugation e^f P*(e^{-f} .)
TensorField adjoint_nabla_omega(const TensorField& S, const MetricField& m,
                                const TensorField& f);
TensorField adjoint_del_omega(const TensorField& S, const MetricField& m, const TensorField& J,
                              const TensorField& f);
TensorField adjoint_dbar_omega(const TensorField& S, const MetricField& m, const TensorField& J,
                               const TensorField& f);

// degree-weighted Hodge Laplacians on vector-valued q-forms; the q = 0 case
// keeps only the P* P term
TensorField hodge_laplacian_nabla(const TensorField& S, const MetricField& m);
TensorField hodge_laplacian_del(const TensorField& S, const MetricField& m, const TensorField& J);
TensorField hodge_laplacian_dbar(const TensorField& S, const MetricField& m,
                                 const TensorField& J);

// gap between the Chern derivative of xi evaluated through the g-inverse
// formula and nabla10 xi, or the imaginary leakage of the contracted bracket,
// whichever is worse
double chern_connection_check(const TensorField& xi, const MetricField& m, const TensorField& J);

// pointwise residual of xi . (g - i omega) = -2 i xi^{1,0} . omega
double key_contract_check(const TensorField& xi, const MetricField& m, const TensorField& J);

// n x n complex matrix attached to every grid point; holds holomorphic frame
// components of tensors taken at the standard complex structure
class FrameMatrixField {
 public:
  FrameMatrixField(const TorusGrid& grid);

  const TorusGrid& grid() const { return grid_; }
  int n() const { return n_; }
  std::complex<double>* entry(int k, int l);
  const std::complex<double>* entry(int k, int l) const;
  double linf() const;

 private:
  TorusGrid grid_;
  int n_;
  std::vector<std::complex<double>> data_;
};

// M(k,l) = h(zeta_k, conj zeta_l) for the frame zeta_k = (d/dx_k - i d/dy_k)/2
FrameMatrixField frame_hermitian_components(const TensorField& h);

// connection matrices A^p with nabla_{zeta_p} zeta_l = A^p_{k,l} zeta_k,
// assembled from the real Christoffel symbols; the conjugate-frame leakage
// goes to antiResidual when given
std::vector<FrameMatrixField> frame_connection(const MetricField& m, double* antiResidual);

}  // namespace kvar
