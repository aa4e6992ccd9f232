#pragma once

#include "kvar/field.hpp"

namespace kvar {

// Riemannian metric with eagerly cached inverse, Christoffel symbols and
// volume density. Immutable after construction.
class MetricField {
public:
  explicit MetricField(TensorField g);

  const TorusGrid& grid() const { return g_.grid(); }
  const TensorField& g() const { return g_; }
  const TensorField& gInv() const { return gInv_; }
  // slots (a, b, c) = Gamma^c_{ab}, symmetric in (a, b)
  const TensorField& christoffel() const { return christoffel_; }
  const TensorField& sqrt_det() const { return sqrtDet_; }
  double min_pivot() const { return minPivot_; }  // > 0 iff pointwise SPD

private:
  TensorField g_;
  TensorField gInv_;
  TensorField christoffel_;
  TensorField sqrtDet_;
  double minPivot_ = 0.0;
};

// density of a positive volume form against the flat Lebesgue measure
class VolumeDensityField {
public:
  explicit VolumeDensityField(TensorField rho);
  static VolumeDensityField lebesgue(const TorusGrid& grid);
  const TensorField& rho() const { return rho_; }

private:
  TensorField rho_;
};

// new covariant slot FIRST: (nabla T)(xi0; xi1..xip)
TensorField covariant_derivative(const TensorField& T, const MetricField& m);

// Riemann (1,3): slots (a, b, c, d-con) = component d of R(e_a, e_b) e_c,
// sign fixed so that flat + potential metrics reproduce the determinant
// oracle for the Ricci tensor
TensorField curvature(const MetricField& m);
TensorField ricci(const MetricField& m);
TensorField scalar_curvature(const MetricField& m);

TensorField gradient(const TensorField& f, const MetricField& m);  // vector
TensorField hessian(const TensorField& f, const MetricField& m);   // symmetric 2
// rough Laplacian -tr_g nabla^2, positive spectrum
TensorField rough_laplacian(const TensorField& T, const MetricField& m);
// rough Laplacian plus the drift nabla f -| nabla
TensorField omega_laplacian(const TensorField& T, const MetricField& m, const TensorField& gradF);

// contracts the derivative slot against the first argument slot
TensorField divergence(const TensorField& T, const MetricField& m);
TensorField omega_divergence(const TensorField& T, const MetricField& m, const TensorField& gradF);
TensorField omega_divergence(const TensorField& T, const MetricField& m, const VolumeDensityField& vol);

// symmetrization sum_j (nabla alpha)(xi_j; ..., xi_j omitted, ...)
TensorField symmetrized_nabla(const TensorField& alpha, const MetricField& m);
// the first-order operator hat-nabla - 2 nabla on symmetric 2-tensors
TensorField d_operator(const TensorField& u, const MetricField& m);

// musical isomorphisms and the metric transpose
TensorField sharp(const TensorField& form2, const MetricField& m);   // endo g^-1 v
TensorField flat(const TensorField& endo, const MetricField& m);     // form g(., E .)
TensorField sharp1(const TensorField& oneForm, const MetricField& m);
TensorField flat1(const TensorField& vec, const MetricField& m);
TensorField transpose_g(const TensorField& endo, const MetricField& m);

// move slot `from` of T to position `to`, other slots keeping their order
TensorField move_slot(const TensorField& T, int from, int to);

// pointwise full contraction of two same-valence tensors, Cov slots paired
// through gInv and Con slots through g; rank-0 result
TensorField inner_g(const TensorField& S, const TensorField& T, const MetricField& m);
// L2(Omega) pairing: integral of inner_g weighted by the density
double l2_omega_inner(const TensorField& S, const TensorField& T, const MetricField& m,
                      const VolumeDensityField& vol);

// scalar field f = log(dV_g / Omega) = log(sqrt(det g) / rho)
TensorField log_volume_ratio(const MetricField& m, const VolumeDensityField& vol);

// minimum LDL pivot over all samples; positive iff g is pointwise SPD
double spd_min_pivot(const TensorField& g);

namespace detail {
// out(xi_0..xi_p) = sum_j sign_j D(xi_j; xi_0..skip j..xi_p) for a tensor D
// whose slot 0 is a derivative slot; sign_j = (-1)^j when alternating. The
// spread covers the first spreadCount slots (all when negative); trailing
// slots ride along unchanged, which carries the value slot of vector-valued
// forms
TensorField spread_first_slot(const TensorField& D, bool alternate, int spreadCount = -1);
}

// exterior derivative of a 1-form or antisymmetric 2-form (metric free)
TensorField exterior_derivative(const TensorField& form);

}  // namespace kvar
