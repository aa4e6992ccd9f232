#include "oracles.hpp"

#include <stdexcept>

#include "kvar/spectral.hpp"

namespace kvar::oracle {

TensorField fd8_derivative(const TensorField& field, int axis) {
  const TorusGrid& grid = field.grid();
  if (axis < 0 || axis >= grid.dim()) throw std::invalid_argument("fd8_derivative: bad axis");
  static const double w[4] = {4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};
  const int res = grid.res();
  std::size_t stride = 1;
  for (int a = grid.dim() - 1; a > axis; --a) stride *= static_cast<std::size_t>(res);
  const std::size_t block = stride * static_cast<std::size_t>(res);
  TensorField out(grid, field.slots());
  const double invh = static_cast<double>(res);
  for (std::size_t c = 0; c < field.comps(); ++c) {
    const double* in = field.comp(c);
    double* oc = out.comp(c);
    for (std::size_t p = 0; p < grid.points(); ++p) {
      const std::size_t base = (p / block) * block;
      const std::size_t off = p - base;
      const int t = static_cast<int>((p / stride) % res);
      double acc = 0.0;
      for (int s = 1; s <= 4; ++s) {
        const int tp = (t + s) % res;
        const int tm = (t - s + 8 * res) % res;
        const std::size_t pp = base + (off + (static_cast<std::size_t>(tp - t + res)) * stride) % block;
        const std::size_t pm = base + (off + (static_cast<std::size_t>(tm - t + res)) * stride) % block;
        acc += w[s - 1] * (in[pp] - in[pm]);
      }
      oc[p] = acc * invh;
    }
  }
  return out;
}

double integrate(const TensorField& scalar) {
  if (scalar.rank() != 0) throw std::invalid_argument("integrate: rank-0 field expected");
  double s = 0.0;
  const double* c = scalar.comp(0);
  for (std::size_t p = 0; p < scalar.points(); ++p) s += c[p];
  return s * scalar.grid().cell_volume();
}

ComplexMatrixField hermitian_components(const TensorField& g) {
  const TorusGrid& grid = g.grid();
  const int n = grid.n();
  ComplexMatrixField M;
  M.n = n;
  M.points = grid.points();
  M.a.assign(static_cast<std::size_t>(n) * n * M.points, {0.0, 0.0});
  // zeta_k = (d/dx_k - i d/dy_k)/2; g(zeta_k, conj zeta_l) =
  //   ((g_xx + g_yy) + i (g_xy - g_yx))_{kl} / 4
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      const double* xx = g.comp(g.cindex({k, l}));
      const double* yy = g.comp(g.cindex({n + k, n + l}));
      const double* xy = g.comp(g.cindex({k, n + l}));
      const double* yx = g.comp(g.cindex({n + k, l}));
      for (std::size_t p = 0; p < M.points; ++p)
        M.at(k, l, p) = 0.25 * std::complex<double>(xx[p] + yy[p], xy[p] - yx[p]);
    }
  }
  return M;
}

void holomorphic_derivative(const TensorField& scalar, int p, TensorField& re, TensorField& im) {
  const int n = scalar.grid().n();
  TensorField dx = partial_derivative(scalar, p);
  TensorField dy = partial_derivative(scalar, n + p);
  re = scale(dx, 0.5);
  im = scale(dy, -0.5);
}

std::vector<ComplexMatrixField> connection_coefficients(const TensorField& g) {
  const TorusGrid& grid = g.grid();
  const int n = grid.n();
  const std::size_t P = grid.points();
  ComplexMatrixField M = hermitian_components(g);

  // pointwise inverse of the hermitian matrix (n <= 2)
  ComplexMatrixField Minv;
  Minv.n = n;
  Minv.points = P;
  Minv.a.assign(M.a.size(), {0.0, 0.0});
  for (std::size_t p = 0; p < P; ++p) {
    if (n == 1) {
      Minv.at(0, 0, p) = 1.0 / M.at(0, 0, p);
    } else {
      const std::complex<double> a = M.at(0, 0, p), b = M.at(0, 1, p);
      const std::complex<double> c = M.at(1, 0, p), d = M.at(1, 1, p);
      const std::complex<double> det = a * d - b * c;
      Minv.at(0, 0, p) = d / det;
      Minv.at(0, 1, p) = -b / det;
      Minv.at(1, 0, p) = -c / det;
      Minv.at(1, 1, p) = a / det;
    }
  }

  // dM[p][l][s] = d/dz_p of M_{ls}
  std::vector<ComplexMatrixField> dM(n);
  for (int dp = 0; dp < n; ++dp) {
    dM[dp].n = n;
    dM[dp].points = P;
    dM[dp].a.assign(M.a.size(), {0.0, 0.0});
    for (int l = 0; l < n; ++l) {
      for (int s = 0; s < n; ++s) {
        TensorField comp = TensorField::scalar(grid);
        TensorField compIm = TensorField::scalar(grid);
        for (std::size_t q = 0; q < P; ++q) {
          comp.comp(0)[q] = M.at(l, s, q).real();
          compIm.comp(0)[q] = M.at(l, s, q).imag();
        }
        TensorField reRe, reIm, imRe, imIm;
        holomorphic_derivative(comp, dp, reRe, reIm);
        holomorphic_derivative(compIm, dp, imRe, imIm);
        for (std::size_t q = 0; q < P; ++q) {
          // (d/dz)(u + i v) = (du/dz) + i (dv/dz)
          const std::complex<double> du(reRe.comp(0)[q], reIm.comp(0)[q]);
          const std::complex<double> dv(imRe.comp(0)[q], imIm.comp(0)[q]);
          dM[dp].at(l, s, q) = du + std::complex<double>(0.0, 1.0) * dv;
        }
      }
    }
  }

  // A[p].at(l, k) = sum_s conj(Minv(k, s)) * dM[p](l, s)
  std::vector<ComplexMatrixField> A(n);
  for (int dp = 0; dp < n; ++dp) {
    A[dp].n = n;
    A[dp].points = P;
    A[dp].a.assign(M.a.size(), {0.0, 0.0});
    for (int l = 0; l < n; ++l)
      for (int k = 0; k < n; ++k)
        for (int s = 0; s < n; ++s)
          for (std::size_t q = 0; q < P; ++q)
            A[dp].at(l, k, q) += std::conj(Minv.at(k, s, q)) * dM[dp].at(l, s, q);
  }
  return A;
}

}  // namespace kvar::oracle
