#pragma once

#include <cstddef>
#include <memory>
#include <vector>

namespace kvar {

class Fft;

// Uniform periodic grid on the real torus R^{2n}/Z^{2n}. Axes are ordered
// (x_1..x_n, y_1..y_n) with z_k = x_k + i*y_k, period 1 per axis, and points
// flattened row-major with axis 0 slowest. Copies share one FFT engine.
class TorusGrid {
public:
  TorusGrid(int n, int resolution, bool dealias_products = false);

  int n() const { return n_; }
  int dim() const { return 2 * n_; }
  int res() const { return res_; }
  std::size_t points() const { return points_; }
  double spacing() const { return 1.0 / res_; }
  double cell_volume() const { return cellvol_; }
  int band_limit() const { return res_ / 3; }
  bool dealias_products() const { return dealias_; }

  std::size_t flatten(const std::vector<int>& idx) const;
  void unflatten(std::size_t p, std::vector<int>& idx) const;
  double coord(std::size_t p, int axis) const;

  bool same(const TorusGrid& o) const { return n_ == o.n_ && res_ == o.res_; }

  Fft& fft() const;

private:
  int n_ = 0;
  int res_ = 0;
  bool dealias_ = false;
  std::size_t points_ = 0;
  double cellvol_ = 0.0;
  mutable std::shared_ptr<Fft> fft_;
};

}  // namespace kvar
