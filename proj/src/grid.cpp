#include "kvar/grid.hpp"

#include <sstream>
#include <stdexcept>

#include "kvar/spectral.hpp"

namespace kvar {

static bool power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

TorusGrid::TorusGrid(int n, int resolution, bool dealias_products)
    : n_(n), res_(resolution), dealias_(dealias_products) {
  if (n != 1 && n != 2) {
    std::ostringstream os;
    os << "TorusGrid: complex dimension must be 1 or 2, got " << n;
    throw std::invalid_argument(os.str());
  }
  if (res_ < 8 || !power_of_two(res_)) {
    std::ostringstream os;
    os << "TorusGrid: resolution must be a power of two >= 8, got " << res_;
    throw std::invalid_argument(os.str());
  }
  points_ = 1;
  for (int a = 0; a < dim(); ++a) points_ *= static_cast<std::size_t>(res_);
  cellvol_ = 1.0;
  for (int a = 0; a < dim(); ++a) cellvol_ /= res_;
}

std::size_t TorusGrid::flatten(const std::vector<int>& idx) const {
  std::size_t p = 0;
  for (int a = 0; a < dim(); ++a) p = p * res_ + static_cast<std::size_t>(idx[a]);
  return p;
}

void TorusGrid::unflatten(std::size_t p, std::vector<int>& idx) const {
  idx.resize(dim());
  for (int a = dim() - 1; a >= 0; --a) {
    idx[a] = static_cast<int>(p % res_);
    p /= res_;
  }
}

double TorusGrid::coord(std::size_t p, int axis) const {
  for (int a = dim() - 1; a > axis; --a) p /= res_;
  return static_cast<double>(p % res_) / res_;
}

Fft& TorusGrid::fft() const {
  if (!fft_) fft_ = detail::shared_fft(n_, res_);
  return *fft_;
}

}  // namespace kvar
