#include "kvar/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace kvar {

struct Fft::Impl {
  int dim = 0;
  int res = 0;
  std::size_t points = 0;
  fftw_complex* buf = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
  std::vector<int> wave;  // signed mode number per axis index
};

Fft::Fft(const TorusGrid& grid) : impl_(new Impl) {
  impl_->dim = grid.dim();
  impl_->res = grid.res();
  impl_->points = grid.points();
  impl_->buf = fftw_alloc_complex(impl_->points);
  std::vector<int> dims(impl_->dim, impl_->res);
  impl_->fwd = fftw_plan_dft(impl_->dim, dims.data(), impl_->buf, impl_->buf,
                             FFTW_FORWARD, FFTW_ESTIMATE);
  impl_->bwd = fftw_plan_dft(impl_->dim, dims.data(), impl_->buf, impl_->buf,
                             FFTW_BACKWARD, FFTW_ESTIMATE);
  impl_->wave.resize(impl_->res);
  for (int t = 0; t < impl_->res; ++t)
    impl_->wave[t] = (t <= impl_->res / 2) ? t : t - impl_->res;
}

Fft::~Fft() {
  fftw_destroy_plan(impl_->fwd);
  fftw_destroy_plan(impl_->bwd);
  fftw_free(impl_->buf);
  delete impl_;
}

void Fft::derivative_axis(const double* in, double* out, int axis) {
  if (axis < 0 || axis >= impl_->dim) {
    std::ostringstream os;
    os << "derivative_axis: axis " << axis << " out of range for dimension " << impl_->dim;
    throw std::invalid_argument(os.str());
  }
  const std::size_t P = impl_->points;
  for (std::size_t p = 0; p < P; ++p) {
    impl_->buf[p][0] = in[p];
    impl_->buf[p][1] = 0.0;
  }
  fftw_execute(impl_->fwd);
  // multiply by i*2*pi*k_axis; the Nyquist mode has no odd derivative and is dropped
  const double twoPi = 2.0 * std::numbers::pi;
  const int res = impl_->res;
  std::size_t stride = 1;
  for (int a = impl_->dim - 1; a > axis; --a) stride *= res;
  for (std::size_t p = 0; p < P; ++p) {
    const int t = static_cast<int>((p / stride) % res);
    const int k = (2 * t == res) ? 0 : impl_->wave[t];
    const double w = twoPi * k;
    const double re = impl_->buf[p][0];
    const double im = impl_->buf[p][1];
    impl_->buf[p][0] = -w * im;
    impl_->buf[p][1] = w * re;
  }
  fftw_execute(impl_->bwd);
  const double inv = 1.0 / static_cast<double>(P);
  for (std::size_t p = 0; p < P; ++p) out[p] = impl_->buf[p][0] * inv;
}

void Fft::truncate_to_band(double* data) {
  const std::size_t P = impl_->points;
  const int res = impl_->res;
  const int cap = res / 3;
  for (std::size_t p = 0; p < P; ++p) {
    impl_->buf[p][0] = data[p];
    impl_->buf[p][1] = 0.0;
  }
  fftw_execute(impl_->fwd);
  for (std::size_t p = 0; p < P; ++p) {
    std::size_t rest = p;
    bool keep = true;
    for (int a = impl_->dim - 1; a >= 0; --a) {
      const int t = static_cast<int>(rest % res);
      rest /= res;
      if (std::abs(impl_->wave[t]) > cap) {
        keep = false;
        break;
      }
    }
    if (!keep) {
      impl_->buf[p][0] = 0.0;
      impl_->buf[p][1] = 0.0;
    }
  }
  fftw_execute(impl_->bwd);
  const double inv = 1.0 / static_cast<double>(P);
  for (std::size_t p = 0; p < P; ++p) data[p] = impl_->buf[p][0] * inv;
}

namespace detail {
std::shared_ptr<Fft> shared_fft(int n, int resolution) {
  static std::map<std::pair<int, int>, std::shared_ptr<Fft>> cache;
  auto key = std::make_pair(n, resolution);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto eng = std::make_shared<Fft>(TorusGrid(n, resolution));
  cache.emplace(key, eng);
  return eng;
}
}  // namespace detail

TensorField partial_derivative(const TensorField& field, int axis) {
  if (axis < 0 || axis >= field.grid().dim()) {
    std::ostringstream os;
    os << "partial_derivative: axis " << axis << " out of range";
    throw std::invalid_argument(os.str());
  }
  TensorField out(field.grid(), field.slots());
  Fft& eng = field.grid().fft();
  for (std::size_t c = 0; c < field.comps(); ++c) {
    eng.derivative_axis(field.comp(c), out.comp(c), axis);
    if (field.grid().dealias_products()) eng.truncate_to_band(out.comp(c));
  }
  return out;
}

TensorField gradient_all_axes(const TensorField& field) {
  std::vector<Slot> outSlots;
  outSlots.push_back(Slot::Cov);
  outSlots.insert(outSlots.end(), field.slots().begin(), field.slots().end());
  TensorField out(field.grid(), outSlots);
  Fft& eng = field.grid().fft();
  const std::size_t P = field.points();
  for (int a = 0; a < field.grid().dim(); ++a) {
    for (std::size_t c = 0; c < field.comps(); ++c) {
      double* oc = out.comp(static_cast<std::size_t>(a) * field.comps() + c);
      eng.derivative_axis(field.comp(c), oc, a);
      if (field.grid().dealias_products()) eng.truncate_to_band(oc);
    }
  }
  (void)P;
  return out;
}

void truncate_field_to_band(TensorField& field) {
  Fft& eng = field.grid().fft();
  for (std::size_t c = 0; c < field.comps(); ++c) eng.truncate_to_band(field.comp(c));
}

static void check_band(const TorusGrid& grid, const FourierMode& m) {
  if (static_cast<int>(m.k.size()) != grid.dim()) {
    std::ostringstream os;
    os << "FourierSpec: mode vector length " << m.k.size() << " does not match dimension "
       << grid.dim();
    throw std::invalid_argument(os.str());
  }
  for (int v : m.k) {
    if (std::abs(v) > grid.band_limit()) {
      std::ostringstream os;
      os << "FourierSpec: mode component " << v << " beyond band limit " << grid.band_limit();
      throw std::invalid_argument(os.str());
    }
  }
}

TensorField synthesize_scalar(const TorusGrid& grid, const FourierSpec& spec) {
  TensorField out = TensorField::scalar(grid);
  double* oc = out.comp(0);
  const double twoPi = 2.0 * std::numbers::pi;
  std::vector<int> idx;
  for (const FourierMode& m : spec.modes) check_band(grid, m);
  for (std::size_t p = 0; p < grid.points(); ++p) {
    grid.unflatten(p, idx);
    double v = 0.0;
    for (const FourierMode& m : spec.modes) {
      double phase = 0.0;
      for (int a = 0; a < grid.dim(); ++a)
        phase += static_cast<double>(m.k[a]) * idx[a] / grid.res();
      phase *= twoPi;
      v += m.cosAmp * std::cos(phase) + m.sinAmp * std::sin(phase);
    }
    oc[p] = v;
  }
  return out;
}

TensorField synthesize_derivative(const TorusGrid& grid, const FourierSpec& spec, int axis) {
  // d/dx_axis applied mode by mode
  FourierSpec d;
  const double twoPi = 2.0 * std::numbers::pi;
  for (const FourierMode& m : spec.modes) {
    FourierMode dm = m;
    // cos' = -w sin, sin' = w cos
    const double w = twoPi * m.k[axis];
    dm.cosAmp = w * m.sinAmp;
    dm.sinAmp = -w * m.cosAmp;
    d.modes.push_back(dm);
  }
  return synthesize_scalar(grid, d);
}

FourierSpec normalize_potential(const FourierSpec& spec) {
  FourierSpec out;
  const double pi2 = std::numbers::pi * std::numbers::pi;
  for (const FourierMode& m : spec.modes) {
    double k2 = 0.0;
    for (int v : m.k) k2 += static_cast<double>(v) * v;
    if (k2 == 0.0) continue;  // constants do not move the metric
    FourierMode s = m;
    s.cosAmp /= 2.0 * pi2 * k2;
    s.sinAmp /= 2.0 * pi2 * k2;
    out.modes.push_back(s);
  }
  return out;
}

FourierSpec random_spec(std::mt19937_64& rng, const TorusGrid& grid, int modeCount,
                        int maxMode, double amplitude) {
  if (maxMode > grid.band_limit()) maxMode = grid.band_limit();
  std::uniform_int_distribution<int> kd(-maxMode, maxMode);
  std::uniform_real_distribution<double> ad(-1.0, 1.0);
  FourierSpec spec;
  for (int i = 0; i < modeCount; ++i) {
    FourierMode m;
    m.k.resize(grid.dim());
    bool zero = true;
    for (int a = 0; a < grid.dim(); ++a) {
      m.k[a] = kd(rng);
      if (m.k[a] != 0) zero = false;
    }
    if (zero) m.k[0] = 1;
    m.cosAmp = amplitude * ad(rng) / modeCount;
    m.sinAmp = amplitude * ad(rng) / modeCount;
    spec.modes.push_back(m);
  }
  return spec;
}

TensorField random_scalar(std::mt19937_64& rng, const TorusGrid& grid, int modeCount,
                          int maxMode, double amplitude) {
  return synthesize_scalar(grid, random_spec(rng, grid, modeCount, maxMode, amplitude));
}

TensorField random_vector(std::mt19937_64& rng, const TorusGrid& grid, int modeCount,
                          int maxMode, double amplitude) {
  TensorField out = TensorField::vector(grid);
  for (int d = 0; d < grid.dim(); ++d) {
    TensorField c = random_scalar(rng, grid, modeCount, maxMode, amplitude);
    std::copy(c.comp(0), c.comp(0) + grid.points(), out.comp(d));
  }
  return out;
}

TensorField random_symmetric2(std::mt19937_64& rng, const TorusGrid& grid, int modeCount,
                              int maxMode, double amplitude) {
  TensorField out = TensorField::form2(grid);
  for (int i = 0; i < grid.dim(); ++i) {
    for (int j = i; j < grid.dim(); ++j) {
      TensorField c = random_scalar(rng, grid, modeCount, maxMode, amplitude);
      std::copy(c.comp(0), c.comp(0) + grid.points(), out.comp(out.cindex({i, j})));
      if (j != i)
        std::copy(c.comp(0), c.comp(0) + grid.points(), out.comp(out.cindex({j, i})));
    }
  }
  return out;
}

}  // namespace kvar
