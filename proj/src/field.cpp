#include "kvar/field.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <sstream>
#include <stdexcept>

namespace kvar {

TensorField::TensorField(const TorusGrid& grid, std::vector<Slot> slots)
    : grid_(grid), slots_(std::move(slots)) {
  comps_ = 1;
  for (std::size_t i = 0; i < slots_.size(); ++i) comps_ *= static_cast<std::size_t>(grid_.dim());
  data_.assign(comps_ * grid_.points(), 0.0);
}

std::size_t TensorField::cindex(std::initializer_list<int> is) const {
  std::size_t c = 0;
  for (int v : is) c = c * grid_.dim() + static_cast<std::size_t>(v);
  return c;
}

std::size_t TensorField::cindex(const std::vector<int>& is) const {
  std::size_t c = 0;
  for (int v : is) c = c * grid_.dim() + static_cast<std::size_t>(v);
  return c;
}

bool TensorField::finite() const {
  for (double v : data_)
    if (!std::isfinite(v)) return false;
  return true;
}

void require_same_shape(const TensorField& a, const TensorField& b, const std::string& where) {
  if (!a.grid().same(b.grid())) throw std::invalid_argument(where + ": fields on different grids");
  if (a.slots() != b.slots()) throw std::invalid_argument(where + ": fields with different valences");
}

TensorField add(const TensorField& a, const TensorField& b) {
  require_same_shape(a, b, "add");
  TensorField r = a;
  const std::size_t total = r.raw().size();
  for (std::size_t i = 0; i < total; ++i) r.raw()[i] += b.raw()[i];
  return r;
}

TensorField sub(const TensorField& a, const TensorField& b) {
  require_same_shape(a, b, "sub");
  TensorField r = a;
  const std::size_t total = r.raw().size();
  for (std::size_t i = 0; i < total; ++i) r.raw()[i] -= b.raw()[i];
  return r;
}

TensorField scale(const TensorField& a, double s) {
  TensorField r = a;
  for (double& v : r.raw()) v *= s;
  return r;
}

void axpy(TensorField& y, double a, const TensorField& x) {
  require_same_shape(y, x, "axpy");
  const std::size_t total = y.raw().size();
  for (std::size_t i = 0; i < total; ++i) y.raw()[i] += a * x.raw()[i];
}

TensorField mul_scalar_field(const TensorField& a, const TensorField& s) {
  if (s.rank() != 0) throw std::invalid_argument("mul_scalar_field: multiplier must be rank 0");
  if (!a.grid().same(s.grid())) throw std::invalid_argument("mul_scalar_field: grid mismatch");
  TensorField r = a;
  const std::size_t P = a.points();
  const double* w = s.comp(0);
  for (std::size_t c = 0; c < r.comps(); ++c) {
    double* rc = r.comp(c);
    for (std::size_t p = 0; p < P; ++p) rc[p] *= w[p];
  }
  return r;
}

// decompose component index into per-slot indices (slot 0 outermost)
static void split_comp(std::size_t c, int rank, int dim, int* out) {
  for (int i = rank - 1; i >= 0; --i) {
    out[i] = static_cast<int>(c % dim);
    c /= dim;
  }
}

TensorField transpose_slots(const TensorField& a, int i, int j) {
  const int r = a.rank();
  if (i < 0 || j < 0 || i >= r || j >= r) throw std::invalid_argument("transpose_slots: slot out of range");
  if (a.slots()[i] != a.slots()[j])
    throw std::invalid_argument("transpose_slots: slots of different kinds");
  TensorField out(a.grid(), a.slots());
  const int dim = a.grid().dim();
  const std::size_t P = a.points();
  int idx[8];
  for (std::size_t c = 0; c < a.comps(); ++c) {
    split_comp(c, r, dim, idx);
    std::swap(idx[i], idx[j]);
    std::size_t cs = 0;
    for (int s = 0; s < r; ++s) cs = cs * dim + idx[s];
    std::memcpy(out.comp(cs), a.comp(c), P * sizeof(double));
  }
  return out;
}

TensorField contract(const TensorField& a, int slotA, const TensorField& b, int slotB) {
  if (!a.grid().same(b.grid())) throw std::invalid_argument("contract: grid mismatch");
  if (slotA < 0 || slotA >= a.rank() || slotB < 0 || slotB >= b.rank())
    throw std::invalid_argument("contract: slot out of range");
  if (a.slots()[slotA] == b.slots()[slotB])
    throw std::invalid_argument("contract: one covariant against one contravariant slot required");
  const int dim = a.grid().dim();
  const std::size_t P = a.points();
  std::vector<Slot> outSlots;
  for (int s = 0; s < a.rank(); ++s)
    if (s != slotA) outSlots.push_back(a.slots()[s]);
  for (int s = 0; s < b.rank(); ++s)
    if (s != slotB) outSlots.push_back(b.slots()[s]);
  TensorField out(a.grid(), outSlots);
  int ia[8], ib[8];
  for (std::size_t c = 0; c < out.comps(); ++c) {
    split_comp(c, out.rank(), dim, ia + 0);
    // first rank(a)-1 indices belong to a, rest to b
    int na = a.rank() - 1;
    for (int s = 0; s < b.rank() - 1; ++s) ib[s] = ia[na + s];
    double* oc = out.comp(c);
    std::fill(oc, oc + P, 0.0);
    for (int d = 0; d < dim; ++d) {
      int fa[8], fb[8];
      int t = 0;
      for (int s = 0; s < a.rank(); ++s) fa[s] = (s == slotA) ? d : ia[t++];
      t = 0;
      for (int s = 0; s < b.rank(); ++s) fb[s] = (s == slotB) ? d : ib[t++];
      std::size_t ca = 0, cb = 0;
      for (int s = 0; s < a.rank(); ++s) ca = ca * dim + fa[s];
      for (int s = 0; s < b.rank(); ++s) cb = cb * dim + fb[s];
      const double* pa = a.comp(ca);
      const double* pb = b.comp(cb);
      for (std::size_t p = 0; p < P; ++p) oc[p] += pa[p] * pb[p];
    }
  }
  return out;
}

TensorField self_contract(const TensorField& a, int i, int j) {
  if (i == j || i < 0 || j < 0 || i >= a.rank() || j >= a.rank())
    throw std::invalid_argument("self_contract: bad slots");
  if (a.slots()[i] == a.slots()[j])
    throw std::invalid_argument("self_contract: one covariant against one contravariant slot required");
  const int dim = a.grid().dim();
  const std::size_t P = a.points();
  std::vector<Slot> outSlots;
  for (int s = 0; s < a.rank(); ++s)
    if (s != i && s != j) outSlots.push_back(a.slots()[s]);
  TensorField out(a.grid(), outSlots);
  int io[8];
  for (std::size_t c = 0; c < out.comps(); ++c) {
    split_comp(c, out.rank(), dim, io);
    double* oc = out.comp(c);
    std::fill(oc, oc + P, 0.0);
    for (int d = 0; d < dim; ++d) {
      int fa[8];
      int t = 0;
      for (int s = 0; s < a.rank(); ++s) fa[s] = (s == i || s == j) ? d : io[t++];
      std::size_t ca = 0;
      for (int s = 0; s < a.rank(); ++s) ca = ca * dim + fa[s];
      const double* pa = a.comp(ca);
      for (std::size_t p = 0; p < P; ++p) oc[p] += pa[p];
    }
  }
  return out;
}

TensorField trace_with_metric(const TensorField& a, int i, int j, const TensorField& metric2) {
  if (i == j || i < 0 || j < 0 || i >= a.rank() || j >= a.rank())
    throw std::invalid_argument("trace_with_metric: bad slots");
  if (a.slots()[i] != a.slots()[j])
    throw std::invalid_argument("trace_with_metric: slots must have equal kinds");
  if (metric2.rank() != 2) throw std::invalid_argument("trace_with_metric: metric must be rank 2");
  const bool cov = a.slots()[i] == Slot::Cov;
  if (cov && metric2.slots() != std::vector<Slot>{Slot::Con, Slot::Con})
    throw std::invalid_argument("trace_with_metric: covariant pair needs the inverse metric");
  if (!cov && metric2.slots() != std::vector<Slot>{Slot::Cov, Slot::Cov})
    throw std::invalid_argument("trace_with_metric: contravariant pair needs the metric");
  const int dim = a.grid().dim();
  const std::size_t P = a.points();
  std::vector<Slot> outSlots;
  for (int s = 0; s < a.rank(); ++s)
    if (s != i && s != j) outSlots.push_back(a.slots()[s]);
  TensorField out(a.grid(), outSlots);
  int io[8];
  for (std::size_t c = 0; c < out.comps(); ++c) {
    split_comp(c, out.rank(), dim, io);
    double* oc = out.comp(c);
    std::fill(oc, oc + P, 0.0);
    for (int d = 0; d < dim; ++d) {
      for (int e = 0; e < dim; ++e) {
        const double* w = metric2.comp(metric2.cindex({d, e}));
        int fa[8];
        int t = 0;
        for (int s = 0; s < a.rank(); ++s) {
          if (s == i) fa[s] = d;
          else if (s == j) fa[s] = e;
          else fa[s] = io[t++];
        }
        std::size_t ca = 0;
        for (int s = 0; s < a.rank(); ++s) ca = ca * dim + fa[s];
        const double* pa = a.comp(ca);
        for (std::size_t p = 0; p < P; ++p) oc[p] += w[p] * pa[p];
      }
    }
  }
  return out;
}

TensorField outer_product(const TensorField& a, const TensorField& b) {
  if (!a.grid().same(b.grid())) throw std::invalid_argument("outer_product: grid mismatch");
  std::vector<Slot> outSlots = a.slots();
  outSlots.insert(outSlots.end(), b.slots().begin(), b.slots().end());
  TensorField out(a.grid(), outSlots);
  const std::size_t P = a.points();
  for (std::size_t ca = 0; ca < a.comps(); ++ca) {
    const double* pa = a.comp(ca);
    for (std::size_t cb = 0; cb < b.comps(); ++cb) {
      const double* pb = b.comp(cb);
      double* oc = out.comp(ca * b.comps() + cb);
      for (std::size_t p = 0; p < P; ++p) oc[p] = pa[p] * pb[p];
    }
  }
  return out;
}

static void require_endo(const TensorField& e, const char* where) {
  if (e.slots() != std::vector<Slot>{Slot::Cov, Slot::Con}) {
    std::ostringstream os;
    os << where << ": endomorphism field expected";
    throw std::invalid_argument(os.str());
  }
}

static void require_form2(const TensorField& h, const char* where) {
  if (h.slots() != std::vector<Slot>{Slot::Cov, Slot::Cov}) {
    std::ostringstream os;
    os << where << ": 2-form field expected";
    throw std::invalid_argument(os.str());
  }
}

TensorField compose(const TensorField& a, const TensorField& b) {
  require_endo(a, "compose");
  require_endo(b, "compose");
  if (!a.grid().same(b.grid())) throw std::invalid_argument("compose: grid mismatch");
  const int dim = a.grid().dim();
  const std::size_t P = a.points();
  TensorField out = TensorField::endo(a.grid());
  // (a b)(x) = a(b(x)); comp layout is (input, output)
  for (int in = 0; in < dim; ++in) {
    for (int o = 0; o < dim; ++o) {
      double* oc = out.comp(out.cindex({in, o}));
      std::fill(oc, oc + P, 0.0);
      for (int m = 0; m < dim; ++m) {
        const double* pb = b.comp(b.cindex({in, m}));
        const double* pa = a.comp(a.cindex({m, o}));
        for (std::size_t p = 0; p < P; ++p) oc[p] += pa[p] * pb[p];
      }
    }
  }
  return out;
}

TensorField form_times_endo(const TensorField& h, const TensorField& e) {
  require_form2(h, "form_times_endo");
  require_endo(e, "form_times_endo");
  if (!h.grid().same(e.grid())) throw std::invalid_argument("form_times_endo: grid mismatch");
  const int dim = h.grid().dim();
  const std::size_t P = h.points();
  TensorField out = TensorField::form2(h.grid());
  // (h e)(u, v) = h(u, e v)
  for (int u = 0; u < dim; ++u) {
    for (int v = 0; v < dim; ++v) {
      double* oc = out.comp(out.cindex({u, v}));
      std::fill(oc, oc + P, 0.0);
      for (int m = 0; m < dim; ++m) {
        const double* ph = h.comp(h.cindex({u, m}));
        const double* pe = e.comp(e.cindex({v, m}));
        for (std::size_t p = 0; p < P; ++p) oc[p] += ph[p] * pe[p];
      }
    }
  }
  return out;
}

TensorField form_after_endo(const TensorField& h, const TensorField& e) {
  require_form2(h, "form_after_endo");
  require_endo(e, "form_after_endo");
  if (!h.grid().same(e.grid())) throw std::invalid_argument("form_after_endo: grid mismatch");
  const int dim = h.grid().dim();
  const std::size_t P = h.points();
  TensorField out = TensorField::form2(h.grid());
  // (h e)(u, v) = h(e u, v), the morphism-composition reading of products
  // like g Jdot
  for (int u = 0; u < dim; ++u) {
    for (int v = 0; v < dim; ++v) {
      double* oc = out.comp(out.cindex({u, v}));
      std::fill(oc, oc + P, 0.0);
      for (int m = 0; m < dim; ++m) {
        const double* pe = e.comp(e.cindex({u, m}));
        const double* ph = h.comp(h.cindex({m, v}));
        for (std::size_t p = 0; p < P; ++p) oc[p] += pe[p] * ph[p];
      }
    }
  }
  return out;
}

TensorField apply_endo(const TensorField& e, const TensorField& x) {
  require_endo(e, "apply_endo");
  if (x.slots() != std::vector<Slot>{Slot::Con}) throw std::invalid_argument("apply_endo: vector expected");
  return contract(x, 0, e, 0);
}

TensorField apply_form(const TensorField& h, const TensorField& x) {
  require_form2(h, "apply_form");
  if (x.slots() != std::vector<Slot>{Slot::Con}) throw std::invalid_argument("apply_form: vector expected");
  // h(x, .)
  return contract(x, 0, h, 0);
}

TensorField pointwise_inverse2(const TensorField& a) {
  if (a.rank() != 2) throw std::invalid_argument("pointwise_inverse2: rank-2 field expected");
  const int dim = a.grid().dim();
  const std::size_t P = a.points();
  std::vector<Slot> outSlots(2);
  // inverse of a bilinear form is a bivector and vice versa; an endo stays one
  outSlots[0] = a.slots()[1] == Slot::Cov ? Slot::Con : Slot::Cov;
  outSlots[1] = a.slots()[0] == Slot::Cov ? Slot::Con : Slot::Cov;
  if (a.slots() == std::vector<Slot>{Slot::Cov, Slot::Con}) outSlots = a.slots();
  TensorField out(a.grid(), outSlots);
  // per-point LU with partial pivoting on the (slot0, slot1) matrix; for the
  // endo layout (input, output) this inverts the transpose, which is again
  // the inverse endo in the same layout
  double m[8][16];
  for (std::size_t p = 0; p < P; ++p) {
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) m[i][j] = a.at(a.cindex({i, j}), p);
      for (int j = 0; j < dim; ++j) m[i][dim + j] = (i == j) ? 1.0 : 0.0;
    }
    for (int col = 0; col < dim; ++col) {
      int best = col;
      for (int r = col + 1; r < dim; ++r)
        if (std::fabs(m[r][col]) > std::fabs(m[best][col])) best = r;
      if (best != col)
        for (int j = 0; j < 2 * dim; ++j) std::swap(m[col][j], m[best][j]);
      const double d = m[col][col];
      if (d == 0.0) throw std::runtime_error("pointwise_inverse2: singular matrix sample");
      const double inv = 1.0 / d;
      for (int j = 0; j < 2 * dim; ++j) m[col][j] *= inv;
      for (int r = 0; r < dim; ++r) {
        if (r == col) continue;
        const double f = m[r][col];
        if (f == 0.0) continue;
        for (int j = 0; j < 2 * dim; ++j) m[r][j] -= f * m[col][j];
      }
    }
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) out.at(out.cindex({i, j}), p) = m[i][dim + j];
  }
  return out;
}

TensorField trace_endo(const TensorField& e) {
  require_endo(e, "trace_endo");
  const int dim = e.grid().dim();
  const std::size_t P = e.points();
  TensorField out = TensorField::scalar(e.grid());
  double* oc = out.comp(0);
  for (int d = 0; d < dim; ++d) {
    const double* pe = e.comp(e.cindex({d, d}));
    for (std::size_t p = 0; p < P; ++p) oc[p] += pe[p];
  }
  return out;
}

TensorField det2(const TensorField& a) {
  if (a.rank() != 2) throw std::invalid_argument("det2: rank-2 field expected");
  const int dim = a.grid().dim();
  const std::size_t P = a.points();
  TensorField out = TensorField::scalar(a.grid());
  double* oc = out.comp(0);
  double m[8][8];
  for (std::size_t p = 0; p < P; ++p) {
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) m[i][j] = a.at(a.cindex({i, j}), p);
    double det = 1.0;
    for (int col = 0; col < dim; ++col) {
      int best = col;
      for (int r = col + 1; r < dim; ++r)
        if (std::fabs(m[r][col]) > std::fabs(m[best][col])) best = r;
      if (best != col) {
        for (int j = 0; j < dim; ++j) std::swap(m[col][j], m[best][j]);
        det = -det;
      }
      det *= m[col][col];
      if (m[col][col] == 0.0) break;
      for (int r = col + 1; r < dim; ++r) {
        const double f = m[r][col] / m[col][col];
        for (int j = col; j < dim; ++j) m[r][j] -= f * m[col][j];
      }
    }
    oc[p] = det;
  }
  return out;
}

TensorField identity_endo(const TorusGrid& grid) {
  TensorField out = TensorField::endo(grid);
  const std::size_t P = grid.points();
  for (int d = 0; d < grid.dim(); ++d) {
    double* oc = out.comp(out.cindex({d, d}));
    std::fill(oc, oc + P, 1.0);
  }
  return out;
}

TensorField symmetrize2(const TensorField& h) {
  TensorField t = transpose_slots(h, 0, 1);
  TensorField r = add(h, t);
  return scale(r, 0.5);
}

TensorField antisymmetrize2(const TensorField& h) {
  TensorField t = transpose_slots(h, 0, 1);
  TensorField r = sub(h, t);
  return scale(r, 0.5);
}

double linf(const TensorField& a) {
  double m = 0.0;
  for (double v : a.raw()) m = std::max(m, std::fabs(v));
  return m;
}

double l2(const TensorField& a) {
  double s = 0.0;
  for (double v : a.raw()) s += v * v;
  return std::sqrt(s * a.grid().cell_volume());
}

double rel_residual(const TensorField& a, const TensorField& ref) {
  require_same_shape(a, ref, "rel_residual");
  const TensorField d = sub(a, ref);
  return linf(d) / std::max(1.0, linf(ref));
}

double rel_gap(const TensorField& lhs, const TensorField& rhs) {
  require_same_shape(lhs, rhs, "rel_gap");
  const TensorField d = sub(lhs, rhs);
  return linf(d) / std::max(1.0, std::max(linf(lhs), linf(rhs)));
}

}  // namespace kvar
