#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "kvar/grid.hpp"

namespace kvar {

enum class Slot : unsigned char { Cov, Con };

// Sampled real tensor field. Components are stored slot-major (slot 0
// outermost) with the flattened grid index innermost, matching the snapshot
// layout. Rank-2 conventions used throughout:
//   form h      slots [Cov,Cov],  comp(a,b) = h(e_a, e_b)
//   endo E      slots [Cov,Con],  comp(a,b) = component b of E(e_a)
//   bivector W  slots [Con,Con],  comp(a,b) = W^{ab}
// so an endomorphism comp layout is (input, output); the matrix-algebra
// helpers below hide that from formula-level code.
class TensorField {
public:
  TensorField() = default;
  TensorField(const TorusGrid& grid, std::vector<Slot> slots);

  static TensorField scalar(const TorusGrid& grid) { return TensorField(grid, {}); }
  static TensorField vector(const TorusGrid& grid) { return TensorField(grid, {Slot::Con}); }
  static TensorField one_form(const TorusGrid& grid) { return TensorField(grid, {Slot::Cov}); }
  static TensorField form2(const TorusGrid& grid) { return TensorField(grid, {Slot::Cov, Slot::Cov}); }
  static TensorField endo(const TorusGrid& grid) { return TensorField(grid, {Slot::Cov, Slot::Con}); }

  const TorusGrid& grid() const { return grid_; }
  int rank() const { return static_cast<int>(slots_.size()); }
  const std::vector<Slot>& slots() const { return slots_; }
  Slot slot(int s) const { return slots_[static_cast<std::size_t>(s)]; }
  std::size_t comps() const { return comps_; }
  std::size_t points() const { return grid_.points(); }

  double* comp(std::size_t c) { return data_.data() + c * points(); }
  const double* comp(std::size_t c) const { return data_.data() + c * points(); }
  double& at(std::size_t c, std::size_t p) { return data_[c * points() + p]; }
  double at(std::size_t c, std::size_t p) const { return data_[c * points() + p]; }

  std::vector<double>& raw() { return data_; }
  const std::vector<double>& raw() const { return data_; }

  // slot-major component index from per-slot indices
  std::size_t cindex(std::initializer_list<int> is) const;
  std::size_t cindex(const std::vector<int>& is) const;

  bool finite() const;

private:
  TorusGrid grid_{1, 8};
  std::vector<Slot> slots_;
  std::size_t comps_ = 0;
  std::vector<double> data_;
};

void require_same_shape(const TensorField& a, const TensorField& b, const std::string& where);

// linear algebra over fields
TensorField add(const TensorField& a, const TensorField& b);
TensorField sub(const TensorField& a, const TensorField& b);
TensorField scale(const TensorField& a, double s);
void axpy(TensorField& y, double a, const TensorField& x);  // y += a*x
TensorField mul_scalar_field(const TensorField& a, const TensorField& s);  // s rank 0

// generic slot ops
TensorField transpose_slots(const TensorField& a, int i, int j);
TensorField contract(const TensorField& a, int slotA, const TensorField& b, int slotB);
TensorField self_contract(const TensorField& a, int i, int j);  // one Cov vs one Con
// contract two covariant (or two contravariant) slots of a single field
// through an inverse metric (resp. metric) given as a rank-2 field
TensorField trace_with_metric(const TensorField& a, int i, int j, const TensorField& metric2);
TensorField outer_product(const TensorField& a, const TensorField& b);

// rank-2 matrix helpers (pointwise)
TensorField compose(const TensorField& a, const TensorField& b);  // endo a after b
TensorField form_times_endo(const TensorField& h, const TensorField& e);  // h(., e .)
TensorField form_after_endo(const TensorField& h, const TensorField& e);  // h(e ., .)
TensorField apply_endo(const TensorField& e, const TensorField& x);       // vector
TensorField apply_form(const TensorField& h, const TensorField& x);       // 1-form h(x, .)
TensorField pointwise_inverse2(const TensorField& a);  // flips slot kinds
TensorField trace_endo(const TensorField& e);
TensorField det2(const TensorField& a);  // pointwise determinant, rank 0
TensorField identity_endo(const TorusGrid& grid);
TensorField symmetrize2(const TensorField& h);
TensorField antisymmetrize2(const TensorField& h);

// norms; L2 uses the flat Lebesgue cell measure
double linf(const TensorField& a);
double l2(const TensorField& a);
double rel_residual(const TensorField& a, const TensorField& ref);
double rel_gap(const TensorField& lhs, const TensorField& rhs);  // |lhs-rhs| vs rhs scale

}  // namespace kvar
