#pragma once

#include <initializer_list>
#include <span>
#include <vector>

#include "qsde/ncpoly.hpp"

namespace qsde {

// Selects the subspace of polynomials written in a subset of the canonical
// generators. With complemented set, selects the polynomials in the
// remaining generators instead.
struct BasisSelector {
  std::vector<bool> vars;
  bool complemented = false;

  static BasisSelector of(std::initializer_list<VarId> vs, int modes) {
    BasisSelector s;
    s.vars.assign(2 * static_cast<std::size_t>(modes), false);
    for (VarId v : vs) s.vars[static_cast<std::size_t>(v.index(modes))] = true;
    return s;
  }
  static BasisSelector complement_of(std::initializer_list<VarId> vs, int modes) {
    BasisSelector s = of(vs, modes);
    s.complemented = true;
    return s;
  }
  static BasisSelector all(int modes) {
    BasisSelector s;
    s.vars.assign(2 * static_cast<std::size_t>(modes), true);
    return s;
  }

  bool allows(int idx) const {
    bool in = vars[static_cast<std::size_t>(idx)];
    return complemented ? !in : in;
  }
};

// Signed relabeling of the 2m differentiation axes. The symplectic map
// y = Sigma_m x sends axis i to p_i for i <= m and to -q_{i-m} after.
struct AxisEntry {
  VarId target;
  int sign;
};

class AxisMap {
 public:
  AxisMap(std::vector<AxisEntry> entries, int modes)
      : entries_(std::move(entries)), modes_(modes) {}

  static AxisMap identity(int modes) {
    std::vector<AxisEntry> e;
    for (int i = 0; i < 2 * modes; ++i) e.push_back({VarId::from_index(i, modes), 1});
    return AxisMap(std::move(e), modes);
  }
  static AxisMap symplectic(int modes) {
    std::vector<AxisEntry> e;
    for (int i = 1; i <= modes; ++i) e.push_back({VarId::p(i), 1});
    for (int i = 1; i <= modes; ++i) e.push_back({VarId::q(i), -1});
    return AxisMap(std::move(e), modes);
  }

  int modes() const { return modes_; }
  int size() const { return static_cast<int>(entries_.size()); }
  const AxisEntry& entry(int i) const { return entries_[static_cast<std::size_t>(i)]; }

 private:
  std::vector<AxisEntry> entries_;
  int modes_;
};

// Vector (or one matrix column) of polynomials read against an axis map.
struct GradVector {
  std::vector<NcPoly> entries;
  AxisMap axis;
};

struct CurlFailure {
  int i;
  int j;
  NcPoly residual;  // d g_i / d y_j - d g_j / d y_i
};

struct CurlReport {
  bool ok = true;
  std::vector<CurlFailure> failures;
};

struct IntegralSeries {
  std::vector<NcPoly> summands;
  Scalar constant;
};

// Commutator derivative: dX/dp_i = (1/i)[q_i, X], dX/dq_i = -(1/i)[p_i, X].
NcPoly deriv(const NcPoly& x, VarId v);

// Signed derivative along axis entry i (0-based).
NcPoly deriv_axis(const NcPoly& x, const AxisMap& axis, int i);

// Unique anti-derivative with no component in the kernel of deriv(.,v):
// every monomial of the result contains v. Requires term degrees < cap.
NcPoly zero_integral(const NcPoly& x, VarId v);

NcPoly zero_integral_axis(const NcPoly& x, const AxisMap& axis, int i);

NcPoly project(const NcPoly& x, const BasisSelector& sel);
NcPoly quotient_part(const NcPoly& x, const BasisSelector& sel);

// Expands f as the projected-integral series along the axes, in the order
// given by perm (axis indices; empty means natural order). The summands plus
// the constant reconstruct f exactly.
IntegralSeries expand_integral_series(const NcPoly& f, const AxisMap& axis,
                                      std::span<const int> perm = {});

CurlReport curl_test(std::span<const NcPoly> g, const AxisMap& axis);

// Builds the potential f with deriv_axis(f, axis, i) = g_i for all i, using
// the projected-integral sum with integration constant fixed to zero.
// Requires curl_test(g) to pass.
NcPoly potential_from_gradient(std::span<const NcPoly> g, const AxisMap& axis,
                               std::span<const int> perm = {});

inline CurlReport curl_test(const GradVector& g) { return curl_test(g.entries, g.axis); }
inline NcPoly potential_from_gradient(const GradVector& g) {
  return potential_from_gradient(g.entries, g.axis);
}

}  // namespace qsde
