#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qsde/scalar.hpp"

namespace qsde {

enum class VarKind { position, momentum };

// One canonical generator q_k or p_k. Modes are 1-based; the canonical
// generator order is q_1,...,q_m,p_1,...,p_m.
struct VarId {
  VarKind kind;
  int mode;

  static VarId q(int mode = 1) { return {VarKind::position, mode}; }
  static VarId p(int mode = 1) { return {VarKind::momentum, mode}; }

  // Column in the canonical order for a system with m modes.
  int index(int modes) const {
    return (kind == VarKind::position ? 0 : modes) + mode - 1;
  }
  static VarId from_index(int idx, int modes) {
    return idx < modes ? q(idx + 1) : p(idx - modes + 1);
  }

  std::string name(int modes) const {
    std::string base = kind == VarKind::position ? "q" : "p";
    return modes == 1 ? base : base + std::to_string(mode);
  }

  friend bool operator==(const VarId& a, const VarId& b) {
    return a.kind == b.kind && a.mode == b.mode;
  }
  friend bool operator!=(const VarId& a, const VarId& b) { return !(a == b); }
};

// Exponent vector over the 2m canonical generators. A monomial denotes the
// ordered product q_1^{e_0}...q_m^{e_{m-1}} p_1^{e_m}...p_m^{e_{2m-1}}.
class Monomial {
 public:
  explicit Monomial(int modes) : exps_(2 * static_cast<std::size_t>(modes), 0) {}

  int modes() const { return static_cast<int>(exps_.size() / 2); }
  int exp(int idx) const { return exps_[static_cast<std::size_t>(idx)]; }
  int exp(VarId v) const { return exps_[static_cast<std::size_t>(v.index(modes()))]; }

  int degree() const {
    int d = 0;
    for (int e : exps_) d += e;
    return d;
  }
  bool is_constant() const { return degree() == 0; }

  Monomial bumped(int idx, int delta) const {
    Monomial m = *this;
    m.exps_[static_cast<std::size_t>(idx)] += delta;
    return m;
  }
  Monomial bumped(VarId v, int delta) const { return bumped(v.index(modes()), delta); }

  const std::vector<int>& exponents() const { return exps_; }

  // Factor sequence in canonical written order.
  std::vector<VarId> factors() const {
    std::vector<VarId> out;
    int m = modes();
    for (int idx = 0; idx < 2 * m; ++idx) {
      VarId v = VarId::from_index(idx, m);
      for (int k = 0; k < exps_[static_cast<std::size_t>(idx)]; ++k) out.push_back(v);
    }
    return out;
  }

  std::string str() const {
    if (is_constant()) return "1";
    std::string out;
    int m = modes();
    for (int idx = 0; idx < 2 * m; ++idx) {
      int e = exps_[static_cast<std::size_t>(idx)];
      if (e == 0) continue;
      if (!out.empty()) out += "*";
      out += VarId::from_index(idx, m).name(m);
      if (e > 1) out += "^" + std::to_string(e);
    }
    return out;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.exps_ == b.exps_;
  }

 private:
  std::vector<int> exps_;
};

// Iteration order of the canonical term map: degree descending, then pure
// powers before mixed products, then by generator set, then by exponents.
// This is the order the text rendering follows.
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const {
    int da = a.degree(), db = b.degree();
    if (da != db) return da > db;
    const auto& ea = a.exponents();
    const auto& eb = b.exponents();
    int va = 0, vb = 0;
    for (int e : ea) va += e > 0;
    for (int e : eb) vb += e > 0;
    if (va != vb) return va < vb;
    // Generator sets, earliest generators first.
    std::size_t ia = 0, ib = 0;
    while (true) {
      while (ia < ea.size() && ea[ia] == 0) ++ia;
      while (ib < eb.size() && eb[ib] == 0) ++ib;
      if (ia >= ea.size() || ib >= eb.size()) break;
      if (ia != ib) return ia < ib;
      ++ia;
      ++ib;
    }
    for (std::size_t k = 0; k < ea.size(); ++k) {
      if (ea[k] != eb[k]) return ea[k] < eb[k];
    }
    return false;
  }
};

// Pre-normal-ordering input form: a coefficient times a product of
// generators in arbitrary written order.
struct Word {
  Scalar coeff;
  std::vector<VarId> factors;
  int modes = 1;
};

// Normal-ordered noncommutative polynomial over exact complex rationals.
// Always held in q-p canonical form, so structural equality of term maps is
// operator equality. An optional degree cap gives truncated-series
// semantics; the truncated flag records that terms were ever dropped.
class NcPoly {
 public:
  using TermMap = std::map<Monomial, Scalar, MonomialOrder>;

  NcPoly() : modes_(1) {}
  explicit NcPoly(int modes, std::optional<int> cap = std::nullopt)
      : modes_(modes), cap_(cap) {}

  static NcPoly zero(int modes, std::optional<int> cap = std::nullopt) {
    return NcPoly(modes, cap);
  }
  static NcPoly constant(const Scalar& c, int modes,
                         std::optional<int> cap = std::nullopt) {
    NcPoly p(modes, cap);
    p.add_term(Monomial(modes), c);
    return p;
  }
  static NcPoly generator(VarId v, int modes,
                          std::optional<int> cap = std::nullopt) {
    NcPoly p(modes, cap);
    p.add_term(Monomial(modes).bumped(v, 1), Scalar(1));
    return p;
  }
  static NcPoly from_monomial(const Monomial& mono, const Scalar& c, int modes,
                              std::optional<int> cap = std::nullopt) {
    NcPoly p(modes, cap);
    p.add_term(mono, c);
    return p;
  }

  int modes() const { return modes_; }
  const std::optional<int>& degree_cap() const { return cap_; }
  bool truncated() const { return truncated_; }
  const TermMap& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_constant());
  }

  int degree() const {
    int d = 0;
    for (const auto& [mono, c] : terms_) d = std::max(d, mono.degree());
    return d;
  }

  Scalar constant_term() const {
    auto it = terms_.find(Monomial(modes_));
    return it == terms_.end() ? Scalar() : it->second;
  }

  Scalar coeff(const Monomial& mono) const {
    auto it = terms_.find(mono);
    return it == terms_.end() ? Scalar() : it->second;
  }

  void add_term(const Monomial& mono, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(mono, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  NcPoly with_cap(std::optional<int> cap) const;
  NcPoly without_cap() const { return with_cap(std::nullopt); }
  void mark_truncated() { truncated_ = true; }

  NcPoly operator-() const {
    NcPoly r(modes_, cap_);
    r.truncated_ = truncated_;
    for (const auto& [mono, c] : terms_) r.terms_.emplace(mono, -c);
    return r;
  }

  friend NcPoly operator+(const NcPoly& a, const NcPoly& b);
  friend NcPoly operator-(const NcPoly& a, const NcPoly& b);
  friend NcPoly operator*(const NcPoly& a, const NcPoly& b);
  friend NcPoly operator*(const Scalar& c, const NcPoly& a);
  friend NcPoly operator*(const NcPoly& a, const Scalar& c) { return c * a; }

  NcPoly& operator+=(const NcPoly& o) { return *this = *this + o; }
  NcPoly& operator-=(const NcPoly& o) { return *this = *this - o; }
  NcPoly& operator*=(const NcPoly& o) { return *this = *this * o; }

  NcPoly pow(int k) const;

  // Zero polynomials of any mode count compare equal.
  friend bool operator==(const NcPoly& a, const NcPoly& b) {
    if (a.is_zero() && b.is_zero()) return true;
    return a.modes_ == b.modes_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const NcPoly& a, const NcPoly& b) { return !(a == b); }

  std::string str() const;

 private:
  friend NcPoly normal_order(const Word& w, std::optional<int> cap);
  friend NcPoly adjoint(const NcPoly& a);

  void enforce_cap();

  int modes_;
  std::optional<int> cap_;
  bool truncated_ = false;
  TermMap terms_;
};

// Rewrites a word into q-p canonical form using p_j q_j -> q_j p_j - i and
// free transposition across distinct modes. Throws DegreeOverflow when a cap
// is given and the word itself is longer than the cap.
NcPoly normal_order(const Word& w, std::optional<int> cap = std::nullopt);

NcPoly adjoint(const NcPoly& a);
NcPoly commutator(const NcPoly& a, const NcPoly& b);
NcPoly herm(const NcPoly& a);
NcPoly antiherm(const NcPoly& a);
bool is_self_adjoint(const NcPoly& a);

}  // namespace qsde
