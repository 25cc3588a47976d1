#include "qsde/calculus.hpp"

#include <numeric>

#include "qsde/errors.hpp"

namespace qsde {

namespace {

std::vector<int> natural_perm(int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  return p;
}

// Monomials free of all axis targets listed in `used`.
BasisSelector free_of_targets(const AxisMap& axis, std::span<const int> perm,
                              std::size_t count) {
  BasisSelector s;
  s.vars.assign(2 * static_cast<std::size_t>(axis.modes()), false);
  s.complemented = true;
  for (std::size_t k = 0; k < count; ++k) {
    int idx = axis.entry(perm[k]).target.index(axis.modes());
    s.vars[static_cast<std::size_t>(idx)] = true;
  }
  return s;
}

}  // namespace

NcPoly deriv(const NcPoly& x, VarId v) {
  // The commutator is evaluated uncapped; the result degree is one below the
  // input's, so the input cap is reattached unchanged.
  NcPoly body = x.without_cap();
  NcPoly gen = v.kind == VarKind::momentum
                   ? NcPoly::generator(VarId::q(v.mode), x.modes())
                   : NcPoly::generator(VarId::p(v.mode), x.modes());
  Scalar factor = v.kind == VarKind::momentum ? -Scalar::i() : Scalar::i();
  NcPoly r = factor * commutator(gen, body);
  r = r.with_cap(x.degree_cap());
  if (x.truncated()) r.mark_truncated();
  return r;
}

NcPoly deriv_axis(const NcPoly& x, const AxisMap& axis, int i) {
  const AxisEntry& e = axis.entry(i);
  NcPoly d = deriv(x, e.target);
  return e.sign < 0 ? -d : d;
}

NcPoly zero_integral(const NcPoly& x, VarId v) {
  const auto& cap = x.degree_cap();
  NcPoly r(x.modes(), cap);
  if (x.truncated()) r.mark_truncated();
  int idx = v.index(x.modes());
  for (const auto& [mono, c] : x.terms()) {
    if (cap && mono.degree() >= *cap) {
      throw DegreeOverflow("zero integral exceeds degree cap " + std::to_string(*cap));
    }
    int k = mono.exp(idx);
    r.add_term(mono.bumped(idx, 1), c * Scalar(Rational(1, k + 1)));
  }
  return r;
}

NcPoly zero_integral_axis(const NcPoly& x, const AxisMap& axis, int i) {
  const AxisEntry& e = axis.entry(i);
  NcPoly f = zero_integral(x, e.target);
  return e.sign < 0 ? -f : f;
}

NcPoly project(const NcPoly& x, const BasisSelector& sel) {
  NcPoly r(x.modes(), x.degree_cap());
  if (x.truncated()) r.mark_truncated();
  for (const auto& [mono, c] : x.terms()) {
    bool keep = true;
    for (int idx = 0; idx < 2 * x.modes(); ++idx) {
      if (mono.exp(idx) > 0 && !sel.allows(idx)) {
        keep = false;
        break;
      }
    }
    if (keep) r.add_term(mono, c);
  }
  return r;
}

NcPoly quotient_part(const NcPoly& x, const BasisSelector& sel) {
  return x - project(x, sel);
}

IntegralSeries expand_integral_series(const NcPoly& f, const AxisMap& axis,
                                      std::span<const int> perm) {
  std::vector<int> natural;
  if (perm.empty()) {
    natural = natural_perm(axis.size());
    perm = natural;
  }
  IntegralSeries out;
  out.summands.assign(static_cast<std::size_t>(axis.size()), NcPoly::zero(f.modes()));
  for (std::size_t r = 0; r < perm.size(); ++r) {
    int i = perm[r];
    NcPoly g = deriv_axis(f, axis, i);
    NcPoly s = project(zero_integral_axis(g, axis, i), free_of_targets(axis, perm, r));
    out.summands[static_cast<std::size_t>(i)] = s;
  }
  out.constant = f.constant_term();
  return out;
}

CurlReport curl_test(std::span<const NcPoly> g, const AxisMap& axis) {
  CurlReport rep;
  int n = static_cast<int>(g.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      NcPoly res = deriv_axis(g[static_cast<std::size_t>(i)], axis, j) -
                   deriv_axis(g[static_cast<std::size_t>(j)], axis, i);
      if (!res.is_zero()) {
        rep.ok = false;
        rep.failures.push_back({i, j, res});
      }
    }
  }
  return rep;
}

NcPoly potential_from_gradient(std::span<const NcPoly> g, const AxisMap& axis,
                               std::span<const int> perm) {
  CurlReport rep = curl_test(g, axis);
  if (!rep.ok) {
    throw NotAGradient("curl test failed on " + std::to_string(rep.failures.size()) +
                       " axis pair(s)");
  }
  std::vector<int> natural;
  if (perm.empty()) {
    natural = natural_perm(axis.size());
    perm = natural;
  }
  NcPoly f = NcPoly::zero(axis.modes());
  for (std::size_t r = 0; r < perm.size(); ++r) {
    int i = perm[r];
    const NcPoly& gi = g[static_cast<std::size_t>(i)];
    f += project(zero_integral_axis(gi, axis, i), free_of_targets(axis, perm, r));
  }
  return f;
}

}  // namespace qsde
