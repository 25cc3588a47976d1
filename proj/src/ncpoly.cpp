#include "qsde/ncpoly.hpp"

#include <utility>

#include "qsde/errors.hpp"

namespace qsde {

namespace {

struct Meta {
  int modes;
  std::optional<int> cap;
  bool truncated;
};

Meta merge_meta(const NcPoly& a, const NcPoly& b) {
  int modes = a.modes();
  if (a.modes() != b.modes()) {
    // Zero carries a mode count only for type compatibility.
    if (a.is_zero()) {
      modes = b.modes();
    } else if (!b.is_zero()) {
      throw ModeMismatch("operands have " + std::to_string(a.modes()) + " and " +
                         std::to_string(b.modes()) + " modes");
    }
  }
  Meta m{modes, std::nullopt, a.truncated() || b.truncated()};
  const auto& ca = a.degree_cap();
  const auto& cb = b.degree_cap();
  if (ca && cb) {
    m.cap = std::min(*ca, *cb);
    if (*ca != *cb) m.truncated = true;
  } else {
    m.cap = ca ? ca : cb;
  }
  return m;
}

// Right-multiply every term of `acc` by a single generator, keeping the
// canonical form. Appending p_j is already in normal position; appending q_j
// crosses the mode-j momentum block: q^a p^b q = q^{a+1} p^b - i b q^a p^{b-1}.
void rmul_generator(NcPoly::TermMap& acc, VarId v, int modes) {
  NcPoly::TermMap out;
  auto add = [&out](const Monomial& mono, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = out.emplace(mono, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) out.erase(it);
    }
  };
  int idx = v.index(modes);
  if (v.kind == VarKind::momentum) {
    for (const auto& [mono, c] : acc) add(mono.bumped(idx, 1), c);
  } else {
    int pidx = modes + v.mode - 1;
    for (const auto& [mono, c] : acc) {
      add(mono.bumped(idx, 1), c);
      int b = mono.exp(pidx);
      if (b > 0) {
        Scalar corr = c * Scalar(Rational(0), Rational(-b));
        add(mono.bumped(pidx, -1), corr);
      }
    }
  }
  acc = std::move(out);
}

}  // namespace

void NcPoly::enforce_cap() {
  if (!cap_) return;
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->first.degree() > *cap_) {
      it = terms_.erase(it);
      truncated_ = true;
    } else {
      ++it;
    }
  }
}

NcPoly NcPoly::with_cap(std::optional<int> cap) const {
  NcPoly r = *this;
  r.cap_ = cap;
  r.enforce_cap();
  return r;
}

NcPoly operator+(const NcPoly& a, const NcPoly& b) {
  Meta meta = merge_meta(a, b);
  NcPoly r(meta.modes, meta.cap);
  r.truncated_ = meta.truncated;
  r.terms_ = a.terms_;
  for (const auto& [mono, c] : b.terms_) r.add_term(mono, c);
  r.enforce_cap();
  return r;
}

NcPoly operator-(const NcPoly& a, const NcPoly& b) { return a + (-b); }

NcPoly operator*(const Scalar& c, const NcPoly& a) {
  NcPoly r(a.modes_, a.cap_);
  r.truncated_ = a.truncated_;
  if (c.is_zero()) return r;
  for (const auto& [mono, k] : a.terms_) r.terms_.emplace(mono, c * k);
  return r;
}

NcPoly operator*(const NcPoly& a, const NcPoly& b) {
  Meta meta = merge_meta(a, b);
  NcPoly r(meta.modes, meta.cap);
  r.truncated_ = meta.truncated;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      NcPoly::TermMap piece;
      piece.emplace(ma, ca * cb);
      for (VarId v : mb.factors()) rmul_generator(piece, v, meta.modes);
      for (const auto& [mono, c] : piece) r.add_term(mono, c);
    }
  }
  r.enforce_cap();
  return r;
}

NcPoly NcPoly::pow(int k) const {
  NcPoly r = NcPoly::constant(Scalar(1), modes_, cap_);
  for (int j = 0; j < k; ++j) r = r * *this;
  return r;
}

NcPoly normal_order(const Word& w, std::optional<int> cap) {
  if (cap && static_cast<int>(w.factors.size()) > *cap) {
    throw DegreeOverflow("word of length " + std::to_string(w.factors.size()) +
                         " exceeds degree cap " + std::to_string(*cap));
  }
  NcPoly r(w.modes, cap);
  if (w.coeff.is_zero()) return r;
  NcPoly::TermMap acc;
  acc.emplace(Monomial(w.modes), w.coeff);
  for (VarId v : w.factors) {
    if (v.mode < 1 || v.mode > w.modes) {
      throw ModeMismatch("word references mode " + std::to_string(v.mode) +
                         " in a " + std::to_string(w.modes) + "-mode system");
    }
    rmul_generator(acc, v, w.modes);
  }
  for (const auto& [mono, c] : acc) r.add_term(mono, c);
  return r;
}

NcPoly adjoint(const NcPoly& a) {
  NcPoly r(a.modes_, a.cap_);
  r.truncated_ = a.truncated_;
  for (const auto& [mono, c] : a.terms_) {
    Word w;
    w.modes = a.modes_;
    w.coeff = c.conj();
    std::vector<VarId> fs = mono.factors();
    w.factors.assign(fs.rbegin(), fs.rend());
    NcPoly piece = normal_order(w);
    for (const auto& [m2, c2] : piece.terms()) r.add_term(m2, c2);
  }
  return r;
}

NcPoly commutator(const NcPoly& a, const NcPoly& b) { return a * b - b * a; }

NcPoly herm(const NcPoly& a) { return half() * (a + adjoint(a)); }

NcPoly antiherm(const NcPoly& a) { return half() * (a - adjoint(a)); }

bool is_self_adjoint(const NcPoly& a) { return adjoint(a) == a; }

namespace {

// One rendered term. Pure real and pure imaginary coefficients carry their
// sign into the joining +/-; mixed coefficients render parenthesized.
void render_term(std::string& out, const Monomial& mono, const Scalar& c) {
  bool first = out.empty();
  std::string body;
  int sgn = 1;
  if (c.is_real() || c.is_imaginary()) {
    const Rational& part = c.is_real() ? c.re() : c.im();
    sgn = part.sign();
    Rational mag = part.abs();
    if (c.is_real()) {
      body = mag.is_one() && !mono.is_constant() ? "" : mag.str();
    } else {
      body = mag.is_one() ? "i" : mag.str() + "*i";
    }
  } else {
    body = "(" + c.str() + ")";
  }
  if (!mono.is_constant()) {
    if (!body.empty()) body += "*";
    body += mono.str();
  }
  if (first) {
    out = (sgn < 0 ? "-" : "") + body;
  } else {
    out += (sgn < 0 ? " - " : " + ") + body;
  }
}

}  // namespace

std::string NcPoly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [mono, c] : terms_) render_term(out, mono, c);
  return out;
}

}  // namespace qsde
