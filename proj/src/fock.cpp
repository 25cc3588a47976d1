#include "qsde/fock.hpp"

#include <cmath>

#include "qsde/errors.hpp"

namespace qsde {

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  std::size_t n = a.size();
  CMatrix r(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      std::complex<double> aik = a.at(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) r.at(i, j) += aik * b.at(k, j);
    }
  }
  return r;
}

CMatrix operator-(const CMatrix& a, const CMatrix& b) {
  std::size_t n = a.size();
  CMatrix r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r.at(i, j) = a.at(i, j) - b.at(i, j);
  return r;
}

CMatrix& CMatrix::add_scaled(const std::complex<double>& c, const CMatrix& o) {
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += c * o.a_[k];
  return *this;
}

namespace {

// Single-mode q and p on an N-dimensional Fock space.
std::pair<CMatrix, CMatrix> single_mode_qp(std::size_t n) {
  CMatrix a(n), adag(n);
  for (std::size_t k = 1; k < n; ++k) {
    double s = std::sqrt(static_cast<double>(k));
    a.at(k - 1, k) = s;
    adag.at(k, k - 1) = s;
  }
  double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CMatrix q(n), p(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::complex<double> sum = a.at(i, j) + adag.at(i, j);
      std::complex<double> diff = a.at(i, j) - adag.at(i, j);
      q.at(i, j) = inv_sqrt2 * sum;
      p.at(i, j) = std::complex<double>(0.0, -inv_sqrt2) * diff;
    }
  }
  return {q, p};
}

std::size_t total_dim(const FockConfig& cfg) {
  std::size_t d = 1;
  for (int k = 0; k < cfg.modes; ++k) d *= cfg.dim;
  return d;
}

// dest += c * (A kron B)
void kron_add(CMatrix& dest, std::complex<double> c, const CMatrix& a, const CMatrix& b) {
  std::size_t na = a.size(), nb = b.size();
  for (std::size_t ia = 0; ia < na; ++ia) {
    for (std::size_t ja = 0; ja < na; ++ja) {
      std::complex<double> ca = c * a.at(ia, ja);
      if (ca == 0.0) continue;
      for (std::size_t ib = 0; ib < nb; ++ib) {
        for (std::size_t jb = 0; jb < nb; ++jb) {
          dest.at(ia * nb + ib, ja * nb + jb) += ca * b.at(ib, jb);
        }
      }
    }
  }
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix r(a.size() * b.size());
  kron_add(r, 1.0, a, b);
  return r;
}

// Per-mode power table q^e p^f for the exponents a monomial uses.
struct ModePowers {
  std::vector<CMatrix> qpow, ppow;
  CMatrix term(int eq, int ep) const {
    return qpow[static_cast<std::size_t>(eq)] * ppow[static_cast<std::size_t>(ep)];
  }
};

ModePowers mode_powers(std::size_t n, int max_exp) {
  auto [q, p] = single_mode_qp(n);
  ModePowers mp;
  mp.qpow.push_back(CMatrix::identity(n));
  mp.ppow.push_back(CMatrix::identity(n));
  for (int k = 1; k <= max_exp; ++k) {
    mp.qpow.push_back(mp.qpow.back() * q);
    mp.ppow.push_back(mp.ppow.back() * p);
  }
  return mp;
}

}  // namespace

std::vector<CMatrix> generator_matrices(const FockConfig& cfg) {
  auto [q, p] = single_mode_qp(cfg.dim);
  CMatrix id = CMatrix::identity(cfg.dim);
  std::vector<CMatrix> out;
  for (int kind = 0; kind < 2; ++kind) {
    for (int mode = 0; mode < cfg.modes; ++mode) {
      CMatrix acc = CMatrix::identity(1);
      for (int slot = 0; slot < cfg.modes; ++slot) {
        const CMatrix& factor = slot == mode ? (kind == 0 ? q : p) : id;
        acc = kron(acc, factor);
      }
      out.push_back(std::move(acc));
    }
  }
  return out;
}

CMatrix evaluate(const NcPoly& x, const FockConfig& cfg) {
  if (x.modes() != cfg.modes) throw ModeMismatch("fock config mode count differs");
  int maxdeg = x.degree();
  if (static_cast<std::size_t>(maxdeg) + 2 > cfg.dim) {
    throw DegreeTooHighForDim("degree " + std::to_string(maxdeg) +
                              " needs dim >= " + std::to_string(maxdeg + 2));
  }
  ModePowers mp = mode_powers(cfg.dim, maxdeg);
  CMatrix result(total_dim(cfg));
  for (const auto& [mono, c] : x.terms()) {
    std::complex<double> coeff = c.to_complex();
    if (cfg.modes == 1) {
      result.add_scaled(coeff, mp.term(mono.exp(0), mono.exp(1)));
    } else {
      CMatrix acc = mp.term(mono.exp(0), mono.exp(cfg.modes));
      for (int mode = 1; mode < cfg.modes; ++mode) {
        const CMatrix part = mp.term(mono.exp(mode), mono.exp(cfg.modes + mode));
        if (mode + 1 < cfg.modes) {
          acc = kron(acc, part);
        } else {
          kron_add(result, coeff, acc, part);
        }
      }
    }
  }
  return result;
}

CMatrix evaluate_word(const Word& w, const FockConfig& cfg) {
  if (w.modes != cfg.modes) throw ModeMismatch("fock config mode count differs");
  if (w.factors.size() + 2 > cfg.dim) {
    throw DegreeTooHighForDim("word length " + std::to_string(w.factors.size()) +
                              " needs dim >= " + std::to_string(w.factors.size() + 2));
  }
  std::vector<CMatrix> gens = generator_matrices(cfg);
  CMatrix acc = CMatrix::identity(total_dim(cfg));
  for (VarId v : w.factors) acc = acc * gens[static_cast<std::size_t>(v.index(cfg.modes))];
  CMatrix result(total_dim(cfg));
  result.add_scaled(w.coeff.to_complex(), acc);
  return result;
}

double block_residual(const CMatrix& ex, const CMatrix& ey, int maxdeg,
                      const FockConfig& cfg) {
  long width = static_cast<long>(cfg.dim) - maxdeg - 1;
  if (width <= 0) throw DegreeTooHighForDim("no reliable inner block at this dimension");
  std::size_t b = static_cast<std::size_t>(width);

  // Row/column indices whose every per-mode digit is below the block width.
  auto inner = [&](std::size_t flat) {
    for (int k = 0; k < cfg.modes; ++k) {
      if (flat % cfg.dim >= b) return false;
      flat /= cfg.dim;
    }
    return true;
  };
  std::size_t n = ex.size();
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k < n; ++k)
    if (inner(k)) idx.push_back(k);

  double worst = 0.0;
  for (std::size_t i : idx)
    for (std::size_t j : idx) worst = std::max(worst, std::abs(ex.at(i, j) - ey.at(i, j)));
  return worst;
}

double residual(const NcPoly& x, const NcPoly& y, const FockConfig& cfg) {
  int maxdeg = std::max(x.degree(), y.degree());
  return block_residual(evaluate(x, cfg), evaluate(y, cfg), maxdeg, cfg);
}

bool agree(const NcPoly& x, const NcPoly& y, const FockConfig& cfg) {
  return residual(x, y, cfg) < cfg.tol;
}

}  // namespace qsde
