#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "qsde/ncpoly.hpp"

namespace qsde {

// Numerical cross-check backend. Generators become truncated harmonic
// oscillator matrices; identities are compared entrywise on the inner block
// that truncation leaves intact. Floating point lives only here and never
// feeds back into symbolic results.
struct FockConfig {
  std::size_t dim = 40;  // per-mode truncation dimension
  double tol = 1e-9;
  int modes = 1;
};

class CMatrix {
 public:
  CMatrix() : n_(0) {}
  explicit CMatrix(std::size_t n) : n_(n), a_(n * n) {}

  static CMatrix identity(std::size_t n) {
    CMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
  }

  std::size_t size() const { return n_; }
  std::complex<double>& at(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const std::complex<double>& at(std::size_t i, std::size_t j) const {
    return a_[i * n_ + j];
  }

  friend CMatrix operator*(const CMatrix& a, const CMatrix& b);
  friend CMatrix operator-(const CMatrix& a, const CMatrix& b);
  CMatrix& add_scaled(const std::complex<double>& c, const CMatrix& o);

 private:
  std::size_t n_;
  std::vector<std::complex<double>> a_;
};

// Full-size matrices for q_1..q_m, p_1..p_m in canonical order, built from
// a|n> = sqrt(n)|n-1>, q = (a + a^dag)/sqrt(2), p = (a - a^dag)/(i sqrt(2)).
std::vector<CMatrix> generator_matrices(const FockConfig& cfg);

// Substitutes generator matrices into the normal-ordered terms, multiplying
// in written order. Requires degree(X) <= dim - 2.
CMatrix evaluate(const NcPoly& x, const FockConfig& cfg);

// Evaluates a raw word by multiplying factor matrices in written order.
CMatrix evaluate_word(const Word& w, const FockConfig& cfg);

// Max |evaluate(X) - evaluate(Y)| over the inner block of per-mode width
// dim - d - 1, d = max degree; the discarded border absorbs truncation
// artifacts.
double residual(const NcPoly& x, const NcPoly& y, const FockConfig& cfg);

bool agree(const NcPoly& x, const NcPoly& y, const FockConfig& cfg);

// Residual between two already-evaluated matrices on the inner block for
// operators of degree at most maxdeg.
double block_residual(const CMatrix& ex, const CMatrix& ey, int maxdeg,
                      const FockConfig& cfg);

}  // namespace qsde
