#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qsde/calculus.hpp"

namespace qsde {

class ScalarMatrix {
 public:
  ScalarMatrix() : rows_(0), cols_(0) {}
  ScalarMatrix(int rows, int cols)
      : rows_(rows), cols_(cols),
        a_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {}

  static ScalarMatrix identity(int n) {
    ScalarMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Scalar(1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Scalar& at(int i, int j) {
    return a_[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) +
              static_cast<std::size_t>(j)];
  }
  const Scalar& at(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) +
              static_cast<std::size_t>(j)];
  }

  ScalarMatrix dagger() const {
    ScalarMatrix m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) m.at(j, i) = at(i, j).conj();
    return m;
  }

  friend ScalarMatrix operator*(const ScalarMatrix& a, const ScalarMatrix& b);
  friend ScalarMatrix operator+(const ScalarMatrix& a, const ScalarMatrix& b);
  friend bool operator==(const ScalarMatrix& a, const ScalarMatrix& b);
  friend bool operator!=(const ScalarMatrix& a, const ScalarMatrix& b) {
    return !(a == b);
  }

  bool is_unitary() const;

 private:
  int rows_, cols_;
  std::vector<Scalar> a_;
};

// The 2m x 2m symplectic form [0 I; -I 0].
ScalarMatrix sigma(int m);

using PolyMatrix = std::vector<std::vector<NcPoly>>;

// dx = f dt + g dA* + g* dA with constant unitary scattering matrix S.
struct QsdeModel {
  int modes = 1;
  int channels = 1;
  std::vector<NcPoly> f;  // 2m entries
  PolyMatrix g;           // 2m x n
  ScalarMatrix S;         // n x n
};

struct Realization {
  NcPoly H;
  std::vector<NcPoly> L;
  ScalarMatrix S;
  std::vector<Scalar> C_used;
};

enum class FailStage { none, f_not_self_adjoint, g_not_conservative, fC_not_conservative };

std::string to_string(FailStage s);

struct RealizabilityReport {
  bool realizable = false;
  FailStage stage = FailStage::none;
  std::vector<int> bad_f_indices;        // stage f_not_self_adjoint
  std::vector<CurlReport> curl_details;  // per channel, or the single f_C report
  std::optional<Realization> realization;
};

// Curl test along the symplectically rotated axes; ok iff there is a J with
// j = -i[x, J].
CurlReport commutator_conservative_report(std::span<const NcPoly> j, int m);
bool is_commutator_conservative(std::span<const NcPoly> j, int m);

// Constructs J with j = -i[x, J] entrywise (C = 0), integrating the momentum
// rows against q first and the position rows against p last, projected.
NcPoly potential_operator(std::span<const NcPoly> j, int m);

// herm(J), valid when antiherm(J) is constant.
NcPoly hermitianize_potential(const NcPoly& J);

struct CouplingResult {
  std::vector<NcPoly> Z;
  std::vector<NcPoly> L;
};

// Z per channel from the integral construction, then L = -i S (Z + C).
// Verifies g = [x, L^T] S* before returning.
CouplingResult compute_Z_L(const PolyMatrix& g, const ScalarMatrix& S,
                           std::span<const Scalar> C);

// f_L = ((L^dag S g^T)^T + (L^dag S g^T)^dag) / 2, entrywise self-adjoint
// and independent of S for unitary S.
std::vector<NcPoly> compute_fL(const PolyMatrix& g, std::span<const NcPoly> L,
                               const ScalarMatrix& S);

RealizabilityReport check_realizable(const QsdeModel& model,
                                     std::span<const Scalar> C = {});

// Drift and diffusion generated by an (S, L, H) triple:
// f = -i[x,H] + f_L and g = [x, L^T] S*.
std::pair<std::vector<NcPoly>, PolyMatrix> reconstruct_fg(const Realization& r,
                                                          int modes);

// Term groups of d[x, x^T] under the vacuum Ito table. For a physically
// realizable model A1+A2+A3 = 0 and every channel's B1, B2 vanish.
struct PreservationReport {
  PolyMatrix A1, A2, A3, A_total;
  std::vector<PolyMatrix> B1, B2;  // one matrix per channel
  bool fL_defined = true;
  bool a_total_zero() const;
  bool b1_zero() const;
  bool b2_zero() const;
  bool all_zero() const { return a_total_zero() && b1_zero() && b2_zero(); }
};

PreservationReport commutation_preservation(const QsdeModel& model);

// Single-mode linear system dx = Ax dt + B dA* + B* dA with B = i Sigma C.
struct LinearModel {
  Rational A[2][2];
  Scalar c1, c2;

  std::vector<Scalar> B() const {
    return {Scalar::i() * c2, -(Scalar::i() * c1)};
  }
  Rational gamma() const {
    // gamma = -2 Im(conj(c2) c1)
    return Rational(-2) * (c2.conj() * c1).im();
  }
  QsdeModel to_model() const;
};

struct LinearCheckResult {
  bool matrix_condition_ok = false;
  ScalarMatrix residual;  // i(A Sigma + Sigma A^T) + Ito bracket of B
  RealizabilityReport general;
  NcPoly H;  // quarter-form Hamiltonian, set when realizable
};

// Evaluates i(A Sigma + Sigma A^T)_{ij} + (B_i* B_j - B_j* B_i) = 0 and
// cross-validates against the general pipeline; both verdicts must agree.
LinearCheckResult linear_check(const LinearModel& lm);

}  // namespace qsde
