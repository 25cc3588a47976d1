#include "qsde/realize.hpp"

#include <utility>

#include "qsde/errors.hpp"

namespace qsde {

ScalarMatrix operator*(const ScalarMatrix& a, const ScalarMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matrix product shape");
  ScalarMatrix r(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k)
      for (int j = 0; j < b.cols(); ++j) r.at(i, j) += a.at(i, k) * b.at(k, j);
  return r;
}

ScalarMatrix operator+(const ScalarMatrix& a, const ScalarMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch("matrix sum shape");
  ScalarMatrix r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j) + b.at(i, j);
  return r;
}

bool operator==(const ScalarMatrix& a, const ScalarMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (a.at(i, j) != b.at(i, j)) return false;
  return true;
}

bool ScalarMatrix::is_unitary() const {
  if (rows_ != cols_) return false;
  ScalarMatrix id = identity(rows_);
  return *this * dagger() == id && dagger() * *this == id;
}

ScalarMatrix sigma(int m) {
  ScalarMatrix s(2 * m, 2 * m);
  for (int i = 0; i < m; ++i) {
    s.at(i, m + i) = Scalar(1);
    s.at(m + i, i) = Scalar(-1);
  }
  return s;
}

std::string to_string(FailStage s) {
  switch (s) {
    case FailStage::none: return "ok";
    case FailStage::f_not_self_adjoint: return "f_not_self_adjoint";
    case FailStage::g_not_conservative: return "g_not_conservative";
    case FailStage::fC_not_conservative: return "fC_not_conservative";
  }
  return "?";
}

namespace {

NcPoly gen_poly(int idx, int m) { return NcPoly::generator(VarId::from_index(idx, m), m); }

// Integration order of the symplectic axes matching the coupling formula:
// the -q axes (entries m..2m-1) integrate first, the p axes after.
std::vector<int> q_first_perm(int m) {
  std::vector<int> perm;
  for (int i = m; i < 2 * m; ++i) perm.push_back(i);
  for (int i = 0; i < m; ++i) perm.push_back(i);
  return perm;
}

std::vector<NcPoly> column(const PolyMatrix& g, int k) {
  std::vector<NcPoly> col;
  col.reserve(g.size());
  for (const auto& row : g) col.push_back(row[static_cast<std::size_t>(k)].without_cap());
  return col;
}

void require_shape(const QsdeModel& model) {
  std::size_t rows = 2 * static_cast<std::size_t>(model.modes);
  if (model.f.size() != rows) throw DimensionMismatch("f must have 2m entries");
  if (model.g.size() != rows) throw DimensionMismatch("g must have 2m rows");
  for (const auto& row : model.g) {
    if (row.size() != static_cast<std::size_t>(model.channels))
      throw DimensionMismatch("g must have n columns");
  }
  if (model.S.rows() != model.channels || model.S.cols() != model.channels)
    throw DimensionMismatch("S must be n x n");
}

}  // namespace

CurlReport commutator_conservative_report(std::span<const NcPoly> j, int m) {
  return curl_test(j, AxisMap::symplectic(m));
}

bool is_commutator_conservative(std::span<const NcPoly> j, int m) {
  return commutator_conservative_report(j, m).ok;
}

NcPoly potential_operator(std::span<const NcPoly> j, int m) {
  AxisMap axis = AxisMap::symplectic(m);
  CurlReport rep = curl_test(j, axis);
  if (!rep.ok) {
    throw NotConservative("mapping is not commutator-conservative (" +
                          std::to_string(rep.failures.size()) + " failing pair(s))");
  }
  std::vector<int> perm = q_first_perm(m);
  NcPoly J = potential_from_gradient(j, axis, perm);
  // j = -i[x, J] entrywise, recomputed.
  for (int i = 0; i < 2 * m; ++i) {
    NcPoly back = -(Scalar::i() * commutator(gen_poly(i, m), J));
    if (back != j[static_cast<std::size_t>(i)].without_cap()) {
      throw InternalContractViolation("potential_operator: commutator recomputation mismatch");
    }
  }
  return J;
}

NcPoly hermitianize_potential(const NcPoly& J) {
  NcPoly a = antiherm(J);
  if (!a.is_constant()) {
    throw NotHermitianizable("antihermitian part of the potential is not constant");
  }
  return herm(J);
}

CouplingResult compute_Z_L(const PolyMatrix& g, const ScalarMatrix& S,
                           std::span<const Scalar> C) {
  if (g.empty() || g.front().empty()) throw DimensionMismatch("empty diffusion matrix");
  int m = static_cast<int>(g.size()) / 2;
  int n = static_cast<int>(g.front().size());
  if (!C.empty() && static_cast<int>(C.size()) != n)
    throw DimensionMismatch("C must have n entries");
  if (S.rows() != n || S.cols() != n) throw DimensionMismatch("S must be n x n");
  if (!S.is_unitary()) throw InvalidS("scattering matrix is not unitary");

  CouplingResult out;
  for (int k = 0; k < n; ++k) {
    std::vector<NcPoly> col = column(g, k);
    CurlReport rep = commutator_conservative_report(col, m);
    if (!rep.ok) {
      throw NotConservative("diffusion column " + std::to_string(k + 1) +
                            " is not commutator-conservative");
    }
    out.Z.push_back(potential_operator(col, m));
  }
  // L = -i S (Z + C)
  for (int j = 0; j < n; ++j) {
    NcPoly acc = NcPoly::zero(m);
    for (int r = 0; r < n; ++r) {
      NcPoly zc = out.Z[static_cast<std::size_t>(r)];
      if (!C.empty()) zc += NcPoly::constant(C[static_cast<std::size_t>(r)], m);
      acc += S.at(j, r) * zc;
    }
    out.L.push_back(-(Scalar::i() * acc));
  }
  // g = [x, L^T] S* must hold exactly.
  for (int i = 0; i < 2 * m; ++i) {
    for (int l = 0; l < n; ++l) {
      NcPoly back = NcPoly::zero(m);
      for (int j = 0; j < n; ++j) {
        back += S.at(j, l).conj() *
                commutator(gen_poly(i, m), out.L[static_cast<std::size_t>(j)]);
      }
      if (back != g[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)].without_cap()) {
        throw InternalContractViolation("compute_Z_L: g = [x, L^T] S* verification failed");
      }
    }
  }
  return out;
}

std::vector<NcPoly> compute_fL(const PolyMatrix& g, std::span<const NcPoly> L,
                               const ScalarMatrix& S) {
  if (g.empty()) throw DimensionMismatch("empty diffusion matrix");
  int m = static_cast<int>(g.size()) / 2;
  int n = static_cast<int>(g.front().size());
  if (static_cast<int>(L.size()) != n) throw DimensionMismatch("L must have n entries");
  if (S.rows() != n || S.cols() != n) throw DimensionMismatch("S must be n x n");

  std::vector<NcPoly> fL;
  for (int i = 0; i < 2 * m; ++i) {
    NcPoly acc = NcPoly::zero(m);
    for (int k = 0; k < n; ++k) {
      NcPoly Lk_adj = adjoint(L[static_cast<std::size_t>(k)].without_cap());
      for (int l = 0; l < n; ++l) {
        const NcPoly gil = g[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)].without_cap();
        acc += S.at(k, l) * (Lk_adj * gil);
        acc += S.at(k, l).conj() * (adjoint(gil) * L[static_cast<std::size_t>(k)].without_cap());
      }
    }
    fL.push_back(half() * acc);
  }
  return fL;
}

namespace {

NcPoly normalize_hamiltonian(const NcPoly& H) {
  // Constants are physically irrelevant phases; pin the real part to zero.
  Scalar c = H.constant_term();
  return H - NcPoly::constant(Scalar(c.re()), H.modes());
}

}  // namespace

RealizabilityReport check_realizable(const QsdeModel& model, std::span<const Scalar> C) {
  require_shape(model);
  if (!model.S.is_unitary()) throw InvalidS("scattering matrix is not unitary");

  RealizabilityReport rep;
  int m = model.modes;
  int n = model.channels;

  for (int i = 0; i < 2 * m; ++i) {
    if (!is_self_adjoint(model.f[static_cast<std::size_t>(i)])) {
      rep.bad_f_indices.push_back(i);
    }
  }
  if (!rep.bad_f_indices.empty()) {
    rep.stage = FailStage::f_not_self_adjoint;
    return rep;
  }

  bool g_ok = true;
  std::vector<CurlReport> g_reports;
  for (int k = 0; k < n; ++k) {
    std::vector<NcPoly> col = column(model.g, k);
    CurlReport r = commutator_conservative_report(col, m);
    g_ok = g_ok && r.ok;
    g_reports.push_back(std::move(r));
  }
  if (!g_ok) {
    rep.stage = FailStage::g_not_conservative;
    rep.curl_details = std::move(g_reports);
    return rep;
  }

  CouplingResult zl = compute_Z_L(model.g, model.S, C);
  std::vector<NcPoly> fL = compute_fL(model.g, zl.L, model.S);

  std::vector<NcPoly> fC;
  for (int i = 0; i < 2 * m; ++i) {
    fC.push_back(model.f[static_cast<std::size_t>(i)].without_cap() -
                 fL[static_cast<std::size_t>(i)]);
  }
  CurlReport fc_rep = commutator_conservative_report(fC, m);
  if (!fc_rep.ok) {
    rep.stage = FailStage::fC_not_conservative;
    rep.curl_details.push_back(std::move(fc_rep));
    return rep;
  }

  NcPoly H = normalize_hamiltonian(hermitianize_potential(potential_operator(fC, m)));

  Realization real;
  real.H = H;
  real.L = zl.L;
  real.S = model.S;
  real.C_used.assign(C.begin(), C.end());
  if (real.C_used.empty()) real.C_used.assign(static_cast<std::size_t>(n), Scalar());

  auto [f_back, g_back] = reconstruct_fg(real, m);
  for (int i = 0; i < 2 * m; ++i) {
    if (f_back[static_cast<std::size_t>(i)] != model.f[static_cast<std::size_t>(i)].without_cap())
      throw InternalContractViolation("check_realizable: drift round-trip failed");
    for (int k = 0; k < n; ++k) {
      if (g_back[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] !=
          model.g[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)].without_cap())
        throw InternalContractViolation("check_realizable: diffusion round-trip failed");
    }
  }

  rep.realizable = true;
  rep.stage = FailStage::none;
  rep.realization = std::move(real);
  return rep;
}

std::pair<std::vector<NcPoly>, PolyMatrix> reconstruct_fg(const Realization& r, int modes) {
  int n = static_cast<int>(r.L.size());
  if (!r.S.is_unitary()) throw InvalidS("scattering matrix is not unitary");
  PolyMatrix g(2 * static_cast<std::size_t>(modes));
  for (int i = 0; i < 2 * modes; ++i) {
    auto& row = g[static_cast<std::size_t>(i)];
    for (int l = 0; l < n; ++l) {
      NcPoly acc = NcPoly::zero(modes);
      for (int j = 0; j < n; ++j) {
        acc += r.S.at(j, l).conj() *
               commutator(gen_poly(i, modes), r.L[static_cast<std::size_t>(j)].without_cap());
      }
      row.push_back(acc);
    }
  }
  std::vector<NcPoly> fL = compute_fL(g, r.L, r.S);
  std::vector<NcPoly> f;
  for (int i = 0; i < 2 * modes; ++i) {
    f.push_back(-(Scalar::i() * commutator(gen_poly(i, modes), r.H.without_cap())) +
                fL[static_cast<std::size_t>(i)]);
  }
  return {std::move(f), std::move(g)};
}

bool PreservationReport::a_total_zero() const {
  for (const auto& row : A_total)
    for (const auto& e : row)
      if (!e.is_zero()) return false;
  return true;
}

namespace {
bool all_zero_channels(const std::vector<PolyMatrix>& bs) {
  for (const auto& mat : bs)
    for (const auto& row : mat)
      for (const auto& e : row)
        if (!e.is_zero()) return false;
  return true;
}
}  // namespace

bool PreservationReport::b1_zero() const { return all_zero_channels(B1); }
bool PreservationReport::b2_zero() const { return all_zero_channels(B2); }

PreservationReport commutation_preservation(const QsdeModel& model) {
  require_shape(model);
  int m = model.modes;
  int n = model.channels;
  int d = 2 * m;

  auto zero_matrix = [&] {
    return PolyMatrix(static_cast<std::size_t>(d),
                      std::vector<NcPoly>(static_cast<std::size_t>(d), NcPoly::zero(m)));
  };

  PreservationReport rep;
  rep.A1 = zero_matrix();
  rep.A2 = zero_matrix();
  rep.A3 = zero_matrix();
  rep.A_total = zero_matrix();

  // f_L needs the coupling operator, which exists only for conservative g.
  std::vector<NcPoly> fL(static_cast<std::size_t>(d), NcPoly::zero(m));
  bool g_conservative = true;
  for (int k = 0; k < n && g_conservative; ++k) {
    g_conservative = is_commutator_conservative(column(model.g, k), m);
  }
  if (g_conservative && model.S.is_unitary()) {
    CouplingResult zl = compute_Z_L(model.g, model.S, {});
    fL = compute_fL(model.g, zl.L, model.S);
  } else {
    rep.fL_defined = false;
  }

  auto x = [&](int i) { return gen_poly(i, m); };
  auto at = [&](const std::vector<NcPoly>& v, int i) -> const NcPoly& {
    return v[static_cast<std::size_t>(i)];
  };

  std::vector<NcPoly> fC;
  for (int i = 0; i < d; ++i) fC.push_back(model.f[static_cast<std::size_t>(i)].without_cap() - at(fL, i));

  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      rep.A1[i][j] = commutator(at(fC, i), x(j)) + commutator(x(i), at(fC, j));
      rep.A2[i][j] = commutator(at(fL, i), x(j)) + commutator(x(i), at(fL, j));
      NcPoly ito = NcPoly::zero(m);
      for (int k = 0; k < n; ++k) {
        const NcPoly gik = model.g[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)].without_cap();
        const NcPoly gjk = model.g[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)].without_cap();
        ito += adjoint(gik) * gjk - adjoint(gjk) * gik;
      }
      rep.A3[i][j] = ito;
      rep.A_total[i][j] = rep.A1[i][j] + rep.A2[i][j] + rep.A3[i][j];
    }
  }

  for (int k = 0; k < n; ++k) {
    PolyMatrix b1 = zero_matrix();
    PolyMatrix b2 = zero_matrix();
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        const NcPoly gik = model.g[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)].without_cap();
        const NcPoly gjk = model.g[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)].without_cap();
        b1[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            commutator(gik, x(j)) + commutator(x(i), gjk);
        b2[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            commutator(adjoint(gik), x(j)) + commutator(x(i), adjoint(gjk));
      }
    }
    rep.B1.push_back(std::move(b1));
    rep.B2.push_back(std::move(b2));
  }
  return rep;
}

QsdeModel LinearModel::to_model() const {
  QsdeModel model;
  model.modes = 1;
  model.channels = 1;
  NcPoly q = NcPoly::generator(VarId::q(), 1);
  NcPoly p = NcPoly::generator(VarId::p(), 1);
  model.f = {Scalar(A[0][0]) * q + Scalar(A[0][1]) * p,
             Scalar(A[1][0]) * q + Scalar(A[1][1]) * p};
  std::vector<Scalar> b = B();
  model.g = {{NcPoly::constant(b[0], 1)}, {NcPoly::constant(b[1], 1)}};
  model.S = ScalarMatrix::identity(1);
  return model;
}

LinearCheckResult linear_check(const LinearModel& lm) {
  LinearCheckResult out;
  ScalarMatrix sg = sigma(1);
  // M = A Sigma + Sigma A^T over scalars.
  ScalarMatrix a(2, 2), at_(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      a.at(i, j) = Scalar(lm.A[i][j]);
      at_.at(i, j) = Scalar(lm.A[j][i]);
    }
  ScalarMatrix msum = a * sg + sg * at_;
  std::vector<Scalar> b = lm.B();
  out.residual = ScalarMatrix(2, 2);
  bool ok = true;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      Scalar r = Scalar::i() * msum.at(i, j) +
                 b[static_cast<std::size_t>(i)].conj() * b[static_cast<std::size_t>(j)] -
                 b[static_cast<std::size_t>(j)].conj() * b[static_cast<std::size_t>(i)];
      out.residual.at(i, j) = r;
      ok = ok && r.is_zero();
    }
  }
  out.matrix_condition_ok = ok;

  out.general = check_realizable(lm.to_model());
  if (out.general.realizable != ok) {
    throw InternalContractViolation("linear_check: matrix condition and pipeline disagree");
  }
  if (ok) {
    // H = 1/4 x^T (Sigma^T A + A^T Sigma) x, normal-ordered and hermitized.
    ScalarMatrix K = sg.dagger() * a + at_ * sg;
    NcPoly H = NcPoly::zero(1);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        if (K.at(i, j).is_zero()) continue;
        Word w;
        w.modes = 1;
        w.coeff = Scalar(Rational(1, 4)) * K.at(i, j);
        w.factors = {VarId::from_index(i, 1), VarId::from_index(j, 1)};
        H += normal_order(w);
      }
    }
    out.H = hermitianize_potential(H);
    if (out.general.realization && out.general.realization->H != out.H) {
      throw InternalContractViolation("linear_check: quarter-form H differs from pipeline H");
    }
  }
  return out;
}

}  // namespace qsde
