#include "qsde/synth.hpp"

#include "qsde/errors.hpp"

namespace qsde {

namespace {

void validate(const SynthesisProblem& prob) {
  if (prob.g.size() != 2) throw DimensionMismatch("g must be a 2-vector");
  if (prob.known.modes() != 1 || prob.g[0].modes() != 1 || prob.g[1].modes() != 1)
    throw ModeMismatch("drift completion is single-mode only");
  if (!is_self_adjoint(prob.known))
    throw Error("known drift component must be self-adjoint");
}

}  // namespace

SynthesisProblem SynthesisProblem::for_f2(NcPoly f1, std::vector<NcPoly> g, Scalar C) {
  return {std::move(f1), SolveFor::f2, std::move(g), C};
}

SynthesisProblem SynthesisProblem::for_f1(NcPoly f2, std::vector<NcPoly> g, Scalar C) {
  return {std::move(f2), SolveFor::f1, std::move(g), C};
}

SynthesisResult complete_drift(const SynthesisProblem& prob) {
  validate(prob);
  int m = 1;
  PolyMatrix g_mat = {{prob.g[0].without_cap()}, {prob.g[1].without_cap()}};
  ScalarMatrix S = ScalarMatrix::identity(1);

  CurlReport g_rep = commutator_conservative_report(
      std::vector<NcPoly>{g_mat[0][0], g_mat[1][0]}, m);
  if (!g_rep.ok) throw NotConservative("diffusion vector is not commutator-conservative");

  std::vector<Scalar> C = {prob.C_choice};
  CouplingResult zl = compute_Z_L(g_mat, S, C);
  std::vector<NcPoly> fL = compute_fL(g_mat, zl.L, S);

  // Work on the conservative component. For the known index k and unknown
  // index u, the curl identity -d f_{c,1}/dq = d f_{c,2}/dp fixes the
  // unknown up to a kernel element, which hermitization pins down.
  bool solve_second = prob.solve_for == SolveFor::f2;
  int known_idx = solve_second ? 0 : 1;
  int unknown_idx = solve_second ? 1 : 0;

  NcPoly fc_known = prob.known.without_cap() - fL[static_cast<std::size_t>(known_idx)];
  NcPoly T = solve_second
                 ? -zero_integral(deriv(fc_known, VarId::q()), VarId::p())
                 : -zero_integral(deriv(fc_known, VarId::p()), VarId::q());

  NcPoly kernel_part = antiherm(T);
  VarId kernel_var = solve_second ? VarId::q() : VarId::p();
  BasisSelector kernel_space = BasisSelector::of({kernel_var}, m);
  if (quotient_part(kernel_part, kernel_space) != NcPoly::zero(m)) {
    throw NotCompletable("no self-adjoint completion: the hermitizing correction "
                         "leaves the derivative kernel");
  }
  NcPoly fc_unknown = herm(T);
  NcPoly completed = fc_unknown + fL[static_cast<std::size_t>(unknown_idx)];

  QsdeModel model;
  model.modes = 1;
  model.channels = 1;
  model.S = S;
  model.f.assign(2, NcPoly::zero(m));
  model.f[static_cast<std::size_t>(known_idx)] = prob.known.without_cap();
  model.f[static_cast<std::size_t>(unknown_idx)] = completed;
  model.g = g_mat;

  RealizabilityReport rep = check_realizable(model, C);
  if (!rep.realizable || !rep.realization) {
    throw InternalContractViolation("complete_drift: assembled model failed the checker");
  }

  SynthesisResult out;
  out.f1 = model.f[0];
  out.f2 = model.f[1];
  out.realization = *rep.realization;
  return out;
}

NcPoly synthesized_hamiltonian(const SynthesisProblem& prob, const NcPoly& completed) {
  SynthesisProblem full = prob;
  SynthesisResult res = complete_drift(full);
  const NcPoly& expected = prob.solve_for == SolveFor::f2 ? res.f2 : res.f1;
  if (completed != expected) {
    throw Error("completed drift does not match this problem");
  }
  return res.realization.H;
}

}  // namespace qsde
