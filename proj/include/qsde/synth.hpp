#pragma once

#include "qsde/realize.hpp"

namespace qsde {

enum class SolveFor { f2, f1 };

// Single-mode drift completion: one drift component is known, the other is
// constructed so the assembled QSDE is physically realizable.
struct SynthesisProblem {
  NcPoly known;                        // the given drift component, self-adjoint
  SolveFor solve_for = SolveFor::f2;   // which component to construct
  std::vector<NcPoly> g;               // 2-vector
  Scalar C_choice;                     // constant in L = -i(Z + C)

  static SynthesisProblem for_f2(NcPoly f1, std::vector<NcPoly> g,
                                 Scalar C = Scalar());
  static SynthesisProblem for_f1(NcPoly f2, std::vector<NcPoly> g,
                                 Scalar C = Scalar());
};

struct SynthesisResult {
  NcPoly f1;
  NcPoly f2;
  Realization realization;
};

// Completes the missing drift component via the zero-integral of the known
// component's cross derivative, hermitized with the unique kernel correction,
// then validates the assembled model end to end.
SynthesisResult complete_drift(const SynthesisProblem& prob);

// Hamiltonian of the completed model, normalized like the checker's output.
NcPoly synthesized_hamiltonian(const SynthesisProblem& prob, const NcPoly& completed);

}  // namespace qsde
