#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qsde/calculus.hpp"
#include "qsde/fock.hpp"
#include "qsde/model_io.hpp"
#include "qsde/parser.hpp"
#include "qsde/synth.hpp"

namespace {

using namespace qsde;

constexpr int kExitRealizable = 0;
constexpr int kExitNegative = 1;
constexpr int kExitInputError = 2;

std::vector<Scalar> parse_c_list(const std::string& text, int channels) {
  std::vector<Scalar> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_scalar(item));
  if (static_cast<int>(out.size()) != channels) {
    throw Error("--C needs one scalar per channel");
  }
  return out;
}

// Numerical cross-check of the generator equations by matrix arithmetic.
double fock_residual_for_check(const QsdeModel& model, const Realization& real) {
  FockConfig cfg;
  cfg.modes = model.modes;
  int d = 0;
  for (const auto& f : model.f) d = std::max(d, f.degree());
  for (const auto& row : model.g)
    for (const auto& e : row) d = std::max(d, e.degree());
  d = std::max(d, real.H.degree() + 1);
  for (const auto& l : real.L) d = std::max(d, l.degree() + 1);
  cfg.dim = static_cast<std::size_t>(d + 8);

  std::vector<CMatrix> x = generator_matrices(cfg);
  CMatrix h = evaluate(real.H.without_cap(), cfg);
  std::vector<CMatrix> lmat;
  for (const auto& l : real.L) lmat.push_back(evaluate(l.without_cap(), cfg));
  int n = static_cast<int>(real.L.size());

  double worst = 0.0;
  for (int i = 0; i < 2 * model.modes; ++i) {
    const CMatrix& xi = x[static_cast<std::size_t>(i)];
    // g_il = sum_j conj(S_jl) (x_i L_j - L_j x_i)
    for (int l = 0; l < n; ++l) {
      CMatrix acc(xi.size());
      for (int jj = 0; jj < n; ++jj) {
        CMatrix br = xi * lmat[static_cast<std::size_t>(jj)] -
                     lmat[static_cast<std::size_t>(jj)] * xi;
        acc.add_scaled(real.S.at(jj, l).conj().to_complex(), br);
      }
      CMatrix gil = evaluate(
          model.g[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)].without_cap(), cfg);
      worst = std::max(worst, block_residual(acc, gil, d, cfg));
    }
    // f_i = -i(x_i H - H x_i) + 1/2 sum_k (L_k^dag (x_i L_k - L_k x_i) + h.c.)
    CMatrix drift(xi.size());
    drift.add_scaled({0.0, -1.0}, xi * h - h * xi);
    for (int k = 0; k < n; ++k) {
      const CMatrix& lk = lmat[static_cast<std::size_t>(k)];
      CMatrix lkd(lk.size());
      for (std::size_t a = 0; a < lk.size(); ++a)
        for (std::size_t b = 0; b < lk.size(); ++b) lkd.at(a, b) = std::conj(lk.at(b, a));
      CMatrix br = xi * lk - lk * xi;
      CMatrix brd(br.size());
      for (std::size_t a = 0; a < br.size(); ++a)
        for (std::size_t b = 0; b < br.size(); ++b) brd.at(a, b) = std::conj(br.at(b, a));
      drift.add_scaled(0.5, lkd * br);
      drift.add_scaled(0.5, brd * lk);
    }
    CMatrix fi = evaluate(model.f[static_cast<std::size_t>(i)].without_cap(), cfg);
    worst = std::max(worst, block_residual(drift, fi, d, cfg));
  }
  return worst;
}

int run_check(const std::string& path, bool with_fl, bool verify_fock, bool as_json,
              const std::string& c_text) {
  ModelFile mf = load_model_file(path);
  std::vector<Scalar> C = mf.C;
  if (!c_text.empty()) C = parse_c_list(c_text, mf.model.channels);

  RealizabilityReport rep = check_realizable(mf.model, C);
  PreservationReport pres = commutation_preservation(mf.model);
  std::vector<NcPoly> fL;
  bool have_fl = false;
  if (with_fl && rep.realizable) {
    fL = compute_fL(mf.model.g, rep.realization->L, mf.model.S);
    have_fl = true;
  }

  if (as_json) {
    std::cout << report_to_json(rep, mf.model, &pres) << "\n";
  } else {
    std::cout << report_to_text(rep, mf.model, &pres, have_fl ? &fL : nullptr);
  }
  if (verify_fock && rep.realizable) {
    double r = fock_residual_for_check(mf.model, *rep.realization);
    std::cout << "fock residual: " << r << (r < 1e-9 ? " (ok)" : " (FAIL)") << "\n";
  }
  return rep.realizable ? kExitRealizable : kExitNegative;
}

int run_synthesize(const std::string& f1_text, const std::string& f2_text,
                   const std::string& g1_text, const std::string& g2_text,
                   std::optional<int> cap, const std::string& direction,
                   const std::string& c_text, bool as_json, bool verify_fock) {
  std::vector<NcPoly> g = {parse_poly(g1_text, 1, cap), parse_poly(g2_text, 1, cap)};
  Scalar C;
  if (!c_text.empty()) C = parse_scalar(c_text);

  SynthesisProblem prob;
  if (direction == "f2") {
    if (f1_text.empty()) throw Error("--direction f2 needs --f1");
    prob = SynthesisProblem::for_f2(parse_poly(f1_text, 1, cap), g, C);
  } else if (direction == "f1") {
    if (f2_text.empty()) throw Error("--direction f1 needs --f2");
    prob = SynthesisProblem::for_f1(parse_poly(f2_text, 1, cap), g, C);
  } else {
    throw Error("--direction must be f2 or f1");
  }

  SynthesisResult res = complete_drift(prob);
  if (as_json) {
    std::cout << synthesis_to_json(res) << "\n";
  } else {
    if (direction == "f2") {
      std::cout << "f2 = " << res.f2.str() << "\n";
    } else {
      std::cout << "f1 = " << res.f1.str() << "\n";
    }
    std::cout << "H = " << res.realization.H.str() << "\n";
  }
  if (verify_fock) {
    QsdeModel model;
    model.modes = 1;
    model.channels = 1;
    model.f = {res.f1, res.f2};
    model.g = {{g[0]}, {g[1]}};
    model.S = ScalarMatrix::identity(1);
    double r = fock_residual_for_check(model, res.realization);
    std::cout << "fock residual: " << r << (r < 1e-9 ? " (ok)" : " (FAIL)") << "\n";
  }
  return kExitRealizable;
}

int run_simplify(const std::string& expr, int modes, std::optional<int> cap,
                 bool adj, bool hrm, const std::string& deriv_var,
                 const std::string& zint_var, bool as_json) {
  NcPoly p = parse_poly(expr, modes, cap);
  if (adj) p = adjoint(p);
  if (hrm) p = herm(p);
  auto to_var = [&](const std::string& name) {
    ExprAst ast = parse(name, modes);
    if (ast->kind != ExprNode::Kind::variable) throw Error("expected a variable name");
    return ast->var;
  };
  if (!deriv_var.empty()) p = deriv(p, to_var(deriv_var));
  if (!zint_var.empty()) p = zero_integral(p.without_cap(), to_var(zint_var));
  if (as_json) {
    std::cout << "{\"result\": \"" << p.str() << "\"}\n";
  } else {
    std::cout << p.str() << "\n";
  }
  return kExitRealizable;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symbolic physical-realizability toolkit for canonical-variable QSDEs"};
  app.require_subcommand(1);

  // check
  std::string model_path, check_c;
  bool check_fl = false, check_fock = false, check_json = false;
  CLI::App* check = app.add_subcommand("check", "Decide physical realizability of a model file");
  check->add_option("model", model_path, "model JSON file")->required();
  check->add_flag("--fL", check_fl, "print the Lindblad drift part f_L");
  check->add_flag("--verify-fock", check_fock, "verify the realization numerically");
  check->add_flag("--json", check_json, "emit a machine-readable report");
  check->add_option("--C", check_c, "comma-separated integration constants");

  // synthesize
  std::string f1_text, f2_text, g1_text, g2_text, direction = "f2", synth_c;
  int cap_value = -1;
  bool synth_json = false, synth_fock = false;
  CLI::App* synth = app.add_subcommand("synthesize", "Complete a drift so the QSDE is realizable");
  synth->add_option("--f1", f1_text, "known first drift component");
  synth->add_option("--f2", f2_text, "known second drift component (with --direction f1)");
  synth->add_option("--g1", g1_text, "first diffusion entry")->required();
  synth->add_option("--g2", g2_text, "second diffusion entry")->required();
  synth->add_option("--cap", cap_value, "degree cap for series functions");
  synth->add_option("--direction", direction, "which component to solve for (f2|f1)");
  synth->add_option("--C", synth_c, "integration constant");
  synth->add_flag("--json", synth_json, "emit a machine-readable result");
  synth->add_flag("--verify-fock", synth_fock, "verify the realization numerically");

  // simplify
  std::string expr, deriv_var, zint_var;
  int modes = 1;
  int s_cap_value = -1;
  bool s_adj = false, s_herm = false, s_json = false;
  CLI::App* simp = app.add_subcommand("simplify", "Normal-order an expression");
  simp->add_option("expr", expr, "expression")->required();
  simp->add_option("--modes", modes, "mode count (default 1)");
  simp->add_option("--cap", s_cap_value, "degree cap for series functions");
  simp->add_flag("--adjoint", s_adj, "apply the adjoint");
  simp->add_flag("--herm", s_herm, "take the self-adjoint part");
  simp->add_option("--deriv", deriv_var, "differentiate with respect to a variable");
  simp->add_option("--zint", zint_var, "zero-integrate with respect to a variable");
  simp->add_flag("--json", s_json, "emit a machine-readable result");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  try {
    if (*check) {
      return run_check(model_path, check_fl, check_fock, check_json, check_c);
    }
    if (*synth) {
      std::optional<int> cap;
      if (cap_value >= 0) cap = cap_value;
      return run_synthesize(f1_text, f2_text, g1_text, g2_text, cap, direction, synth_c,
                            synth_json, synth_fock);
    }
    if (*simp) {
      std::optional<int> cap;
      if (s_cap_value >= 0) cap = s_cap_value;
      return run_simplify(expr, modes, cap, s_adj, s_herm, deriv_var, zint_var, s_json);
    }
  } catch (const qsde::NotCompletable& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNegative;
  } catch (const qsde::NotConservative& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNegative;
  } catch (const qsde::SyntaxError& e) {
    std::cerr << "error: " << e.what();
    if (e.position != std::string::npos) std::cerr << " (at offset " << e.position << ")";
    std::cerr << "\n";
    return kExitInputError;
  } catch (const qsde::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
