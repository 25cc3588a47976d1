// End-to-end CLI checks against golden files.
// Usage: cli_golden <path-to-qsde-binary> <golden-dir>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run(const std::string& cmd) {
  RunResult r;
  FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) r.output.append(buf, n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int failures = 0;

void expect(bool ok, const std::string& what, const std::string& detail = "") {
  if (ok) {
    std::cout << "ok: " << what << "\n";
  } else {
    ++failures;
    std::cout << "FAIL: " << what << "\n";
    if (!detail.empty()) std::cout << detail << "\n";
  }
}

void expect_output(const RunResult& r, int code, const std::string& exact,
                   const std::string& what) {
  expect(r.exit_code == code && r.output == exact, what,
         "  exit " + std::to_string(r.exit_code) + "\n  got:      [" + r.output +
             "]\n  expected: [" + exact + "]");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: cli_golden <qsde-binary> <golden-dir>\n";
    return 2;
  }
  std::string bin = argv[1];
  std::string golden = argv[2];

  expect_output(run(bin + " simplify \"p*q\""), 0, "q*p - i\n", "simplify p*q");
  expect_output(run(bin + " simplify \"q*p - p*q\""), 0, "i\n", "simplify commutator");
  expect_output(run(bin + " simplify \"q^2*p\" --adjoint"), 0, "q^2*p - 2*i*q\n",
                "simplify --adjoint");
  expect_output(run(bin + " simplify \"q*p\" --herm"), 0, "q*p - 1/2*i\n",
                "simplify --herm");
  expect_output(run(bin + " simplify \"q^3\" --deriv q"), 0, "3*q^2\n",
                "simplify --deriv");
  expect_output(run(bin + " simplify \"q*p\" --zint q"), 0, "1/2*q^2*p\n",
                "simplify --zint");
  expect_output(run(bin + " simplify \"cos(q)\" --cap 4"), 0,
                "1/24*q^4 - 1/2*q^2 + 1\n", "simplify cos series");

  {
    RunResult r = run(bin + " check " + golden + "/linear_ok.json");
    expect(r.exit_code == 0 && r.output.find("verdict: realizable") != std::string::npos &&
               r.output.find("H = 1/2*q^2 + 1/2*p^2 - q*p + 1/2*i") != std::string::npos &&
               r.output.find("L[1] = q + i*p") != std::string::npos,
           "check linear_ok", "  exit " + std::to_string(r.exit_code) + "\n" + r.output);
  }
  {
    RunResult r = run(bin + " check --json " + golden + "/linear_ok.json");
    expect_output(r, 0, slurp(golden + "/linear_ok.check.json"), "check --json golden");
  }
  {
    RunResult r = run(bin + " check " + golden + "/linear_bad.json");
    expect(r.exit_code == 1 && r.output.find("not realizable") != std::string::npos,
           "check linear_bad exits 1", r.output);
  }
  {
    RunResult r = run(bin + " check --fL " + golden + "/linear_ok.json");
    expect(r.exit_code == 0 && r.output.find("f_L[1] = -q") != std::string::npos &&
               r.output.find("f_L[2] = -p") != std::string::npos,
           "check --fL", r.output);
  }
  {
    RunResult r = run(bin + " check --verify-fock " + golden + "/linear_ok.json");
    expect(r.exit_code == 0 && r.output.find("fock residual") != std::string::npos &&
               r.output.find("(ok)") != std::string::npos,
           "check --verify-fock", r.output);
  }
  {
    RunResult r = run(bin + " synthesize --f1 q^3 --g1=-1 --g2=-i");
    expect(r.exit_code == 0 &&
               r.output.find("f2 = -3*q^2*p + 3*i*q - 2*p") != std::string::npos,
           "synthesize q^3", r.output);
  }
  {
    RunResult r = run(bin + " synthesize --json --f1 q^3 --g1=-1 --g2=-i");
    expect_output(r, 0, slurp(golden + "/q3_synth.json"), "synthesize --json golden");
  }
  {
    RunResult r = run(bin + " synthesize --f1 \"cos(q)\" --cap 8 --g1=-1 --g2=-i");
    expect(r.exit_code == 0 && r.output.find("f2 = ") != std::string::npos,
           "synthesize cos(q) cap 8", r.output);
  }
  {
    RunResult r = run(bin + " synthesize --direction f1 --f2 \"-3*q^2*p + 3*i*q - 2*p\" --g1=-1 --g2=-i");
    expect(r.exit_code == 0 && r.output.find("f1 = q^3") != std::string::npos,
           "synthesize mirrored direction", r.output);
  }
  {
    RunResult r = run(bin + " check " + golden + "/two_mode.json");
    expect(r.exit_code == 0 && r.output.find("verdict: realizable") != std::string::npos &&
               r.output.find("L[1] = q1") != std::string::npos &&
               r.output.find("H = q1*q2") != std::string::npos,
           "check two-mode model", r.output);
  }
  {
    RunResult r = run(bin + " check " + golden + "/missing.json");
    expect(r.exit_code == 2, "missing model exits 2", r.output);
  }
  {
    RunResult r = run(bin + " simplify \"0.5*q\"");
    expect(r.exit_code == 2, "float literal exits 2", r.output);
  }
  {
    RunResult r = run(bin + " synthesize --g1=-1");
    expect(r.exit_code == 2, "missing required option exits 2", r.output);
  }
  {
    RunResult r = run(bin + " synthesize --f1 q^3 --g1=q --g2=0");
    expect(r.exit_code == 1, "non-conservative g exits 1", r.output);
  }

  std::cout << (failures == 0 ? "all cli checks passed\n"
                              : std::to_string(failures) + " cli check(s) failed\n");
  return failures == 0 ? 0 : 1;
}
