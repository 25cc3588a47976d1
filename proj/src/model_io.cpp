#include "qsde/model_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qsde/errors.hpp"
#include "qsde/parser.hpp"

namespace qsde {

namespace {

using ordered_json = nlohmann::ordered_json;

[[noreturn]] void bad_model(const std::string& what) {
  throw Error("model file: " + what);
}

}  // namespace

ModelFile parse_model_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    bad_model(std::string("invalid JSON: ") + e.what());
  }

  ModelFile out;
  if (!j.contains("modes") || !j["modes"].is_number_integer()) bad_model("missing integer 'modes'");
  if (!j.contains("channels") || !j["channels"].is_number_integer())
    bad_model("missing integer 'channels'");
  int m = j["modes"].get<int>();
  int n = j["channels"].get<int>();
  if (m < 1 || n < 1) bad_model("'modes' and 'channels' must be positive");
  out.model.modes = m;
  out.model.channels = n;

  if (j.contains("degree_cap") && !j["degree_cap"].is_null()) {
    if (!j["degree_cap"].is_number_integer()) bad_model("'degree_cap' must be an integer");
    out.degree_cap = j["degree_cap"].get<int>();
  }

  auto parse_entry = [&](const ordered_json& e, const char* where) {
    if (!e.is_string()) bad_model(std::string(where) + " entries must be expression strings");
    return parse_poly(e.get<std::string>(), m, out.degree_cap);
  };

  if (!j.contains("f") || !j["f"].is_array() ||
      j["f"].size() != static_cast<std::size_t>(2 * m))
    bad_model("'f' must be an array of 2*modes expressions");
  for (const auto& e : j["f"]) out.model.f.push_back(parse_entry(e, "'f'"));

  if (!j.contains("g") || !j["g"].is_array() ||
      j["g"].size() != static_cast<std::size_t>(2 * m))
    bad_model("'g' must be a 2*modes by channels array");
  for (const auto& row : j["g"]) {
    if (!row.is_array() || row.size() != static_cast<std::size_t>(n))
      bad_model("'g' rows must have 'channels' entries");
    std::vector<NcPoly> r;
    for (const auto& e : row) r.push_back(parse_entry(e, "'g'"));
    out.model.g.push_back(std::move(r));
  }

  if (!j.contains("S") || !j["S"].is_array() || j["S"].size() != static_cast<std::size_t>(n))
    bad_model("'S' must be a channels x channels array of scalar strings");
  out.model.S = ScalarMatrix(n, n);
  for (int r = 0; r < n; ++r) {
    const auto& row = j["S"][static_cast<std::size_t>(r)];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(n))
      bad_model("'S' rows must have 'channels' entries");
    for (int c = 0; c < n; ++c) {
      const auto& e = row[static_cast<std::size_t>(c)];
      if (!e.is_string()) bad_model("'S' entries must be scalar strings");
      out.model.S.at(r, c) = parse_scalar(e.get<std::string>());
    }
  }

  if (j.contains("C") && !j["C"].is_null()) {
    if (!j["C"].is_array() || j["C"].size() != static_cast<std::size_t>(n))
      bad_model("'C' must be an array of 'channels' scalar strings");
    for (const auto& e : j["C"]) {
      if (!e.is_string()) bad_model("'C' entries must be scalar strings");
      out.C.push_back(parse_scalar(e.get<std::string>()));
    }
  }
  return out;
}

ModelFile load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open model file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model_json(buf.str());
}

namespace {

ordered_json curl_failures_json(const RealizabilityReport& rep) {
  ordered_json fails = ordered_json::array();
  for (std::size_t ch = 0; ch < rep.curl_details.size(); ++ch) {
    for (const auto& f : rep.curl_details[ch].failures) {
      ordered_json e;
      e["detail"] = rep.curl_details.size() > 1 ? "channel " + std::to_string(ch + 1)
                                                : std::string("f - f_L");
      e["pair"] = {f.i + 1, f.j + 1};
      e["residual"] = f.residual.str();
      fails.push_back(e);
    }
  }
  for (int i : rep.bad_f_indices) {
    ordered_json e;
    e["detail"] = "f entry not self-adjoint";
    e["pair"] = {i + 1, i + 1};
    e["residual"] = "";
    fails.push_back(e);
  }
  return fails;
}

ordered_json matrix_strings(const ScalarMatrix& s) {
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < s.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (int j = 0; j < s.cols(); ++j) row.push_back(s.at(i, j).str());
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

std::string report_to_json(const RealizabilityReport& rep, const QsdeModel& model,
                           const PreservationReport* preservation) {
  ordered_json j;
  j["verdict"] = rep.realizable ? "realizable" : "not_realizable";
  j["stage"] = to_string(rep.stage);
  j["modes"] = model.modes;
  j["channels"] = model.channels;
  if (rep.realization) {
    ordered_json L = ordered_json::array();
    for (const auto& l : rep.realization->L) L.push_back(l.str());
    j["L"] = L;
    j["H"] = rep.realization->H.str();
    j["S"] = matrix_strings(rep.realization->S);
    ordered_json C = ordered_json::array();
    for (const auto& c : rep.realization->C_used) C.push_back(c.str());
    j["C_used"] = C;
  } else {
    j["L"] = nullptr;
    j["H"] = nullptr;
    j["S"] = matrix_strings(model.S);
    j["C_used"] = nullptr;
  }
  if (preservation) {
    ordered_json p;
    p["A_total_zero"] = preservation->a_total_zero();
    p["B1_zero"] = preservation->b1_zero();
    p["B2_zero"] = preservation->b2_zero();
    j["preservation"] = p;
  }
  j["failures"] = curl_failures_json(rep);
  return j.dump(2);
}

std::string report_to_text(const RealizabilityReport& rep, const QsdeModel& model,
                           const PreservationReport* preservation,
                           const std::vector<NcPoly>* fL) {
  std::ostringstream out;
  out << "verdict: " << (rep.realizable ? "realizable" : "not realizable") << "\n";
  if (!rep.realizable) out << "stage: " << to_string(rep.stage) << "\n";
  for (int i : rep.bad_f_indices) out << "f[" << i + 1 << "] is not self-adjoint\n";
  for (std::size_t ch = 0; ch < rep.curl_details.size(); ++ch) {
    for (const auto& f : rep.curl_details[ch].failures) {
      out << "curl residual (" << f.i + 1 << "," << f.j + 1 << "): " << f.residual.str()
          << "\n";
    }
  }
  if (rep.realization) {
    for (std::size_t k = 0; k < rep.realization->L.size(); ++k) {
      out << "L[" << k + 1 << "] = " << rep.realization->L[k].str() << "\n";
    }
    out << "H = " << rep.realization->H.str() << "\n";
  }
  if (fL) {
    for (std::size_t i = 0; i < fL->size(); ++i) {
      out << "f_L[" << i + 1 << "] = " << (*fL)[i].str() << "\n";
    }
  }
  if (preservation) {
    out << "preservation: A1+A2+A3 " << (preservation->a_total_zero() ? "= 0" : "!= 0")
        << ", B1 " << (preservation->b1_zero() ? "= 0" : "!= 0") << ", B2 "
        << (preservation->b2_zero() ? "= 0" : "!= 0") << "\n";
  }
  (void)model;
  return out.str();
}

std::string synthesis_to_json(const SynthesisResult& res) {
  ordered_json j;
  j["verdict"] = "realizable";
  j["f1"] = res.f1.str();
  j["f2"] = res.f2.str();
  ordered_json L = ordered_json::array();
  for (const auto& l : res.realization.L) L.push_back(l.str());
  j["L"] = L;
  j["H"] = res.realization.H.str();
  return j.dump(2);
}

}  // namespace qsde
