#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qsde/realize.hpp"
#include "qsde/synth.hpp"

namespace qsde {

// On-disk model format. All entries are expression strings; S and C entries
// must elaborate to scalars. degree_cap feeds the series expansion of any
// cos/sin/exp appearing in f or g.
struct ModelFile {
  QsdeModel model;
  std::vector<Scalar> C;  // empty means zeros
  std::optional<int> degree_cap;
};

ModelFile load_model_file(const std::string& path);
ModelFile parse_model_json(const std::string& text);

std::string report_to_json(const RealizabilityReport& rep, const QsdeModel& model,
                           const PreservationReport* preservation);
std::string report_to_text(const RealizabilityReport& rep, const QsdeModel& model,
                           const PreservationReport* preservation,
                           const std::vector<NcPoly>* fL);
std::string synthesis_to_json(const SynthesisResult& res);

}  // namespace qsde
