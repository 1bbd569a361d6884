#pragma once

#include <string>
#include <utility>
#include <vector>

#include "casimir/lifshitz.hpp"
#include "json.hpp"

namespace casimir {

// Parse the key-value config format into a JSON tree.
//
//   top_key = 1.5
//   [plate1]
//   preset = "classical-au"        # strings may also be bare words
//   [[plate1.layers]]
//   thickness = 3e-8               # meters
//   omega_p = "9 eV"               # frequencies take an eV/rad_s suffix
//
// `[name]` opens a table, `[[name]]` appends to an array of tables, `#`
// starts a comment.  Values are numbers, booleans, strings (quoted or bare
// words, including the `<number> <unit>` frequency form), or flat arrays.
nlohmann::json parse_config_text(const std::string& text);
nlohmann::json parse_config_file(const std::string& path);

// Frequency values: plain numbers are rad/s; strings carry a unit,
// "0.02 eV" or "3e13 rad_s".
double parse_frequency(const nlohmann::json& value, const std::string& context);

ImagAxisMode mode_from_string(const std::string& name);
std::string to_string(ImagAxisMode mode);

DielectricModel model_from_json(const nlohmann::json& section,
                                const std::string& context);
LayerStack stack_from_json(const nlohmann::json& section,
                           const std::string& context);
SweepSpec sweep_from_json(const nlohmann::json& section);
QuadratureConfig quadrature_from_json(const nlohmann::json& section);

struct OutputSpec {
  std::string csv;
  std::string svg;
};

struct RunConfig {
  PlateConfig plate1;
  PlateConfig plate2;
  SweepSpec sweep;
  QuadratureConfig quadrature;
  ImagAxisMode mode = ImagAxisMode::Substitute;
  OutputSpec output;
};

// Assemble the plate-pair configuration used by the eta command; [plate2]
// may be omitted to mirror [plate1].
RunConfig run_config_from_json(const nlohmann::json& root);

// Flat key/value listing of resolved settings, for the CSV header.
using MetadataList = std::vector<std::pair<std::string, std::string>>;
void describe_model(const DielectricModel& model, const std::string& prefix,
                    MetadataList& out);
void describe_stack(const LayerStack& stack, const std::string& prefix,
                    MetadataList& out);
void describe_sweep(const SweepSpec& sweep, MetadataList& out);
void describe_quadrature(const QuadratureConfig& quad, MetadataList& out);

std::string format_number(double value);  // 17 significant digits

}  // namespace casimir
