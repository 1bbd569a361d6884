#include "casimir/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace casimir {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail_line(int line, const std::string& message) {
  throw ConfigError("config line " + std::to_string(line) + ": " + message);
}

// Strip a trailing comment, respecting quoted strings.
std::string strip_comment(const std::string& s) {
  bool quoted = false;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') quoted = !quoted;
    if (s[i] == '#' && !quoted) return s.substr(0, i);
  }
  return s;
}

bool parse_full_number(const std::string& token, double* out) {
  const char* begin = token.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') return false;
  *out = v;
  return true;
}

bool is_bare_word(const std::string& token) {
  if (token.empty()) return false;
  for (char c : token) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
          c == '-' || c == '.' || c == '/')) {
      return false;
    }
  }
  return true;
}

json parse_scalar(const std::string& raw, int line) {
  const std::string token = trim(raw);
  if (token.empty()) fail_line(line, "missing value");
  if (token == "true") return true;
  if (token == "false") return false;
  if (token.front() == '"') {
    if (token.size() < 2 || token.back() != '"') {
      fail_line(line, "unterminated string");
    }
    return token.substr(1, token.size() - 2);
  }
  double number = 0.0;
  if (parse_full_number(token, &number)) return number;
  // `<number> <unit>` frequency form, kept as a string for later parsing.
  {
    std::istringstream ss(token);
    std::string a, b, rest;
    if (ss >> a >> b && !(ss >> rest) && parse_full_number(a, &number) &&
        (b == "eV" || b == "rad_s")) {
      return token;
    }
  }
  if (is_bare_word(token)) return token;
  fail_line(line, "cannot parse value '" + token + "'");
}

json parse_value(const std::string& raw, int line) {
  const std::string token = trim(raw);
  if (!token.empty() && token.front() == '[') {
    if (token.back() != ']') fail_line(line, "unterminated array");
    json arr = json::array();
    const std::string body = token.substr(1, token.size() - 2);
    std::string item;
    bool quoted = false;
    for (char c : body) {
      if (c == '"') quoted = !quoted;
      if (c == ',' && !quoted) {
        arr.push_back(parse_scalar(item, line));
        item.clear();
      } else {
        item += c;
      }
    }
    if (!trim(item).empty()) arr.push_back(parse_scalar(item, line));
    if (quoted) fail_line(line, "unterminated string in array");
    return arr;
  }
  return parse_scalar(token, line);
}

// Walk a dotted path from the root, creating objects as needed.  A segment
// that is an array of tables refers to its most recent element.
json* walk_path(json* root, const std::string& path, int line) {
  json* node = root;
  std::istringstream ss(path);
  std::string segment;
  while (std::getline(ss, segment, '.')) {
    if (segment.empty()) fail_line(line, "empty path segment in [" + path + "]");
    if (node->is_array()) {
      if (node->empty()) fail_line(line, "array '" + path + "' has no entry");
      node = &node->back();
    }
    json& next = (*node)[segment];
    if (next.is_null()) next = json::object();
    node = &next;
  }
  if (node->is_array()) {
    if (node->empty()) fail_line(line, "array '" + path + "' has no entry");
    node = &node->back();
  }
  return node;
}

}  // namespace

json parse_config_text(const std::string& text) {
  json root = json::object();
  json* current = &root;

  std::istringstream stream(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(stream, raw)) {
    ++line_no;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;

    if (line.size() >= 4 && line.substr(0, 2) == "[[" &&
        line.substr(line.size() - 2) == "]]") {
      const std::string path = trim(line.substr(2, line.size() - 4));
      if (path.empty()) fail_line(line_no, "empty table name");
      const size_t dot = path.find_last_of('.');
      json* parent = dot == std::string::npos
                         ? &root
                         : walk_path(&root, path.substr(0, dot), line_no);
      const std::string leaf =
          dot == std::string::npos ? path : path.substr(dot + 1);
      json& slot = (*parent)[leaf];
      if (slot.is_null()) slot = json::array();
      if (!slot.is_array()) {
        fail_line(line_no, "'" + path + "' is not an array of tables");
      }
      slot.push_back(json::object());
      current = &slot.back();
      continue;
    }

    if (line.front() == '[' && line.back() == ']') {
      const std::string path = trim(line.substr(1, line.size() - 2));
      if (path.empty()) fail_line(line_no, "empty table name");
      current = walk_path(&root, path, line_no);
      continue;
    }

    const size_t eq = line.find('=');
    if (eq == std::string::npos) {
      fail_line(line_no, "expected 'key = value' or a [section] header");
    }
    const std::string key = trim(line.substr(0, eq));
    if (key.empty() || !is_bare_word(key)) {
      fail_line(line_no, "bad key '" + key + "'");
    }
    if (current->contains(key)) {
      fail_line(line_no, "duplicate key '" + key + "'");
    }
    (*current)[key] = parse_value(line.substr(eq + 1), line_no);
  }
  return root;
}

json parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

double parse_frequency(const json& value, const std::string& context) {
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) {
    const std::string s = value.get<std::string>();
    std::istringstream ss(s);
    std::string num, unit, rest;
    double v = 0.0;
    if (ss >> num && parse_full_number(num, &v)) {
      if (!(ss >> unit)) {
        return v;
      }
      if (!(ss >> rest)) {
        if (unit == "eV") return units::ev_to_rad_s(v);
        if (unit == "rad_s") return v;
      }
    }
    throw ConfigError(context + ": cannot parse frequency '" + s +
                      "' (use a number, 'X eV', or 'X rad_s')");
  }
  throw ConfigError(context + ": frequency must be a number or string");
}

ImagAxisMode mode_from_string(const std::string& name) {
  if (name == "substitute") return ImagAxisMode::Substitute;
  if (name == "kk") return ImagAxisMode::KramersKronig;
  throw ConfigError("unknown imag_axis_mode '" + name +
                    "' (expected substitute or kk)");
}

std::string to_string(ImagAxisMode mode) {
  return mode == ImagAxisMode::Substitute ? "substitute" : "kk";
}

namespace {

void check_keys(const json& section, const std::set<std::string>& allowed,
                const std::string& context) {
  for (const auto& item : section.items()) {
    if (!allowed.count(item.key())) {
      throw ConfigError(context + ": unknown key '" + item.key() + "'");
    }
  }
}

double number_field(const json& section, const std::string& key,
                    const std::string& context) {
  if (!section.contains(key)) {
    throw ConfigError(context + ": missing key '" + key + "'");
  }
  if (!section[key].is_number()) {
    throw ConfigError(context + ": '" + key + "' must be a number");
  }
  return section[key].get<double>();
}

double freq_field(const json& section, const std::string& key,
                  const std::string& context) {
  if (!section.contains(key)) {
    throw ConfigError(context + ": missing key '" + key + "'");
  }
  return parse_frequency(section[key], context + "." + key);
}

int int_field(const json& section, const std::string& key,
              const std::string& context, int fallback) {
  if (!section.contains(key)) return fallback;
  if (!section[key].is_number()) {
    throw ConfigError(context + ": '" + key + "' must be a number");
  }
  const double v = section[key].get<double>();
  if (v != std::floor(v)) {
    throw ConfigError(context + ": '" + key + "' must be an integer");
  }
  return static_cast<int>(v);
}

std::string string_field(const json& section, const std::string& key,
                         const std::string& context,
                         const std::string& fallback) {
  if (!section.contains(key)) return fallback;
  if (!section[key].is_string()) {
    throw ConfigError(context + ": '" + key + "' must be a string");
  }
  return section[key].get<std::string>();
}

}  // namespace

DielectricModel model_from_json(const json& section,
                                const std::string& context) {
  if (!section.is_object()) {
    throw ConfigError(context + ": expected a table");
  }
  if (section.contains("preset")) {
    check_keys(section, {"preset"}, context);
    const std::string id = string_field(section, "preset", context, "");
    try {
      return preset_model(id);
    } catch (const ConfigError&) {
      throw ConfigError(context + ".preset: unknown preset '" + id + "'");
    }
  }
  const std::string kind = string_field(section, "model", context, "");
  if (kind.empty()) {
    throw ConfigError(context + ": needs either 'preset' or 'model'");
  }
  DielectricModel model;
  if (kind == "vacuum") {
    check_keys(section, {"model"}, context);
    model = VacuumModel{};
  } else if (kind == "perfect-conductor") {
    check_keys(section, {"model"}, context);
    model = PerfectConductorModel{};
  } else if (kind == "plasma") {
    check_keys(section, {"model", "omega_p"}, context);
    model = PlasmaModel{freq_field(section, "omega_p", context)};
  } else if (kind == "drude") {
    check_keys(section, {"model", "omega_p", "gamma0"}, context);
    model = DrudeModel{{freq_field(section, "omega_p", context),
                        freq_field(section, "gamma0", context)}};
  } else if (kind == "theye-drude") {
    check_keys(section, {"model", "omega_p", "gamma0", "quad_coeff"}, context);
    TheyeParams damping;
    damping.gamma0 = freq_field(section, "gamma0", context);
    damping.quad_coeff = number_field(section, "quad_coeff", context);
    model = TheyeDrudeModel{freq_field(section, "omega_p", context), damping};
  } else if (kind == "two-carrier-drude") {
    check_keys(section,
               {"model", "omega_p", "density_ratio", "gamma_a", "gamma_b"},
               context);
    TwoCarrierParams p;
    p.omega_p = freq_field(section, "omega_p", context);
    p.density_ratio = number_field(section, "density_ratio", context);
    p.gamma_a = freq_field(section, "gamma_a", context);
    p.gamma_b = freq_field(section, "gamma_b", context);
    model = TwoCarrierDrudeModel{p};
  } else {
    throw ConfigError(context + ".model: unknown model '" + kind + "'");
  }
  validate_model(model);
  return model;
}

LayerStack stack_from_json(const json& section, const std::string& context) {
  if (!section.is_object()) {
    throw ConfigError(context + ": expected a table");
  }
  json substrate = section;
  substrate.erase("layers");
  substrate.erase("name");

  LayerStack stack;
  stack.substrate = model_from_json(substrate, context);
  if (section.contains("layers")) {
    const json& layers = section["layers"];
    if (!layers.is_array()) {
      throw ConfigError(context + ".layers: expected an array of tables");
    }
    int index = 0;
    for (const json& entry : layers) {
      const std::string layer_ctx =
          context + ".layers[" + std::to_string(index++) + "]";
      if (!entry.is_object() || !entry.contains("thickness")) {
        throw ConfigError(layer_ctx + ": missing key 'thickness'");
      }
      json model_keys = entry;
      model_keys.erase("thickness");
      Layer layer;
      layer.thickness = number_field(entry, "thickness", layer_ctx);
      layer.model = model_from_json(model_keys, layer_ctx);
      stack.layers.push_back(std::move(layer));
    }
  }
  stack.validate();
  return stack;
}

SweepSpec sweep_from_json(const json& section) {
  if (!section.is_object()) {
    throw ConfigError("sweep: expected a [sweep] table");
  }
  check_keys(section, {"min", "max", "points", "spacing"}, "sweep");
  SweepSpec spec;
  spec.L_min = number_field(section, "min", "sweep");
  spec.L_max = number_field(section, "max", "sweep");
  spec.points = int_field(section, "points", "sweep", -1);
  if (spec.points < 0) throw ConfigError("sweep: missing key 'points'");
  const std::string spacing = string_field(section, "spacing", "sweep", "log");
  if (spacing == "log") {
    spec.spacing = SweepSpec::Spacing::Log;
  } else if (spacing == "linear") {
    spec.spacing = SweepSpec::Spacing::Linear;
  } else {
    throw ConfigError("sweep.spacing: expected 'log' or 'linear'");
  }
  spec.validate();
  return spec;
}

QuadratureConfig quadrature_from_json(const json& section) {
  QuadratureConfig quad;
  if (section.is_null()) return quad;
  if (!section.is_object()) {
    throw ConfigError("quadrature: expected a [quadrature] table");
  }
  check_keys(section,
             {"rel_tol", "abs_tol", "max_subdivisions", "tail_cutoff_scale"},
             "quadrature");
  if (section.contains("rel_tol")) {
    quad.rel_tol = number_field(section, "rel_tol", "quadrature");
  }
  if (section.contains("abs_tol")) {
    quad.abs_tol = number_field(section, "abs_tol", "quadrature");
  }
  quad.max_subdivisions =
      int_field(section, "max_subdivisions", "quadrature",
                quad.max_subdivisions);
  if (section.contains("tail_cutoff_scale")) {
    quad.tail_cutoff_scale =
        number_field(section, "tail_cutoff_scale", "quadrature");
  }
  quad.validate();
  return quad;
}

RunConfig run_config_from_json(const json& root) {
  RunConfig run;
  if (!root.contains("plate1")) {
    throw ConfigError("missing [plate1] section");
  }
  run.plate1.stack = stack_from_json(root["plate1"], "plate1");
  if (root.contains("plate2")) {
    run.plate2.stack = stack_from_json(root["plate2"], "plate2");
  } else {
    run.plate2.stack = run.plate1.stack;
  }
  if (!root.contains("sweep")) {
    throw ConfigError("missing [sweep] section");
  }
  run.sweep = sweep_from_json(root["sweep"]);
  run.quadrature = quadrature_from_json(root.contains("quadrature")
                                            ? root["quadrature"]
                                            : json());
  if (root.contains("imag_axis_mode")) {
    if (!root["imag_axis_mode"].is_string()) {
      throw ConfigError("imag_axis_mode must be a string");
    }
    run.mode = mode_from_string(root["imag_axis_mode"].get<std::string>());
  }
  run.plate1.imag_axis_mode = run.mode;
  run.plate2.imag_axis_mode = run.mode;
  if (root.contains("output")) {
    const json& out = root["output"];
    check_keys(out, {"csv", "svg"}, "output");
    run.output.csv = string_field(out, "csv", "output", "");
    run.output.svg = string_field(out, "svg", "output", "");
  }
  return run;
}

std::string format_number(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

void describe_model(const DielectricModel& model, const std::string& prefix,
                    MetadataList& out) {
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, VacuumModel>) {
          out.emplace_back(prefix + ".model", "vacuum");
        } else if constexpr (std::is_same_v<T, PerfectConductorModel>) {
          out.emplace_back(prefix + ".model", "perfect-conductor");
        } else if constexpr (std::is_same_v<T, PlasmaModel>) {
          out.emplace_back(prefix + ".model", "plasma");
          out.emplace_back(prefix + ".omega_p_rad_s",
                           format_number(m.omega_p));
        } else if constexpr (std::is_same_v<T, DrudeModel>) {
          out.emplace_back(prefix + ".model", "drude");
          out.emplace_back(prefix + ".omega_p_rad_s",
                           format_number(m.params.omega_p));
          out.emplace_back(prefix + ".gamma0_rad_s",
                           format_number(m.params.gamma0));
        } else if constexpr (std::is_same_v<T, TheyeDrudeModel>) {
          out.emplace_back(prefix + ".model", "theye-drude");
          out.emplace_back(prefix + ".omega_p_rad_s",
                           format_number(m.omega_p));
          out.emplace_back(prefix + ".gamma0_rad_s",
                           format_number(m.damping.gamma0));
          out.emplace_back(prefix + ".quad_coeff_s",
                           format_number(m.damping.quad_coeff));
        } else if constexpr (std::is_same_v<T, TwoCarrierDrudeModel>) {
          out.emplace_back(prefix + ".model", "two-carrier-drude");
          out.emplace_back(prefix + ".omega_p_rad_s",
                           format_number(m.params.omega_p));
          out.emplace_back(prefix + ".density_ratio",
                           format_number(m.params.density_ratio));
          out.emplace_back(prefix + ".gamma_a_rad_s",
                           format_number(m.params.gamma_a));
          out.emplace_back(prefix + ".gamma_b_rad_s",
                           format_number(m.params.gamma_b));
        }
      },
      model);
}

void describe_stack(const LayerStack& stack, const std::string& prefix,
                    MetadataList& out) {
  for (size_t i = 0; i < stack.layers.size(); ++i) {
    const std::string layer_prefix =
        prefix + ".layers[" + std::to_string(i) + "]";
    out.emplace_back(layer_prefix + ".thickness_m",
                     format_number(stack.layers[i].thickness));
    describe_model(stack.layers[i].model, layer_prefix, out);
  }
  describe_model(stack.substrate, prefix + ".substrate", out);
}

void describe_sweep(const SweepSpec& sweep, MetadataList& out) {
  out.emplace_back("sweep.min_m", format_number(sweep.L_min));
  out.emplace_back("sweep.max_m", format_number(sweep.L_max));
  out.emplace_back("sweep.points", std::to_string(sweep.points));
  out.emplace_back("sweep.spacing",
                   sweep.spacing == SweepSpec::Spacing::Log ? "log" : "linear");
}

void describe_quadrature(const QuadratureConfig& quad, MetadataList& out) {
  out.emplace_back("quadrature.rel_tol", format_number(quad.rel_tol));
  out.emplace_back("quadrature.abs_tol", format_number(quad.abs_tol));
  out.emplace_back("quadrature.max_subdivisions",
                   std::to_string(quad.max_subdivisions));
  out.emplace_back("quadrature.tail_cutoff_scale",
                   format_number(quad.tail_cutoff_scale));
}

}  // namespace casimir
