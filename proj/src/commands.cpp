#include "casimir/commands.hpp"

#include <cmath>
#include <iostream>
#include <set>

#include "casimir/csv.hpp"
#include "casimir/svg.hpp"

namespace casimir {

namespace {

using nlohmann::json;

std::vector<double> make_grid(double lo, double hi, int points, bool log,
                              const std::string& context) {
  if (points < 1) throw ConfigError(context + ": points must be >= 1");
  if (!(lo <= hi)) throw ConfigError(context + ": min must not exceed max");
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw ConfigError(context + ": grid bounds must be finite");
  }
  std::vector<double> grid(static_cast<size_t>(points));
  if (points == 1) {
    grid[0] = lo;
    return grid;
  }
  if (log) {
    if (!(lo > 0.0)) {
      throw ConfigError(context + ": log spacing requires min > 0");
    }
    const double step = (std::log(hi) - std::log(lo)) / (points - 1);
    for (int i = 0; i < points; ++i) grid[i] = lo * std::exp(step * i);
  } else {
    const double step = (hi - lo) / (points - 1);
    for (int i = 0; i < points; ++i) grid[i] = lo + step * i;
  }
  grid.back() = hi;
  return grid;
}

bool spacing_is_log(const json& section, const std::string& context) {
  if (!section.contains("spacing")) return true;
  if (!section["spacing"].is_string()) {
    throw ConfigError(context + ".spacing: must be a string");
  }
  const std::string s = section["spacing"].get<std::string>();
  if (s == "log") return true;
  if (s == "linear") return false;
  throw ConfigError(context + ".spacing: expected 'log' or 'linear'");
}

int int_key(const json& section, const std::string& key,
            const std::string& context) {
  if (!section.contains(key)) {
    throw ConfigError(context + ": missing key '" + key + "'");
  }
  if (!section[key].is_number()) {
    throw ConfigError(context + ".'" + key + "': must be a number");
  }
  const double v = section[key].get<double>();
  if (v != std::floor(v)) {
    throw ConfigError(context + ".'" + key + "': must be an integer");
  }
  return static_cast<int>(v);
}

double freq_key(const json& section, const std::string& key,
                const std::string& context) {
  if (!section.contains(key)) {
    throw ConfigError(context + ": missing key '" + key + "'");
  }
  return parse_frequency(section[key], context + "." + key);
}

const json& section_or_fail(const json& root, const std::string& name) {
  if (!root.contains(name) || !root[name].is_object()) {
    throw ConfigError("missing [" + name + "] section");
  }
  return root[name];
}

struct OutputPaths {
  std::string csv;
  std::string svg;  // empty: no plot
};

OutputPaths resolve_outputs(const json& root, const AppOptions& options) {
  OutputPaths paths;
  if (root.contains("output")) {
    const json& out = root["output"];
    if (!out.is_object()) throw ConfigError("[output] must be a table");
    for (const auto& item : out.items()) {
      if (item.key() != "csv" && item.key() != "svg") {
        throw ConfigError("output: unknown key '" + item.key() + "'");
      }
      if (!item.value().is_string()) {
        throw ConfigError("output." + item.key() + ": must be a string");
      }
    }
    if (out.contains("csv")) paths.csv = out["csv"].get<std::string>();
    if (out.contains("svg")) paths.svg = out["svg"].get<std::string>();
  }
  if (!options.output_override.empty()) paths.csv = options.output_override;
  if (!options.plot_override.empty()) paths.svg = options.plot_override;
  if (paths.csv.empty()) paths.csv = options.command + ".csv";
  return paths;
}

ImagAxisMode resolve_mode(const json& root, const AppOptions& options) {
  if (!options.mode_override.empty()) {
    return mode_from_string(options.mode_override);
  }
  if (root.contains("imag_axis_mode")) {
    if (!root["imag_axis_mode"].is_string()) {
      throw ConfigError("imag_axis_mode must be a string");
    }
    return mode_from_string(root["imag_axis_mode"].get<std::string>());
  }
  return ImagAxisMode::Substitute;
}

void check_section_keys(const json& section, const std::set<std::string>& ok,
                        const std::string& context) {
  for (const auto& item : section.items()) {
    if (!ok.count(item.key())) {
      throw ConfigError(context + ": unknown key '" + item.key() + "'");
    }
  }
}

int exit_code_for(size_t failed, size_t total) {
  if (failed == 0) return 0;
  return failed == total ? 3 : 2;
}

// ---- gamma ------------------------------------------------------------

int run_gamma(const json& root, const AppOptions& options) {
  const json& section = section_or_fail(root, "gamma");
  check_section_keys(section,
                     {"presets", "omega_min", "omega_max", "points", "spacing"},
                     "gamma");
  if (!section.contains("presets") || !section["presets"].is_array() ||
      section["presets"].empty()) {
    throw ConfigError("gamma.presets: need a non-empty preset list");
  }
  std::vector<std::string> ids;
  std::vector<DielectricModel> models;
  for (const json& entry : section["presets"]) {
    if (!entry.is_string()) {
      throw ConfigError("gamma.presets: entries must be preset ids");
    }
    const std::string id = entry.get<std::string>();
    try {
      models.push_back(preset_model(id));
    } catch (const ConfigError&) {
      throw ConfigError("gamma.presets: unknown preset '" + id + "'");
    }
    ids.push_back(id);
  }

  const double lo = freq_key(section, "omega_min", "gamma");
  const double hi = freq_key(section, "omega_max", "gamma");
  const int points = int_key(section, "points", "gamma");
  const bool log = spacing_is_log(section, "gamma") && lo > 0.0;
  const auto grid = make_grid(lo, hi, points, log, "gamma");

  CsvTable table;
  table.metadata.emplace_back("command", "gamma");
  for (size_t i = 0; i < ids.size(); ++i) {
    describe_model(models[i], "preset[" + std::to_string(i) + "]",
                   table.metadata);
  }
  table.metadata.emplace_back("grid.omega_min_rad_s", format_number(lo));
  table.metadata.emplace_back("grid.omega_max_rad_s", format_number(hi));
  table.metadata.emplace_back("grid.points", std::to_string(points));
  table.metadata.emplace_back("grid.spacing", log ? "log" : "linear");

  table.header.push_back("omega_rad_s");
  for (const auto& id : ids) table.header.push_back("gamma_eff_" + id);
  for (double w : grid) {
    std::vector<double> row{w};
    for (const auto& model : models) {
      row.push_back(damping_at(model, Frequency(w)));
    }
    table.rows.push_back(std::move(row));
  }

  const OutputPaths paths = resolve_outputs(root, options);
  write_csv(paths.csv, table);
  if (!paths.svg.empty()) {
    SvgPlotSpec plot;
    plot.title = "Effective damping";
    plot.x_label = "omega (rad/s)";
    plot.y_label = "gamma (rad/s)";
    plot.log_x = log;
    for (size_t c = 0; c < ids.size(); ++c) {
      SvgSeries s;
      s.label = ids[c];
      for (const auto& row : table.rows) {
        s.x.push_back(row[0]);
        s.y.push_back(row[c + 1]);
      }
      plot.series.push_back(std::move(s));
    }
    write_svg_lineplot(paths.svg, plot);
  }
  return 0;
}

// ---- epsilon ----------------------------------------------------------

int run_epsilon(const json& root, const AppOptions& options) {
  const json& section = section_or_fail(root, "epsilon");
  check_section_keys(section,
                     {"preset", "model", "omega_p", "gamma0", "quad_coeff",
                      "density_ratio", "gamma_a", "gamma_b", "xi_min",
                      "xi_max", "points", "spacing"},
                     "epsilon");
  json model_keys = section;
  for (const char* grid_key : {"xi_min", "xi_max", "points", "spacing"}) {
    model_keys.erase(grid_key);
  }
  const DielectricModel model = model_from_json(model_keys, "epsilon");

  const double lo = freq_key(section, "xi_min", "epsilon");
  const double hi = freq_key(section, "xi_max", "epsilon");
  if (!(lo > 0.0)) throw ConfigError("epsilon.xi_min: must be > 0");
  const int points = int_key(section, "points", "epsilon");
  const bool log = spacing_is_log(section, "epsilon");
  const auto grid = make_grid(lo, hi, points, log, "epsilon");
  const QuadratureConfig quad = quadrature_from_json(
      root.contains("quadrature") ? root["quadrature"] : json());

  CsvTable table;
  table.metadata.emplace_back("command", "epsilon");
  describe_model(model, "model", table.metadata);
  table.metadata.emplace_back("grid.xi_min_rad_s", format_number(lo));
  table.metadata.emplace_back("grid.xi_max_rad_s", format_number(hi));
  table.metadata.emplace_back("grid.points", std::to_string(points));
  table.metadata.emplace_back("grid.spacing", log ? "log" : "linear");
  describe_quadrature(quad, table.metadata);
  table.header = {"xi_rad_s", "eps_substitute", "eps_kk", "rel_discrepancy"};

  size_t failed = 0;
  for (double xi : grid) {
    const double sub =
        eps_imag_axis(model, Frequency(xi), ImagAxisMode::Substitute, quad);
    double kk = std::numeric_limits<double>::quiet_NaN();
    try {
      kk = eps_imag_axis(model, Frequency(xi), ImagAxisMode::KramersKronig,
                         quad);
    } catch (const ConvergenceError& e) {
      ++failed;
      std::cerr << "epsilon: xi = " << format_number(xi)
                << " rad/s did not converge: " << e.what() << "\n";
    }
    table.rows.push_back({xi, sub, kk, std::fabs(sub - kk) / std::fabs(kk)});
  }
  table.metadata.emplace_back("failed_points", std::to_string(failed));

  const OutputPaths paths = resolve_outputs(root, options);
  write_csv(paths.csv, table);
  if (!paths.svg.empty()) {
    SvgPlotSpec plot;
    plot.title = "Dielectric function on the imaginary axis";
    plot.x_label = "xi (rad/s)";
    plot.y_label = "eps(i xi)";
    plot.log_x = log;
    plot.log_y = true;
    SvgSeries sub{"substitute", {}, {}}, kk{"kramers-kronig", {}, {}};
    for (const auto& row : table.rows) {
      sub.x.push_back(row[0]);
      sub.y.push_back(row[1]);
      kk.x.push_back(row[0]);
      kk.y.push_back(row[2]);
    }
    plot.series = {std::move(sub), std::move(kk)};
    write_svg_lineplot(paths.svg, plot);
  }
  return exit_code_for(failed, grid.size());
}

// ---- eta --------------------------------------------------------------

void describe_run(const RunConfig& run, MetadataList& out) {
  describe_stack(run.plate1.stack, "plate1", out);
  describe_stack(run.plate2.stack, "plate2", out);
  describe_sweep(run.sweep, out);
  describe_quadrature(run.quadrature, out);
  out.emplace_back("imag_axis_mode", to_string(run.mode));
}

int run_eta(const json& root, const AppOptions& options) {
  RunConfig run = run_config_from_json(root);
  run.mode = resolve_mode(root, options);
  run.plate1.imag_axis_mode = run.mode;
  run.plate2.imag_axis_mode = run.mode;

  const auto sweep = eta_sweep(run.plate1, run.plate2, run.sweep,
                               run.quadrature);

  CsvTable table;
  table.metadata.emplace_back("command", "eta");
  describe_run(run, table.metadata);
  table.header = {"L_m", "eta", "eta_s", "eta_p", "error_estimate",
                  "converged"};
  size_t failed = 0;
  for (const auto& point : sweep) {
    if (!point.converged) {
      ++failed;
      std::cerr << "eta: L = " << format_number(point.result.separation)
                << " m: " << point.message << "\n";
    }
    table.rows.push_back({point.result.separation, point.result.eta,
                          point.result.eta_s, point.result.eta_p,
                          point.result.error_estimate,
                          point.converged ? 1.0 : 0.0});
  }
  table.metadata.emplace_back("failed_points", std::to_string(failed));

  const OutputPaths paths = resolve_outputs(root, options);
  write_csv(paths.csv, table);
  if (!paths.svg.empty()) {
    SvgPlotSpec plot;
    plot.title = "Reduction factor";
    plot.x_label = "L (m)";
    plot.y_label = "eta";
    plot.log_x = run.sweep.spacing == SweepSpec::Spacing::Log;
    SvgSeries eta{"eta", {}, {}}, es{"eta_s", {}, {}}, ep{"eta_p", {}, {}};
    for (const auto& point : sweep) {
      const double L = point.result.separation;
      const double bad = std::numeric_limits<double>::quiet_NaN();
      eta.x.push_back(L);
      es.x.push_back(L);
      ep.x.push_back(L);
      eta.y.push_back(point.converged ? point.result.eta : bad);
      es.y.push_back(point.converged ? point.result.eta_s : bad);
      ep.y.push_back(point.converged ? point.result.eta_p : bad);
    }
    plot.series = {std::move(eta), std::move(es), std::move(ep)};
    write_svg_lineplot(paths.svg, plot);
  }
  return exit_code_for(failed, sweep.size());
}

// ---- delta ------------------------------------------------------------

int run_delta(const json& root, const AppOptions& options) {
  if (!root.contains("baseline")) {
    throw ConfigError("missing [baseline] section");
  }
  if (!root.contains("comparison") || !root["comparison"].is_array() ||
      root["comparison"].empty()) {
    throw ConfigError("need at least one [[comparison]] section");
  }
  const ImagAxisMode mode = resolve_mode(root, options);
  const SweepSpec sweep = sweep_from_json(section_or_fail(root, "sweep"));
  const QuadratureConfig quad = quadrature_from_json(
      root.contains("quadrature") ? root["quadrature"] : json());

  auto mirror_pair = [&](const json& section,
                         const std::string& context) -> PlateConfig {
    PlateConfig plate;
    plate.stack = stack_from_json(section, context);
    plate.imag_axis_mode = mode;
    return plate;
  };

  const PlateConfig base = mirror_pair(root["baseline"], "baseline");

  struct Comparison {
    std::string name;
    PlateConfig plate;
  };
  std::vector<Comparison> comparisons;
  int index = 0;
  for (const json& entry : root["comparison"]) {
    const std::string context = "comparison[" + std::to_string(index) + "]";
    Comparison c;
    c.plate = mirror_pair(entry, context);
    c.name = entry.is_object() && entry.contains("name") &&
                     entry["name"].is_string()
                 ? entry["name"].get<std::string>()
                 : (entry.is_object() && entry.contains("preset") &&
                            entry["preset"].is_string()
                        ? entry["preset"].get<std::string>()
                        : "comparison" + std::to_string(index + 1));
    for (char& ch : c.name) {
      if (ch == ',' || ch == ' ') ch = '-';
    }
    comparisons.push_back(std::move(c));
    ++index;
  }

  size_t failed = 0, total = 0;
  auto run_sweep = [&](const PlateConfig& plate) {
    const auto points = eta_sweep(plate, plate, sweep, quad);
    std::vector<EtaResult> results;
    for (const auto& p : points) {
      ++total;
      if (!p.converged) {
        ++failed;
        std::cerr << "delta: L = " << format_number(p.result.separation)
                  << " m: " << p.message << "\n";
      }
      results.push_back(p.result);
    }
    return results;
  };

  const auto base_results = run_sweep(base);

  CsvTable table;
  table.metadata.emplace_back("command", "delta");
  describe_stack(base.stack, "baseline", table.metadata);
  table.header = {"L_m"};
  std::vector<std::vector<DeltaPoint>> columns;
  for (const auto& c : comparisons) {
    describe_stack(c.plate.stack, "comparison." + c.name, table.metadata);
    table.header.push_back("delta_" + c.name);
    columns.push_back(percent_difference(run_sweep(c.plate), base_results));
  }
  describe_sweep(sweep, table.metadata);
  describe_quadrature(quad, table.metadata);
  table.metadata.emplace_back("imag_axis_mode", to_string(mode));
  table.metadata.emplace_back("failed_points", std::to_string(failed));

  for (size_t i = 0; i < base_results.size(); ++i) {
    std::vector<double> row{base_results[i].separation};
    for (const auto& column : columns) row.push_back(column[i].delta_percent);
    table.rows.push_back(std::move(row));
  }

  const OutputPaths paths = resolve_outputs(root, options);
  write_csv(paths.csv, table);
  if (!paths.svg.empty()) {
    SvgPlotSpec plot;
    plot.title = "Percent difference vs baseline";
    plot.x_label = "L (m)";
    plot.y_label = "delta (%)";
    plot.log_x = sweep.spacing == SweepSpec::Spacing::Log;
    for (size_t c = 0; c < comparisons.size(); ++c) {
      SvgSeries s;
      s.label = comparisons[c].name;
      for (const auto& d : columns[c]) {
        s.x.push_back(d.separation);
        s.y.push_back(d.delta_percent);
      }
      plot.series.push_back(std::move(s));
    }
    write_svg_lineplot(paths.svg, plot);
  }
  return exit_code_for(failed, total);
}

}  // namespace

int run_command(const AppOptions& options) {
  const json root = parse_config_file(options.config_path);
  if (options.command == "gamma") return run_gamma(root, options);
  if (options.command == "epsilon") return run_epsilon(root, options);
  if (options.command == "eta") return run_eta(root, options);
  if (options.command == "delta") return run_delta(root, options);
  throw ConfigError("unknown command '" + options.command + "'");
}

}  // namespace casimir
