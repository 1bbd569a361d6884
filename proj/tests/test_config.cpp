#include <cstdlib>
#include <string>

#include "casimir/config.hpp"
#include "casimir/units.hpp"
#include "doctest.h"

using namespace casimir;
using nlohmann::json;

namespace {

bool error_mentions(const std::function<void()>& f, const std::string& text) {
  try {
    f();
  } catch (const ConfigError& e) {
    return std::string(e.what()).find(text) != std::string::npos;
  }
  return false;
}

}  // namespace

TEST_CASE("parser handles scalars, sections, and comments") {
  const json root = parse_config_text(
      "# leading comment\n"
      "top = 1.5\n"
      "flag = true\n"
      "off = false\n"
      "word = classical-au\n"
      "quoted = \"two words # not a comment\"\n"
      "\n"
      "[section]\n"
      "value = -3e8   # trailing comment\n"
      "[section.sub]\n"
      "deep = 7\n");
  CHECK(root["top"].get<double>() == 1.5);
  CHECK(root["flag"].get<bool>() == true);
  CHECK(root["off"].get<bool>() == false);
  CHECK(root["word"].get<std::string>() == "classical-au");
  CHECK(root["quoted"].get<std::string>() == "two words # not a comment");
  CHECK(root["section"]["value"].get<double>() == -3e8);
  CHECK(root["section"]["sub"]["deep"].get<double>() == 7.0);
}

TEST_CASE("parser keeps frequency strings and splits arrays") {
  const json root = parse_config_text(
      "omega_p = \"9 eV\"\n"
      "gamma = 3e13 rad_s\n"
      "grid = [1, 2.5, 10]\n"
      "names = [\"a b\", bare]\n");
  CHECK(root["omega_p"].get<std::string>() == "9 eV");
  CHECK(root["gamma"].get<std::string>() == "3e13 rad_s");
  REQUIRE(root["grid"].is_array());
  CHECK(root["grid"][0].get<double>() == 1.0);
  CHECK(root["grid"][1].get<double>() == 2.5);
  CHECK(root["grid"][2].get<double>() == 10.0);
  CHECK(root["names"][0].get<std::string>() == "a b");
  CHECK(root["names"][1].get<std::string>() == "bare");
}

TEST_CASE("parser array-of-tables appends and routes nested keys") {
  const json root = parse_config_text(
      "[plate1]\n"
      "preset = classical-au\n"
      "[[plate1.layers]]\n"
      "thickness = 3e-8\n"
      "[[plate1.layers]]\n"
      "thickness = 5e-8\n"
      "model = plasma\n");
  REQUIRE(root["plate1"]["layers"].is_array());
  REQUIRE(root["plate1"]["layers"].size() == 2);
  CHECK(root["plate1"]["layers"][0]["thickness"].get<double>() == 3e-8);
  CHECK(root["plate1"]["layers"][1]["thickness"].get<double>() == 5e-8);
  CHECK(root["plate1"]["layers"][1]["model"].get<std::string>() == "plasma");
  CHECK(root["plate1"]["preset"].get<std::string>() == "classical-au");
}

TEST_CASE("parser reports the offending line") {
  CHECK(error_mentions([] { parse_config_text("a = 1\na = 2\n"); },
                       "config line 2: duplicate key 'a'"));
  CHECK(error_mentions([] { parse_config_text("\n\njust words\n"); },
                       "config line 3"));
  CHECK(error_mentions([] { parse_config_text("x = \"open\n"); },
                       "unterminated string"));
  CHECK(error_mentions([] { parse_config_text("x = [1, 2\n"); },
                       "unterminated array"));
  CHECK(error_mentions([] { parse_config_text("x = 1 2 3\n"); },
                       "cannot parse value"));
  CHECK(error_mentions([] { parse_config_text("x =\n"); }, "missing value"));
  CHECK(error_mentions([] { parse_config_text("[]\n"); }, "empty table name"));
  CHECK(error_mentions([] { parse_config_text("?bad = 1\n"); }, "bad key"));
}

TEST_CASE("parse_config_file reads files and rejects missing ones") {
  const std::string path = "config_roundtrip.tmp.toml";
  {
    FILE* f = std::fopen(path.c_str(), "w");
    REQUIRE(f != nullptr);
    std::fputs("[sweep]\nmin = 1e-7\nmax = 2e-6\npoints = 5\n", f);
    std::fclose(f);
  }
  const json root = parse_config_file(path);
  CHECK(root["sweep"]["points"].get<double>() == 5.0);
  std::remove(path.c_str());
  CHECK(error_mentions([] { parse_config_file("does-not-exist.toml"); },
                       "cannot open config file"));
}

TEST_CASE("parse_frequency accepts rad/s numbers and unit strings") {
  CHECK(parse_frequency(json(2.5e15), "ctx") == 2.5e15);
  CHECK(parse_frequency(json("3e13 rad_s"), "ctx") == 3e13);
  CHECK(parse_frequency(json("9 eV"), "ctx") ==
        doctest::Approx(units::ev_to_rad_s(9.0)).epsilon(1e-15));
  CHECK(parse_frequency(json("1.25"), "ctx") == 1.25);
  CHECK(error_mentions([] { parse_frequency(json("9 Hz"), "plate1.omega_p"); },
                       "plate1.omega_p"));
  CHECK(error_mentions([] { parse_frequency(json("fast"), "ctx"); },
                       "cannot parse frequency"));
  CHECK(error_mentions([] { parse_frequency(json(true), "ctx"); },
                       "must be a number or string"));
}

TEST_CASE("imag axis mode names round-trip") {
  CHECK(mode_from_string("substitute") == ImagAxisMode::Substitute);
  CHECK(mode_from_string("kk") == ImagAxisMode::KramersKronig);
  CHECK(to_string(ImagAxisMode::Substitute) == "substitute");
  CHECK(to_string(ImagAxisMode::KramersKronig) == "kk");
  CHECK(error_mentions([] { mode_from_string("analytic"); },
                       "unknown imag_axis_mode"));
}

TEST_CASE("model_from_json resolves presets") {
  const json section = parse_config_text("preset = \"classical-au\"\n");
  const DielectricModel model = model_from_json(section, "plate1");
  REQUIRE(std::holds_alternative<DrudeModel>(model));
  const auto& drude = std::get<DrudeModel>(model);
  CHECK(drude.params.omega_p == doctest::Approx(units::ev_to_rad_s(9.0)));
  CHECK(drude.params.gamma0 == doctest::Approx(units::ev_to_rad_s(0.02)));

  CHECK(error_mentions(
      [] {
        model_from_json(parse_config_text("preset = \"gold-ish\"\n"), "p");
      },
      "unknown preset 'gold-ish'"));
  CHECK(error_mentions(
      [] {
        model_from_json(
            parse_config_text("preset = classical-au\nomega_p = \"9 eV\"\n"),
            "p");
      },
      "unknown key 'omega_p'"));
}

TEST_CASE("model_from_json builds every explicit model kind") {
  CHECK(std::holds_alternative<VacuumModel>(
      model_from_json(parse_config_text("model = vacuum\n"), "m")));
  CHECK(std::holds_alternative<PerfectConductorModel>(
      model_from_json(parse_config_text("model = perfect-conductor\n"), "m")));

  const auto plasma = model_from_json(
      parse_config_text("model = plasma\nomega_p = \"9 eV\"\n"), "m");
  REQUIRE(std::holds_alternative<PlasmaModel>(plasma));
  CHECK(std::get<PlasmaModel>(plasma).omega_p ==
        doctest::Approx(units::ev_to_rad_s(9.0)));

  const auto drude = model_from_json(
      parse_config_text("model = drude\nomega_p = \"9 eV\"\ngamma0 = 3e13\n"),
      "m");
  REQUIRE(std::holds_alternative<DrudeModel>(drude));
  CHECK(std::get<DrudeModel>(drude).params.gamma0 == 3e13);

  const auto theye = model_from_json(
      parse_config_text("model = theye-drude\nomega_p = \"9 eV\"\n"
                        "gamma0 = \"0.02 eV\"\nquad_coeff = 1e-18\n"),
      "m");
  REQUIRE(std::holds_alternative<TheyeDrudeModel>(theye));
  CHECK(std::get<TheyeDrudeModel>(theye).damping.quad_coeff == 1e-18);

  const auto film = model_from_json(
      parse_config_text("model = two-carrier-drude\nomega_p = \"9 eV\"\n"
                        "density_ratio = 0.0077\ngamma_a = 0.93e14\n"
                        "gamma_b = 25e14\n"),
      "m");
  REQUIRE(std::holds_alternative<TwoCarrierDrudeModel>(film));
  CHECK(std::get<TwoCarrierDrudeModel>(film).params.density_ratio == 0.0077);
  CHECK(std::get<TwoCarrierDrudeModel>(film).params.gamma_b == 25e14);
}

TEST_CASE("model_from_json rejects malformed tables") {
  CHECK(error_mentions(
      [] { model_from_json(parse_config_text("model = metal\n"), "m"); },
      "unknown model 'metal'"));
  CHECK(error_mentions(
      [] { model_from_json(parse_config_text("omega_p = \"9 eV\"\n"), "m"); },
      "needs either 'preset' or 'model'"));
  CHECK(error_mentions(
      [] { model_from_json(parse_config_text("model = plasma\n"), "m"); },
      "missing key 'omega_p'"));
  CHECK(error_mentions(
      [] {
        model_from_json(
            parse_config_text("model = vacuum\nomega_p = \"9 eV\"\n"), "m");
      },
      "unknown key 'omega_p'"));
  CHECK(error_mentions(
      [] {
        model_from_json(
            parse_config_text("model = drude\nomega_p = \"9 eV\"\n"
                              "gamma0 = \"-1 eV\"\n"),
            "m");
      },
      "gamma0"));
  CHECK_THROWS_AS(model_from_json(json::array(), "m"), ConfigError);
}

TEST_CASE("stack_from_json assembles layered mirrors") {
  const json root = parse_config_text(
      "[plate1]\n"
      "preset = classical-au\n"
      "[[plate1.layers]]\n"
      "thickness = 3e-8\n"
      "preset = nonannealed-au\n");
  const LayerStack stack = stack_from_json(root["plate1"], "plate1");
  REQUIRE(stack.layers.size() == 1);
  CHECK(stack.layers[0].thickness == 3e-8);
  CHECK(std::holds_alternative<TwoCarrierDrudeModel>(stack.layers[0].model));
  CHECK(std::holds_alternative<DrudeModel>(stack.substrate));

  SUBCASE("name key is rig metadata, not a model key") {
    const json named = parse_config_text(
        "name = \"gold film\"\npreset = classical-au\n");
    CHECK_NOTHROW(stack_from_json(named, "baseline"));
  }
  SUBCASE("layer without thickness is rejected") {
    const json bad = parse_config_text(
        "[p]\npreset = classical-au\n[[p.layers]]\npreset = annealed-au\n");
    CHECK(error_mentions([&] { stack_from_json(bad["p"], "p"); },
                         "p.layers[0]: missing key 'thickness'"));
  }
  SUBCASE("perfect conductor cannot be a film") {
    const json bad = parse_config_text(
        "[p]\npreset = classical-au\n[[p.layers]]\nthickness = 1e-8\n"
        "model = perfect-conductor\n");
    CHECK_THROWS_AS(stack_from_json(bad["p"], "p"), ConfigError);
  }
}

TEST_CASE("sweep_from_json fills a SweepSpec") {
  const json section = parse_config_text(
      "min = 1e-7\nmax = 2e-6\npoints = 20\nspacing = linear\n");
  const SweepSpec spec = sweep_from_json(section);
  CHECK(spec.L_min == 1e-7);
  CHECK(spec.L_max == 2e-6);
  CHECK(spec.points == 20);
  CHECK(spec.spacing == SweepSpec::Spacing::Linear);

  CHECK(sweep_from_json(parse_config_text("min = 1e-7\nmax = 2e-6\n"
                                          "points = 3\n"))
            .spacing == SweepSpec::Spacing::Log);
  CHECK(error_mentions(
      [] {
        sweep_from_json(parse_config_text("min = 1e-7\nmax = 2e-6\n"
                                          "points = 3\nspacing = cubic\n"));
      },
      "expected 'log' or 'linear'"));
  CHECK(error_mentions(
      [] { sweep_from_json(parse_config_text("min = 1e-7\nmax = 2e-6\n")); },
      "missing key 'points'"));
  CHECK(error_mentions(
      [] {
        sweep_from_json(parse_config_text("min = 1e-7\nmax = 2e-6\n"
                                          "points = 2.5\n"));
      },
      "must be an integer"));
  CHECK(error_mentions(
      [] {
        sweep_from_json(parse_config_text("min = 1e-7\nmax = 2e-6\n"
                                          "points = 3\nseed = 1\n"));
      },
      "unknown key 'seed'"));
}

TEST_CASE("quadrature_from_json applies defaults and overrides") {
  const QuadratureConfig defaults = quadrature_from_json(json());
  CHECK(defaults.rel_tol == 1e-6);
  CHECK(defaults.abs_tol == 1e-12);
  CHECK(defaults.max_subdivisions == 2000);
  CHECK(defaults.tail_cutoff_scale == 50.0);

  const QuadratureConfig tuned = quadrature_from_json(
      parse_config_text("rel_tol = 1e-8\nmax_subdivisions = 64\n"));
  CHECK(tuned.rel_tol == 1e-8);
  CHECK(tuned.max_subdivisions == 64);
  CHECK(tuned.abs_tol == 1e-12);

  CHECK(error_mentions(
      [] { quadrature_from_json(parse_config_text("order = 15\n")); },
      "unknown key 'order'"));
  CHECK_THROWS_AS(quadrature_from_json(parse_config_text("rel_tol = -1\n")),
                  ConfigError);
}

TEST_CASE("run_config_from_json wires a full eta run") {
  const json root = parse_config_text(
      "imag_axis_mode = kk\n"
      "[plate1]\n"
      "preset = classical-au\n"
      "[plate2]\n"
      "model = plasma\n"
      "omega_p = \"9 eV\"\n"
      "[sweep]\n"
      "min = 1e-7\nmax = 2e-6\npoints = 4\n"
      "[quadrature]\n"
      "rel_tol = 1e-5\n"
      "[output]\n"
      "csv = \"eta.csv\"\nsvg = \"eta.svg\"\n");
  const RunConfig run = run_config_from_json(root);
  CHECK(std::holds_alternative<DrudeModel>(run.plate1.stack.substrate));
  CHECK(std::holds_alternative<PlasmaModel>(run.plate2.stack.substrate));
  CHECK(run.mode == ImagAxisMode::KramersKronig);
  CHECK(run.plate1.imag_axis_mode == ImagAxisMode::KramersKronig);
  CHECK(run.plate2.imag_axis_mode == ImagAxisMode::KramersKronig);
  CHECK(run.sweep.points == 4);
  CHECK(run.quadrature.rel_tol == 1e-5);
  CHECK(run.output.csv == "eta.csv");
  CHECK(run.output.svg == "eta.svg");

  SUBCASE("plate2 mirrors plate1 when omitted") {
    json solo = root;
    solo.erase("plate2");
    const RunConfig mirrored = run_config_from_json(solo);
    CHECK(std::holds_alternative<DrudeModel>(mirrored.plate2.stack.substrate));
    CHECK(std::get<DrudeModel>(mirrored.plate2.stack.substrate).params.gamma0 ==
          std::get<DrudeModel>(mirrored.plate1.stack.substrate).params.gamma0);
  }
  SUBCASE("mode defaults to substitute") {
    json plain = root;
    plain.erase("imag_axis_mode");
    CHECK(run_config_from_json(plain).mode == ImagAxisMode::Substitute);
  }
  SUBCASE("required sections") {
    json no_plate = root;
    no_plate.erase("plate1");
    CHECK(error_mentions([&] { run_config_from_json(no_plate); },
                         "missing [plate1] section"));
    json no_sweep = root;
    no_sweep.erase("sweep");
    CHECK(error_mentions([&] { run_config_from_json(no_sweep); },
                         "missing [sweep] section"));
  }
}

TEST_CASE("describe_* emit resolved settings") {
  MetadataList meta;
  describe_model(preset_model("annealed-au"), "plate1.substrate", meta);
  describe_sweep(SweepSpec{1e-7, 2e-6, 3, SweepSpec::Spacing::Log}, meta);
  describe_quadrature(QuadratureConfig{}, meta);

  auto has = [&](const std::string& key, const std::string& value) {
    for (const auto& [k, v] : meta) {
      if (k == key) return v == value;
    }
    return false;
  };
  CHECK(has("plate1.substrate.model", "two-carrier-drude"));
  CHECK(has("plate1.substrate.density_ratio", "0.0077000000000000002"));
  CHECK(has("plate1.substrate.gamma_b_rad_s", "2500000000000000"));
  CHECK(has("sweep.min_m", "9.9999999999999995e-08"));
  CHECK(has("sweep.points", "3"));
  CHECK(has("sweep.spacing", "log"));
  CHECK(has("quadrature.rel_tol", "9.9999999999999995e-07"));
  CHECK(has("quadrature.max_subdivisions", "2000"));
}

TEST_CASE("format_number survives a text round trip bit for bit") {
  for (double v : {1.0 / 3.0, 0.1, 6.6260701499999998e-34, -2.5e300, 0.0,
                   1.519267e15}) {
    const std::string text = format_number(v);
    CHECK(std::strtod(text.c_str(), nullptr) == v);
  }
}
