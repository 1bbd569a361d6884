#include <iostream>

#include "CLI11.hpp"
#include "casimir/commands.hpp"
#include "casimir/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Casimir reduction factor for layered metallic mirrors"};
  app.require_subcommand(1);

  casimir::AppOptions options;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"gamma", "Tabulate effective damping over a frequency grid"},
      {"epsilon", "Compare imaginary-axis dielectric evaluations"},
      {"eta", "Sweep the reduction factor over plate separations"},
      {"delta", "Percent difference of eta against a baseline mirror"},
  };
  for (const auto& [name, description] : commands) {
    CLI::App* sub = app.add_subcommand(name, description);
    sub->add_option("--config", options.config_path, "Config file path")
        ->required();
    sub->add_option("--output", options.output_override, "CSV output path");
    sub->add_option("--plot", options.plot_override, "SVG plot path");
    sub->add_option("--mode", options.mode_override,
                    "Imaginary-axis continuation")
        ->check(CLI::IsMember({"substitute", "kk"}));
    sub->callback([&options, name = name] { options.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    return casimir::run_command(options);
  } catch (const casimir::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
