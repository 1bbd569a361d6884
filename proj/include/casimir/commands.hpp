#pragma once

#include <string>

namespace casimir {

struct AppOptions {
  std::string command;          // gamma | epsilon | eta | delta
  std::string config_path;
  std::string output_override;  // --output
  std::string plot_override;    // --plot
  std::string mode_override;    // --mode, empty for the config's choice
};

// Exit status: 0 success, 2 some grid points failed numerically, 3 all
// failed.  Configuration problems throw ConfigError (mapped to 1 by main).
int run_command(const AppOptions& options);

}  // namespace casimir
