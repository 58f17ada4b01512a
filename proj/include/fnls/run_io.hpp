// Artifact formats written and read by the fnls tool.
//
//   wave file (JSON)      {config, params, grid, profile, trace, converged, final_res}
//   spectrum file (JSON)  {config, params, n_modes, eig_L1, eig_L2, counts, kernel_residuals, thresholds}
//   sweep table (CSV)     "# config: {...}" then omega,mass,q,converged
//   sweep sidecar (JSON)  {config, s, classification, omega_c, omega_c_width, sign_changes}
//
// Doubles are written losslessly (shortest round-trip form in JSON, %.17g in CSV).
#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "fnls/linearized.hpp"
#include "fnls/petviashvili.hpp"
#include "fnls/vk_analysis.hpp"

namespace fnls {

using json = nlohmann::ordered_json;

struct RunConfig {
  std::string subcommand;
  double s = 1.0;
  std::optional<double> omega;
  double omega_min = 0.6;
  double omega_max = 10.0;
  int steps = 100;
  int n_grid = 1024;
  double nu = 1.5;
  double tol = 1e-12;
  int max_iter = 500;
  int n_modes = 256;
  std::string validate_case;
  double a = 0.05;
  std::string input_path;
  std::string output_path;
  std::string format;
  bool parallel = false;

  PetviashviliConfig solver_config() const;
};

/// Malformed or unreadable artifact.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json to_json(const RunConfig& cfg);
RunConfig run_config_from_json(const json& j);

json to_json(const ConvergenceTrace& trace);
ConvergenceTrace trace_from_json(const json& j);

struct WaveFile {
  RunConfig config;
  SolveResult result;
};

json wave_to_json(const RunConfig& cfg, const SolveResult& r);
WaveFile wave_from_json(const json& j);

json spectrum_to_json(const RunConfig& cfg, const FractionalParams& p, const SpectralReport& r);
SpectralReport spectrum_from_json(const json& j);

void write_sweep_csv(std::ostream& os, const RunConfig& cfg, const VKSweep& sweep);
/// Reads omegas, masses, q and flags; s is taken from the embedded config.
VKSweep read_sweep_csv(std::istream& is);

json sweep_sidecar(const RunConfig& cfg, const VKSweep& sweep, const Classification& c);

json read_json_file(const std::filesystem::path& path);
/// Throws FormatError when the file cannot be written.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace fnls
