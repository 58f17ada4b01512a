#include "fnls/run_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace fnls {

namespace {

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_double(const std::string& field, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(field, &used);
    if (used != field.size()) throw std::invalid_argument(field);
    return v;
  } catch (const std::exception&) {
    throw FormatError(std::string("sweep table: bad ") + what + " value '" + field + "'");
  }
}

template <typename T>
T require(const json& j, const char* key) {
  if (!j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("field '") + key + "': " + e.what());
  }
}

}  // namespace

PetviashviliConfig RunConfig::solver_config() const {
  PetviashviliConfig c;
  c.nu = nu;
  c.tol_error = tol;
  c.tol_res = tol;
  c.tol_m = tol;
  c.max_iter = max_iter;
  return c;
}

json to_json(const RunConfig& cfg) {
  json j;
  j["subcommand"] = cfg.subcommand;
  j["s"] = cfg.s;
  j["omega"] = cfg.omega ? json(*cfg.omega) : json(nullptr);
  j["omega_min"] = cfg.omega_min;
  j["omega_max"] = cfg.omega_max;
  j["steps"] = cfg.steps;
  j["n_grid"] = cfg.n_grid;
  j["nu"] = cfg.nu;
  j["tol"] = cfg.tol;
  j["max_iter"] = cfg.max_iter;
  j["n_modes"] = cfg.n_modes;
  j["case"] = cfg.validate_case;
  j["a"] = cfg.a;
  j["input_path"] = cfg.input_path;
  j["output_path"] = cfg.output_path;
  j["format"] = cfg.format;
  j["parallel"] = cfg.parallel;
  return j;
}

RunConfig run_config_from_json(const json& j) {
  RunConfig c;
  c.subcommand = require<std::string>(j, "subcommand");
  c.s = require<double>(j, "s");
  if (j.contains("omega") && !j.at("omega").is_null()) c.omega = require<double>(j, "omega");
  c.omega_min = require<double>(j, "omega_min");
  c.omega_max = require<double>(j, "omega_max");
  c.steps = require<int>(j, "steps");
  c.n_grid = require<int>(j, "n_grid");
  c.nu = require<double>(j, "nu");
  c.tol = require<double>(j, "tol");
  c.max_iter = require<int>(j, "max_iter");
  c.n_modes = require<int>(j, "n_modes");
  c.validate_case = require<std::string>(j, "case");
  c.a = require<double>(j, "a");
  c.input_path = require<std::string>(j, "input_path");
  c.output_path = require<std::string>(j, "output_path");
  c.format = require<std::string>(j, "format");
  c.parallel = require<bool>(j, "parallel");
  return c;
}

json to_json(const ConvergenceTrace& trace) {
  return json{{"error", trace.error}, {"m_gap", trace.m_gap}, {"res", trace.res}};
}

ConvergenceTrace trace_from_json(const json& j) {
  ConvergenceTrace t;
  t.error = require<std::vector<double>>(j, "error");
  t.m_gap = require<std::vector<double>>(j, "m_gap");
  t.res = require<std::vector<double>>(j, "res");
  if (t.m_gap.size() != t.error.size() || t.res.size() != t.error.size()) {
    throw FormatError("trace arrays differ in length");
  }
  return t;
}

json wave_to_json(const RunConfig& cfg, const SolveResult& r) {
  json j;
  j["config"] = to_json(cfg);
  j["params"] = {{"s", r.params.s}, {"omega", r.params.omega}};
  j["grid"] = {{"n_points", r.profile.size()}};
  j["profile"] = std::vector<double>(r.profile.values().begin(), r.profile.values().end());
  j["trace"] = to_json(r.trace);
  j["iterations"] = r.trace.size();
  j["converged"] = r.converged;
  j["final_res"] = r.final_res;
  return j;
}

WaveFile wave_from_json(const json& j) {
  if (!j.is_object()) throw FormatError("wave file: top level is not an object");
  const json& params = j.contains("params") ? j.at("params") : json();
  if (!params.is_object()) throw FormatError("wave file: missing 'params'");
  const double s = require<double>(params, "s");
  const double omega = require<double>(params, "omega");
  const auto profile = require<std::vector<double>>(j, "profile");
  const json& grid = j.contains("grid") ? j.at("grid") : json();
  if (!grid.is_object()) throw FormatError("wave file: missing 'grid'");
  const auto n = require<std::size_t>(grid, "n_points");
  if (profile.size() != n) throw FormatError("wave file: profile length does not match grid");

  try {
    FractionalParams p(s, omega);
    RealPeriodicField field(make_grid(n), profile);
    ConvergenceTrace trace = j.contains("trace") ? trace_from_json(j.at("trace")) : ConvergenceTrace{};
    SolveResult r{std::move(field), std::move(trace), require<bool>(j, "converged"), p,
                  require<double>(j, "final_res")};
    RunConfig cfg = j.contains("config") ? run_config_from_json(j.at("config")) : RunConfig{};
    return {std::move(cfg), std::move(r)};
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("wave file: ") + e.what());
  }
}

json spectrum_to_json(const RunConfig& cfg, const FractionalParams& p, const SpectralReport& r) {
  json j;
  j["config"] = to_json(cfg);
  j["params"] = {{"s", p.s}, {"omega", p.omega}};
  j["n_modes"] = r.n_modes;
  j["eig_L1"] = r.eig_l1;
  j["eig_L2"] = r.eig_l2;
  j["counts"] = {{"n_L1", r.n_l1}, {"z_L1", r.z_l1}, {"n_L2", r.n_l2}, {"z_L2", r.z_l2}};
  j["kernel_residuals"] = {
      {"L1_dphi", r.kernel.l1_dphi},         {"L2_phi", r.kernel.l2_phi},
      {"L1_phi_plus_2phi3", r.kernel.l1_phi_plus}, {"norm_phi", r.kernel.norm_phi},
      {"norm_dphi", r.kernel.norm_dphi},     {"norm_phi3", r.kernel.norm_phi_cubed},
  };
  j["thresholds"] = {{"eps_neg", r.eps_neg}, {"eps_ker", r.eps_ker}};
  j["l2_ground_state_positive"] = r.l2_ground_state_positive;
  return j;
}

SpectralReport spectrum_from_json(const json& j) {
  SpectralReport r;
  r.n_modes = require<int>(j, "n_modes");
  r.eig_l1 = require<std::vector<double>>(j, "eig_L1");
  r.eig_l2 = require<std::vector<double>>(j, "eig_L2");
  const json& counts = j.at("counts");
  r.n_l1 = require<int>(counts, "n_L1");
  r.z_l1 = require<int>(counts, "z_L1");
  r.n_l2 = require<int>(counts, "n_L2");
  r.z_l2 = require<int>(counts, "z_L2");
  const json& k = j.at("kernel_residuals");
  r.kernel.l1_dphi = require<double>(k, "L1_dphi");
  r.kernel.l2_phi = require<double>(k, "L2_phi");
  r.kernel.l1_phi_plus = require<double>(k, "L1_phi_plus_2phi3");
  r.kernel.norm_phi = require<double>(k, "norm_phi");
  r.kernel.norm_dphi = require<double>(k, "norm_dphi");
  r.kernel.norm_phi_cubed = require<double>(k, "norm_phi3");
  r.eps_neg = require<double>(j.at("thresholds"), "eps_neg");
  r.eps_ker = require<double>(j.at("thresholds"), "eps_ker");
  r.l2_ground_state_positive = require<bool>(j, "l2_ground_state_positive");
  return r;
}

void write_sweep_csv(std::ostream& os, const RunConfig& cfg, const VKSweep& sweep) {
  os << "# config: " << to_json(cfg).dump() << '\n';
  os << "omega,mass,q,converged\n";
  for (std::size_t i = 0; i < sweep.omegas.size(); ++i) {
    os << format_double(sweep.omegas[i]) << ',' << format_double(sweep.masses[i]) << ',';
    if (i < sweep.q_values.size() && sweep.q_values[i]) os << format_double(*sweep.q_values[i]);
    os << ',' << (sweep.converged[i] ? 1 : 0) << '\n';
  }
}

VKSweep read_sweep_csv(std::istream& is) {
  VKSweep sweep;
  std::string line;
  bool header_seen = false;
  std::vector<std::optional<double>> q;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line.rfind("# config: ", 0) == 0) {
      try {
        sweep.s = require<double>(json::parse(line.substr(10)), "s");
      } catch (const json::exception& e) {
        throw FormatError(std::string("sweep table: bad config line: ") + e.what());
      }
      continue;
    }
    if (line[0] == '#') continue;
    if (!header_seen) {
      if (line != "omega,mass,q,converged") throw FormatError("sweep table: unexpected header");
      header_seen = true;
      continue;
    }
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    if (fields.size() != 4) throw FormatError("sweep table: expected 4 columns in '" + line + "'");
    sweep.omegas.push_back(parse_double(fields[0], "omega"));
    sweep.masses.push_back(parse_double(fields[1], "mass"));
    q.push_back(fields[2].empty() ? std::nullopt
                                  : std::optional<double>(parse_double(fields[2], "q")));
    if (fields[3] != "0" && fields[3] != "1") throw FormatError("sweep table: bad converged flag");
    sweep.converged.push_back(fields[3] == "1");
  }
  if (!header_seen) throw FormatError("sweep table: missing header");
  if (!q.empty()) {
    if (q.back()) throw FormatError("sweep table: last row must have an empty q");
    q.pop_back();
  }
  sweep.q_values = std::move(q);
  return sweep;
}

json sweep_sidecar(const RunConfig& cfg, const VKSweep& sweep, const Classification& c) {
  json j;
  j["config"] = to_json(cfg);
  j["s"] = sweep.s;
  j["points"] = sweep.omegas.size();
  j["converged_points"] = sweep.converged_count();
  j["classification"] = std::string(to_string(c.kind));
  j["omega_c"] = c.omega_c ? json(*c.omega_c) : json(nullptr);
  j["omega_c_width"] = c.omega_c_width ? json(*c.omega_c_width) : json(nullptr);
  j["sign_changes"] = c.sign_changes;
  return j;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw FormatError("write to '" + path.string() + "' failed");
}

}  // namespace fnls
