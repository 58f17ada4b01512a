#include "fnls/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>

#include "fnls/closed_form.hpp"
#include "fnls/linearized.hpp"
#include "fnls/petviashvili.hpp"
#include "fnls/run_io.hpp"
#include "fnls/spectral_core.hpp"
#include "fnls/vk_analysis.hpp"

namespace fnls {

namespace {

constexpr double kValidateTolerance = 1e-6;
constexpr double kStokesRatioLow = 12.0;
constexpr double kStokesRatioHigh = 20.0;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string g17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.output_path.empty()) {
    out << text;
  } else {
    write_text_file(cfg.output_path, text);
  }
}

std::string profile_csv(const RunConfig& cfg, const RealPeriodicField& f) {
  std::ostringstream os;
  os << "# config: " << to_json(cfg).dump() << '\n' << "x,phi\n";
  for (std::size_t j = 0; j < f.size(); ++j) {
    os << g17(f.grid().nodes()[j]) << ',' << g17(f[j]) << '\n';
  }
  return os.str();
}

void require_format(const RunConfig& cfg, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed) {
    if (cfg.format == a) return;
  }
  throw UsageError("--format " + cfg.format + " is not supported by '" + cfg.subcommand + "'");
}

void check_common(const RunConfig& cfg) {
  if (cfg.n_grid < 8 || cfg.n_grid % 2 != 0) throw UsageError("--n must be even and >= 8");
  if (!(cfg.s > 0.0 && cfg.s <= 1.0)) throw UsageError("--s must lie in (0, 1]");
  try {
    cfg.solver_config().validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

double require_omega(const RunConfig& cfg) {
  if (!cfg.omega) throw UsageError("--omega is required for '" + cfg.subcommand + "'");
  if (!(*cfg.omega > 0.0)) throw UsageError("--omega must be positive");
  return *cfg.omega;
}

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  require_format(cfg, {"json", "csv"});
  check_common(cfg);
  const FractionalParams p(cfg.s, require_omega(cfg));
  const GridPtr grid = make_grid(static_cast<std::size_t>(cfg.n_grid));
  const SolveResult r = solve(default_initial_guess(grid, p), p, cfg.solver_config());
  emit(cfg, cfg.format == "csv" ? profile_csv(cfg, r.profile) : wave_to_json(cfg, r).dump(1) + "\n",
       out);
  if (!r.converged) {
    err << "solve: not converged after " << r.trace.size() << " iterations (RES = " << r.final_res
        << ")\n";
    return kExitCompute;
  }
  return kExitOk;
}

int validate_dn(const RunConfig& cfg, std::ostream& out) {
  const double omega = cfg.omega.value_or(1.0);
  if (!(omega > 0.5)) throw UsageError("validate --case dn requires --omega > 1/2");
  const FractionalParams p(1.0, omega);
  const GridPtr grid = make_grid(static_cast<std::size_t>(cfg.n_grid));
  const SolveResult r = solve(default_initial_guess(grid, p), p, cfg.solver_config());
  const DnParams dn = dn_solution_params(omega);
  const RealPeriodicField exact = dn_solution(grid, dn);
  double disc = 0.0;
  for (std::size_t j = 0; j < grid->size(); ++j) disc = std::max(disc, std::abs(r.profile[j] - exact[j]));

  const bool ok = r.converged && disc <= kValidateTolerance;
  json j;
  j["config"] = to_json(cfg);
  j["case"] = "dn";
  j["dn_params"] = {{"eta1", dn.eta1}, {"eta2", dn.eta2}, {"kappa", dn.kappa}, {"period", dn.period}};
  j["discrepancy_sup"] = disc;
  j["iterations"] = r.trace.size();
  j["converged"] = r.converged;
  j["final_error"] = r.trace.error.empty() ? 0.0 : r.trace.error.back();
  j["final_m_gap"] = r.trace.m_gap.empty() ? 0.0 : r.trace.m_gap.back();
  j["final_res"] = r.final_res;
  j["passed"] = ok;
  emit(cfg, j.dump(1) + "\n", out);
  return ok ? kExitOk : kExitCompute;
}

int validate_stokes(const RunConfig& cfg, std::ostream& out) {
  if (!(cfg.a > 0.0)) throw UsageError("--a must be positive");
  const GridPtr grid = make_grid(static_cast<std::size_t>(cfg.n_grid));
  const auto res_at = [&](double a) {
    const StokesWave w = stokes_wave(grid, a, cfg.s);
    return residual(w.field, FractionalParams(cfg.s, w.omega)).res_norm;
  };
  const double r1 = res_at(cfg.a);
  const double r2 = res_at(0.5 * cfg.a);
  const double ratio = r1 / r2;
  const bool ok = ratio >= kStokesRatioLow && ratio <= kStokesRatioHigh;
  json j;
  j["config"] = to_json(cfg);
  j["case"] = "stokes";
  j["gamma"] = stokes_gamma(cfg.s);
  j["omega"] = stokes_frequency(cfg.a, cfg.s);
  j["res_a"] = r1;
  j["res_half_a"] = r2;
  j["ratio"] = ratio;
  j["observed_order"] = std::log2(ratio);
  j["passed"] = ok;
  emit(cfg, j.dump(1) + "\n", out);
  return ok ? kExitOk : kExitCompute;
}

int cmd_validate(const RunConfig& cfg, bool s_given, std::ostream& out) {
  require_format(cfg, {"json"});
  check_common(cfg);
  if (cfg.validate_case == "dn") {
    if (s_given && cfg.s != 1.0) throw UsageError("validate --case dn requires s = 1");
    return validate_dn(cfg, out);
  }
  if (cfg.validate_case == "stokes") return validate_stokes(cfg, out);
  throw UsageError("--case must be 'dn' or 'stokes'");
}

int cmd_spectrum(RunConfig cfg, std::ostream& out) {
  require_format(cfg, {"json", "csv"});
  SolveResult wave = [&] {
    if (!cfg.input_path.empty()) {
      WaveFile wf = wave_from_json(read_json_file(cfg.input_path));
      cfg.s = wf.result.params.s;
      cfg.omega = wf.result.params.omega;
      cfg.n_grid = static_cast<int>(wf.result.profile.size());
      return std::move(wf.result);
    }
    check_common(cfg);
    const FractionalParams p(cfg.s, require_omega(cfg));
    const GridPtr grid = make_grid(static_cast<std::size_t>(cfg.n_grid));
    return solve(default_initial_guess(grid, p), p, cfg.solver_config());
  }();
  if (cfg.n_modes < 1 || cfg.n_modes > cfg.n_grid / 2) {
    throw UsageError("--modes must lie in [1, n/2]");
  }
  const SpectralReport rep = spectral_report(wave.profile, wave.params, cfg.n_modes);
  if (cfg.format == "csv") {
    std::ostringstream os;
    os << "# config: " << to_json(cfg).dump() << '\n' << "index,eig_L1,eig_L2\n";
    for (std::size_t i = 0; i < rep.eig_l1.size(); ++i) {
      os << i << ',' << g17(rep.eig_l1[i]) << ',' << g17(rep.eig_l2[i]) << '\n';
    }
    emit(cfg, os.str(), out);
  } else {
    emit(cfg, spectrum_to_json(cfg, wave.params, rep).dump(1) + "\n", out);
  }
  return kExitOk;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  require_format(cfg, {"csv", "json"});
  check_common(cfg);
  if (!(cfg.omega_min >= 0.5)) throw UsageError("--omega-min must be >= 1/2");
  if (!(cfg.omega_max > cfg.omega_min)) throw UsageError("--omega-max must exceed --omega-min");
  if (cfg.steps < 2) throw UsageError("--steps must be >= 2");

  SweepOptions opts;
  opts.grid_n = cfg.n_grid;
  opts.solver = cfg.solver_config();
  opts.mode = cfg.parallel ? SweepMode::parallel_cold : SweepMode::warm_start;

  VKSweep sweep;
  try {
    sweep = vk_index(mass_curve(cfg.s, cfg.omega_min, cfg.omega_max, cfg.steps, opts));
  } catch (const SweepError& e) {
    err << "sweep: " << e.what() << '\n';
    return kExitCompute;
  }
  const Classification c = classify(sweep);
  const json side = sweep_sidecar(cfg, sweep, c);

  if (cfg.format == "csv") {
    std::ostringstream os;
    write_sweep_csv(os, cfg, sweep);
    emit(cfg, os.str(), out);
    if (!cfg.output_path.empty()) {
      write_text_file(cfg.output_path + ".json", side.dump(1) + "\n");
    } else {
      err << side.dump() << '\n';
    }
  } else {
    json j = side;
    j["omegas"] = sweep.omegas;
    j["masses"] = sweep.masses;
    json q = json::array();
    for (const auto& v : sweep.q_values) q.push_back(v ? json(*v) : json(nullptr));
    j["q"] = q;
    j["converged"] = sweep.converged;
    emit(cfg, j.dump(1) + "\n", out);
  }
  err << "s = " << cfg.s << ": " << to_string(c.kind);
  if (c.omega_c) err << " (omega_c = " << *c.omega_c << " +- " << 0.5 * *c.omega_c_width << ")";
  err << ", " << sweep.converged_count() << "/" << sweep.omegas.size() << " converged\n";
  return kExitOk;
}

int cmd_stokes(const RunConfig& cfg, std::ostream& out) {
  require_format(cfg, {"json", "csv"});
  check_common(cfg);
  if (!(cfg.a >= 0.0)) throw UsageError("--a must be non-negative");
  const GridPtr grid = make_grid(static_cast<std::size_t>(cfg.n_grid));
  const StokesWave w = stokes_wave(grid, cfg.a, cfg.s);
  if (cfg.format == "csv") {
    emit(cfg, profile_csv(cfg, w.field), out);
    return kExitOk;
  }
  json j;
  j["config"] = to_json(cfg);
  const StokesParams sp = stokes_params(cfg.a, cfg.s);
  j["params"] = {{"a", sp.a}, {"s", sp.s}, {"gamma", sp.gamma}, {"omega", sp.omega}};
  j["grid"] = {{"n_points", grid->size()}};
  j["profile"] = std::vector<double>(w.field.values().begin(), w.field.values().end());
  j["res_norm"] = residual(w.field, FractionalParams(cfg.s, w.omega)).res_norm;
  emit(cfg, j.dump(1) + "\n", out);
  return kExitOk;
}

void add_shared(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--s", cfg.s, "fractional order in (0, 1]");
  sub->add_option("--n", cfg.n_grid, "grid points (even, >= 8)");
  sub->add_option("--nu", cfg.nu, "stabilization exponent")->capture_default_str();
  sub->add_option("--tol", cfg.tol, "tolerance for Error, |1-M| and RES")->capture_default_str();
  sub->add_option("--max-iter", cfg.max_iter, "iteration cap")->capture_default_str();
  sub->add_option("--out", cfg.output_path, "output file (stdout if omitted)");
  sub->add_option("--format", cfg.format, "json or csv");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Periodic standing waves of the fractional cubic NLS"};
  app.require_subcommand(1);
  RunConfig cfg;
  double omega = 0.0;

  auto* solve_cmd = app.add_subcommand("solve", "compute a wave profile by Petviashvili iteration");
  auto* validate_cmd = app.add_subcommand("validate", "compare against closed-form solutions");
  auto* spectrum_cmd = app.add_subcommand("spectrum", "eigenvalues of L1 and L2 around a wave");
  auto* sweep_cmd = app.add_subcommand("sweep", "mass curve and VK index over omega");
  auto* stokes_cmd = app.add_subcommand("stokes", "sample the small-amplitude expansion");

  CLI::Option* s_opts[5]{};
  CLI::Option* omega_opts[5]{};
  int idx = 0;
  for (auto* sub : {solve_cmd, validate_cmd, spectrum_cmd, sweep_cmd, stokes_cmd}) {
    add_shared(sub, cfg);
    s_opts[idx] = sub->get_option("--s");
    if (sub != sweep_cmd && sub != stokes_cmd) {
      omega_opts[idx] = sub->add_option("--omega", omega, "wave frequency");
    }
    ++idx;
  }
  validate_cmd->add_option("--case", cfg.validate_case, "dn or stokes")->required();
  validate_cmd->add_option("--a", cfg.a, "Stokes amplitude");
  stokes_cmd->add_option("--a", cfg.a, "Stokes amplitude");
  spectrum_cmd->add_option("--in", cfg.input_path, "wave file written by 'solve'");
  spectrum_cmd->add_option("--modes", cfg.n_modes, "trigonometric modes M")->capture_default_str();
  sweep_cmd->add_option("--omega-min", cfg.omega_min, "left end (excluded)")->capture_default_str();
  sweep_cmd->add_option("--omega-max", cfg.omega_max, "right end")->capture_default_str();
  sweep_cmd->add_option("--steps", cfg.steps, "subintervals")->capture_default_str();
  sweep_cmd->add_flag("--parallel", cfg.parallel, "independent cold starts across threads");
  bool full_scale = false;
  sweep_cmd->add_flag("--full-scale", full_scale, "omega in (1/2, 50], 1000 steps, n = 16384");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  CLI::App* chosen = app.get_subcommands().front();
  cfg.subcommand = chosen->get_name();
  for (int i = 0; i < 5; ++i) {
    if (omega_opts[i] && omega_opts[i]->count() > 0) cfg.omega = omega;
  }
  bool s_given = false;
  for (auto* o : s_opts) s_given = s_given || (o && o->count() > 0);
  const bool n_given = chosen->get_option("--n")->count() > 0;
  if (cfg.format.empty()) cfg.format = chosen == sweep_cmd ? "csv" : "json";
  if (chosen == sweep_cmd) {
    if (!n_given) cfg.n_grid = 4096;
    if (full_scale) {
      cfg.omega_min = 0.5;
      cfg.omega_max = 50.0;
      cfg.steps = 1000;
      if (!n_given) cfg.n_grid = 16384;
    }
  }

  try {
    if (chosen == solve_cmd) return cmd_solve(cfg, out, err);
    if (chosen == validate_cmd) return cmd_validate(cfg, s_given, out);
    if (chosen == spectrum_cmd) return cmd_spectrum(cfg, out);
    if (chosen == sweep_cmd) return cmd_sweep(cfg, out, err);
    return cmd_stokes(cfg, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const json::exception& e) {
    err << "error: malformed input: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "computation failed: " << e.what() << '\n';
    return kExitCompute;
  }
}

}  // namespace fnls
