#include "filmflow/runner.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <map>
#include <optional>

#include <fftw3.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "filmflow/diagnostics.hpp"
#include "filmflow/dynamics.hpp"
#include "filmflow/output.hpp"
#include "filmflow/residuals.hpp"

namespace filmflow {

namespace {

using Json = nlohmann::ordered_json;

/// Raised when a study misses its declared target.
struct ThresholdMiss {
  std::string message;
};

struct Context {
  const RunConfig& config;
  ValidatedParams validated;
  Json summary = Json::object();
  std::ostream& out;
};

void write(const RunConfig& c, const std::string& name, const std::string& content) {
  write_atomic(c.out / name, content);
}

SurfaceState initial_state(const RunConfig& c) {
  return make_initial_state(c.init, c.N, c.seed);
}

Trajectory run_simulation(Context& ctx, Regime regime, const PhysicalParams& params) {
  const RunConfig& c = ctx.config;
  Trajectory traj = simulate(initial_state(c), params, regime, c.T, c.dt, c.stride, c.dealias);
  traj.metadata.regime = regime;
  return traj;
}

void summarize_trajectory(Json& j, const Trajectory& traj, double s) {
  const auto& last = traj.snapshots.back();
  j["snapshots"] = traj.snapshots.size();
  j["steps"] = traj.metadata.steps;
  j["dt_used"] = traj.metadata.dt;
  j["wall_seconds"] = traj.metadata.wall_seconds;
  j["final_tau"] = last.tau();
  j["final_norm_l2"] = sobolev_norm(last, 0.0);
  j["final_norm_hs"] = sobolev_norm(last, s);
}

void experiment_simulate(Context& ctx) {
  const RunConfig& c = ctx.config;
  const Trajectory traj = run_simulation(ctx, ctx.validated.regime, ctx.validated.params);
  write(c, "trajectory.csv", trajectory_csv(traj, c.sobolev_s));
  if (c.spectra) {
    for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
      write(c, "spectra/snapshot_" + std::to_string(k) + ".csv", spectrum_csv(traj.snapshots[k]));
    }
  }
  summarize_trajectory(ctx.summary, traj, c.sobolev_s);
}

void experiment_reconstruct(Context& ctx) {
  const RunConfig& c = ctx.config;
  const Regime regime = ctx.validated.regime;
  const PhysicalParams& p = ctx.validated.params;
  const Trajectory traj = run_simulation(ctx, regime, p);
  const SurfaceState& state = traj.snapshots.back();
  const JetRequirement req = closure_jet_requirement(regime);
  const SurfaceJet jet = eta_jet(state, p, regime, req.max_x, req.max_t, c.dealias);
  const FieldGrid field = reconstruct(jet, p, regime, c.M, c.variant);
  write(c, "field.csv", field_csv(field));
  if (c.binary) {
    write(c, "u.bin", field_binary(field, FieldComponent::U));
    write(c, "v.bin", field_binary(field, FieldComponent::V));
    write(c, "p.bin", field_binary(field, FieldComponent::P));
  }
  double div = 0.0;
  for (double d : divergence(field)) div = std::max(div, std::abs(d));
  const SourceTerms sources = source_terms(jet, field, p);
  const ResidualSet r = residual_set(jet, field, sources, p, regime);
  Json& j = ctx.summary;
  j["tau"] = state.tau();
  j["closure_order"] = field.order;
  j["max_divergence"] = div;
  const char* names[] = {"psi1", "psi2", "phi1", "phi2", "phi3"};
  const auto raw = r.raw_norms.as_array();
  const auto rep = r.norms.as_array();
  for (std::size_t k = 0; k < 5; ++k) {
    j["raw_residual_norms"][names[k]] = raw[k];
    j["residual_norms"][names[k]] = rep[k];
  }
}

void experiment_residual_study(Context& ctx) {
  const RunConfig& c = ctx.config;
  const SurfaceState eta0 = initial_state(c);
  const OrderReport report = order_study(eta0, ctx.validated.params, ctx.validated.regime,
                                         c.deltas, c.threads, c.variant, c.M);
  write(c, "order.csv", order_csv(report));
  write(c, "order_summary.json", order_summary_json(report));
  ctx.summary["order_study"] = Json::parse(order_summary_json(report));
  if (!report.pass) throw ThresholdMiss{"residual slopes below the declared threshold"};
}

double fd_stable_step(const ModelCoefficients& coeffs, Regime regime, int nfd) {
  const double h = 1.0 / nfd;
  double third = 0.0, fourth = 0.0;
  switch (regime) {
    case Regime::II: fourth = coeffs.hyper; break;
    case Regime::III: third = coeffs.delta_weight * coeffs.c1; break;
    case Regime::IV:
      third = coeffs.delta_weight * coeffs.c1;
      fourth = coeffs.delta_weight * coeffs.hyper;
      break;
    case Regime::KdVBurgers: third = coeffs.c1; break;
    case Regime::KdVKS:
      third = coeffs.c1;
      fourth = coeffs.hyper;
      break;
    default: break;
  }
  // Bound on the spectral radius of the linear difference operator.
  const double rho = 4.0 * std::abs(coeffs.nu) / (h * h) + 2.0 * std::abs(third) / (h * h * h) +
                     16.0 * std::abs(fourth) / (h * h * h * h);
  return rho > 0.0 ? 2.0 / rho : 1e-3;
}

void experiment_convergence(Context& ctx) {
  const RunConfig& c = ctx.config;
  const Regime regime = ctx.validated.regime;
  const PhysicalParams& p = ctx.validated.params;
  const int nfd = c.nfd > 0 ? c.nfd : 16 * c.N;
  const ModelCoefficients coeffs = model_coefficients(p, regime);
  const double fd_dt = c.fd_dt > 0.0 ? c.fd_dt : fd_stable_step(coeffs, regime, nfd);
  const SurfaceState init = initial_state(c);
  const Trajectory spectral = simulate(init, p, regime, c.T, c.dt, c.stride, c.dealias);
  const Trajectory fd = fd_reference(init, p, regime, nfd, fd_dt, c.T);
  const double rel = relative_l2(fd.snapshots.back(), spectral.snapshots.back());
  write(c, "convergence.csv", "tau,rel_l2\n" + format_double(spectral.snapshots.back().tau()) +
                                  "," + format_double(rel) + "\n");
  Json& j = ctx.summary;
  j["nfd"] = nfd;
  j["fd_dt"] = fd.metadata.dt;
  j["fd_steps"] = fd.metadata.steps;
  j["rel_l2"] = rel;
  j["tolerance"] = c.tolerance;
  j["pass"] = rel <= c.tolerance;
  if (!(rel <= c.tolerance)) throw ThresholdMiss{"spectral/FD gap exceeds the tolerance"};
}

void experiment_compare(Context& ctx) {
  const RunConfig& c = ctx.config;
  const Regime a = ctx.validated.regime;
  const Regime b = c.regime_b;
  const PhysicalParams& p = ctx.validated.params;
  check_regime_consistency(p, b);
  const Trajectory ta = run_simulation(ctx, a, p);
  const Trajectory tb = run_simulation(ctx, b, p);
  const auto reports = cross_model_difference(ta, tb, p, a, b, c.weight_m, c.M, c.variant);
  write(c, "difference.csv", difference_csv(reports));
  ctx.summary["regime_b"] = std::string(to_string(b));
  ctx.summary["final_d_value"] = reports.back().d_value;
}

void experiment_decay(Context& ctx) {
  const RunConfig& c = ctx.config;
  const Trajectory traj = run_simulation(ctx, ctx.validated.regime, ctx.validated.params);
  write(c, "trajectory.csv", trajectory_csv(traj, c.sobolev_s));
  const DecayFit fit = decay_fit(traj, c.sobolev_s, c.window);
  Json& j = ctx.summary;
  j["s"] = fit.s;
  j["c"] = fit.c;
  j["C"] = fit.C;
  j["rsq"] = fit.rsq;
  j["window"] = {fit.tau_lo, fit.tau_hi};
  j["samples"] = fit.samples;
  j["fit_warnings"] = fit.warnings;
  const ModelCoefficients coeffs = model_coefficients(ctx.validated.params, ctx.validated.regime);
  j["linear_rate_n1"] = -2.0 * linear_symbol(coeffs, ctx.validated.regime, 1).real();
  write(c, "decay.json", j.dump(2) + "\n");
}

std::string compiler_id() {
#if defined(__clang__)
  return "clang " __clang_version__;
#elif defined(__GNUC__)
  return "gcc " __VERSION__;
#else
  return "unknown";
#endif
}

Json manifest_header(const std::vector<std::string>& argv) {
  Json manifest;
  manifest["tool"] = "filmflow";
  manifest["version"] = FILMFLOW_VERSION;
  manifest["fftw"] = std::string(fftw_version);
  manifest["compiler"] = compiler_id();
  manifest["argv"] = argv;
  return manifest;
}

/// Manifest for a run rejected before a configuration could be resolved.
/// `entries` are the raw settings as given.
void write_rejection_manifest(const std::filesystem::path& dir,
                              const std::vector<std::string>& argv,
                              const ConfigEntries& entries, const std::string& status,
                              std::ostream& err) {
  Json manifest = manifest_header(argv);
  Json raw = Json::object();
  for (const auto& [key, value] : entries) raw[key] = value;
  manifest["config"] = raw;
  manifest["status"] = status;
  manifest["exit_code"] = kExitValidation;
  manifest["warnings"] = Json::array();
  manifest["summary"] = nullptr;
  manifest["wall_seconds"] = 0.0;
  try {
    write_atomic(dir / "manifest.json", manifest.dump(2) + "\n");
  } catch (const std::exception& e) {
    err << "could not write manifest: " << e.what() << "\n";
  }
}

/// Output directory named by the raw settings (command line over file).
std::filesystem::path requested_out(const ConfigEntries& file, const ConfigEntries& cli) {
  std::filesystem::path dir = RunConfig{}.out;
  for (const auto* layer : {&file, &cli}) {
    for (const auto& [key, value] : *layer) {
      if (key == "out" && !value.empty()) dir = value;
    }
  }
  return dir;
}

}  // namespace

int execute(const RunConfig& config, const std::vector<std::string>& argv, std::ostream& out,
            std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  Json manifest = manifest_header(argv);
  manifest["config"] = describe_config(config);

  int code = kExitOk;
  std::string status = "ok";
  Json summary;
  std::vector<std::string> warnings;
  try {
    Context ctx{config, validate_params(config.params), Json::object(), out};
    warnings = ctx.validated.warnings;
    for (const auto& w : warnings) err << "warning: " << w << "\n";
    switch (config.experiment) {
      case Experiment::Simulate: experiment_simulate(ctx); break;
      case Experiment::Reconstruct: experiment_reconstruct(ctx); break;
      case Experiment::ResidualStudy: experiment_residual_study(ctx); break;
      case Experiment::Convergence: experiment_convergence(ctx); break;
      case Experiment::Compare: experiment_compare(ctx); break;
      case Experiment::Decay: experiment_decay(ctx); break;
    }
    summary = ctx.summary;
    write(config, "summary.json", summary.dump(2) + "\n");
  } catch (const ThresholdMiss& miss) {
    code = kExitThreshold;
    status = "threshold-failure: " + miss.message;
  } catch (const BlowUpError& e) {
    code = kExitBlowUp;
    status = std::string("blow-up: ") + e.what();
  } catch (const ParameterError& e) {
    code = kExitValidation;
    status = "validation error [" + e.constraint() + "]: " + e.what();
  } catch (const std::exception& e) {
    code = kExitValidation;
    status = std::string("error: ") + e.what();
  }
  if (code != kExitOk) err << status << "\n";

  manifest["status"] = status;
  manifest["exit_code"] = code;
  manifest["warnings"] = warnings;
  manifest["summary"] = summary;
  manifest["wall_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  try {
    write(config, "manifest.json", manifest.dump(2) + "\n");
  } catch (const std::exception& e) {
    err << "could not write manifest: " << e.what() << "\n";
    if (code == kExitOk) code = kExitValidation;
  }
  if (code == kExitOk) out << "wrote " << config.out.string() << "\n";
  return code;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Thin-film surface models: simulation, field reconstruction and residual studies"};
  app.require_subcommand(1, 1);

  std::map<std::string, std::string> values;
  std::string config_path;
  app.add_option("--config", config_path, "flat key = value configuration file");
  // Every configuration key is also a flag; its value is applied after the file.
  for (const auto& key : config_keys()) {
    app.add_option("--" + key, values[key], "configuration key '" + key + "'");
  }

  std::vector<std::pair<Experiment, CLI::App*>> subs;
  for (auto e : {Experiment::Simulate, Experiment::Reconstruct, Experiment::ResidualStudy,
                 Experiment::Convergence, Experiment::Compare, Experiment::Decay}) {
    CLI::App* sub = app.add_subcommand(std::string(to_string(e)));
    sub->fallthrough();
    subs.emplace_back(e, sub);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    const std::string status = std::string("validation error [command line]: ") + e.what();
    err << status << "\n";
    const ConfigEntries given{{"out", values["out"]}};
    write_rejection_manifest(requested_out({}, given), args, {}, status, err);
    return kExitValidation;
  }

  Experiment experiment = Experiment::Simulate;
  for (const auto& [e, sub] : subs) {
    if (sub->parsed()) experiment = e;
  }

  ConfigEntries cli;
  for (const auto& key : config_keys()) {
    if (app.count("--" + key) > 0) cli.emplace_back(key, values[key]);
  }
  RunConfig config;
  ConfigEntries file;
  try {
    if (!config_path.empty()) file = read_config_file(config_path);
    config = resolve_config(experiment, file, cli);
  } catch (const ParameterError& e) {
    const std::string status =
        "validation error [" + e.constraint() + "]: " + std::string(e.what());
    err << status << "\n";
    ConfigEntries given = file;
    given.insert(given.end(), cli.begin(), cli.end());
    write_rejection_manifest(requested_out(file, cli), args, given, status, err);
    return kExitValidation;
  }
  return execute(config, args, out, err);
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace filmflow
