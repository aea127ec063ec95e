// Command-line front end: classification, scattering solves and sweeps, kernel dumps,
// semiclassical trajectories, device optimization and self-checks.

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "asym/csv.hpp"
#include "asym/device_optimizer.hpp"
#include "asym/effective_potential.hpp"
#include "asym/errors.hpp"
#include "asym/nonlocal_solver.hpp"
#include "asym/profile_io.hpp"
#include "asym/random_cases.hpp"
#include "asym/semiclassical.hpp"
#include "asym/symmetry.hpp"
#include "asym/two_level_solver.hpp"

namespace {

using namespace asym;
using nlohmann::json;

struct RunConfig {
  std::string profile_path;
  std::optional<double> v_over_vd;
  std::optional<double> v_min, v_max;
  std::optional<int> v_steps;
  int grid = 0;
  double tol = 1e-9;
  std::string device = "ta";
  std::string init = "auto";
  std::string out;
  std::string log;
  std::string format = "csv";
  std::string direction = "left";
  int samples = 401;
  int budget = 500;
  bool window = false;
  std::optional<std::uint64_t> seed;
};

std::string echo(const std::string& command, const RunConfig& c) {
  std::ostringstream ss;
  ss << "command=" << command;
  if (!c.profile_path.empty()) ss << " profile=" << c.profile_path;
  if (c.v_over_vd) ss << " v_over_vd=" << format_number(*c.v_over_vd);
  if (c.v_min) ss << " v_min=" << format_number(*c.v_min);
  if (c.v_max) ss << " v_max=" << format_number(*c.v_max);
  if (c.v_steps) ss << " v_steps=" << *c.v_steps;
  if (c.grid) ss << " grid=" << c.grid;
  ss << " tol=" << format_number(c.tol);
  if (command == "optimize") {
    ss << " device=" << c.device << " init=" << c.init << " budget=" << c.budget
       << " window=" << (c.window ? 1 : 0);
  }
  if (command == "semiclassical") ss << " direction=" << c.direction << " samples=" << c.samples;
  if (c.seed) ss << " seed=" << *c.seed;
  return ss.str();
}

// CSV goes to --out when given, otherwise to stdout.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw InvalidInput("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  bool to_file() const { return static_cast<bool>(file_); }

 private:
  std::unique_ptr<std::ofstream> file_;
};

RabiProfile require_profile(const RunConfig& c) {
  if (c.profile_path.empty()) throw InvalidInput("--profile is required");
  return load_profile(c.profile_path);
}

double require_velocity(const RunConfig& c) {
  if (c.v_min || c.v_max || c.v_steps) {
    throw InvalidInput("--v-over-vd and --v-min/--v-max/--v-steps are mutually exclusive");
  }
  if (!c.v_over_vd) throw InvalidInput("--v-over-vd is required");
  if (!(*c.v_over_vd > 0.0)) throw InvalidInput("--v-over-vd must be positive");
  return *c.v_over_vd;
}

std::vector<double> require_sweep(const RunConfig& c) {
  if (c.v_over_vd) {
    throw InvalidInput("--v-over-vd and --v-min/--v-max/--v-steps are mutually exclusive");
  }
  if (!c.v_min || !c.v_max || !c.v_steps) {
    throw InvalidInput("--v-min, --v-max and --v-steps are required");
  }
  if (*c.v_steps < 1) throw InvalidInput("--v-steps must be at least 1");
  if (!(*c.v_min > 0.0) || *c.v_max < *c.v_min) throw InvalidInput("need 0 < v-min <= v-max");
  std::vector<double> v(*c.v_steps);
  for (int i = 0; i < *c.v_steps; ++i) {
    v[i] = *c.v_steps == 1 ? *c.v_min : *c.v_min + (*c.v_max - *c.v_min) * i / (*c.v_steps - 1);
  }
  return v;
}

// --tol is relative; the absolute floor tracks it three decades lower.
SolverOptions solver_options(const RunConfig& c) {
  if (!(c.tol > 0.0 && c.tol < 1.0)) throw InvalidInput("--tol must lie in (0, 1)");
  SolverOptions s;
  s.rtol = c.tol;
  s.atol = 1e-3 * c.tol;
  return s;
}

json report_json(const SymmetryReport& r) {
  json flags = json::object();
  for (auto s : kAllSymmetries) {
    if (!r.energy_level &&
        (s == Symmetry::II || s == Symmetry::IV || s == Symmetry::V || s == Symmetry::VII)) {
      continue;
    }
    json f{{"holds", r.has(s)}};
    if (r[s].phase) f["phase"] = *r[s].phase;
    flags[std::string(to_string(s))] = f;
  }
  json devices = json::array();
  for (auto d : r.devices) devices.push_back(std::string(to_string(d)));
  json symmetries = json::array();
  for (auto s : r.present()) symmetries.push_back(std::string(to_string(s)));
  return {{"symmetries", symmetries},
          {"flags", flags},
          {"degenerate", r.degenerate},
          {"energy_checked", r.energy_level},
          {"allowed_devices", devices}};
}

int cmd_classify(const RunConfig& c) {
  const RabiProfile p = require_profile(c);
  SymmetryReport r = classify_profile(p);
  if (c.v_over_vd) r = classify_with_energy(r, *c.v_over_vd,
                                            effective_params(p, energy_from_velocity_ratio(*c.v_over_vd)).mu);
  std::cout << report_json(r).dump(2) << "\n";
  return 0;
}

int cmd_preset(const RunConfig& c) {
  ReferenceDevice d;
  if (c.device == "ta") d = transmission_absorption_device();
  else if (c.device == "ra") d = reflection_absorption_device();
  else if (c.device == "tra-half") d = half_transmission_reflection_device();
  else throw InvalidInput("unknown device " + c.device);
  Output out(c.out);
  out.stream() << dump_profile(d.profile);
  return 0;
}

int cmd_solve(const RunConfig& c) {
  const RabiProfile p = require_profile(c);
  const double v = require_velocity(c);
  const ChannelMatrices m = solve(make_job(p, v), solver_options(c));
  const Coefficients k = coefficients(m);
  if (c.format == "json") {
    json j{{"v_over_vd", v},         {"T2l", k.T_left},           {"T2r", k.T_right},
           {"R2l", k.R_left},        {"R2r", k.R_right},          {"absorb_l", k.absorb_left()},
           {"absorb_r", k.absorb_right()}, {"channel2_open", m.channel2_open},
           {"error_estimate", m.error_estimate}};
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "v/vd=" << format_number(v) << " |Tl|^2=" << format_number(k.T_left)
              << " |Tr|^2=" << format_number(k.T_right) << " |Rl|^2=" << format_number(k.R_left)
              << " |Rr|^2=" << format_number(k.R_right) << " absorb_l=" << format_number(k.absorb_left())
              << " absorb_r=" << format_number(k.absorb_right()) << "\n";
  }
  if (!c.out.empty()) {
    Output out(c.out);
    SweepRow row{v, k, {}};
    write_sweep_csv(out.stream(), {row}, echo("solve", c));
  }
  return 0;
}

int cmd_sweep(const RunConfig& c) {
  const RabiProfile p = require_profile(c);
  SweepOptions opts;
  opts.solver = solver_options(c);
  const auto rows = sweep_velocity(p, require_sweep(c), opts);
  Output out(c.out);
  write_sweep_csv(out.stream(), rows, echo("sweep", c));
  int failed = 0;
  for (const auto& r : rows) failed += r.coefficients ? 0 : 1;
  if (failed) std::cerr << failed << " sweep point(s) failed; see comment lines in the output\n";
  return 0;
}

int cmd_kernel(const RunConfig& c) {
  const RabiProfile p = require_profile(c);
  const double v = require_velocity(c);
  const auto kernel = build_kernel(p, energy_from_velocity_ratio(v), c.grid ? c.grid : 401);
  Output out(c.out);
  write_kernel_csv(out.stream(), kernel, echo("kernel", c));
  return 0;
}

int cmd_semiclassical(const RunConfig& c) {
  const RabiProfile p = require_profile(c);
  const double v = require_velocity(c);
  Direction dir;
  if (c.direction == "left") dir = Direction::Left;
  else if (c.direction == "right") dir = Direction::Right;
  else throw InvalidInput("--direction must be left or right");
  TrajectoryOptions opts;
  opts.samples = c.samples;
  const auto run = integrate_trajectory(p, v, dir, opts);
  Output out(c.out);
  write_trajectory_csv(out.stream(), run, echo("semiclassical", c));
  if (out.to_file()) {
    std::cout << "final ground population " << format_number(run.final_ground_population()) << "\n";
  }
  return 0;
}

DeviceTarget target_from(const RunConfig& c, double v) {
  DeviceTarget t;
  t.velocity_ratio = v;
  t.velocity_window = c.window;
  if (c.device == "ta") {
    t.kind = DeviceKind::TransmitAbsorb;
    t.ansatz = PresetKind::VIII;
  } else if (c.device == "ra") {
    t.kind = DeviceKind::ReflectAbsorb;
    t.ansatz = PresetKind::VI;
  } else if (c.device == "tra-half") {
    t.kind = DeviceKind::HalfTransmitReflectAbsorb;
    t.ansatz = PresetKind::I;
  } else {
    throw InvalidInput("--device must be one of ta, ra, tra-half");
  }
  return t;
}

int cmd_optimize(const RunConfig& c) {
  const double v = require_velocity(c);
  const DeviceTarget target = target_from(c, v);
  ParameterVector theta0;
  if (c.init == "auto") {
    theta0 = auto_initial_parameters(target);
  } else if (c.init == "file") {
    const RabiProfile p = require_profile(c);
    if (std::abs(p.terms.empty() ? 0.0 : p.terms[0].width - target.width) > 1e-12) {
      throw InvalidInput("initial profile must use the ansatz width w/d = sqrt(2)/10");
    }
    theta0 = parameters_from_profile(target, p);
  } else {
    throw InvalidInput("--init must be auto or file");
  }
  if (c.out.empty()) throw InvalidInput("--out is required for the optimized profile");

  OptimizerOptions opts;
  opts.budget = c.budget;
  opts.solver = solver_options(c);
  const OptState st = optimize(target, theta0, opts);
  save_profile(c.out, profile_from_parameters(target, st.theta));
  if (!c.log.empty()) {
    Output log(c.log);
    write_trace_csv(log.stream(), target, st, echo("optimize", c));
  }
  std::cout << "device=" << to_string(target.kind) << " J=" << format_number(st.objective)
            << " iterations=" << st.iterations << " evaluations=" << st.evaluations
            << " stop=\"" << st.stop_reason << "\"" << (st.stalled ? " stalled" : "") << "\n";
  return 0;
}

int cmd_verify(const RunConfig& c) {
  RabiProfile p;
  double v = 0.0;
  if (c.seed) {
    if (!c.profile_path.empty()) throw InvalidInput("--seed and --profile are mutually exclusive");
    const auto rc = random_open_channel_case(*c.seed);
    p = rc.profile;
    v = c.v_over_vd ? require_velocity(c) : rc.velocity_ratio;
  } else {
    p = require_profile(c);
    v = require_velocity(c);
  }
  const int grid = c.grid ? c.grid : 801;
  const ChannelMatrices m = solve(make_job(p, v), solver_options(c));
  const Coefficients k = coefficients(m);
  bool all_pass = true;
  auto line = [&](const std::string& name, bool pass, const std::string& detail) {
    all_pass = all_pass && pass;
    std::cout << name << " " << (pass ? "PASS" : "FAIL") << " " << detail << "\n";
  };
  auto skip = [](const std::string& name, const std::string& why) {
    std::cout << name << " SKIP " << why << "\n";
  };

  std::cout << "# " << version_string() << " " << echo("verify", c) << " v_over_vd_used="
            << format_number(v) << "\n";
  const bool hermitian_open = p.tau_gamma == 0.0 && m.channel2_open;
  if (hermitian_open) {
    const auto flux = outgoing_flux(m);
    line("flux_left", std::abs(flux.left - 1.0) <= 1e-6,
         "residual=" + format_number(std::abs(flux.left - 1.0)));
    line("flux_right", std::abs(flux.right - 1.0) <= 1e-6,
         "residual=" + format_number(std::abs(flux.right - 1.0)));
    const auto viol = unitarity_violations(m);
    for (int i = 0; i < 4; ++i) {
      line("unitarity_bound_" + std::to_string(i + 1), viol[i] <= 1e-8,
           "violation=" + format_number(viol[i]));
    }
  } else {
    skip("flux", "requires gamma = 0 and an open excited channel");
    skip("unitarity_bounds", "requires gamma = 0 and an open excited channel");
  }

  const auto ls = solve_ground_both(p, energy_from_velocity_ratio(v), grid);
  const std::vector<std::pair<std::string, double>> diffs{
      {"oracle_T_left", std::abs(std::abs(ls.left.T) - std::abs(m.T_left()))},
      {"oracle_R_left", std::abs(std::abs(ls.left.R) - std::abs(m.R_left()))},
      {"oracle_T_right", std::abs(std::abs(ls.right.T) - std::abs(m.T_right()))},
      {"oracle_R_right", std::abs(std::abs(ls.right.R) - std::abs(m.R_right()))}};
  for (const auto& [name, d] : diffs) line(name, d <= 1e-3, "diff=" + format_number(d));
  std::cout << "coefficients T2l=" << format_number(k.T_left) << " T2r=" << format_number(k.T_right)
            << " R2l=" << format_number(k.R_left) << " R2r=" << format_number(k.R_right) << "\n";
  return all_pass ? 0 : 1;
}

void add_common(CLI::App* sub, RunConfig& c) {
  sub->add_option("--profile", c.profile_path, "profile JSON file");
  sub->add_option("--tol", c.tol, "integrator relative tolerance");
}

void add_velocity(CLI::App* sub, RunConfig& c) {
  sub->add_option("--v-over-vd", c.v_over_vd, "incident velocity in units of v_d");
}

void add_sweep(CLI::App* sub, RunConfig& c) {
  sub->add_option("--v-min", c.v_min);
  sub->add_option("--v-max", c.v_max);
  sub->add_option("--v-steps", c.v_steps);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Asymmetric scattering of two-level atoms off shaped laser fields"};
  app.set_version_flag("--version", asym::version_string());
  app.require_subcommand(1);
  RunConfig c;

  auto* preset = app.add_subcommand("preset", "write one of the reference device profiles");
  preset->add_option("--device", c.device, "ta | ra | tra-half");
  preset->add_option("--out", c.out);

  auto* classify = app.add_subcommand("classify", "symmetry classes and allowed devices (JSON)");
  add_common(classify, c);
  add_velocity(classify, c);

  auto* solve_cmd = app.add_subcommand("solve", "scattering coefficients at one velocity");
  add_common(solve_cmd, c);
  add_velocity(solve_cmd, c);
  add_sweep(solve_cmd, c);
  solve_cmd->add_option("--out", c.out, "CSV output");
  solve_cmd->add_option("--format", c.format, "summary format: csv | json")
      ->check(CLI::IsMember({"csv", "json"}));

  auto* sweep = app.add_subcommand("sweep", "coefficients over a velocity range (CSV)");
  add_common(sweep, c);
  add_velocity(sweep, c);
  add_sweep(sweep, c);
  sweep->add_option("--out", c.out);

  auto* kernel = app.add_subcommand("kernel", "non-local potential on a grid (CSV)");
  add_common(kernel, c);
  add_velocity(kernel, c);
  add_sweep(kernel, c);
  kernel->add_option("--grid", c.grid, "grid points (default 401)");
  kernel->add_option("--out", c.out);

  auto* semi = app.add_subcommand("semiclassical", "two-level TDSE along a classical path (CSV)");
  add_common(semi, c);
  add_velocity(semi, c);
  add_sweep(semi, c);
  semi->add_option("--direction", c.direction, "left | right");
  semi->add_option("--samples", c.samples);
  semi->add_option("--out", c.out);

  auto* opt = app.add_subcommand("optimize", "gradient ascent on a device objective");
  add_common(opt, c);
  add_velocity(opt, c);
  add_sweep(opt, c);
  opt->add_option("--device", c.device, "ta | ra | tra-half");
  opt->add_option("--init", c.init, "auto | file");
  opt->add_option("--budget", c.budget, "objective evaluations");
  opt->add_flag("--window", c.window, "average over 0.9, 1.0, 1.1 v0");
  opt->add_option("--out", c.out, "optimized profile JSON");
  opt->add_option("--log", c.log, "iteration log CSV");

  auto* verify = app.add_subcommand("verify", "flux, unitarity bounds and two-solver cross-check");
  add_common(verify, c);
  add_velocity(verify, c);
  add_sweep(verify, c);
  verify->add_option("--grid", c.grid, "Nyström grid (default 801)");
  verify->add_option("--seed", c.seed, "use a random open-channel profile");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*preset) return cmd_preset(c);
    if (*classify) return cmd_classify(c);
    if (*solve_cmd) return cmd_solve(c);
    if (*sweep) return cmd_sweep(c);
    if (*kernel) return cmd_kernel(c);
    if (*semi) return cmd_semiclassical(c);
    if (*opt) return cmd_optimize(c);
    if (*verify) return cmd_verify(c);
  } catch (const asym::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  }
  return 2;
}
