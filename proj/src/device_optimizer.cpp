#include "asym/device_optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <ostream>
#include <thread>

#include "asym/csv.hpp"
#include "asym/errors.hpp"
#include "asym/semiclassical.hpp"

namespace asym {

std::string_view to_string(DeviceKind kind) {
  switch (kind) {
    case DeviceKind::TransmitAbsorb: return "T/A";
    case DeviceKind::ReflectAbsorb: return "R/A";
    case DeviceKind::HalfTransmitReflectAbsorb: return "half-TR/A";
  }
  return "?";
}

Device table_device(DeviceKind kind) {
  switch (kind) {
    case DeviceKind::TransmitAbsorb: return Device::T_A;
    case DeviceKind::ReflectAbsorb: return Device::R_A;
    case DeviceKind::HalfTransmitReflectAbsorb: return Device::TR_A;
  }
  return Device::TR_A;
}

void check_target(const DeviceTarget& target) {
  if (!(target.velocity_ratio > 0.0)) throw InvalidInput("target velocity must be positive");
  SymmetryReport ansatz;
  ansatz[Symmetry::I].holds = true;
  if (target.ansatz == PresetKind::VIII) ansatz[Symmetry::VIII].holds = true;
  if (target.ansatz == PresetKind::VI) ansatz[Symmetry::VI].holds = true;
  const auto allowed = allowed_devices(ansatz);
  const Device d = table_device(target.kind);
  if (std::find(allowed.begin(), allowed.end(), d) == allowed.end()) {
    throw DeviceNotAllowed(std::string("device ") + std::string(to_string(target.kind)) +
                           " is forbidden for an ansatz with symmetry " +
                           std::string(to_string(target.ansatz)));
  }
}

std::vector<std::string> parameter_names(PresetKind ansatz) {
  if (ansatz == PresetKind::VIII) return {"a_tau", "x0_over_d", "tau_delta"};
  return {"b_tau", "c_tau", "x0_over_d", "tau_delta"};
}

RabiProfile profile_from_parameters(const DeviceTarget& target, const ParameterVector& theta) {
  const auto expected = parameter_names(target.ansatz).size();
  if (theta.size() != expected) {
    throw InvalidInput("expected " + std::to_string(expected) + " parameters for ansatz " +
                       std::string(to_string(target.ansatz)));
  }
  if (target.ansatz == PresetKind::VIII) {
    return make_preset(PresetKind::VIII, theta[0], 0.0, theta[1], target.width, theta[2]);
  }
  return make_preset(target.ansatz, theta[0], theta[1], theta[2], target.width, theta[3]);
}

ParameterVector parameters_from_profile(const DeviceTarget& target, const RabiProfile& p) {
  if (p.terms.size() != 2) throw InvalidInput("ansatz profiles have exactly two Gaussian terms");
  const double x0 = p.terms[1].center;
  switch (target.ansatz) {
    case PresetKind::VIII: return {p.terms[0].weight.real(), x0, p.tau_delta};
    case PresetKind::VI: return {p.terms[0].weight.real(), p.terms[1].weight.real(), x0, p.tau_delta};
    case PresetKind::I:
      return {-p.terms[0].weight.imag(), p.terms[1].weight.real(), x0, p.tau_delta};
  }
  return {};
}

double objective_from_coefficients(DeviceKind kind, const Coefficients& c) {
  switch (kind) {
    case DeviceKind::TransmitAbsorb: return c.T_left - c.R_left - c.T_right - c.R_right;
    case DeviceKind::ReflectAbsorb: return c.R_left - c.T_left - c.T_right - c.R_right;
    case DeviceKind::HalfTransmitReflectAbsorb: {
      const double dt = c.T_left - 0.5, dr = c.R_left - 0.5;
      return -dt * dt - dr * dr - c.T_right - c.R_right;
    }
  }
  return 0.0;
}

double objective(const DeviceTarget& target, const ParameterVector& theta,
                 const SolverOptions& solver) {
  const RabiProfile profile = profile_from_parameters(target, theta);
  const std::vector<double> factors =
      target.velocity_window ? std::vector<double>{0.9, 1.0, 1.1} : std::vector<double>{1.0};
  double sum = 0.0;
  for (double f : factors) {
    const auto m = solve(make_job(profile, f * target.velocity_ratio), solver);
    sum += objective_from_coefficients(target.kind, coefficients(m));
  }
  return sum / static_cast<double>(factors.size());
}

namespace {

// J, or -inf when the solver fails (the step is then rejected)
double safe_objective(const DeviceTarget& target, const ParameterVector& theta,
                      const SolverOptions& solver) {
  try {
    return objective(target, theta, solver);
  } catch (const Error&) {
    return -std::numeric_limits<double>::infinity();
  }
}

std::vector<double> evaluate_all(const DeviceTarget& target,
                                 const std::vector<ParameterVector>& points,
                                 const SolverOptions& solver, unsigned threads) {
  std::vector<double> out(points.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++)
      out[i] = safe_objective(target, points[i], solver);
  };
  const unsigned n = std::min<std::size_t>(threads ? threads : default_thread_count(), points.size());
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return out;
}

std::vector<double> gradient_impl(const DeviceTarget& target, const ParameterVector& theta,
                                  const std::vector<double>& scale, double h,
                                  const SolverOptions& solver, unsigned threads) {
  std::vector<ParameterVector> stencil;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    for (double sign : {1.0, -1.0}) {
      ParameterVector p = theta;
      p[i] += sign * h * scale[i];
      stencil.push_back(std::move(p));
    }
  }
  const auto values = evaluate_all(target, stencil, solver, threads);
  std::vector<double> g(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i) g[i] = (values[2 * i] - values[2 * i + 1]) / (2.0 * h);
  return g;
}

double norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

std::vector<double> finite_difference_gradient(const DeviceTarget& target,
                                               const ParameterVector& theta,
                                               const std::vector<double>& scale,
                                               double relative_step, const SolverOptions& solver) {
  return gradient_impl(target, theta, scale, relative_step, solver, 0);
}

std::vector<double> parameter_scales(PresetKind ansatz, const ParameterVector& theta0) {
  const auto names = parameter_names(ansatz);
  std::vector<double> scale(theta0.size());
  for (std::size_t i = 0; i < theta0.size(); ++i) {
    scale[i] = std::abs(theta0[i]);
    if (names[i] == "x0_over_d") scale[i] = std::max(scale[i], 0.1);
    if (scale[i] == 0.0) scale[i] = 1.0;
  }
  return scale;
}

ParameterVector auto_initial_parameters(const DeviceTarget& target) {
  const auto est = estimate_parameters(target.velocity_ratio, target.width);
  constexpr double x0 = 0.15;
  if (target.ansatz == PresetKind::VIII) return {est.amplitude, x0, est.detuning};
  // two independent lobes; the estimate only fixes their common scale
  return {est.amplitude, est.amplitude, x0, est.detuning};
}

OptState optimize(const DeviceTarget& target, const ParameterVector& theta0,
                  const OptimizerOptions& opts, const IterateCallback& on_accept) {
  check_target(target);
  if (opts.budget < 1) throw InvalidInput("optimizer budget must be at least one evaluation");
  const auto scale = parameter_scales(target.ansatz, theta0);
  const std::size_t p = theta0.size();

  OptState st;
  st.theta = theta0;
  st.objective = objective(target, theta0, opts.solver);
  st.evaluations = 1;
  st.trace.push_back({0, st.evaluations, st.objective, st.theta});
  if (on_accept) on_accept(st.trace.back());

  auto to_u = [&](const ParameterVector& th) {
    std::vector<double> u(p);
    for (std::size_t i = 0; i < p; ++i) u[i] = th[i] / scale[i];
    return u;
  };

  bool accepted_any = false;
  while (true) {
    if (st.evaluations + static_cast<int>(2 * p) > opts.budget) {
      st.stop_reason = "budget exhausted";
      break;
    }
    st.gradient = gradient_impl(target, st.theta, scale, opts.relative_step, opts.solver, opts.threads);
    st.evaluations += static_cast<int>(2 * p);
    const double gnorm = norm(st.gradient);
    if (!std::isfinite(gnorm)) {
      st.stop_reason = "gradient evaluation failed";
      break;
    }
    if (gnorm == 0.0) {
      st.stop_reason = "zero gradient";
      break;
    }

    double alpha = opts.initial_step * norm(to_u(st.theta));
    bool accepted = false;
    for (int halving = 0; halving <= opts.max_halvings && st.evaluations < opts.budget; ++halving) {
      ParameterVector trial = st.theta;
      for (std::size_t i = 0; i < p; ++i) trial[i] += alpha * st.gradient[i] / gnorm * scale[i];
      const double j = safe_objective(target, trial, opts.solver);
      ++st.evaluations;
      if (j > st.objective) {
        st.theta = std::move(trial);
        st.objective = j;
        st.step = alpha;
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) {
      st.stop_reason = st.evaluations >= opts.budget ? "budget exhausted" : "line search failed";
      break;
    }
    accepted_any = true;
    ++st.iterations;
    st.trace.push_back({st.iterations, st.evaluations, st.objective, st.theta});
    if (on_accept) on_accept(st.trace.back());
  }
  st.stalled = !accepted_any;
  return st;
}

void write_trace_csv(std::ostream& out, const DeviceTarget& target, const OptState& state,
                     std::string_view comment) {
  std::vector<std::string> header{"iteration", "evaluations", "J"};
  for (auto& n : parameter_names(target.ansatz)) header.push_back(n);
  CsvWriter csv(out, comment, header);
  for (const auto& e : state.trace) {
    std::vector<double> row{static_cast<double>(e.iteration), static_cast<double>(e.evaluations),
                            e.objective};
    row.insert(row.end(), e.theta.begin(), e.theta.end());
    csv.row(row);
  }
}

}  // namespace asym
