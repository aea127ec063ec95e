#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "asym/rabi_profile.hpp"
#include "asym/symmetry.hpp"
#include "asym/two_level_solver.hpp"

namespace asym {

enum class DeviceKind { TransmitAbsorb, ReflectAbsorb, HalfTransmitReflectAbsorb };

std::string_view to_string(DeviceKind kind);
Device table_device(DeviceKind kind);

struct DeviceTarget {
  DeviceKind kind = DeviceKind::TransmitAbsorb;
  double velocity_ratio = 400.0;
  PresetKind ansatz = PresetKind::VIII;
  double width = kDefaultWidth;
  bool velocity_window = false;  // average J over {0.9, 1.0, 1.1} v0
};

/// Throws DeviceNotAllowed when the device selection table forbids the device for the ansatz class.
void check_target(const DeviceTarget& target);

/// Ansatz parameters: VIII -> (a, x0, Delta); VI and I -> (b, c, x0, Delta).
/// Rates in 1/tau, x0 in d.
using ParameterVector = std::vector<double>;

RabiProfile profile_from_parameters(const DeviceTarget& target, const ParameterVector& theta);
ParameterVector parameters_from_profile(const DeviceTarget& target, const RabiProfile& profile);
std::vector<std::string> parameter_names(PresetKind ansatz);

/// Device figure of merit; perfect devices give 1 (T/A, R/A) and 0 (half-TR/A).
double objective_from_coefficients(DeviceKind kind, const Coefficients& c);

/// Solves the scattering problem(s) and returns J. Throws on solver failure.
double objective(const DeviceTarget& target, const ParameterVector& theta,
                 const SolverOptions& solver = {});

/// Central differences in scaled coordinates u_i = theta_i / scale_i with step
/// `relative_step` in u; the result is dJ/du.
std::vector<double> finite_difference_gradient(const DeviceTarget& target,
                                               const ParameterVector& theta,
                                               const std::vector<double>& scale,
                                               double relative_step = 1e-4,
                                               const SolverOptions& solver = {});

/// Parameter scales used by the optimizer (|theta_0|, with x0 floored at 0.1).
std::vector<double> parameter_scales(PresetKind ansatz, const ParameterVector& theta0);

/// Initial point from the semiclassical estimates, x0 = 0.15 d.
ParameterVector auto_initial_parameters(const DeviceTarget& target);

struct OptimizerOptions {
  int budget = 500;              // objective evaluations
  double relative_step = 1e-4;   // finite-difference step in scaled coordinates
  double initial_step = 0.1;     // times |u|
  int max_halvings = 8;
  SolverOptions solver;
  unsigned threads = 0;          // stencil parallelism; 0 = default_thread_count()
};

struct TraceEntry {
  int iteration = 0;
  int evaluations = 0;
  double objective = 0.0;
  ParameterVector theta;
};

struct OptState {
  ParameterVector theta;
  double objective = 0.0;
  std::vector<double> gradient;
  int iterations = 0;
  int evaluations = 0;
  double step = 0.0;
  bool stalled = false;  // no step was ever accepted
  std::string stop_reason;
  std::vector<TraceEntry> trace;  // initial point plus every accepted step
};

using IterateCallback = std::function<void(const TraceEntry&)>;

/// Finite-difference gradient ascent with backtracking line search.
OptState optimize(const DeviceTarget& target, const ParameterVector& theta0,
                  const OptimizerOptions& opts = {}, const IterateCallback& on_accept = {});

/// Columns "iteration,evaluations,J,<parameter names>".
void write_trace_csv(std::ostream& out, const DeviceTarget& target, const OptState& state,
                     std::string_view comment);

}  // namespace asym
