#pragma once

#include <array>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "asym/rabi_profile.hpp"

namespace asym {

/// +1: incidence from the left (x = +v t), -1: from the right (x = -v t).
enum class Direction { Left = 1, Right = -1 };

/// Everything the time-dependent two-level problem needs: the coupling, the detuning
/// and decay (1/tau), and points where the coupling is discontinuous.
struct TrajectoryPotential {
  CouplingFn omega;
  double tau_delta = 0.0;
  double tau_gamma = 0.0;
  std::vector<double> breakpoints;  // positions in d
};

TrajectoryPotential trajectory_potential(const RabiProfile& profile);

struct TrajectoryOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  int samples = 401;  // recorded times, uniform over the span
};

struct TrajectoryRun {
  Direction direction = Direction::Left;
  double velocity_ratio = 0.0;
  std::vector<double> times;  // t / tau
  std::vector<std::array<cplx, 2>> chi;

  double final_ground_population() const;
  double final_excited_population() const;
};

/// Solves i d(chi)/dt = (1/2) [[0, Omega], [Omega^*, -(2 Delta + i gamma)]] chi along
/// x = ±v t for t in [-t_half, t_half], starting from the ground state.
TrajectoryRun integrate_trajectory(const TrajectoryPotential& potential, double velocity_ratio,
                                   Direction direction, double t_half,
                                   const TrajectoryOptions& opts = {});

/// Default half-span (d + 5 w_max) / v.
double default_time_half_span(const RabiProfile& profile, double velocity_ratio);

TrajectoryRun integrate_trajectory(const RabiProfile& profile, double velocity_ratio,
                                   Direction direction, const TrajectoryOptions& opts = {});

/// Columns "t_over_tau,pop_ground,pop_excited".
void write_trajectory_csv(std::ostream& out, const TrajectoryRun& run, std::string_view comment);

/// Two contiguous square pulses of height Omega: real (sigma_x) on (-w, 0),
/// imaginary (-sigma_y) on (0, w); total duration T = 2 w / v.
struct RotationModel {
  double omega = 0.0;
  double delta = 0.0;
  double duration = 0.0;

  double beta() const;
  std::array<double, 3> axis1() const;
  std::array<double, 3> axis2() const;
};

/// Omega/Delta = sqrt(2), T = 4 pi / (3 sqrt(3) Delta), hence beta = 2 pi / 3.
RotationModel canonical_rotation_model(double delta);

enum class RotationOrder {
  FirstR1ThenR2,  // R2 R1: the sigma_x lobe is crossed first (incidence from the left)
  FirstR2ThenR1,  // R1 R2: incidence from the right
};

struct RotationResult {
  std::array<cplx, 2> state;  // rotation part only, phase factor excluded
  double pop_ground = 0.0;
  double pop_excited = 0.0;
  cplx phase;  // e^{i Delta T / 2}
};

RotationResult compose_rotations(const RotationModel& model, RotationOrder order);

/// Piecewise-constant coupling equivalent to `model` when crossed at `velocity_ratio`.
TrajectoryPotential square_pulse_potential(const RotationModel& model, double velocity_ratio);

struct ParameterEstimate {
  double amplitude = 0.0;  // a tau
  double detuning = 0.0;   // Delta tau
};

/// a ≈ (v0 / w) sqrt(pi) (2/3)^{3/2}, Delta ≈ a / 2 (v0 in v_d, w in d).
ParameterEstimate estimate_parameters(double velocity_ratio, double width);

}  // namespace asym
