#include "asym/semiclassical.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "asym/csv.hpp"
#include "asym/errors.hpp"
#include "asym/ode.hpp"

namespace asym {

TrajectoryPotential trajectory_potential(const RabiProfile& profile) {
  return {profile.coupling(), profile.tau_delta, profile.tau_gamma, {}};
}

double TrajectoryRun::final_ground_population() const { return std::norm(chi.back()[0]); }
double TrajectoryRun::final_excited_population() const { return std::norm(chi.back()[1]); }

TrajectoryRun integrate_trajectory(const TrajectoryPotential& potential, double velocity_ratio,
                                   Direction direction, double t_half,
                                   const TrajectoryOptions& opts) {
  if (!(velocity_ratio > 0.0)) throw InvalidInput("velocity must be positive");
  if (!(t_half > 0.0)) throw InvalidInput("time span must be positive");
  if (opts.samples < 2) throw InvalidInput("need at least two samples");

  const double vs = static_cast<double>(static_cast<int>(direction)) * velocity_ratio;
  const cplx detuning_term = -cplx(2.0 * potential.tau_delta, potential.tau_gamma);

  std::vector<double> cuts{-t_half};
  for (double p : potential.breakpoints) {
    const double t = p / vs;
    if (t > -t_half && t < t_half) cuts.push_back(t);
  }
  cuts.push_back(t_half);
  std::sort(cuts.begin(), cuts.end());

  TrajectoryRun run;
  run.direction = direction;
  run.velocity_ratio = velocity_ratio;
  run.times.reserve(opts.samples);
  run.chi.reserve(opts.samples);

  using Stepper = ode::DormandPrince<2>;
  Stepper stepper({opts.rtol, opts.atol});
  Stepper::State chi{1.0, 0.0};
  double t = -t_half;
  run.times.push_back(t);
  run.chi.push_back(chi);

  int sample = 1;
  const double dt = 2.0 * t_half / (opts.samples - 1);
  for (std::size_t piece = 0; piece + 1 < cuts.size(); ++piece) {
    const double lo = cuts[piece], hi = cuts[piece + 1];
    if (hi <= lo) continue;
    // keep stage evaluations on the open piece so jumps are never sampled from the wrong side
    const double margin = 1e-13 * (hi - lo);
    auto rhs = [&](double time, const Stepper::State& y, Stepper::State& dy) {
      const double tc = std::clamp(time, lo + margin, hi - margin);
      const cplx om = potential.omega(vs * tc);
      dy[0] = -0.5 * I * (om * y[1]);
      dy[1] = -0.5 * I * (std::conj(om) * y[0] + detuning_term * y[1]);
    };
    while (sample < opts.samples) {
      const double ts = sample == opts.samples - 1 ? t_half : -t_half + sample * dt;
      if (ts > hi) break;
      stepper.advance(rhs, t, ts, chi);
      run.times.push_back(ts);
      run.chi.push_back(chi);
      ++sample;
    }
    stepper.advance(rhs, t, hi, chi);
  }
  return run;
}

double default_time_half_span(const RabiProfile& profile, double velocity_ratio) {
  return (1.0 + 5.0 * profile.max_width()) / velocity_ratio;
}

TrajectoryRun integrate_trajectory(const RabiProfile& profile, double velocity_ratio,
                                   Direction direction, const TrajectoryOptions& opts) {
  return integrate_trajectory(trajectory_potential(profile), velocity_ratio, direction,
                              default_time_half_span(profile, velocity_ratio), opts);
}

void write_trajectory_csv(std::ostream& out, const TrajectoryRun& run, std::string_view comment) {
  CsvWriter csv(out, comment, {"t_over_tau", "pop_ground", "pop_excited"});
  for (std::size_t i = 0; i < run.times.size(); ++i) {
    csv.row({run.times[i], std::norm(run.chi[i][0]), std::norm(run.chi[i][1])});
  }
}

double RotationModel::beta() const { return 0.5 * duration * std::hypot(omega, delta); }

std::array<double, 3> RotationModel::axis1() const {
  const double n = std::hypot(omega, delta);
  return {omega / n, 0.0, delta / n};
}

std::array<double, 3> RotationModel::axis2() const {
  const double n = std::hypot(omega, delta);
  return {0.0, -omega / n, delta / n};
}

RotationModel canonical_rotation_model(double delta) {
  return {std::sqrt(2.0) * delta, delta, 4.0 * kPi / (3.0 * std::sqrt(3.0) * delta)};
}

namespace {

using Mat = std::array<cplx, 4>;  // row-major 2x2

// exp(-i beta n.sigma / 2) = cos(beta/2) 1 - i sin(beta/2) n.sigma
Mat rotation(const std::array<double, 3>& n, double beta) {
  const double c = std::cos(0.5 * beta), s = std::sin(0.5 * beta);
  const cplx nx = n[0], ny = n[1], nz = n[2];
  return {c - I * s * nz, -I * s * (nx - I * ny), -I * s * (nx + I * ny), c + I * s * nz};
}

std::array<cplx, 2> act(const Mat& m, const std::array<cplx, 2>& v) {
  return {m[0] * v[0] + m[1] * v[1], m[2] * v[0] + m[3] * v[1]};
}

}  // namespace

RotationResult compose_rotations(const RotationModel& model, RotationOrder order) {
  const double beta = model.beta();
  const Mat r1 = rotation(model.axis1(), beta);
  const Mat r2 = rotation(model.axis2(), beta);
  std::array<cplx, 2> state{1.0, 0.0};
  if (order == RotationOrder::FirstR1ThenR2) state = act(r2, act(r1, state));
  else state = act(r1, act(r2, state));
  RotationResult out;
  out.state = state;
  out.pop_ground = std::norm(state[0]);
  out.pop_excited = std::norm(state[1]);
  out.phase = std::polar(1.0, 0.5 * model.delta * model.duration);
  return out;
}

TrajectoryPotential square_pulse_potential(const RotationModel& model, double velocity_ratio) {
  const double half_length = 0.5 * velocity_ratio * model.duration;  // w̃ = v T / 2
  const double height = model.omega;
  TrajectoryPotential p;
  p.omega = [half_length, height](double x) -> cplx {
    if (x > -half_length && x < 0.0) return height;
    if (x > 0.0 && x < half_length) return I * height;
    return 0.0;
  };
  p.tau_delta = model.delta;
  p.breakpoints = {-half_length, 0.0, half_length};
  return p;
}

ParameterEstimate estimate_parameters(double velocity_ratio, double width) {
  if (!(velocity_ratio > 0.0) || !(width > 0.0)) {
    throw InvalidInput("velocity and width must be positive");
  }
  const double a = velocity_ratio / width * std::sqrt(kPi) * std::pow(2.0 / 3.0, 1.5);
  return {a, 0.5 * a};
}

}  // namespace asym
