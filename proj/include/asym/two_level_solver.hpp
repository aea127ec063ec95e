#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "asym/ode.hpp"
#include "asym/rabi_profile.hpp"
#include "asym/units.hpp"

namespace asym {

/// A fully dimensionless two-channel scattering instance on x̄ in [0, 1].
struct ScatterJob {
  double kbar = 0.0;
  cplx gammabar;
  CouplingFn omega_bar;  // Omega̅(x̄); treated as zero outside [0, 1]

  /// Same problem with the potential reflected, x̄ -> 1 - x̄.
  ScatterJob mirrored() const;
};

ScatterJob make_job(const RabiProfile& profile, double velocity_ratio);

/// Free solutions h_±(x) = diag(e^{±i k x}/sqrt(k), e^{±i kappa x}/kappa^{1/2}).
struct FreeSolutions {
  double kbar;
  cplx kappa;

  FreeSolutions(double kbar, cplx gammabar);
  Eigen::Matrix2cd h_plus(double x) const;
  Eigen::Matrix2cd h_minus(double x) const;
  Eigen::Matrix2cd h_plus_derivative(double x) const;
  Eigen::Matrix2cd h_minus_derivative(double x) const;
  /// h_+ h_-' - h_+' h_- with the sign that makes it +2i (Green's function convention).
  Eigen::Matrix2cd wronskian(double x) const;
};

struct SolverOptions {
  double rtol = 1e-9;
  double atol = 1e-12;
  double blowup_norm = 1e8;
};

/// Reflection/transmission matrices for one incidence side. Columns are the incident
/// internal state, rows the outgoing one, in the flux-normalized convention of the
/// free solutions.
struct SideMatrices {
  Eigen::Matrix2cd reflection;
  Eigen::Matrix2cd transmission;
  double error_estimate = 0.0;  // accumulated local integrator error, amplitude units
  ode::Stats stats;
};

/// Right incidence: integrates the stabilized (S, T) system from eta = 0 to 1.
SideMatrices solve_right_incidence(const ScatterJob& job, const SolverOptions& opts = {});

/// Left incidence through the mirrored potential. With D = diag(e^{ik}, e^{i kappa}),
/// R = D R̃' D and T = D^{-1} T̃' D; in particular T_11 = T̃'_11 (no ground-channel
/// transmission phase) and R_11 = e^{2ik} R̃'_11.
SideMatrices solve_left_incidence(const ScatterJob& job, const SolverOptions& opts = {});

/// Ground-channel transmission phase between the original left amplitude and the
/// mirror right amplitude: T^l = e^{i theta} T̃^mirror_11.
inline constexpr double kGroundTransmissionMirrorPhase = 0.0;

struct ChannelMatrices {
  Eigen::Matrix2cd R, T;              // left incidence
  Eigen::Matrix2cd R_tilde, T_tilde;  // right incidence
  cplx kappa;
  bool channel2_open = true;
  double error_estimate = 0.0;

  cplx T_left() const { return T(0, 0); }
  cplx T_right() const { return T_tilde(0, 0); }
  cplx R_left() const { return R(0, 0); }
  cplx R_right() const { return R_tilde(0, 0); }
};

ChannelMatrices solve(const ScatterJob& job, const SolverOptions& opts = {});

/// Squared ground-channel moduli.
struct Coefficients {
  double T_left = 0, T_right = 0, R_left = 0, R_right = 0;

  double absorb_left() const { return 1.0 - T_left - R_left; }
  double absorb_right() const { return 1.0 - T_right - R_right; }
};

Coefficients coefficients(const ChannelMatrices& m);

/// Total outgoing flux summed over both channels and directions. Meaningful only for
/// an open excited channel.
struct FluxBalance {
  double left = 0.0;
  double right = 0.0;
};

FluxBalance outgoing_flux(const ChannelMatrices& m);

/// The four ground-channel bounds implied by unitarity of the S-matrix; each entry is
/// max(0, |a|^2 + |b|^2 - 1).
std::array<double, 4> unitarity_violations(const ChannelMatrices& m);

struct SweepRow {
  double velocity_ratio = 0.0;
  std::optional<Coefficients> coefficients;
  std::string error;
};

struct SweepOptions {
  SolverOptions solver;
  unsigned threads = 0;  // 0: ASYM_THREADS or hardware concurrency
};

/// Runs every velocity independently; failures are recorded per row.
std::vector<SweepRow> sweep_velocity(const RabiProfile& profile,
                                     const std::vector<double>& velocity_ratios,
                                     const SweepOptions& opts = {});

/// Thread cap from ASYM_THREADS, falling back to the hardware concurrency.
unsigned default_thread_count();

/// Columns "v_over_vd,T2l,T2r,R2l,R2r,absorb_l,absorb_r"; failed points become
/// "# failed ..." comment lines in place.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows,
                     std::string_view comment);

}  // namespace asym
