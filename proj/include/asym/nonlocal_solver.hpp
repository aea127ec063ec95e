#pragma once

#include <optional>
#include <vector>

#include "asym/effective_potential.hpp"
#include "asym/rabi_profile.hpp"

namespace asym {

enum class Side { Left, Right };

/// Ground-channel amplitudes from the non-local equation. Incident waves are
/// unnormalized plane waves e^{±ikx} with the origin at the potential center, so
/// phases differ from the two-level solver; moduli do not.
struct GroundAmplitudes {
  cplx T;
  cplx R;
  double rcond = 0.0;  // reciprocal condition estimate of the Nyström matrix
};

/// Nyström (trapezoid) discretization of phi = phi_0 + G_0 V phi on N uniform nodes.
/// Throws SingularSystem when the matrix is numerically singular.
GroundAmplitudes solve_ground(const RabiProfile& profile, double energy, int n, Side side);

struct GroundPair {
  GroundAmplitudes left;
  GroundAmplitudes right;
};

/// Both incidence sides from one factorization.
GroundPair solve_ground_both(const RabiProfile& profile, double energy, int n);

struct ConvergenceRow {
  int n = 0;
  GroundAmplitudes amplitudes;
  std::optional<double> delta_T;  // |T_n - T_prev|
  std::optional<double> delta_R;
};

struct ConvergenceStudy {
  std::vector<ConvergenceRow> rows;
  std::optional<double> observed_order;  // from the last three grids
  /// Richardson-extrapolated amplitudes from the last two grids, assuming order 2.
  std::optional<cplx> T_extrapolated;
  std::optional<cplx> R_extrapolated;
};

/// n_list must be ascending; throws InvalidInput otherwise.
ConvergenceStudy convergence_study(const RabiProfile& profile, double energy,
                                   const std::vector<int>& n_list, Side side);

}  // namespace asym
