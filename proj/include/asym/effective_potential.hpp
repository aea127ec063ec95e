#pragma once

#include <iosfwd>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "asym/rabi_profile.hpp"

namespace asym {

/// Reduced energy E / (hbar / tau) of a particle moving at v / v_d.
inline double energy_from_velocity_ratio(double r) { return 0.5 * r * r; }

struct EffectiveParams {
  double energy = 0.0;  // units of hbar / tau
  cplx mu;              // (2 Delta + i gamma) / (2 E / hbar)
  cplx q;               // sqrt(2 m E)/hbar (1 + mu)^{1/2} in 1/d, Im q >= 0

  double wavenumber() const;  // ground-channel k in 1/d
};

/// Throws InvalidInput for energy <= 0 and ChannelThreshold when |1 + mu| <= 1e-12.
EffectiveParams effective_params(const RabiProfile& profile, double energy);

/// Ground-state non-local potential V(x, y) / V_0 with V_0 = hbar^2 / (m d^3) on a
/// uniform grid over [-1, 1] (endpoints included).
struct NonlocalKernel {
  std::vector<double> grid;
  Eigen::MatrixXcd values;
  EffectiveParams params;

  double max_abs() const;
};

/// V(x, y)/V_0 = (1/4) exp(i q |x - y|) / (i q) Omega(x) Omega(y)^*  (reduced units)
cplx kernel_value(const EffectiveParams& params, cplx omega_x, cplx omega_y, double x, double y);

NonlocalKernel build_kernel(const RabiProfile& profile, double energy, int n = 401);
NonlocalKernel build_kernel(const CouplingFn& omega, const EffectiveParams& params, int n);

/// Rows "x_over_d,y_over_d,absV_over_V0,argV".
void write_kernel_csv(std::ostream& out, const NonlocalKernel& kernel, std::string_view comment);

}  // namespace asym
