#pragma once

#include <cmath>

#include "asym/rabi_profile.hpp"
#include "asym/types.hpp"

namespace asym {

inline constexpr double kHbar = 1.054571817e-34;  // J s

/// Natural scales for a particle of mass m and a potential of half-width d.
class PhysicalScales {
 public:
  PhysicalScales(double mass_kg, double half_width_m);

  double mass() const { return mass_; }
  double half_width() const { return half_width_; }
  double velocity() const { return kHbar / (mass_ * half_width_); }                 // v_d
  double time() const { return mass_ * half_width_ * half_width_ / kHbar; }         // tau
  double potential() const { return kHbar * kHbar / (mass_ * std::pow(half_width_, 3)); }  // V_0

 private:
  double mass_;
  double half_width_;
};

/// Beryllium ion with d = 10 um.
PhysicalScales beryllium_scales();

/// The barred units of the invariant-imbedding solver: x̄ in [0, 1] spans [-d, d].
struct DimensionlessParams {
  double kbar = 0.0;      // sqrt(2 m E) 2 d / hbar = 2 v / v_d
  cplx gammabar;          // (4 m d^2 / hbar)(gamma - 2 i Delta)
  double velocity_ratio = 0.0;
};

/// Profile mapped onto the barred coordinate: Omega̅(x̄) = 4 tau Omega(2 d (x̄ - 1/2)).
CouplingFn scaled_coupling(const RabiProfile& profile);

DimensionlessParams dimensionless_params(const RabiProfile& profile, double velocity_ratio);

struct DimensionlessJob {
  DimensionlessParams params;
  CouplingFn omega_bar;
};

/// Physical velocity (m/s) to barred units. The profile must already be expressed
/// in tau/d units of `scales`; if it records d_meters it has to agree.
DimensionlessJob to_dimensionless(const RabiProfile& profile, double velocity_m_s,
                                  const PhysicalScales& scales);

struct PhysicalParams {
  double velocity = 0.0;  // m/s
  double delta = 0.0;     // rad/s
  double gamma = 0.0;     // 1/s
};

PhysicalParams from_dimensionless(const DimensionlessParams& params, const PhysicalScales& scales);

struct ChannelWavenumber {
  cplx kappa;  // sqrt(kbar^2 + i Gammabar), Im >= 0
  bool open = true;
};

/// Excited-channel wavenumber on the Im >= 0 branch. Along the negative real axis of
/// kbar^2 + i Gammabar the branch is discontinuous; we return +i|.| there.
ChannelWavenumber channel2_wavenumber(double kbar, cplx gammabar);

}  // namespace asym
