#include "asym/units.hpp"

#include <cmath>
#include <string>

#include "asym/errors.hpp"

namespace asym {

PhysicalScales::PhysicalScales(double mass_kg, double half_width_m)
    : mass_(mass_kg), half_width_(half_width_m) {
  if (!(mass_kg > 0.0) || !(half_width_m > 0.0)) {
    throw InvalidInput("mass and half-width must be positive");
  }
}

PhysicalScales beryllium_scales() { return PhysicalScales(1.49e-26, 10e-6); }

CouplingFn scaled_coupling(const RabiProfile& profile) {
  return [profile](double xbar) -> cplx {
    if (xbar < 0.0 || xbar > 1.0) return {};
    return 4.0 * profile(2.0 * xbar - 1.0);
  };
}

DimensionlessParams dimensionless_params(const RabiProfile& profile, double velocity_ratio) {
  if (!(velocity_ratio > 0.0)) throw InvalidInput("velocity must be positive");
  DimensionlessParams p;
  p.velocity_ratio = velocity_ratio;
  p.kbar = 2.0 * velocity_ratio;
  p.gammabar = 4.0 * cplx(profile.tau_gamma, -2.0 * profile.tau_delta);
  return p;
}

DimensionlessJob to_dimensionless(const RabiProfile& profile, double velocity_m_s,
                                  const PhysicalScales& scales) {
  if (!(velocity_m_s > 0.0)) throw InvalidInput("velocity must be positive");
  if (profile.d_meters) {
    const double d = *profile.d_meters;
    if (std::abs(d - scales.half_width()) > 1e-12 * scales.half_width()) {
      throw InvalidInput("profile half-width " + std::to_string(d) +
                         " m does not match the scales (" +
                         std::to_string(scales.half_width()) + " m)");
    }
  }
  return {dimensionless_params(profile, velocity_m_s / scales.velocity()),
          scaled_coupling(profile)};
}

PhysicalParams from_dimensionless(const DimensionlessParams& params, const PhysicalScales& scales) {
  const double four_tau = 4.0 * scales.time();
  PhysicalParams out;
  out.velocity = 0.5 * params.kbar * scales.velocity();
  out.gamma = params.gammabar.real() / four_tau;
  out.delta = -0.5 * params.gammabar.imag() / four_tau;
  return out;
}

ChannelWavenumber channel2_wavenumber(double kbar, cplx gammabar) {
  const cplx k2 = kbar * kbar + I * gammabar;
  cplx kappa = std::sqrt(k2);
  if (kappa.imag() < 0.0) kappa = -kappa;
  // principal sqrt of a negative real with -0.0 imaginary part lands on -i|.|
  if (kappa.imag() == 0.0 && k2.real() < 0.0) kappa = cplx(0.0, std::sqrt(-k2.real()));
  return {kappa, kappa.imag() == 0.0};
}

}  // namespace asym
