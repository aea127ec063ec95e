#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "asym/types.hpp"

namespace asym {

/// One Gaussian lobe weight * exp(-(x - center)^2 / width^2).
/// weight in 1/tau, center and width in units of d.
struct GaussianTerm {
  cplx weight;
  double center = 0.0;
  double width = 1.0;
};

/// Complex Rabi profile Omega(x) as a weighted sum of Gaussians, plus the laser
/// detuning and excited-state decay rate. Everything is in reduced units:
/// x in d, rates in 1/tau with tau = m d^2 / hbar.
struct RabiProfile {
  std::vector<GaussianTerm> terms;
  double tau_delta = 0.0;
  double tau_gamma = 0.0;
  std::optional<double> d_meters;

  cplx operator()(double x) const;
  CouplingFn coupling() const;
  double max_width() const;
};

enum class PresetKind { VIII, VI, I };

std::string_view to_string(PresetKind kind);

/// Default Gaussian width used for every reference device, w/d = sqrt(2)/10.
inline const double kDefaultWidth = 0.14142135623730950488;

/// Builds one of the three ansatz families:
///   VIII: a [g(x+x0) + i g(x-x0)]              (amp1 = a, amp2 ignored)
///   VI:   b g(x+x0) + c g(x-x0)                (amp1 = b, amp2 = c)
///   I:   -i b g(x+x0) + c g(x-x0)              (amp1 = b, amp2 = c)
/// Throws InvalidInput for width <= 0.
RabiProfile make_preset(PresetKind kind, double amp1, double amp2, double x0, double width,
                        double tau_delta, double tau_gamma = 0.0);

/// Reference optimized devices.
struct ReferenceDevice {
  RabiProfile profile;
  double velocity_ratio;  // v0 / v_d
};

ReferenceDevice transmission_absorption_device();       // T/A, symmetry VIII, v0/vd = 400
ReferenceDevice reflection_absorption_device();         // R/A, symmetry VI, v0/vd = 400
ReferenceDevice half_transmission_reflection_device();  // half-TR/A, symmetry I, v0/vd = 8

}  // namespace asym
