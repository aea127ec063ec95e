#pragma once

#include <complex>
#include <functional>

namespace asym {

using cplx = std::complex<double>;

inline constexpr cplx I{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

/// Rabi frequency as a function of position. Positions are in units of the
/// half-width d, values in units of 1/tau.
using CouplingFn = std::function<cplx(double)>;

}  // namespace asym
