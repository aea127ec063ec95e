#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "asym/rabi_profile.hpp"

namespace asym {

/// The eight commutation / pseudo-hermiticity relations AH = HA or AH = H^dagger A
/// with A in {1, Pi, Theta, Theta Pi}.
enum class Symmetry { I = 1, II, III, IV, V, VI, VII, VIII };

inline constexpr std::array<Symmetry, 8> kAllSymmetries{
    Symmetry::I,  Symmetry::II,  Symmetry::III, Symmetry::IV,
    Symmetry::V,  Symmetry::VI,  Symmetry::VII, Symmetry::VIII};

std::string_view to_string(Symmetry s);

/// Devices with 0/1 responses, named (left incidence)/(right incidence).
enum class Device { TR_A, T_R, T_A, TR_R, R_A, TR_T };

inline constexpr std::array<Device, 6> kAllDevices{Device::TR_A, Device::T_R, Device::T_A,
                                                   Device::TR_R, Device::R_A, Device::TR_T};

std::string_view to_string(Device d);

/// Symmetries under which a device may exist.
const std::vector<Symmetry>& device_row(Device d);

struct SymmetryFlag {
  bool holds = false;
  std::optional<double> phase;  // phi in [0, 2pi) for the Omega(x) = e^{i phi} f(x) conditions
};

struct SymmetryReport {
  std::array<SymmetryFlag, 8> flags{};
  bool degenerate = false;    // profile identically zero on the grid
  bool energy_level = false;  // II, IV, V, VII have been decided
  std::vector<Device> devices;

  const SymmetryFlag& operator[](Symmetry s) const { return flags[static_cast<int>(s) - 1]; }
  SymmetryFlag& operator[](Symmetry s) { return flags[static_cast<int>(s) - 1]; }
  bool has(Symmetry s) const { return (*this)[s].holds; }
  std::vector<Symmetry> present() const;
};

struct ClassifyOptions {
  int grid_n = 401;
  double tolerance = 1e-9;  // relative to max|Omega|, max norm
};

/// Profile-level part of the classification: decides I, III, VI and VIII on a uniform
/// grid over [-1, 1]. The phase phi is the argument of <f, Omega>.
SymmetryReport classify_profile(const CouplingFn& omega, const ClassifyOptions& opts = {});
SymmetryReport classify_profile(const RabiProfile& profile, const ClassifyOptions& opts = {});

/// Adds II (Re q = 0), IV, V, VII and fills the device list. `mu` is the effective
/// potential parameter at the incident energy.
SymmetryReport classify_with_energy(const SymmetryReport& profile_report, double velocity_ratio,
                                    cplx mu);
SymmetryReport classify_with_energy(const RabiProfile& profile, double velocity_ratio,
                                    const ClassifyOptions& opts = {});

/// A device is allowed iff every symmetry present in the report is in its row.
std::vector<Device> allowed_devices(const SymmetryReport& report);

}  // namespace asym
