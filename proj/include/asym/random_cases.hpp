#pragma once

#include <cstdint>

#include "asym/rabi_profile.hpp"

namespace asym {

/// Random Gaussian-sum scattering case with gamma = 0, an open excited channel and
/// mu + 1 > 0; sizes are chosen so both solvers stay well resolved.
struct RandomCase {
  RabiProfile profile;
  double velocity_ratio = 0.0;
};

RandomCase random_open_channel_case(std::uint64_t seed);

}  // namespace asym
