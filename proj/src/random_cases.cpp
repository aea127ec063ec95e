#include "asym/random_cases.hpp"

#include <random>

namespace asym {

RandomCase random_open_channel_case(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto uniform = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };

  RandomCase c;
  c.velocity_ratio = uniform(2.0, 8.0);
  const double energy = 0.5 * c.velocity_ratio * c.velocity_ratio;
  const int n_terms = std::uniform_int_distribution<int>(1, 3)(rng);
  for (int i = 0; i < n_terms; ++i) {
    const double magnitude = uniform(0.2, 1.5) * energy;
    c.profile.terms.push_back(
        {std::polar(magnitude, uniform(0.0, 2.0 * kPi)), uniform(-0.35, 0.35), uniform(0.08, 0.2)});
  }
  // mu = tau_delta / E in [-0.5, 1.5]
  c.profile.tau_delta = uniform(-0.5, 1.5) * energy;
  return c;
}

}  // namespace asym
