#include "asym/effective_potential.hpp"

#include <cmath>
#include <ostream>

#include "asym/csv.hpp"
#include "asym/errors.hpp"

namespace asym {

double EffectiveParams::wavenumber() const { return std::sqrt(2.0 * energy); }

EffectiveParams effective_params(const RabiProfile& profile, double energy) {
  if (!(energy > 0.0)) throw InvalidInput("energy must be positive");
  EffectiveParams p;
  p.energy = energy;
  // E in units of hbar/tau, so 2E/hbar becomes 2E and the rates are already in 1/tau
  p.mu = cplx(2.0 * profile.tau_delta, profile.tau_gamma) / (2.0 * energy);
  const cplx one_plus_mu = 1.0 + p.mu;
  if (std::abs(one_plus_mu) <= 1e-12) {
    throw ChannelThreshold("degenerate channel threshold: mu = -1 makes q vanish");
  }
  cplx root = std::sqrt(one_plus_mu);
  if (root.imag() < 0.0) root = -root;
  if (root.imag() == 0.0 && one_plus_mu.real() < 0.0) root = cplx(0.0, std::sqrt(-one_plus_mu.real()));
  p.q = p.wavenumber() * root;
  return p;
}

double NonlocalKernel::max_abs() const { return values.size() ? values.cwiseAbs().maxCoeff() : 0.0; }

cplx kernel_value(const EffectiveParams& params, cplx omega_x, cplx omega_y, double x, double y) {
  const cplx q = params.q;
  return 0.25 * std::exp(I * q * std::abs(x - y)) / (I * q) * omega_x * std::conj(omega_y);
}

NonlocalKernel build_kernel(const CouplingFn& omega, const EffectiveParams& params, int n) {
  if (n < 2) throw InvalidInput("kernel grid needs at least 2 points");
  NonlocalKernel k;
  k.params = params;
  k.grid.resize(n);
  std::vector<cplx> om(n);
  for (int i = 0; i < n; ++i) {
    k.grid[i] = -1.0 + 2.0 * i / (n - 1);
    om[i] = omega(k.grid[i]);
  }
  k.values.resize(n, n);
  const cplx prefactor = 0.25 / (I * params.q);
  for (int j = 0; j < n; ++j) {
    const cplx oy = std::conj(om[j]);
    for (int i = 0; i < n; ++i) {
      k.values(i, j) =
          prefactor * std::exp(I * params.q * std::abs(k.grid[i] - k.grid[j])) * om[i] * oy;
    }
  }
  return k;
}

NonlocalKernel build_kernel(const RabiProfile& profile, double energy, int n) {
  return build_kernel(profile.coupling(), effective_params(profile, energy), n);
}

void write_kernel_csv(std::ostream& out, const NonlocalKernel& kernel, std::string_view comment) {
  CsvWriter csv(out, comment, {"x_over_d", "y_over_d", "absV_over_V0", "argV"});
  const auto n = static_cast<int>(kernel.grid.size());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const cplx v = kernel.values(i, j);
      csv.row({kernel.grid[i], kernel.grid[j], std::abs(v), std::arg(v)});
    }
  }
}

}  // namespace asym
