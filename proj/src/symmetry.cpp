#include "asym/symmetry.hpp"

#include <algorithm>
#include <cmath>

#include "asym/effective_potential.hpp"
#include "asym/errors.hpp"

namespace asym {

std::string_view to_string(Symmetry s) {
  static constexpr std::array<std::string_view, 8> names{"I",  "II",  "III", "IV",
                                                         "V",  "VI",  "VII", "VIII"};
  return names[static_cast<int>(s) - 1];
}

std::string_view to_string(Device d) {
  switch (d) {
    case Device::TR_A: return "TR/A";
    case Device::T_R: return "T/R";
    case Device::T_A: return "T/A";
    case Device::TR_R: return "TR/R";
    case Device::R_A: return "R/A";
    case Device::TR_T: return "TR/T";
  }
  return "?";
}

const std::vector<Symmetry>& device_row(Device d) {
  using S = Symmetry;
  static const std::vector<S> only_one{S::I};
  static const std::vector<S> with_viii{S::I, S::VIII};
  static const std::vector<S> with_vi{S::I, S::VI};
  static const std::vector<S> tr_t{S::I, S::IV, S::VI, S::VII};
  switch (d) {
    case Device::TR_A:
    case Device::T_R: return only_one;
    case Device::T_A:
    case Device::TR_R: return with_viii;
    case Device::R_A: return with_vi;
    case Device::TR_T: return tr_t;
  }
  return only_one;
}

std::vector<Symmetry> SymmetryReport::present() const {
  std::vector<Symmetry> out;
  for (auto s : kAllSymmetries)
    if (has(s)) out.push_back(s);
  return out;
}

namespace {

double wrap_phase(double phi) {
  phi = std::fmod(phi, 2.0 * kPi);
  if (phi < 0.0) phi += 2.0 * kPi;
  return phi;
}

// Tests Omega(x) = e^{i phi} f(x) with phi = arg <f, Omega>.
SymmetryFlag match_phase(const std::vector<cplx>& omega, const std::vector<cplx>& f,
                         double threshold) {
  cplx overlap{};
  for (std::size_t i = 0; i < omega.size(); ++i) overlap += std::conj(f[i]) * omega[i];
  if (std::abs(overlap) == 0.0) return {};
  const double phi = std::arg(overlap);
  const cplx rot = std::polar(1.0, phi);
  double residual = 0.0;
  for (std::size_t i = 0; i < omega.size(); ++i)
    residual = std::max(residual, std::abs(omega[i] - rot * f[i]));
  if (residual >= threshold) return {};
  return {true, wrap_phase(phi)};
}

}  // namespace

SymmetryReport classify_profile(const CouplingFn& omega, const ClassifyOptions& opts) {
  if (opts.grid_n < 64) throw InvalidInput("classification grid needs at least 64 points");
  const int n = opts.grid_n;
  std::vector<cplx> at_x(n), at_minus_x(n), conj_x(n), conj_minus_x(n);
  double max_abs = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = -1.0 + 2.0 * i / (n - 1);
    at_x[i] = omega(x);
    at_minus_x[i] = omega(-x);
    conj_x[i] = std::conj(at_x[i]);
    conj_minus_x[i] = std::conj(at_minus_x[i]);
    max_abs = std::max(max_abs, std::abs(at_x[i]));
  }

  SymmetryReport report;
  report[Symmetry::I].holds = true;
  if (max_abs == 0.0) {
    report.degenerate = true;
    for (auto s : {Symmetry::III, Symmetry::VI, Symmetry::VIII}) report[s] = {true, 0.0};
  } else {
    const double threshold = opts.tolerance * max_abs;
    report[Symmetry::III] = match_phase(at_x, at_minus_x, threshold);
    report[Symmetry::VI] = match_phase(at_x, conj_x, threshold);
    report[Symmetry::VIII] = match_phase(at_x, conj_minus_x, threshold);
  }
  report.devices = allowed_devices(report);
  return report;
}

SymmetryReport classify_profile(const RabiProfile& profile, const ClassifyOptions& opts) {
  return classify_profile(profile.coupling(), opts);
}

SymmetryReport classify_with_energy(const SymmetryReport& profile_report, double velocity_ratio,
                                    cplx mu) {
  SymmetryReport r = profile_report;
  const cplx q = velocity_ratio * std::sqrt(1.0 + mu);
  const bool hermitian = std::abs(q.real()) <= 1e-12 * std::abs(q);
  r[Symmetry::II] = {hermitian, std::nullopt};
  r[Symmetry::IV] = {hermitian && r.has(Symmetry::III), std::nullopt};
  r[Symmetry::V] = {hermitian && r.has(Symmetry::VI), std::nullopt};
  r[Symmetry::VII] = {hermitian && r.has(Symmetry::VIII), std::nullopt};
  r.energy_level = true;
  r.devices = allowed_devices(r);
  return r;
}

SymmetryReport classify_with_energy(const RabiProfile& profile, double velocity_ratio,
                                    const ClassifyOptions& opts) {
  const auto params = effective_params(profile, energy_from_velocity_ratio(velocity_ratio));
  return classify_with_energy(classify_profile(profile, opts), velocity_ratio, params.mu);
}

std::vector<Device> allowed_devices(const SymmetryReport& report) {
  std::vector<Device> out;
  const auto present = report.present();
  for (auto d : kAllDevices) {
    const auto& row = device_row(d);
    const bool ok = std::all_of(present.begin(), present.end(), [&](Symmetry s) {
      return std::find(row.begin(), row.end(), s) != row.end();
    });
    if (ok) out.push_back(d);
  }
  return out;
}

}  // namespace asym
