#include "asym/nonlocal_solver.hpp"

#include <cmath>

#include "asym/errors.hpp"

namespace asym {

namespace {

struct Discretization {
  Eigen::VectorXd x;
  Eigen::VectorXd w;
  double k = 0.0;
  Eigen::MatrixXcd kernel;  // V(x_i, y_j) / V_0
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu;
  double rcond = 0.0;
};

// phi(x) = phi_0(x) + (1/(ik)) ∫∫ e^{ik|x-x'|} V(x', y) phi(y) dx' dy   (reduced units)
Discretization discretize(const RabiProfile& profile, double energy, int n) {
  if (n < 2) throw InvalidInput("Nyström grid needs at least 2 points");
  const NonlocalKernel kernel = build_kernel(profile, energy, n);
  Discretization d;
  d.k = kernel.params.wavenumber();
  d.x = Eigen::Map<const Eigen::VectorXd>(kernel.grid.data(), n);
  const double h = 2.0 / (n - 1);
  d.w = Eigen::VectorXd::Constant(n, h);
  d.w(0) = d.w(n - 1) = 0.5 * h;

  Eigen::MatrixXcd green(n, n);
  const cplx inv_ik = 1.0 / (I * d.k);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      green(i, j) = inv_ik * std::exp(I * d.k * std::abs(d.x(i) - d.x(j))) * d.w(j);

  d.kernel = kernel.values;
  const Eigen::MatrixXcd weighted_kernel = kernel.values * d.w.asDiagonal();
  Eigen::MatrixXcd system = -green * weighted_kernel;
  system.diagonal().array() += 1.0;
  d.lu.compute(system);
  d.rcond = d.lu.rcond();
  if (!(d.rcond > 1e-14)) {
    throw SingularSystem("Nyström system is numerically singular (rcond = " +
                         std::to_string(d.rcond) + "), close to a pole of the truncated problem");
  }
  return d;
}

GroundAmplitudes amplitudes_for(const Discretization& d, Side side) {
  const double s = side == Side::Left ? 1.0 : -1.0;
  const Eigen::VectorXcd phase = (I * s * d.k * d.x.cast<cplx>()).array().exp();
  const Eigen::VectorXcd phi = d.lu.solve(phase);
  const Eigen::VectorXcd source = d.kernel * (d.w.cast<cplx>().cwiseProduct(phi));
  const Eigen::VectorXcd weighted = d.w.cast<cplx>().cwiseProduct(source);
  const cplx inv_ik = 1.0 / (I * d.k);
  GroundAmplitudes a;
  // Eigen's dot conjugates its left operand: phase.dot(v) = sum e^{∓ikx'} v
  a.T = 1.0 + inv_ik * phase.dot(weighted);
  a.R = inv_ik * phase.conjugate().dot(weighted);
  a.rcond = d.rcond;
  return a;
}

}  // namespace

GroundAmplitudes solve_ground(const RabiProfile& profile, double energy, int n, Side side) {
  return amplitudes_for(discretize(profile, energy, n), side);
}

GroundPair solve_ground_both(const RabiProfile& profile, double energy, int n) {
  const auto d = discretize(profile, energy, n);
  return {amplitudes_for(d, Side::Left), amplitudes_for(d, Side::Right)};
}

ConvergenceStudy convergence_study(const RabiProfile& profile, double energy,
                                   const std::vector<int>& n_list, Side side) {
  for (std::size_t i = 1; i < n_list.size(); ++i) {
    if (n_list[i] <= n_list[i - 1]) throw InvalidInput("grid sizes must be strictly ascending");
  }
  ConvergenceStudy study;
  for (int n : n_list) {
    ConvergenceRow row;
    row.n = n;
    row.amplitudes = solve_ground(profile, energy, n, side);
    if (!study.rows.empty()) {
      const auto& prev = study.rows.back().amplitudes;
      row.delta_T = std::abs(row.amplitudes.T - prev.T);
      row.delta_R = std::abs(row.amplitudes.R - prev.R);
    }
    study.rows.push_back(row);
  }

  const auto spacing = [](int n) { return 2.0 / (n - 1); };
  const std::size_t m = study.rows.size();
  if (m >= 3) {
    const auto& r1 = study.rows[m - 2];
    const auto& r2 = study.rows[m - 1];
    const double e1 = std::max(*r1.delta_T, *r1.delta_R);
    const double e2 = std::max(*r2.delta_T, *r2.delta_R);
    // differences over consecutive intervals; exact for a pure power law when the grid ratio is constant
    const double ratio = spacing(study.rows[m - 3].n) / spacing(r1.n);
    if (e1 > 0.0 && e2 > 0.0) study.observed_order = std::log(e1 / e2) / std::log(ratio);
  }
  if (m >= 2) {
    const auto& a = study.rows[m - 2];
    const auto& b = study.rows[m - 1];
    const double r = spacing(a.n) / spacing(b.n);
    const double f = 1.0 / (r * r - 1.0);
    study.T_extrapolated = b.amplitudes.T + (b.amplitudes.T - a.amplitudes.T) * f;
    study.R_extrapolated = b.amplitudes.R + (b.amplitudes.R - a.amplitudes.R) * f;
  }
  return study;
}

}  // namespace asym
