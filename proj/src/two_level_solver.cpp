#include "asym/two_level_solver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <sstream>
#include <thread>

#include "asym/csv.hpp"
#include "asym/errors.hpp"

namespace asym {

namespace {

std::string blowup_message(double eta, double norm) {
  std::ostringstream ss;
  ss << "Riccati blow-up: |S| = " << norm << " at eta = " << eta
     << " (likely a resonance of the truncated potential; try a slightly different velocity)";
  return ss.str();
}

using State = ode::DormandPrince<8>::State;

// 2x2 complex matrix in row-major order; enough algebra for the stabilized system
struct M2 {
  cplx a, b, c, d;
};

inline M2 mul(const M2& x, const M2& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
          x.c * y.b + x.d * y.d};
}

inline M2 load(const State& y, int offset) { return {y[offset], y[offset + 1], y[offset + 2], y[offset + 3]}; }

inline void store(State& y, int offset, const M2& m) {
  y[offset] = m.a;
  y[offset + 1] = m.b;
  y[offset + 2] = m.c;
  y[offset + 3] = m.d;
}

Eigen::Matrix2cd to_eigen(const M2& m) {
  Eigen::Matrix2cd out;
  out << m.a, m.b, m.c, m.d;
  return out;
}

// principal square root of kappa; h_+(0)_22 = kappa^{-1/2}
cplx sqrt_kappa(cplx kappa) { return std::sqrt(kappa); }

}  // namespace

RiccatiBlowup::RiccatiBlowup(double eta, double norm)
    : NumericalFailure(blowup_message(eta, norm)), eta_(eta) {}

ScatterJob ScatterJob::mirrored() const {
  ScatterJob m = *this;
  m.omega_bar = [f = omega_bar](double x) { return f(1.0 - x); };
  return m;
}

ScatterJob make_job(const RabiProfile& profile, double velocity_ratio) {
  const auto p = dimensionless_params(profile, velocity_ratio);
  return {p.kbar, p.gammabar, scaled_coupling(profile)};
}

FreeSolutions::FreeSolutions(double k, cplx gammabar)
    : kbar(k), kappa(channel2_wavenumber(k, gammabar).kappa) {}

Eigen::Matrix2cd FreeSolutions::h_plus(double x) const {
  Eigen::Matrix2cd h = Eigen::Matrix2cd::Zero();
  h(0, 0) = std::exp(I * kbar * x) / std::sqrt(kbar);
  h(1, 1) = std::exp(I * kappa * x) / sqrt_kappa(kappa);
  return h;
}

Eigen::Matrix2cd FreeSolutions::h_minus(double x) const {
  Eigen::Matrix2cd h = Eigen::Matrix2cd::Zero();
  h(0, 0) = std::exp(-I * kbar * x) / std::sqrt(kbar);
  h(1, 1) = std::exp(-I * kappa * x) / sqrt_kappa(kappa);
  return h;
}

Eigen::Matrix2cd FreeSolutions::h_plus_derivative(double x) const {
  Eigen::Matrix2cd h = h_plus(x);
  h(0, 0) *= I * kbar;
  h(1, 1) *= I * kappa;
  return h;
}

Eigen::Matrix2cd FreeSolutions::h_minus_derivative(double x) const {
  Eigen::Matrix2cd h = h_minus(x);
  h(0, 0) *= -I * kbar;
  h(1, 1) *= -I * kappa;
  return h;
}

Eigen::Matrix2cd FreeSolutions::wronskian(double x) const {
  return h_plus_derivative(x) * h_minus(x) - h_plus(x) * h_minus_derivative(x);
}

SideMatrices solve_right_incidence(const ScatterJob& job, const SolverOptions& opts) {
  if (!(job.kbar > 0.0)) throw InvalidInput("kbar must be positive");
  const cplx k = job.kbar;
  const cplx kappa = channel2_wavenumber(job.kbar, job.gammabar).kappa;
  const M2 q{I * k, 0.0, 0.0, I * kappa};
  // V̂ = W^{-1} h_+^2(0) V with W = 2i
  const cplx v12_scale = -0.5 * I / k;
  const cplx v21_scale = -0.5 * I / kappa;

  auto rhs = [&](double eta, const State& y, State& dy) {
    const cplx om = job.omega_bar(eta);
    const M2 s = load(y, 0);
    const M2 t = load(y, 4);
    const M2 vhat{0.0, v12_scale * om, v21_scale * std::conj(om), 0.0};
    const M2 vs = mul(vhat, s);
    const M2 m{q.a + vs.a, vs.b, vs.c, q.d + vs.d};
    const M2 qs = mul(q, s);
    const M2 sm = mul(s, m);
    store(dy, 0, {-2.0 * q.a + qs.a + sm.a, qs.b + sm.b, qs.c + sm.c, -2.0 * q.d + qs.d + sm.d});
    // slot 4 holds W = T̂ e^{-i k eta}; the scalar ground phase is applied exactly at the end
    store(dy, 4, mul(t, {m.a - q.a, m.b, m.c, m.d - q.a}));
  };

  State y{};
  y[0] = y[3] = y[4] = y[7] = 1.0;
  ode::DormandPrince<8> stepper({opts.rtol, opts.atol});
  double eta = 0.0;
  stepper.advance(rhs, eta, 1.0, y, [&](double at, const State& s) {
    double norm = 0.0;
    for (int i = 0; i < 4; ++i) norm = std::max(norm, std::abs(s[i]));
    if (!(norm <= opts.blowup_norm)) throw RiccatiBlowup(at, norm);
  });

  const Eigen::Matrix2cd s1 = to_eigen(load(y, 0));
  const Eigen::Matrix2cd t1 = to_eigen(load(y, 4)) * std::exp(I * k);
  const FreeSolutions free(job.kbar, job.gammabar);
  const Eigen::Matrix2cd hp1 = free.h_plus(1.0);
  const Eigen::Matrix2cd hm1 = free.h_minus(1.0);
  const Eigen::Matrix2cd hp0 = free.h_plus(0.0);

  SideMatrices out;
  // R̃ = h_+^{-1}(1) (S - 1) h_-(1),  T̃ = h_+^{-1}(0) T̂ h_-(1); all h are diagonal
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const cplx s_minus_one = s1(a, b) - (a == b ? 1.0 : 0.0);
      out.reflection(a, b) = s_minus_one * hm1(b, b) / hp1(a, a);
      out.transmission(a, b) = t1(a, b) * hm1(b, b) / hp0(a, a);
    }
  }
  out.stats = stepper.stats();
  // ground-channel amplitudes carry unit-modulus factors of S and T̂ entries
  out.error_estimate = out.stats.local_error_sum;
  return out;
}

SideMatrices solve_left_incidence(const ScatterJob& job, const SolverOptions& opts) {
  SideMatrices mirror = solve_right_incidence(job.mirrored(), opts);
  const cplx kappa = channel2_wavenumber(job.kbar, job.gammabar).kappa;
  const std::array<cplx, 2> d{std::exp(I * job.kbar), std::exp(I * kappa)};
  SideMatrices out = mirror;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      out.reflection(a, b) = d[a] * mirror.reflection(a, b) * d[b];
      out.transmission(a, b) = mirror.transmission(a, b) * d[b] / d[a];
    }
  }
  return out;
}

ChannelMatrices solve(const ScatterJob& job, const SolverOptions& opts) {
  const auto right = solve_right_incidence(job, opts);
  const auto left = solve_left_incidence(job, opts);
  const auto channel = channel2_wavenumber(job.kbar, job.gammabar);
  ChannelMatrices m;
  m.R = left.reflection;
  m.T = left.transmission;
  m.R_tilde = right.reflection;
  m.T_tilde = right.transmission;
  m.kappa = channel.kappa;
  m.channel2_open = channel.open;
  m.error_estimate = std::max(left.error_estimate, right.error_estimate);
  return m;
}

Coefficients coefficients(const ChannelMatrices& m) {
  return {std::norm(m.T_left()), std::norm(m.T_right()), std::norm(m.R_left()),
          std::norm(m.R_right())};
}

FluxBalance outgoing_flux(const ChannelMatrices& m) {
  FluxBalance f;
  f.left = std::norm(m.T(0, 0)) + std::norm(m.T(1, 0)) + std::norm(m.R(0, 0)) + std::norm(m.R(1, 0));
  f.right = std::norm(m.T_tilde(0, 0)) + std::norm(m.T_tilde(1, 0)) + std::norm(m.R_tilde(0, 0)) +
            std::norm(m.R_tilde(1, 0));
  return f;
}

std::array<double, 4> unitarity_violations(const ChannelMatrices& m) {
  const double r = std::norm(m.R_left()), t = std::norm(m.T_left());
  const double rt = std::norm(m.R_right()), tt = std::norm(m.T_right());
  return {std::max(0.0, r + t - 1.0), std::max(0.0, rt + tt - 1.0), std::max(0.0, rt + t - 1.0),
          std::max(0.0, r + tt - 1.0)};
}

unsigned default_thread_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("ASYM_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap > 0) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

std::vector<SweepRow> sweep_velocity(const RabiProfile& profile,
                                     const std::vector<double>& velocity_ratios,
                                     const SweepOptions& opts) {
  for (double v : velocity_ratios) {
    if (!(v > 0.0)) throw InvalidInput("sweep velocities must be positive");
  }
  std::vector<SweepRow> rows(velocity_ratios.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      rows[i].velocity_ratio = velocity_ratios[i];
      try {
        rows[i].coefficients = coefficients(solve(make_job(profile, velocity_ratios[i]), opts.solver));
      } catch (const Error& e) {
        rows[i].error = e.what();
      }
    }
  };
  const unsigned threads =
      std::min<std::size_t>(opts.threads ? opts.threads : default_thread_count(), rows.size());
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows,
                     std::string_view comment) {
  CsvWriter csv(out, comment, {"v_over_vd", "T2l", "T2r", "R2l", "R2r", "absorb_l", "absorb_r"});
  for (const auto& r : rows) {
    if (!r.coefficients) {
      out << "# failed v_over_vd=" << format_number(r.velocity_ratio) << ": " << r.error << "\n";
      continue;
    }
    const auto& c = *r.coefficients;
    csv.row({r.velocity_ratio, c.T_left, c.T_right, c.R_left, c.R_right, c.absorb_left(),
             c.absorb_right()});
  }
}

}  // namespace asym
