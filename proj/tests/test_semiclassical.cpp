#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>

#include "asym/errors.hpp"
#include "asym/semiclassical.hpp"
#include "oracles.hpp"

using namespace asym;

namespace {

double norm2(const std::array<cplx, 2>& c) { return std::norm(c[0]) + std::norm(c[1]); }

}  // namespace

TEST_CASE("no coupling keeps the ground state") {
  RabiProfile p;
  p.tau_delta = 3.0;
  const auto run = integrate_trajectory(p, 10.0, Direction::Left);
  for (const auto& c : run.chi) {
    CHECK(std::norm(c[0]) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(c[1]) < 1e-12);
  }
}

TEST_CASE("T/A trajectories") {
  const auto d = transmission_absorption_device();
  const auto left = integrate_trajectory(d.profile, d.velocity_ratio, Direction::Left);
  const auto right = integrate_trajectory(d.profile, d.velocity_ratio, Direction::Right);
  CHECK(left.final_ground_population() > 0.95);
  CHECK(right.final_ground_population() < 0.05);
  for (const auto* run : {&left, &right}) {
    REQUIRE(run->times.size() == 401);
    for (const auto& c : run->chi) CHECK(std::abs(norm2(c) - 1.0) < 1e-9);
    CHECK(run->final_ground_population() + run->final_excited_population() ==
          doctest::Approx(1.0).epsilon(1e-9));
  }
  const double span = default_time_half_span(d.profile, d.velocity_ratio);
  CHECK(span == doctest::Approx((1.0 + 5.0 * kDefaultWidth) / 400.0));
  CHECK(left.times.front() == doctest::Approx(-span));
  CHECK(left.times.back() == doctest::Approx(span));
}

TEST_CASE("decay reduces the norm") {
  RabiProfile p;
  p.terms = {{cplx(40.0), 0.0, 0.2}};
  p.tau_gamma = 20.0;
  const auto run = integrate_trajectory(p, 5.0, Direction::Left);
  CHECK(norm2(run.chi.back()) < 0.99);
  for (std::size_t i = 1; i < run.chi.size(); ++i) {
    CHECK(norm2(run.chi[i]) <= norm2(run.chi[i - 1]) + 1e-12);
  }
}

TEST_CASE("canonical rotation model") {
  const auto m = canonical_rotation_model(3.0);
  CHECK(m.omega == doctest::Approx(std::sqrt(2.0) * 3.0));
  CHECK(m.duration == doctest::Approx(4.0 * kPi / (3.0 * std::sqrt(3.0) * 3.0)));
  CHECK(m.beta() == doctest::Approx(2.0 * kPi / 3.0));
  for (const auto& n : {m.axis1(), m.axis2()}) {
    CHECK(n[0] * n[0] + n[1] * n[1] + n[2] * n[2] == doctest::Approx(1.0));
  }
  CHECK(m.axis1()[1] == 0.0);
  CHECK(m.axis2()[0] == 0.0);
  CHECK(m.axis2()[1] < 0.0);
}

TEST_CASE("rotation order decides the outcome") {
  const auto m = canonical_rotation_model(1.0);
  const auto a = compose_rotations(m, RotationOrder::FirstR1ThenR2);
  const auto b = compose_rotations(m, RotationOrder::FirstR2ThenR1);
  CHECK(a.pop_ground == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(b.pop_excited == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(a.phase - std::exp(cplx(0, m.delta * m.duration / 2.0))) < 1e-14);
}

TEST_CASE("trivial rotations") {
  RotationModel zero{1.0, 1.0, 0.0};
  const auto r = compose_rotations(zero, RotationOrder::FirstR1ThenR2);
  CHECK(r.pop_ground == 1.0);
  CHECK(r.pop_excited == 0.0);

  // Omega = 0: both axes are the z axis, rotations commute
  RotationModel parallel{0.0, 2.0, 1.3};
  const auto p1 = compose_rotations(parallel, RotationOrder::FirstR1ThenR2);
  const auto p2 = compose_rotations(parallel, RotationOrder::FirstR2ThenR1);
  CHECK(p1.pop_ground == doctest::Approx(p2.pop_ground).epsilon(1e-14));
}

TEST_CASE("rotations match matrix-exponential propagation") {
  for (double scale : {0.5, 1.0, 3.0}) {
    RotationModel m{1.7 * scale, 0.9 * scale, 2.3 / scale};
    const cplx i(0, 1);
    Eigen::Matrix2cd h1, h2;
    h1 << 0.0, 0.5 * m.omega, 0.5 * m.omega, -m.delta;
    h2 << 0.0, 0.5 * i * m.omega, -0.5 * i * m.omega, -m.delta;
    const Eigen::Vector2cd g(1.0, 0.0);
    const double half = m.duration / 2.0;
    const auto first12 = oracle::propagate({h1, h2}, {half, half}, g);
    const auto first21 = oracle::propagate({h2, h1}, {half, half}, g);
    const auto a = compose_rotations(m, RotationOrder::FirstR1ThenR2);
    const auto b = compose_rotations(m, RotationOrder::FirstR2ThenR1);
    CHECK(a.pop_ground == doctest::Approx(std::norm(first12(0))).epsilon(1e-12));
    CHECK(b.pop_ground == doctest::Approx(std::norm(first21(0))).epsilon(1e-12));
    // state equals the propagated state up to the returned phase
    CHECK(std::abs(a.phase * a.state[0] - first12(0)) < 1e-12);
    CHECK(std::abs(a.phase * a.state[1] - first12(1)) < 1e-12);
  }
}

TEST_CASE("rotation populations are scale invariant") {
  const RotationModel m{1.3, 0.7, 2.9};
  const auto ref = compose_rotations(m, RotationOrder::FirstR2ThenR1);
  for (double lam : {0.01, 2.0, 1e3}) {
    const RotationModel s{m.omega * lam, m.delta * lam, m.duration / lam};
    CHECK(compose_rotations(s, RotationOrder::FirstR2ThenR1).pop_ground ==
          doctest::Approx(ref.pop_ground).epsilon(1e-12));
  }
}

TEST_CASE("square-pulse trajectory agrees with rotations") {
  const auto m = canonical_rotation_model(50.0);
  const double v = 20.0;
  const auto pot = square_pulse_potential(m, v);
  const double half = 0.75 * m.duration;
  const auto left = integrate_trajectory(pot, v, Direction::Left, half);
  const auto right = integrate_trajectory(pot, v, Direction::Right, half);
  const auto a = compose_rotations(m, RotationOrder::FirstR1ThenR2);
  const auto b = compose_rotations(m, RotationOrder::FirstR2ThenR1);
  CHECK(std::abs(left.final_ground_population() - a.pop_ground) < 1e-6);
  CHECK(std::abs(right.final_ground_population() - b.pop_ground) < 1e-6);
}

TEST_CASE("parameter estimates") {
  const auto e = estimate_parameters(400.0, kDefaultWidth);
  const double a = 400.0 / kDefaultWidth * std::sqrt(kPi) * std::pow(2.0 / 3.0, 1.5);
  CHECK(e.amplitude == doctest::Approx(a).epsilon(1e-14));
  CHECK(e.amplitude == doctest::Approx(2729.0).epsilon(1e-3));
  CHECK(e.detuning == doctest::Approx(1364.0).epsilon(1e-3));
  CHECK(std::abs(e.amplitude / 2618.19 - 1.0) < 0.1);
  CHECK(std::abs(e.detuning / 1413.01 - 1.0) < 0.1);

  const auto e2 = estimate_parameters(800.0, kDefaultWidth);
  CHECK(e2.amplitude == doctest::Approx(2.0 * e.amplitude));
  CHECK(e2.detuning == doctest::Approx(2.0 * e.detuning));
  CHECK(estimate_parameters(8.0, kDefaultWidth).amplitude == doctest::Approx(54.6).epsilon(1e-3));
}

TEST_CASE("trajectory csv") {
  RabiProfile p;
  p.terms = {{cplx(5.0), 0.0, 0.2}};
  TrajectoryOptions o;
  o.samples = 11;
  const auto run = integrate_trajectory(p, 2.0, Direction::Right, o);
  std::ostringstream os;
  write_trajectory_csv(os, run, "cfg");
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line.rfind("# asym", 0) == 0);
  std::getline(is, line);
  CHECK(line == "t_over_tau,pop_ground,pop_excited");
  int n = 0;
  while (std::getline(is, line)) ++n;
  CHECK(n == 11);
  CHECK_THROWS_AS(integrate_trajectory(p, 0.0, Direction::Left), InvalidInput);
}
