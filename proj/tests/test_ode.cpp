#include <doctest.h>

#include <cmath>
#include <limits>

#include "asym/errors.hpp"
#include "asym/ode.hpp"

using asym::ode::DormandPrince;
using cplx = std::complex<double>;

TEST_CASE("harmonic phase to tolerance") {
  DormandPrince<2> dp({1e-10, 1e-13, 100000});
  DormandPrince<2>::State y{cplx(1.0), cplx(0.0, 1.0)};
  double t = 0.0;
  const double w = 7.3;
  auto f = [w](double, const auto& s, auto& d) {
    d[0] = cplx(0, w) * s[0];
    d[1] = -0.5 * s[1];
  };
  dp.advance(f, t, 3.0, y, [](double, const auto&) {});
  CHECK(t == 3.0);
  CHECK(std::abs(y[0] - std::exp(cplx(0, w * 3.0))) < 1e-8);
  CHECK(std::abs(y[1] - cplx(0, 1) * std::exp(-1.5)) < 1e-8);
  CHECK(dp.stats().accepted > 0);
  CHECK(dp.stats().local_error_sum > 0.0);
}

TEST_CASE("error shrinks with tolerance") {
  auto run = [](double rtol) {
    DormandPrince<1> dp({rtol, rtol * 1e-3, 1000000});
    DormandPrince<1>::State y{cplx(1.0)};
    double t = 0.0;
    dp.advance([](double s, const auto& v, auto& d) { d[0] = cplx(std::cos(s), 1.0) * v[0]; }, t,
               5.0, y, [](double, const auto&) {});
    return std::abs(y[0] - std::exp(cplx(std::sin(5.0), 5.0)));
  };
  const double e6 = run(1e-6), e10 = run(1e-10);
  CHECK(e6 < 1e-4);
  CHECK(e10 < e6 / 100.0);
}

TEST_CASE("backward integration and chained calls") {
  DormandPrince<1> dp;
  DormandPrince<1>::State y{cplx(1.0)};
  double t = 2.0;
  auto f = [](double, const auto& v, auto& d) { d[0] = v[0]; };
  dp.advance(f, t, 1.0, y, [](double, const auto&) {});
  dp.advance(f, t, 0.0, y, [](double, const auto&) {});
  CHECK(t == 0.0);
  CHECK(std::abs(y[0] - std::exp(-2.0)) < 1e-8);
}

TEST_CASE("observer sees every accepted step and can abort") {
  DormandPrince<1> dp;
  DormandPrince<1>::State y{cplx(1.0)};
  double t = 0.0;
  std::size_t calls = 0;
  dp.advance([](double, const auto& v, auto& d) { d[0] = cplx(0, 3) * v[0]; }, t, 1.0, y,
             [&](double, const auto&) { ++calls; });
  CHECK(calls == dp.stats().accepted);

  DormandPrince<1> dp2;
  y = {cplx(1.0)};
  t = 0.0;
  CHECK_THROWS_AS(dp2.advance([](double, const auto& v, auto& d) { d[0] = v[0]; }, t, 1.0, y,
                              [](double s, const auto&) {
                                if (s > 0.5) throw std::runtime_error("stop");
                              }),
                  std::runtime_error);
  CHECK(t > 0.5);
  CHECK(t < 1.0);
}

TEST_CASE("failures") {
  DormandPrince<1> few({1e-12, 1e-14, 5});
  DormandPrince<1>::State y{cplx(1.0)};
  double t = 0.0;
  CHECK_THROWS_AS(few.advance([](double, const auto& v, auto& d) { d[0] = cplx(0, 100) * v[0]; },
                              t, 10.0, y, [](double, const auto&) {}),
                  asym::IntegrationFailure);

  DormandPrince<1> nan_dp;
  y = {cplx(1.0)};
  t = 0.0;
  CHECK_THROWS_AS(nan_dp.advance(
                      [](double, const auto&, auto& d) {
                        d[0] = std::numeric_limits<double>::quiet_NaN();
                      },
                      t, 1.0, y, [](double, const auto&) {}),
                  asym::IntegrationFailure);
}
