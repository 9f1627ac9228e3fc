#include <doctest.h>

#include <cmath>
#include <numbers>

#include "semigrav/errors.hpp"
#include "semigrav/ode.hpp"

using namespace semigrav;
using namespace semigrav::ode;

namespace {

// Harmonic oscillator q'' = -q with q(0) = 1, v(0) = 0.
State<2> oscillator(double, const State<2>& y) { return {y[1], -y[0]}; }

}  // namespace

TEST_CASE("Dormand-Prince matches the exact oscillator") {
  IntegratorConfig cfg;
  cfg.rel_tol = 1e-11;
  cfg.abs_tol = 1e-13;
  const auto sol = integrate_dopri5<2>(oscillator, 0.0, {1.0, 0.0}, 20.0, cfg);
  CHECK(sol.status == Status::completed);
  CHECK(sol.t.back() == 20.0);
  for (std::size_t i = 0; i < sol.t.size(); ++i) CHECK(std::abs(sol.y[i][0] - std::cos(sol.t[i])) < 1e-8);
  for (std::size_t i = 1; i < sol.t.size(); ++i) CHECK(sol.t[i] > sol.t[i - 1]);

  SUBCASE("dense output between steps") {
    double worst = 0.0;
    for (double t = 0.0; t <= 20.0; t += 0.0137) worst = std::max(worst, std::abs(sol.dense(t)[0] - std::cos(t)));
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("tolerance controls the error") {
  auto err = [](double tol) {
    IntegratorConfig cfg;
    cfg.rel_tol = tol;
    cfg.abs_tol = tol;
    const auto sol = integrate_dopri5<2>(oscillator, 0.0, {1.0, 0.0}, 10.0, cfg);
    return std::abs(sol.y.back()[0] - std::cos(10.0));
  };
  CHECK(err(1e-10) < err(1e-6));
  CHECK(err(1e-6) < 1e-4);
}

TEST_CASE("events are located on the interpolant") {
  IntegratorConfig cfg;
  SUBCASE("falling zero of q is at pi/2") {
    const std::vector<Event<2>> ev{{[](double, const State<2>& y) { return y[0]; }, Direction::falling, true}};
    const auto sol = integrate_dopri5<2>(oscillator, 0.0, {1.0, 0.0}, 10.0, cfg, ev);
    CHECK(sol.status == Status::event);
    REQUIRE(sol.events.size() == 1);
    CHECK(sol.events[0].t == doctest::Approx(std::numbers::pi / 2).epsilon(1e-10));
    CHECK(sol.t.back() == doctest::Approx(std::numbers::pi / 2).epsilon(1e-10));
  }
  SUBCASE("non-terminal events record every crossing of the requested direction") {
    const std::vector<Event<2>> ev{{[](double, const State<2>& y) { return y[0]; }, Direction::rising, false}};
    const auto sol = integrate_dopri5<2>(oscillator, 0.0, {1.0, 0.0}, 12.0, cfg, ev);
    CHECK(sol.status == Status::completed);
    REQUIRE(sol.events.size() == 2);
    CHECK(sol.events[0].t == doctest::Approx(1.5 * std::numbers::pi).epsilon(1e-10));
    CHECK(sol.events[1].t == doctest::Approx(3.5 * std::numbers::pi).epsilon(1e-10));
  }
  SUBCASE("a zero at the initial time is not a crossing") {
    const std::vector<Event<2>> ev{{[](double, const State<2>& y) { return y[1]; }, Direction::falling, true}};
    const auto sol = integrate_dopri5<2>(oscillator, 0.0, {1.0, 0.0}, 10.0, cfg, ev);
    REQUIRE(sol.events.size() == 1);
    CHECK(sol.events[0].t == doctest::Approx(2 * std::numbers::pi).epsilon(1e-10));
  }
}

TEST_CASE("splitting integrator") {
  IntegratorConfig cfg;
  cfg.method = Method::fixed_step;
  auto run = [&](double h) {
    cfg.h_init = h;
    cfg.h_max = std::max(cfg.h_max, h);
    return integrate_splitting<2>(oscillator, 0.0, {1.0, 0.0}, 10.0, cfg, {true, false});
  };
  const auto coarse = run(0.02);
  const auto fine = run(0.01);
  const double e1 = std::abs(coarse.y.back()[0] - std::cos(10.0));
  const double e2 = std::abs(fine.y.back()[0] - std::cos(10.0));
  // Second order: halving the step quarters the error.
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.05));
  // Symplectic: the energy error stays bounded over many periods.
  cfg.h_init = 0.05;
  const auto long_run = integrate_splitting<2>(oscillator, 0.0, {1.0, 0.0}, 2000.0, cfg, {true, false});
  double worst = 0.0;
  for (const auto& y : long_run.y) worst = std::max(worst, std::abs(0.5 * (y[0] * y[0] + y[1] * y[1]) - 0.5));
  CHECK(worst < 1e-3);
}

TEST_CASE("failures are reported, not thrown") {
  IntegratorConfig cfg;
  SUBCASE("blow-up in finite time") {
    // y' = y^2 from y(0) = 1 blows up at t = 1.
    auto rhs = [](double, const State<1>& y) { return State<1>{y[0] * y[0]}; };
    const auto sol = integrate_dopri5<1>(rhs, 0.0, {1.0}, 2.0, cfg);
    CHECK(sol.status != Status::completed);
    CHECK(sol.t.back() < 1.0);
    CHECK(sol.t.back() > 0.99);
    CHECK_FALSE(sol.message.empty());
  }
  SUBCASE("right-hand side singularity") {
    auto rhs = [](double, const State<1>& y) {
      if (y[0] <= 0.5) throw SingularityError("too small");
      return State<1>{-1.0};
    };
    const auto sol = integrate_dopri5<1>(rhs, 0.0, {1.0}, 2.0, cfg);
    CHECK(sol.status != Status::completed);
    CHECK(sol.t.back() == doctest::Approx(0.5).epsilon(1e-3));
  }
  SUBCASE("guard stops the integration") {
    Guard<2> guard = [](double, const State<2>& y) -> std::optional<std::string> {
      if (y[0] < 0.0) return std::string("negative");
      return std::nullopt;
    };
    const auto sol = integrate_dopri5<2>(oscillator, 0.0, {1.0, 0.0}, 10.0, cfg, {}, guard);
    CHECK(sol.status == Status::singularity);
    CHECK(sol.t.back() > std::numbers::pi / 2);
    CHECK(sol.y.back()[0] < 0.0);
    CHECK(sol.message == "negative");
  }
}

TEST_CASE("configuration validation") {
  IntegratorConfig cfg;
  cfg.rel_tol = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = IntegratorConfig{};
  cfg.h_min = 1.0;
  cfg.h_init = 0.1;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = IntegratorConfig{};
  CHECK_THROWS_AS(integrate_dopri5<2>(oscillator, 1.0, {1.0, 0.0}, 0.0, cfg), ConfigError);
}
