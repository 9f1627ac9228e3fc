#include <doctest.h>

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "semigrav/eotvos.hpp"
#include "semigrav/errors.hpp"
#include "semigrav/interferometer.hpp"
#include "semigrav/phase.hpp"
#include "semigrav/return_time.hpp"

using namespace semigrav;
using namespace semigrav::experiments;
using dynamics::Flow;
using dynamics::PotentialModel;
using moments::CanonicalState;
using moments::HbarContext;

namespace {

dynamics::IntegratorConfig tight() {
  dynamics::IntegratorConfig cfg;
  cfg.rel_tol = 1e-12;
  cfg.abs_tol = 1e-14;
  cfg.h_max = 0.05;
  return cfg;
}

template <class F>
double integral(F f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-14);
}

// Radial Kepler flight out and back from r0 by energy conservation,
// 2 int_{r0}^{rmax} dr / sqrt(2 (eps + 1/r)). With r = rmax - w^2 the
// turning-point singularity cancels: dr / |v| = 2 sqrt((rmax - w^2) / (-2 eps)) dw.
double radial_flight_time(double eps, double r0) {
  const double rmax = -1.0 / eps;
  return 2.0 * integral([&](double w) { return 2.0 * std::sqrt((rmax - w * w) / (-2.0 * eps)); }, 0.0,
                        std::sqrt(rmax - r0));
}

// Moment-chart runs resolve the small second moments absolutely.
dynamics::IntegratorConfig moment_chart() {
  auto cfg = tight();
  cfg.rel_tol = 1e-13;
  cfg.abs_tol = 1e-18;
  return cfg;
}

double return_at(double eps, double u) {
  ReturnTimeProblem p;
  p.epsilon = eps;
  p.u = u;
  return return_time(p, tight()).t_return;
}

}  // namespace

TEST_CASE("Eotvos estimate") {
  CHECK(eotvos_estimate({10.0, 1e-12, 1e-20}) == doctest::Approx(0.5e-33).epsilon(1e-15));
  CHECK(eotvos_estimate({10.0, 1e-12, 1.0}) == doctest::Approx(0.5e-13).epsilon(1e-15));
  // Linear in the spread and in the curvature, inverse in g.
  CHECK(eotvos_estimate({10.0, 1e-12, 3.0}) == doctest::Approx(3 * eotvos_estimate({10.0, 1e-12, 1.0})));
  CHECK(eotvos_estimate({10.0, 2e-12, 1.0}) == doctest::Approx(2 * eotvos_estimate({10.0, 1e-12, 1.0})));
  CHECK(eotvos_estimate({5.0, 1e-12, 1.0}) == doctest::Approx(2 * eotvos_estimate({10.0, 1e-12, 1.0})));
  CHECK(width_bound_from_eta(10.0, 1e-12, 5e-12) == doctest::Approx(10.0).epsilon(1e-14));
  CHECK_THROWS_AS(width_bound_from_eta(10.0, 0.0, 1e-12), ConfigError);

  const auto rows = eotvos_table(10.0, 1e-12, {1e-10, 1.0});
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].dxx == doctest::Approx(1e-20));
  CHECK(rows[0].eta == doctest::Approx(0.5e-33));
  CHECK(rows[1].eta == doctest::Approx(0.5e-13));
}

TEST_CASE("anomalous acceleration") {
  const auto pot = PotentialModel::newtonian(1.0);
  const moments::SecondOrderState st{1.0, 0.0, 0.01, 0.0, 1e-6 / 0.01};
  CHECK(anomalous_acceleration(pot, st) == doctest::Approx(0.03).epsilon(1e-14));
  CHECK(anomalous_acceleration(PotentialModel::quadratic(2.0, 1.0), st) == 0.0);

  // Centroid acceleration measured on a trajectory by finite differences.
  const auto traj = dynamics::integrate(Flow{pot, 1.0, 1.0}, CanonicalState{1.0, 0.0, 0.1, 0.0, 1e-6}, 0.0, 0.1, tight());
  const double h = 1e-3;
  const double acc = (traj.at(2 * h).x - 2 * traj.at(h).x + traj.at(0.0).x) / (h * h);
  const double x1 = traj.at(h).x;
  CHECK(std::abs(acc + pot.dphi(x1)) == doctest::Approx(0.03).epsilon(2e-2));
}

TEST_CASE("radial Kepler oracle") {
  CHECK(kepler_return_time(-0.5) == doctest::Approx(std::numbers::pi + 2.0).epsilon(1e-14));
  for (double eps : {-0.9, -0.7, -0.5, -0.3, -0.1})
    CHECK(kepler_return_time(eps) == doctest::Approx(radial_flight_time(eps, 1.0)).epsilon(1e-9));
  CHECK(kepler_return_time(-0.2, 2.0) == doctest::Approx(radial_flight_time(-0.2, 2.0)).epsilon(1e-9));
}

TEST_CASE("classical return time") {
  CHECK(return_at(-0.5, 0.0) == doctest::Approx(std::numbers::pi + 2.0).epsilon(1e-6));
  double prev = 0.0;
  for (double eps = -0.9; eps <= -0.1 + 1e-12; eps += 0.1) {
    const double t = return_at(eps, 0.0);
    CHECK(t == doctest::Approx(kepler_return_time(eps)).epsilon(1e-6));
    CHECK(t > prev);
    prev = t;
  }
}

TEST_CASE("return time decreases with u and converges to the classical curve") {
  for (double eps : {-0.9, -0.5, -0.1}) {
    const double t0 = return_at(eps, 0.0);
    double prev = 0.0;
    for (double u : {1.0, 1e-1, 1e-3, 1e-5}) {
      const double t = return_at(eps, u);
      CHECK(t < t0);
      CHECK(t > prev);
      prev = t;
    }
  }
}

TEST_CASE("small kinetic energy: return time scales as sqrt(K)") {
  // Near the launch radius the field is uniform and t = 2 sqrt(2 K).
  ReturnTimeProblem p;
  auto t_of = [&](double k) {
    p.epsilon = k - 1.0;
    return return_time(p, tight()).t_return;
  };
  const double ratio = t_of(1e-6) / t_of(4e-6);
  CHECK(ratio == doctest::Approx(0.5).epsilon(1e-4));
  CHECK(t_of(1e-6) == doctest::Approx(2.0 * std::sqrt(2e-6)).epsilon(1e-4));
}

TEST_CASE("escape") {
  ReturnTimeProblem p;
  p.epsilon = 0.2;
  CHECK_THROWS_AS(return_time(p, tight()), NoReturnError);
  const auto rows = return_time_curve({-0.5, 0.2}, {0.0, 1e-3}, ReturnTimeProblem{}, tight());
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].u == 0.0);
  CHECK(rows[0].status == ReturnStatus::returned);
  CHECK(rows[1].status == ReturnStatus::escaped);
  CHECK(std::isnan(rows[1].t_return));
  CHECK(rows[2].u == 1e-3);
  CHECK(rows[2].epsilon == -0.5);

  const auto kin = return_time_curve({0.5}, {0.0}, ReturnTimeProblem{}, tight(), Abscissa::kinetic);
  CHECK(kin[0].epsilon == doctest::Approx(-0.5));
  CHECK(kin[0].t_return == doctest::Approx(std::numbers::pi + 2.0).epsilon(1e-6));
}

TEST_CASE("conservation over one return") {
  for (double u : {0.0, 1e-5, 1e-2}) {
    ReturnTimeProblem p;
    p.u = u;
    const auto res = return_time(p, tight());
    const auto& e = res.trajectory.energy_series;
    for (double h : e) CHECK(std::abs(h - e.front()) < 1e-8 * std::abs(e.front()));
    if (u > 0.0) {
      const auto m = dynamics::integrate_moments(Flow{PotentialModel::newtonian(1.0), 1.0, 1.0},
                                                 moments::from_canonical(p.initial_state()), 0.0, res.t_return, moment_chart());
      REQUIRE(m.status == ode::Status::completed);
      for (double uu : m.casimir_series) CHECK(std::abs(uu - u) < 1e-8 * u);
    }
  }
}

TEST_CASE("phase line integral") {
  const HbarContext ctx{0.5, 1.0};
  const auto partials = linear_potential_partials(2.0, 1.5, 0.7, ctx);
  SUBCASE("closed loop vanishes") {
    PhasePath loop{{PathSegment::straight(0.0, 0.0, 1.0, 0.0), PathSegment::straight(1.0, 0.0, 1.0, 2.0),
                    PathSegment::straight(1.0, 2.0, -0.5, 2.0), PathSegment::straight(-0.5, 2.0, 0.0, 0.0)}};
    CHECK(std::abs(phase_line_integral(loop, partials)) < 1e-10);
  }
  SUBCASE("path independence") {
    PhasePath direct{{PathSegment::straight(0.0, 0.0, 2.0, 1.5)}};
    PhasePath corner{{PathSegment::straight(0.0, 0.0, 0.0, 1.5), PathSegment::vertical(0.0, 2.0, 1.5)}};
    PathSegment curved;
    curved.tau0 = 0.0;
    curved.tau1 = 1.0;
    curved.point = [](double s) { return std::array<double, 2>{2.0 * s * s + std::sin(3 * s) * (1 - s), 1.5 * s}; };
    curved.tangent = [](double s) {
      return std::array<double, 2>{4.0 * s + 3 * std::cos(3 * s) * (1 - s) - std::sin(3 * s), 1.5};
    };
    const double a = phase_line_integral(direct, partials);
    CHECK(phase_line_integral(corner, partials) == doctest::Approx(a).epsilon(1e-8));
    CHECK(phase_line_integral(PhasePath{{curved}}, partials) == doctest::Approx(a).epsilon(1e-8));
    // Reparametrizing the same curve changes nothing.
    PathSegment slow = curved;
    slow.tau1 = 2.0;
    slow.point = [c = curved](double s) { return c.point(0.5 * s); };
    slow.tangent = [c = curved](double s) {
      auto v = c.tangent(0.5 * s);
      return std::array<double, 2>{0.5 * v[0], 0.5 * v[1]};
    };
    CHECK(phase_line_integral(PhasePath{{slow}}, partials) == doctest::Approx(a).epsilon(1e-12));
  }
  SUBCASE("free centre of mass") {
    const double p0 = 0.9, mass = 1.5, T = 3.0;
    const auto traj = dynamics::integrate(Flow{PotentialModel::free(), mass, 1.0}, moments::point_particle(0.0, p0),
                                          0.0, T, tight());
    const auto free = linear_potential_partials(0.0, mass, p0, ctx);
    const double want = p0 * p0 * T / (2 * mass * ctx.hbar);
    CHECK(phase_line_integral(PhasePath{{PathSegment::com(traj, 0.0, T)}}, free) == doctest::Approx(want).epsilon(1e-10));
  }
  SUBCASE("disjoint segments are rejected") {
    PhasePath broken{{PathSegment::straight(0.0, 0.0, 1.0, 0.0), PathSegment::straight(2.0, 0.0, 3.0, 1.0)}};
    CHECK_THROWS_AS(broken.validate(), ConfigError);
  }
}

TEST_CASE("plane-wave phase is the classical action") {
  const HbarContext ctx{0.3, 1.0};
  const double mass = 1.2, x0 = 0.4, v0 = 0.8, T = 2.5;
  auto check = [&](const PotentialModel& pot, auto x, auto v) {
    const auto traj = dynamics::integrate(Flow{pot, mass, 1.0}, moments::point_particle(x0, mass * v0), 0.0, T, tight());
    // Lagrangian on the closed-form orbit.
    const double action =
        integral([&](double t) { return 0.5 * mass * v(t) * v(t) - mass * pot.phi(x(t)); }, 0.0, T) / ctx.hbar;
    const double phase = propagation_phase_plane_wave(traj, pot, mass, ctx);
    CHECK(phase == doctest::Approx(action).epsilon(1e-8));
    CHECK(propagation_phase_plane_wave(traj, pot, mass, ctx, T, 0.0) == doctest::Approx(-phase).epsilon(1e-12));
    CHECK(propagation_phase_plane_wave(traj, pot, mass, ctx, 0.0, 1.0) +
              propagation_phase_plane_wave(traj, pot, mass, ctx, 1.0, T) ==
          doctest::Approx(phase).epsilon(1e-12));
  };
  check(PotentialModel::free(), [&](double t) { return x0 + v0 * t; }, [&](double) { return v0; });
  const double g = 9.81;
  check(PotentialModel::linear(g), [&](double t) { return x0 + v0 * t - 0.5 * g * t * t; },
        [&](double t) { return v0 - g * t; });
  const double w = 1.7;
  check(PotentialModel::quadratic(w * w), [&](double t) { return x0 * std::cos(w * t) + v0 / w * std::sin(w * t); },
        [&](double t) { return -x0 * w * std::sin(w * t) + v0 * std::cos(w * t); });
}

TEST_CASE("second-order propagation phase") {
  const HbarContext ctx{1.0, 1.0};
  const double mass = 2.0, sigma = 0.5, T = 3.0;
  const auto init = moments::minimal_gaussian(0.0, 0.0, sigma, ctx);
  const auto traj =
      dynamics::integrate(Flow{PotentialModel::free(), mass, 1.0}, moments::to_canonical(init, ctx), 0.0, T, tight());
  const double omega = dynamics::spreading_frequency(init, mass);
  // Free spreading adds omega T / 4 - arctan(omega T) / 2.
  CHECK(propagation_phase_second_order(traj, PotentialModel::free(), mass, ctx) ==
        doctest::Approx(omega * T / 4 - 0.5 * std::atan(omega * T)).epsilon(1e-9));

  // Without the width sector the plane-wave phase comes back.
  const auto pot = PotentialModel::linear(3.0);
  auto moving = moments::to_canonical(moments::minimal_gaussian(0.2, 1.1, sigma, ctx), ctx);
  const auto t2 = dynamics::integrate(Flow{pot, mass, 1.0}, moving, 0.0, T, tight());
  CHECK(propagation_phase_second_order(t2, pot, mass, ctx, false) ==
        doctest::Approx(propagation_phase_plane_wave(t2, pot, mass, ctx)).epsilon(1e-12));
}

namespace {

// One arm in Phi = g x + k x^2 / 2 from closed-form orbits: (1/hbar) int L dt.
struct ArmOracle {
  double phase = 0.0;
  double x = 0.0;
  double p = 0.0;
};

ArmOracle arm_oracle(double x0, double p0, double kick0, double kick_t, double g, double k, double mass, double T,
                     double hbar) {
  const double w = std::sqrt(k);
  double x = x0, v = (p0 + kick0) / mass, phase = 0.0;
  for (int leg = 0; leg < 2; ++leg) {
    const double xs = x, vs = v;
    auto xt = [&](double t) {
      if (k == 0.0) return xs + vs * t - 0.5 * g * t * t;
      const double eq = -g / k;
      return eq + (xs - eq) * std::cos(w * t) + vs / w * std::sin(w * t);
    };
    auto vt = [&](double t) {
      if (k == 0.0) return vs - g * t;
      const double eq = -g / k;
      return -(xs - eq) * w * std::sin(w * t) + vs * std::cos(w * t);
    };
    phase += integral([&](double t) {
               const double xv = xt(t), vv = vt(t);
               return 0.5 * mass * vv * vv - mass * (g * xv + 0.5 * k * xv * xv);
             }, 0.0, T) / hbar;
    x = xt(T);
    v = vt(T);
    if (leg == 0) v += kick_t / mass;
  }
  return {phase, x, mass * v};
}

double closing_phase(const ArmOracle& a, double xd, double hbar) { return a.phase + a.p * (xd - a.x) / hbar; }

}  // namespace

TEST_CASE("Mach-Zehnder in a uniform field") {
  MachZehnderConfig cfg;
  cfg.T = 0.8;
  cfg.hbar_k = 0.6;
  cfg.mass = 1.3;
  cfg.ctx = HbarContext{0.2, 1.0};
  const double g = 9.81;
  cfg.potential = PotentialModel::linear(g);
  cfg.initial = moments::to_canonical(moments::minimal_gaussian(0.1, 0.4, 0.3, cfg.ctx), cfg.ctx);
  cfg.integrator = tight();
  cfg.detection_x = -2.0;
  const auto res = mach_zehnder_phase(cfg);

  const auto a = arm_oracle(0.1, 0.4, 0.6, -0.6, g, 0.0, 1.3, 0.8, 0.2);
  const auto b = arm_oracle(0.1, 0.4, 0.0, 0.6, g, 0.0, 1.3, 0.8, 0.2);
  CHECK(res.arm_a.com_phase == doctest::Approx(a.phase).epsilon(1e-9));
  CHECK(res.arm_b.com_phase == doctest::Approx(b.phase).epsilon(1e-9));
  CHECK(res.arm_a.final_state.x == doctest::Approx(a.x).epsilon(1e-10));
  CHECK(res.arm_a.final_state.p == doctest::Approx(a.p).epsilon(1e-10));

  // The arms overlap at 2T with momenta differing by hbar k and equal widths,
  // so the second-order terms cancel in the difference.
  CHECK(std::abs(res.separation) < 1e-9);
  CHECK_FALSE(res.flagged);
  CHECK(res.arm_a.second_order_phase == doctest::Approx(res.arm_b.second_order_phase).epsilon(1e-9));
  CHECK(res.dtheta == doctest::Approx(closing_phase(a, -2.0, 0.2) - closing_phase(b, -2.0, 0.2)).epsilon(1e-9));
  CHECK(res.fringe_gradient == doctest::Approx(-0.6 / 0.2).epsilon(1e-9));

  SUBCASE("no propagation phase difference at the overlap point") {
    cfg.detection_x.reset();
    const auto mid = mach_zehnder_phase(cfg);
    CHECK(std::abs(mid.dtheta) < 1e-8);
    // Same as without gravity.
    cfg.potential = PotentialModel::free();
    CHECK(std::abs(mach_zehnder_phase(cfg).dtheta) < 1e-8);
  }

  SUBCASE("vertical segment matches its line integral") {
    const auto& fin = res.arm_a.final_state;
    PhasePartials along{[&](double x, double) { return packet_phase_dx(fin, x, cfg.ctx); },
                        [](double, double) { return 0.0; }};
    const double q = phase_line_integral(PhasePath{{PathSegment::vertical(fin.x, -2.0, 1.6)}}, along);
    CHECK(res.arm_a.vertical_phase == doctest::Approx(q).epsilon(1e-10));
    CHECK(res.arm_a.second_order_phase != 0.0);
  }
}

TEST_CASE("Mach-Zehnder with a gradient") {
  MachZehnderConfig cfg;
  cfg.T = 1.0;
  cfg.hbar_k = 0.5;
  cfg.ctx = HbarContext{0.1, 1.0};
  cfg.initial = moments::to_canonical(moments::minimal_gaussian(0.0, 0.0, 0.2, cfg.ctx), cfg.ctx);
  cfg.integrator = tight();

  // Harmonic restoring force k: the arms open by 2 v_k sin(wT) (cos(wT) - 1) / w.
  const double k = 0.04, w = std::sqrt(k), g = 9.81;
  cfg.potential = PotentialModel::quadratic(k, g);
  cfg.detection_x = -4.0;
  const auto res = mach_zehnder_phase(cfg);
  const double want = 2 * 0.5 * std::sin(w) * (std::cos(w) - 1) / w;
  CHECK(res.separation == doctest::Approx(want).epsilon(1e-8));

  const auto a = arm_oracle(0.0, 0.0, 0.5, -0.5, g, k, 1.0, 1.0, 0.1);
  const auto b = arm_oracle(0.0, 0.0, 0.0, 0.5, g, k, 1.0, 1.0, 0.1);
  CHECK(res.arm_a.com_phase == doctest::Approx(a.phase).epsilon(1e-9));
  CHECK(res.arm_b.com_phase == doctest::Approx(b.phase).epsilon(1e-9));
  const double second = res.arm_a.second_order_phase - res.arm_b.second_order_phase;
  CHECK(res.dtheta - second == doctest::Approx(closing_phase(a, -4.0, 0.1) - closing_phase(b, -4.0, 0.1)).epsilon(1e-9));

  cfg.T = 0.0;
  CHECK_THROWS_AS(mach_zehnder_phase(cfg), ConfigError);
}
