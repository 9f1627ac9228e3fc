#include <doctest.h>

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/sinh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "semigrav/errors.hpp"
#include "semigrav/quadrature.hpp"
#include "semigrav/reconstruct.hpp"
#include "semigrav/wavefunction.hpp"

using namespace semigrav;
using namespace semigrav::reconstruct;
using moments::HbarContext;
using moments::SecondOrderState;

namespace {

RawMomentSequence gaussian_raw(const SecondOrderState& st, std::size_t order) {
  return moments::raw_sequence(moments::gaussian_moment_data(st, order), order);
}

PhaseDerivative rebuild(const RawMomentSequence& raw, const HermiteBasis& basis, const HbarContext& ctx) {
  return reconstruct_phase_derivative(raw, reconstruct_density(raw, basis), ctx);
}

}  // namespace

TEST_CASE("Gauss-Hermite rule integrates polynomials against exp(-y^2)") {
  for (std::size_t n : {4u, 9u, 24u, 40u}) {
    const auto rule = quadrature::gauss_hermite(n);
    REQUIRE(rule.nodes.size() == n);
    // int y^(2k) exp(-y^2) dy = Gamma(k + 1/2); odd moments vanish.
    for (std::size_t k = 0; 2 * k + 1 < 2 * n; ++k) {
      double even = 0.0, odd = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        even += rule.weights[i] * std::pow(rule.nodes[i], 2.0 * k);
        odd += rule.weights[i] * std::pow(rule.nodes[i], 2.0 * k + 1);
      }
      const double want = boost::math::tgamma(k + 0.5);
      CHECK(even == doctest::Approx(want).epsilon(1e-11));
      CHECK(std::abs(odd) < 1e-11 * want * (1 + k));
    }
  }
}

TEST_CASE("Hermite basis") {
  const HermiteBasis basis{0.3, 0.7, 8};
  CHECK(orthonormality_error(basis) < 1e-10);
  // Independent check of one overlap with adaptive quadrature.
  boost::math::quadrature::sinh_sinh<double> ss;
  const double overlap = ss.integrate([&](double x) { return basis.basis_function(3, x) * basis.basis_function(3, x); });
  CHECK(overlap == doctest::Approx(1.0).epsilon(1e-10));
  const double cross = ss.integrate([&](double x) { return basis.basis_function(2, x) * basis.basis_function(4, x); });
  CHECK(std::abs(cross) < 1e-10);
  // H_3(y) = 8 y^3 - 12 y
  const double y = (1.1 - 0.3) / 0.7;
  CHECK(basis.polynomial(3, 1.1) == doctest::Approx(8 * y * y * y - 12 * y).epsilon(1e-14));
  CHECK(basis.normalization(3) == doctest::Approx(0.7 * std::sqrt(std::numbers::pi) * 8 * 6).epsilon(1e-14));
  const auto table = basis.coefficient_table();
  for (double x : {-1.0, 0.2, 2.5}) {
    double v = 0.0;
    for (std::size_t k = 0; k < table[5].size(); ++k) v += table[5][k] * std::pow(x, double(k));
    CHECK(v == doctest::Approx(basis.polynomial(5, x)).epsilon(1e-9));
  }
  CHECK_THROWS_AS((HermiteBasis{0.0, -1.0, 2}.validate()), ConfigError);
}

TEST_CASE("second-order reconstruction of a Gaussian is the Gaussian template") {
  const HbarContext ctx{0.7, 1.0};
  // Pure states with and without correlation.
  for (const SecondOrderState st : {moments::minimal_gaussian(0.4, 1.3, 0.5, ctx),
                                    SecondOrderState{-1.0, 0.2, 0.3, 0.2, (0.25 * 0.49 + 0.04) / 0.3}}) {
    const auto raw = gaussian_raw(st, 2);
    const auto phase = rebuild(raw, HermiteBasis::centered_on(st, 2), ctx);
    CHECK_FALSE(phase.density().flagged());
    const double sd = std::sqrt(st.dxx);
    for (double z = -5.0; z <= 5.0; z += 0.25) {
      const double x = st.x_mean + z * sd;
      const Complex psi = gaussian_template(st, 0.0, ctx, x);
      const Complex dpsi = gaussian_template_dx(st, 0.0, ctx, x);
      CHECK(std::sqrt(phase.density()(x)) == doctest::Approx(std::abs(psi)).epsilon(1e-8));
      CHECK(phase(x) == doctest::Approx(std::imag(dpsi / psi)).epsilon(1e-8));
    }
  }
}

TEST_CASE("reconstruction reproduces its input moments") {
  const HbarContext ctx{1.0, 1.0};
  SUBCASE("Gaussian to order 6") {
    const SecondOrderState st{0.5, -0.3, 0.4, 0.1, (0.25 + 0.01) / 0.4};
    const auto raw = gaussian_raw(st, 6);
    const auto phase = rebuild(raw, HermiteBasis::centered_on(st, 6), ctx);
    const auto m = quadrature_moments(phase.density(), 6);
    for (std::size_t k = 0; k <= 6; ++k)
      CHECK(m[k] == doctest::Approx(raw.moments[k]).epsilon(1e-8).scale(1e-8));
    const auto mixed = quadrature_mixed_moments(phase, 6);
    for (std::size_t k = 0; k <= 6; ++k)
      CHECK(mixed[k] == doctest::Approx(raw.mixed[k]).epsilon(1e-8).scale(1e-8));
  }
  SUBCASE("skewed gamma distribution") {
    // Gamma(k = 6): <x^n> = k (k+1) ... (k+n-1)
    RawMomentSequence raw;
    raw.moments = {1.0};
    for (int n = 1; n <= 4; ++n) raw.moments.push_back(raw.moments.back() * (6.0 + n - 1));
    raw.mixed = {0.0};
    const HermiteBasis basis{6.0, std::sqrt(2.0 * 6.0), 4};
    const auto rho = reconstruct_density(raw, basis);
    const auto m = quadrature_moments(rho, 4);
    for (std::size_t k = 0; k <= 4; ++k) CHECK(m[k] == doctest::Approx(raw.moments[k]).epsilon(1e-8));
    // Odd expansion coefficient: skew tilts the density to the left of the mean.
    CHECK(rho.coefficients()[3] != 0.0);
    CHECK(rho(6.0 - 2.0) > rho(6.0 + 2.0));
  }
}

TEST_CASE("first order: bare weight and plane-wave phase") {
  const HbarContext ctx{0.5, 1.0};
  const double m = 1.2, p0 = 3.0;
  RawMomentSequence raw{{1.0, m}, {p0, m * p0}};
  const HermiteBasis basis{m, 0.8, 1};
  const auto phase = rebuild(raw, basis, ctx);
  for (double x : {0.0, 1.2, 2.0}) {
    CHECK(phase.density()(x) == doctest::Approx(basis.weight(x) / (0.8 * std::sqrt(std::numbers::pi))));
    CHECK(phase(x) == doctest::Approx(p0 / ctx.hbar));
  }
  const auto state = reconstructed_state(phase);
  CHECK(state.theta0_is_gauge);
  CHECK(state.theta0 == 0.0);
}

TEST_CASE("reconstruction errors and artifacts") {
  SUBCASE("Hankel failure") {
    RawMomentSequence raw{{1.0, 0.0, -1.0}, {}};
    CHECK_THROWS_AS(reconstruct_density(raw, HermiteBasis{0.0, 1.0, 2}), NoRepresentingDistributionError);
  }
  SUBCASE("order above the data") {
    RawMomentSequence raw{{1.0, 0.0, 1.0}, {}};
    CHECK_THROWS_AS(reconstruct_density(raw, HermiteBasis{0.0, 1.0, 4}), UnsupportedOrderError);
  }
  SUBCASE("unnormalized") {
    RawMomentSequence raw{{2.0, 0.0, 1.0}, {}};
    CHECK_THROWS_AS(reconstruct_density(raw, HermiteBasis{0.0, 1.0, 2}), DomainError);
  }
  SUBCASE("heavy tails give a negative truncated density") {
    // Unit variance with excess kurtosis 6: the fourth-order expansion dips below zero near |x| = sqrt(3).
    RawMomentSequence raw{{1.0, 0.0, 1.0, 0.0, 9.0}, {}};
    const auto rho = reconstruct_density(raw, HermiteBasis{0.0, std::sqrt(2.0), 4});
    CHECK(rho.flagged());
    REQUIRE_FALSE(rho.negative_intervals().empty());
    const auto iv = rho.negative_intervals().front();
    CHECK(rho(0.5 * (iv.lo + iv.hi)) < 0.0);
  }
}

TEST_CASE("sampled phase integrates the phase derivative") {
  const HbarContext ctx{1.0, 1.0};
  const SecondOrderState st{0.0, 2.0, 0.25, 0.0, 1.0};
  const auto phase = rebuild(gaussian_raw(st, 2), HermiteBasis::centered_on(st, 2), ctx);
  const auto rows = sample(phase, -1.0, 1.0, 21);
  REQUIRE(rows.size() == 21);
  CHECK(rows.front().theta == 0.0);
  // Uncorrelated packet: theta' = p / hbar everywhere.
  CHECK(rows.back().theta == doctest::Approx(2.0 * 2.0).epsilon(1e-10));
}

TEST_CASE("Gaussian parameters") {
  const HbarContext ctx{0.9, 1.0};
  const SecondOrderState st{0.3, -0.4, 0.2, 0.05, (0.25 * 0.81 + 0.0025) / 0.2};
  const auto g = gaussian_from_moments(st, ctx);
  CHECK(g.pure);
  CHECK(g.a == doctest::Approx(1.0 / 0.8));
  for (double x : {-1.0, 0.3, 1.4}) {
    const Complex want = gaussian_template(st, 0.0, ctx, x);
    CHECK(std::abs(g(x) - want) < 1e-13);
    CHECK(std::abs(g.dx(x) - gaussian_template_dx(st, 0.0, ctx, x)) < 1e-12);
  }
  // Normalized.
  boost::math::quadrature::sinh_sinh<double> ss;
  CHECK(ss.integrate([&](double x) { return std::norm(g(x)); }) == doctest::Approx(1.0).epsilon(1e-12));

  SecondOrderState mixed = st;
  mixed.dpp *= 2.0;
  CHECK_FALSE(gaussian_from_moments(mixed, ctx).pure);
  SecondOrderState bad = st;
  bad.dpp *= 0.5;
  CHECK_THROWS_AS(gaussian_from_moments(bad, ctx), UncertaintyViolationError);
  bad = st;
  bad.dxx = 0.0;
  CHECK_THROWS_AS(gaussian_from_moments(bad, ctx), DegenerateStateError);
}

TEST_CASE("free packet solves the Schrodinger equation") {
  const HbarContext ctx{0.8, 1.0};
  const double mass = 1.5;
  const auto init = moments::minimal_gaussian(0.2, 0.9, 0.4, ctx);
  const double omega = std::sqrt(init.dpp / (mass * mass * init.dxx));
  CHECK(ctx.hbar == doctest::Approx(2 * mass * omega * init.dxx));

  for (double t : {0.0, 0.3, 1.7}) {
    const double h = 1e-4;
    const double rate = (global_phase_free(t + h, 0.9, mass, omega, ctx) - global_phase_free(t - h, 0.9, mass, omega, ctx)) / (2 * h);
    CHECK(global_phase_free_rate(t, 0.9, mass, omega, ctx) == doctest::Approx(rate).epsilon(1e-7));
  }

  const auto psi = free_packet(init, mass, ctx);
  const Complex i{0.0, 1.0};
  for (double t : {0.5, 2.0}) {
    for (double x : {-0.5, 0.4, 1.6}) {
      const double ht = 1e-5, hx = 1e-4;
      const Complex dt = (psi.value(x, t + ht) - psi.value(x, t - ht)) / (2 * ht);
      const Complex dxx = (psi.dx(x + hx, t) - psi.dx(x - hx, t)) / (2 * hx);
      const Complex residual = i * ctx.hbar * dt + ctx.hbar * ctx.hbar / (2 * mass) * dxx;
      CHECK(std::abs(residual) < 1e-6 * (1 + std::abs(psi.value(x, t))));
    }
  }
  // Initial value is the template.
  CHECK(std::abs(psi.value(0.7, 0.0) - gaussian_template(init, 0.0, ctx, 0.7)) < 1e-15);
}

TEST_CASE("accelerated frame: transformed free packet equals the falling packet") {
  const HbarContext ctx{1.0, 1.0};
  const double mass = 2.0, g = 3.0;
  const auto init = moments::minimal_gaussian(0.5, 1.0, 0.6, ctx);
  const auto falling = falling_packet(init, g, mass, ctx);
  const auto accelerated = nauenberg_transform(free_packet(init, mass, ctx), g, mass, ctx);
  for (double t : {0.0, 0.4, 1.3}) {
    const double center = 0.5 + 0.5 * t - 0.5 * g * t * t;
    for (double dz = -1.5; dz <= 1.5; dz += 0.5) {
      const double x = center + dz;
      CHECK(accelerated.density(x, t) == doctest::Approx(falling.density(x, t)).epsilon(1e-8));
      CHECK(accelerated.phase_derivative(x, t) == doctest::Approx(falling.phase_derivative(x, t)).epsilon(1e-8));
    }
  }
}
