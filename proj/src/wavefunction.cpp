#include "semigrav/wavefunction.hpp"

#include <cmath>
#include <numbers>

#include "semigrav/dynamics.hpp"
#include "semigrav/errors.hpp"

namespace semigrav::reconstruct {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_width(const moments::SecondOrderState& s, const char* who) {
  if (!(s.dxx > 0.0)) throw DegenerateStateError(std::string(who) + ": Delta(x^2) must be positive");
}

// Exponent of the template and its x-derivative.
Complex template_exponent(const moments::SecondOrderState& s, double gamma, double hbar, double x) {
  const double d = x - s.x_mean;
  const Complex quad = -(d * d) / (4.0 * s.dxx) * Complex(1.0, -2.0 * s.dxp / hbar);
  return quad + kI * (s.p_mean * x / hbar + gamma) - 0.25 * std::log(2.0 * std::numbers::pi * s.dxx);
}

Complex template_exponent_dx(const moments::SecondOrderState& s, double hbar, double x) {
  const double d = x - s.x_mean;
  return -d / (2.0 * s.dxx) * Complex(1.0, -2.0 * s.dxp / hbar) + kI * (s.p_mean / hbar);
}

}  // namespace

Complex GaussianParameters::operator()(double x) const {
  return std::exp(-Complex(a, alpha) * x * x + Complex(b, beta) * x + Complex(c, gamma));
}

Complex GaussianParameters::dx(double x) const {
  return (-2.0 * Complex(a, alpha) * x + Complex(b, beta)) * (*this)(x);
}

GaussianParameters gaussian_from_moments(const moments::SecondOrderState& s, const moments::HbarContext& ctx) {
  ctx.validate();
  require_width(s, "gaussian_from_moments");
  const double hbar = ctx.hbar;
  const double pure_u = 0.25 * hbar * hbar;
  const double u = moments::casimir(s);
  if (u < pure_u * (1.0 - moments::kUncertaintyClampTolerance))
    throw UncertaintyViolationError("gaussian_from_moments: Delta(x^2) Delta(p^2) - Delta(xp)^2 below hbar^2/4");

  GaussianParameters g;
  g.a = 1.0 / (4.0 * s.dxx);
  g.b = s.x_mean / (2.0 * s.dxx);
  g.alpha = -s.dxp / (2.0 * s.dxx * hbar);
  g.beta = s.p_mean / hbar - s.dxp * s.x_mean / (s.dxx * hbar);
  g.c = -g.b * g.b / (4.0 * g.a) + 0.25 * std::log(2.0 * g.a / std::numbers::pi);
  g.gamma = s.x_mean * s.x_mean * s.dxp / (2.0 * s.dxx * hbar);
  g.casimir_excess = u - pure_u;
  g.pure = std::abs(u - pure_u) <= moments::kUncertaintyClampTolerance * pure_u;
  return g;
}

Complex gaussian_template(const moments::SecondOrderState& s, double gamma, const moments::HbarContext& ctx,
                          double x) {
  require_width(s, "gaussian_template");
  return std::exp(template_exponent(s, gamma, ctx.hbar, x));
}

Complex gaussian_template_dx(const moments::SecondOrderState& s, double gamma, const moments::HbarContext& ctx,
                             double x) {
  return template_exponent_dx(s, ctx.hbar, x) * gaussian_template(s, gamma, ctx, x);
}

WaveFunction gaussian_packet(std::function<moments::SecondOrderState(double)> moments_at,
                             std::function<double(double)> gamma_at, const moments::HbarContext& ctx) {
  ctx.validate();
  if (!gamma_at) gamma_at = [](double) { return 0.0; };
  WaveFunction wf;
  wf.value = [=](double x, double t) { return gaussian_template(moments_at(t), gamma_at(t), ctx, x); };
  wf.dx = [=](double x, double t) { return gaussian_template_dx(moments_at(t), gamma_at(t), ctx, x); };
  return wf;
}

double global_phase_free(double t, double p0, double mass, double omega_sigma, const moments::HbarContext& ctx) {
  if (!(omega_sigma >= 0.0)) throw DomainError("global_phase_free: omega_sigma must be non-negative");
  return -p0 * p0 * t / (2.0 * mass * ctx.hbar) - 0.5 * std::atan(omega_sigma * t);
}

double global_phase_free_rate(double t, double p0, double mass, double omega_sigma, const moments::HbarContext& ctx) {
  const double wt = omega_sigma * t;
  return -p0 * p0 / (2.0 * mass * ctx.hbar) - 0.5 * omega_sigma / (1.0 + wt * wt);
}

WaveFunction free_packet(const moments::SecondOrderState& initial, double mass, const moments::HbarContext& ctx) {
  ctx.validate();
  require_width(initial, "free_packet");
  if (std::abs(initial.dxp) > 1e-12 * std::sqrt(initial.dxx * initial.dpp))
    throw DomainError("free_packet: the initial packet must have Delta(xp) = 0");
  const auto g = gaussian_from_moments(initial, ctx);
  if (!g.pure) throw DomainError("free_packet: the initial moments do not describe a pure Gaussian");
  const double omega = dynamics::spreading_frequency(initial, mass);
  const double p0 = initial.p_mean;
  return gaussian_packet([=](double t) { return dynamics::closed_form_free(initial, mass, t); },
                         [=](double t) { return global_phase_free(t, p0, mass, omega, ctx); }, ctx);
}

WaveFunction falling_packet(const moments::SecondOrderState& initial, double g, double mass,
                            const moments::HbarContext& ctx) {
  require_width(initial, "falling_packet");
  return gaussian_packet([=](double t) { return dynamics::closed_form_linear(initial, g, mass, t); }, {}, ctx);
}

WaveFunction nauenberg_transform(const WaveFunction& phi, double a, double mass, const moments::HbarContext& ctx) {
  ctx.validate();
  const double hbar = ctx.hbar;
  auto factor = [=](double x, double t) { return std::exp(-kI * (mass * a * t * (x + a * t * t / 6.0) / hbar)); };
  WaveFunction psi;
  psi.value = [=](double x, double t) { return phi.value(x + 0.5 * a * t * t, t) * factor(x, t); };
  psi.dx = [=](double x, double t) {
    const double xs = x + 0.5 * a * t * t;
    return (phi.dx(xs, t) - kI * (mass * a * t / hbar) * phi.value(xs, t)) * factor(x, t);
  };
  return psi;
}

}  // namespace semigrav::reconstruct
