#pragma once

// Gaussian wave functions built from second-order moments.
//
//   psi(x) = (2 pi Dxx)^(-1/4) exp[-(x - X)^2 / (4 Dxx) (1 - 2i Dxp / hbar) + i P x / hbar + i gamma]
//
// which equals exp(-(a + i alpha) x^2 + (b + i beta) x + c + i gamma') for the
// parameters returned by gaussian_from_moments, with gamma' = gamma + X^2 Dxp / (2 Dxx hbar).

#include <complex>
#include <functional>

#include "semigrav/moments.hpp"

namespace semigrav::reconstruct {

using Complex = std::complex<double>;

struct GaussianParameters {
  double a = 0.0;
  double b = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double c = 0.0;
  double gamma = 0.0;
  // U = hbar^2/4 within tolerance. Mixed moment sets (U larger) are not pure.
  bool pure = true;
  double casimir_excess = 0.0;

  Complex operator()(double x) const;
  Complex dx(double x) const;
};

// Throws DegenerateStateError for Delta(x^2) <= 0 and UncertaintyViolationError
// when U lies below hbar^2/4 beyond tolerance.
GaussianParameters gaussian_from_moments(const moments::SecondOrderState& state, const moments::HbarContext& ctx);

Complex gaussian_template(const moments::SecondOrderState& state, double gamma, const moments::HbarContext& ctx,
                          double x);
Complex gaussian_template_dx(const moments::SecondOrderState& state, double gamma, const moments::HbarContext& ctx,
                             double x);

// psi(x, t) together with its x-derivative.
struct WaveFunction {
  std::function<Complex(double, double)> value;
  std::function<Complex(double, double)> dx;

  double density(double x, double t) const { return std::norm(value(x, t)); }
  double phase_derivative(double x, double t) const { return std::imag(dx(x, t) / value(x, t)); }
};

// Template evaluated on a time-dependent moment solution and global phase.
WaveFunction gaussian_packet(std::function<moments::SecondOrderState(double)> moments_at,
                             std::function<double(double)> gamma_at, const moments::HbarContext& ctx);

// gamma(t) = -p0^2 t / (2 m hbar) - arctan(omega t) / 2, with gamma(0) = 0.
double global_phase_free(double t, double p0, double mass, double omega_sigma, const moments::HbarContext& ctx);
// d gamma / dt = -p0^2 / (2 m hbar) - omega / (2 (1 + omega^2 t^2))
double global_phase_free_rate(double t, double p0, double mass, double omega_sigma, const moments::HbarContext& ctx);

// Free Schrodinger solution from a pure packet with Delta(xp) = 0 at t = 0.
WaveFunction free_packet(const moments::SecondOrderState& initial, double mass, const moments::HbarContext& ctx);

// Packet in the uniform field Phi = g x: template on the closed-form moments
// with the x-independent phase left at zero.
WaveFunction falling_packet(const moments::SecondOrderState& initial, double g, double mass,
                            const moments::HbarContext& ctx);

// psi(x, t) = phi(x + a t^2/2, t) exp[-i m a t (x + a t^2/6) / hbar]
WaveFunction nauenberg_transform(const WaveFunction& phi, double a, double mass, const moments::HbarContext& ctx);

}  // namespace semigrav::reconstruct
