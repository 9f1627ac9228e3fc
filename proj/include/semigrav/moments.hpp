#pragma once

// Moment-state data model for one degree of freedom truncated at second order.
//
// Coordinates are the expectation values <x>, <p> and the Weyl-ordered
// central moments Delta(x^2), Delta(xp), Delta(p^2). The canonical chart
// (x, p, s, p_s; U) is related by
//
//   Delta(x^2) = s^2,  Delta(xp) = s p_s,  Delta(p^2) = p_s^2 + U / s^2,
//
// with U = Delta(x^2) Delta(p^2) - Delta(xp)^2 a Casimir of the truncated
// Poisson bracket.

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace semigrav::moments {

// Relative slack below lambda*hbar^2/4 that is clamped instead of rejected.
inline constexpr double kUncertaintyClampTolerance = 1e-9;
// Relative eigenvalue tolerance for the Hankel positivity test.
inline constexpr double kHankelTolerance = 1e-12;

struct HbarContext {
  double hbar = 1.0;
  double lambda = 1.0;

  // lambda * hbar^2 / 4
  double minimal_casimir() const { return lambda * hbar * hbar / 4.0; }
  // Throws ConfigError unless hbar > 0 and lambda >= 1.
  void validate() const;
};

struct SecondOrderState {
  double x_mean = 0.0;
  double p_mean = 0.0;
  double dxx = 0.0;
  double dxp = 0.0;
  double dpp = 0.0;
};

struct CanonicalState {
  double x = 0.0;
  double p = 0.0;
  double s = 0.0;
  double ps = 0.0;
  double u_casimir = 0.0;

  // u = 0, s = 0, p_s = 0: classical point particle.
  bool is_point_particle() const { return u_casimir == 0.0 && s == 0.0 && ps == 0.0; }
};

CanonicalState point_particle(double x, double p);

// Minimal-uncertainty Gaussian with width sigma and Delta(xp) = 0.
SecondOrderState minimal_gaussian(double x_mean, double p_mean, double sigma, const HbarContext& ctx);

// <x^0> ... <x^N>, optionally with Re<x^n p> for n = 0 ... M.
struct RawMomentSequence {
  std::vector<double> moments;
  std::vector<double> mixed;

  std::size_t order() const { return moments.empty() ? 0 : moments.size() - 1; }
};

// Central moments of the position marginal: values[a] = Delta(x^a) with
// values[0] = 1 and values[1] = 0.
struct CentralMoments {
  double mean = 0.0;
  std::vector<double> values;
};

CentralMoments central_from_raw(const RawMomentSequence& raw);
RawMomentSequence raw_from_central(const CentralMoments& central);

// Means plus the central moments that enter Re<x^n p>.
//   x_central[a]  = Delta(x^a),   x_central[0] = 1, x_central[1] = 0
//   xp_central[a] = Delta(x^a p), xp_central[0] = 0
struct MomentData {
  double x_mean = 0.0;
  double p_mean = 0.0;
  std::vector<double> x_central;
  std::vector<double> xp_central;
};

// Second-order truncation: Delta(x^2 p) is third order and set to zero.
MomentData moment_data(const SecondOrderState& state);

// Moments of the Gaussian Wigner function with the given second-order data,
// carried to order N in both sequences.
MomentData gaussian_moment_data(const SecondOrderState& state, std::size_t order);

// Re<x^n p>, equal to the Weyl-symmetric raw moment <x^n p>_symm.
double symmetric_mixed_from_central(const MomentData& data, std::size_t n);

// Raw position moments <x^0..x^N> and Re<x^n p> for n = 0..N.
RawMomentSequence raw_sequence(const MomentData& data, std::size_t order);

double casimir(const SecondOrderState& state);

CanonicalState to_canonical(const SecondOrderState& state, const HbarContext& ctx);
SecondOrderState from_canonical(const CanonicalState& state);

struct HankelResult {
  bool positive = false;
  // Smallest eigenvalue over all tested Hankel matrices, unscaled.
  double min_eigenvalue = 0.0;
  // Smallest eigenvalue after unit-diagonal scaling; this decides the test.
  double min_scaled_eigenvalue = 0.0;
  // Size of the first failing matrix, 0 when all pass.
  std::size_t failing_size = 0;
};

// Tests H_k = (m_{i+j}), i, j < k, for every k with 2(k-1) <= N.
HankelResult hankel_psd_check(const RawMomentSequence& raw);

struct CentralMixedMoment {
  int x_power = 0;
  int p_power = 0;
  double value = 0.0;
};

// Scales that turn the asymptotic O(hbar^{(a+b)/2}) condition into an inequality.
struct HierarchyScales {
  std::optional<double> length;
  std::optional<double> momentum;
};

// |Delta(x^a p^b)| <= c_max * hbar^{(a+b)/2} * L^a * P^b for every entry.
bool hierarchy_check(std::span<const CentralMixedMoment> moments, const HbarContext& ctx, double c_max,
                     const HierarchyScales& scales);
bool hierarchy_check(const SecondOrderState& state, const HbarContext& ctx, double c_max,
                     const HierarchyScales& scales);

// Poisson structure on (x, p, dxx, dxp, dpp).
using Coordinates = std::array<double, 5>;
using PoissonTensor = std::array<std::array<double, 5>, 5>;

Coordinates to_coordinates(const SecondOrderState& state);
SecondOrderState from_coordinates(const Coordinates& z);

PoissonTensor poisson_tensor(const SecondOrderState& state);

// {f, g} = grad f . J(z) . grad g
double bracket(const Coordinates& grad_f, const Coordinates& grad_g, const SecondOrderState& state);

}  // namespace semigrav::moments
