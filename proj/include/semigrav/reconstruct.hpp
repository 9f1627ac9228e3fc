#pragma once

// Wave-function data from moments via a generalized Hermite expansion.
//
// Basis convention: weight w(x) = exp(-(x - m)^2 / alpha^2) and
// L_n(x) = H_n((x - m) / alpha) (physicists' Hermite), so that
//   int w L_n L_k dx = N_n delta_nk,   N_n = alpha sqrt(pi) 2^n n!.
// The density is rho = w sum_n <L_n> L_n / N_n and the phase derivative
// follows from hbar rho theta' = w sum_n Re<L_n p> L_n / N_n.
// With m = <x> and alpha^2 = 2 Delta(x^2) the second-order expansion of a
// Gaussian moment set is exactly the Gaussian density.

#include <cstddef>
#include <vector>

#include "semigrav/moments.hpp"

namespace semigrav::reconstruct {

using moments::HbarContext;
using moments::RawMomentSequence;
using moments::SecondOrderState;

// Relative level below which the density polynomial factor counts as negative.
inline constexpr double kNegativeDensityTolerance = 1e-10;
// Relative floor of the density polynomial factor for phase evaluation.
inline constexpr double kDensityFloor = 1e-12;

struct HermiteBasis {
  double center = 0.0;
  double alpha = 1.0;
  std::size_t order = 2;

  // m = <x>, alpha^2 = 2 Delta(x^2)
  static HermiteBasis centered_on(const SecondOrderState& state, std::size_t order);

  void validate() const;
  double weight(double x) const;
  double normalization(std::size_t n) const;
  // H_n((x - m)/alpha) by the three-term recurrence.
  double polynomial(std::size_t n, double x) const;
  // All L_0..L_order at x.
  std::vector<double> polynomials(double x) const;
  // u_n = sqrt(w) L_n / sqrt(N_n)
  double basis_function(std::size_t n, double x) const;
  // l[n][k]: coefficient of x^k in L_n(x).
  std::vector<std::vector<double>> coefficient_table() const;
};

struct NegativeInterval {
  double lo = 0.0;
  double hi = 0.0;
};

class ReconstructedDensity {
 public:
  ReconstructedDensity(HermiteBasis basis, std::vector<double> coeffs, double validity_lo, double validity_hi);

  double operator()(double x) const;
  // sum_n c_n L_n(x), so that rho = w * factor.
  double polynomial_factor(double x) const;

  const HermiteBasis& basis() const { return basis_; }
  // c_n = <L_n> / N_n
  const std::vector<double>& coefficients() const { return coeffs_; }
  double validity_lo() const { return lo_; }
  double validity_hi() const { return hi_; }
  // Truncation artifacts: rho < 0 somewhere on the validity interval.
  bool flagged() const { return !negative_.empty(); }
  const std::vector<NegativeInterval>& negative_intervals() const { return negative_; }

 private:
  HermiteBasis basis_;
  std::vector<double> coeffs_;
  double lo_;
  double hi_;
  std::vector<NegativeInterval> negative_;
};

class PhaseDerivative {
 public:
  PhaseDerivative(ReconstructedDensity density, std::vector<double> coeffs, double hbar);

  // d theta / dx; throws DomainError where the density factor is below floor.
  double operator()(double x) const;

  const ReconstructedDensity& density() const { return density_; }
  // d_n = Re<L_n p> / N_n
  const std::vector<double>& coefficients() const { return coeffs_; }
  double hbar() const { return hbar_; }

 private:
  ReconstructedDensity density_;
  std::vector<double> coeffs_;
  double hbar_;
};

struct ReconstructedState {
  std::vector<double> density_coeffs;
  std::vector<double> phase_deriv_coeffs;
  double theta0 = 0.0;
  // The global phase is a gauge choice; moments do not fix it.
  bool theta0_is_gauge = true;
};

// Throws NoRepresentingDistributionError when the Hankel test fails.
ReconstructedDensity reconstruct_density(const RawMomentSequence& raw, const HermiteBasis& basis);

// Uses Re<x^n p> from raw.mixed up to the basis order (or as many as given).
PhaseDerivative reconstruct_phase_derivative(const RawMomentSequence& raw, const ReconstructedDensity& density,
                                             const HbarContext& ctx);

ReconstructedState reconstructed_state(const PhaseDerivative& phase);

// int x^k rho dx, k = 0..k_max, by Gauss-Hermite quadrature.
std::vector<double> quadrature_moments(const ReconstructedDensity& density, std::size_t k_max);

// hbar int x^n rho theta' dx, n = 0..n_max: recovers Re<x^n p>.
std::vector<double> quadrature_mixed_moments(const PhaseDerivative& phase, std::size_t n_max);

// max |int u_n u_k dx - delta_nk| over n, k <= order.
double orthonormality_error(const HermiteBasis& basis);

struct SampleRow {
  double x = 0.0;
  double rho = 0.0;
  double dtheta_dx = 0.0;
  double theta = 0.0;
};

// theta by cumulative integration of theta' from x0 with theta(x0) = 0.
std::vector<SampleRow> sample(const PhaseDerivative& phase, double x0, double x1, std::size_t points);

}  // namespace semigrav::reconstruct
