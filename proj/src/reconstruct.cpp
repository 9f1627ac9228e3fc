#include "semigrav/reconstruct.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "semigrav/errors.hpp"
#include "semigrav/quadrature.hpp"

namespace semigrav::reconstruct {

namespace {

double binomial(std::size_t n, std::size_t k) {
  double c = 1.0;
  for (std::size_t i = 1; i <= k; ++i) c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
  return c;
}

// Coefficients of H_n(y) in powers of y.
std::vector<std::vector<double>> hermite_power_table(std::size_t order) {
  std::vector<std::vector<double>> h(order + 1, std::vector<double>(order + 1, 0.0));
  h[0][0] = 1.0;
  if (order >= 1) h[1][1] = 2.0;
  for (std::size_t n = 1; n < order; ++n)
    for (std::size_t j = 0; j <= n + 1; ++j) {
      double v = 0.0;
      if (j >= 1) v += 2.0 * h[n][j - 1];
      v -= 2.0 * static_cast<double>(n) * h[n - 1][j];
      h[n + 1][j] = v;
    }
  return h;
}

}  // namespace

HermiteBasis HermiteBasis::centered_on(const SecondOrderState& state, std::size_t order) {
  if (!(state.dxx > 0.0)) throw DegenerateStateError("HermiteBasis: Delta(x^2) must be positive");
  return HermiteBasis{state.x_mean, std::sqrt(2.0 * state.dxx), order};
}

void HermiteBasis::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ConfigError("HermiteBasis: alpha must be positive");
  if (!std::isfinite(center)) throw ConfigError("HermiteBasis: center must be finite");
}

double HermiteBasis::weight(double x) const {
  const double y = (x - center) / alpha;
  return std::exp(-y * y);
}

double HermiteBasis::normalization(std::size_t n) const {
  double v = alpha * std::sqrt(std::numbers::pi);
  for (std::size_t k = 1; k <= n; ++k) v *= 2.0 * static_cast<double>(k);
  return v;
}

std::vector<double> HermiteBasis::polynomials(double x) const {
  const double y = (x - center) / alpha;
  std::vector<double> l(order + 1);
  l[0] = 1.0;
  if (order >= 1) l[1] = 2.0 * y;
  for (std::size_t n = 1; n < order; ++n) l[n + 1] = 2.0 * y * l[n] - 2.0 * static_cast<double>(n) * l[n - 1];
  return l;
}

double HermiteBasis::polynomial(std::size_t n, double x) const {
  HermiteBasis b = *this;
  b.order = n;
  return b.polynomials(x)[n];
}

double HermiteBasis::basis_function(std::size_t n, double x) const {
  // Far tails: the weight underflows before the polynomial overflows.
  const double w = weight(x);
  if (w == 0.0) return 0.0;
  return std::sqrt(w / normalization(n)) * polynomial(n, x);
}

std::vector<std::vector<double>> HermiteBasis::coefficient_table() const {
  const auto h = hermite_power_table(order);
  std::vector<std::vector<double>> l(order + 1, std::vector<double>(order + 1, 0.0));
  // y^j = (x - m)^j / alpha^j
  for (std::size_t n = 0; n <= order; ++n)
    for (std::size_t j = 0; j <= n; ++j) {
      if (h[n][j] == 0.0) continue;
      const double scale = h[n][j] / std::pow(alpha, static_cast<double>(j));
      for (std::size_t k = 0; k <= j; ++k)
        l[n][k] += scale * binomial(j, k) * std::pow(-center, static_cast<double>(j - k));
    }
  return l;
}

ReconstructedDensity::ReconstructedDensity(HermiteBasis basis, std::vector<double> coeffs, double validity_lo,
                                           double validity_hi)
    : basis_(basis), coeffs_(std::move(coeffs)), lo_(validity_lo), hi_(validity_hi) {
  constexpr std::size_t kScan = 2001;
  const double tol = -kNegativeDensityTolerance * std::abs(coeffs_.front());
  bool inside = false;
  double start = lo_;
  double prev_x = lo_;
  for (std::size_t i = 0; i < kScan; ++i) {
    const double x = lo_ + (hi_ - lo_) * static_cast<double>(i) / static_cast<double>(kScan - 1);
    const bool neg = polynomial_factor(x) < tol;
    if (neg && !inside) {
      inside = true;
      start = i == 0 ? x : prev_x;
    } else if (!neg && inside) {
      inside = false;
      negative_.push_back({start, x});
    }
    prev_x = x;
  }
  if (inside) negative_.push_back({start, hi_});
}

double ReconstructedDensity::polynomial_factor(double x) const {
  const auto l = basis_.polynomials(x);
  double sum = 0.0;
  for (std::size_t n = 0; n < coeffs_.size(); ++n) sum += coeffs_[n] * l[n];
  return sum;
}

double ReconstructedDensity::operator()(double x) const {
  const double w = basis_.weight(x);
  return w == 0.0 ? 0.0 : w * polynomial_factor(x);
}

PhaseDerivative::PhaseDerivative(ReconstructedDensity density, std::vector<double> coeffs, double hbar)
    : density_(std::move(density)), coeffs_(std::move(coeffs)), hbar_(hbar) {}

double PhaseDerivative::operator()(double x) const {
  const double factor = density_.polynomial_factor(x);
  if (!(factor > kDensityFloor * std::abs(density_.coefficients().front())))
    throw DomainError("phase derivative evaluated where the reconstructed density vanishes (x = " +
                      std::to_string(x) + ")");
  const auto l = density_.basis().polynomials(x);
  double sum = 0.0;
  for (std::size_t n = 0; n < coeffs_.size(); ++n) sum += coeffs_[n] * l[n];
  return sum / (hbar_ * factor);
}

ReconstructedDensity reconstruct_density(const RawMomentSequence& raw, const HermiteBasis& basis) {
  basis.validate();
  if (raw.moments.empty() || raw.moments[0] != 1.0)
    throw DomainError("reconstruct_density: raw moments must start with <x^0> = 1");
  if (raw.order() < basis.order)
    throw UnsupportedOrderError("reconstruct_density: basis order " + std::to_string(basis.order) +
                                " exceeds the supplied moment order " + std::to_string(raw.order()));

  RawMomentSequence truncated;
  truncated.moments.assign(raw.moments.begin(), raw.moments.begin() + static_cast<long>(basis.order) + 1);
  if (basis.order >= 2) {
    const auto hankel = moments::hankel_psd_check(truncated);
    if (!hankel.positive)
      throw NoRepresentingDistributionError("reconstruct_density: Hankel matrix of size " +
                                            std::to_string(hankel.failing_size) + " is not positive");
  }

  const auto l = basis.coefficient_table();
  std::vector<double> coeffs(basis.order + 1, 0.0);
  for (std::size_t n = 0; n <= basis.order; ++n) {
    double expectation = 0.0;
    for (std::size_t k = 0; k <= n; ++k) expectation += l[n][k] * truncated.moments[k];
    coeffs[n] = expectation / basis.normalization(n);
  }

  const double mean = raw.order() >= 1 ? raw.moments[1] : basis.center;
  double sigma = basis.alpha / std::sqrt(2.0);
  if (raw.order() >= 2) {
    const double var = raw.moments[2] - mean * mean;
    if (var > 0.0) sigma = std::sqrt(var);
  }
  return ReconstructedDensity(basis, std::move(coeffs), mean - 6.0 * sigma, mean + 6.0 * sigma);
}

PhaseDerivative reconstruct_phase_derivative(const RawMomentSequence& raw, const ReconstructedDensity& density,
                                             const HbarContext& ctx) {
  ctx.validate();
  if (raw.mixed.empty())
    throw UnsupportedOrderError("reconstruct_phase_derivative: at least Re<p> is required");
  const auto& basis = density.basis();
  const std::size_t order = std::min(basis.order, raw.mixed.size() - 1);
  const auto l = basis.coefficient_table();
  std::vector<double> coeffs(order + 1, 0.0);
  for (std::size_t n = 0; n <= order; ++n) {
    double expectation = 0.0;
    for (std::size_t k = 0; k <= n; ++k) expectation += l[n][k] * raw.mixed[k];
    coeffs[n] = expectation / basis.normalization(n);
  }
  return PhaseDerivative(density, std::move(coeffs), ctx.hbar);
}

ReconstructedState reconstructed_state(const PhaseDerivative& phase) {
  return ReconstructedState{phase.density().coefficients(), phase.coefficients(), 0.0, true};
}

namespace {

// int f(x) w(x) dx with w the basis weight, for polynomial f.
template <class F>
double weighted_integral(const HermiteBasis& basis, std::size_t degree, F&& f) {
  const std::size_t nodes = std::max(quadrature::moment_node_count(basis.order), degree / 2 + 1);
  const auto rule = quadrature::gauss_hermite(nodes);
  double sum = 0.0;
  for (std::size_t i = 0; i < nodes; ++i) sum += rule.weights[i] * f(basis.center + basis.alpha * rule.nodes[i]);
  return basis.alpha * sum;
}

}  // namespace

std::vector<double> quadrature_moments(const ReconstructedDensity& density, std::size_t k_max) {
  const auto& basis = density.basis();
  std::vector<double> out(k_max + 1);
  for (std::size_t k = 0; k <= k_max; ++k)
    out[k] = weighted_integral(basis, k + basis.order, [&](double x) {
      return std::pow(x, static_cast<double>(k)) * density.polynomial_factor(x);
    });
  return out;
}

std::vector<double> quadrature_mixed_moments(const PhaseDerivative& phase, std::size_t n_max) {
  const auto& basis = phase.density().basis();
  const auto& d = phase.coefficients();
  std::vector<double> out(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n)
    out[n] = weighted_integral(basis, n + basis.order, [&](double x) {
      const auto l = basis.polynomials(x);
      double s = 0.0;
      for (std::size_t j = 0; j < d.size(); ++j) s += d[j] * l[j];
      return std::pow(x, static_cast<double>(n)) * s;
    });
  return out;
}

double orthonormality_error(const HermiteBasis& basis) {
  basis.validate();
  double worst = 0.0;
  for (std::size_t n = 0; n <= basis.order; ++n)
    for (std::size_t k = 0; k <= basis.order; ++k) {
      const double v = weighted_integral(basis, n + k, [&](double x) {
        return basis.polynomial(n, x) * basis.polynomial(k, x) /
               std::sqrt(basis.normalization(n) * basis.normalization(k));
      });
      worst = std::max(worst, std::abs(v - (n == k ? 1.0 : 0.0)));
    }
  return worst;
}

std::vector<SampleRow> sample(const PhaseDerivative& phase, double x0, double x1, std::size_t points) {
  if (points < 2) throw ConfigError("sample: need at least two points");
  if (!(x1 > x0)) throw ConfigError("sample: need x1 > x0");
  std::vector<SampleRow> rows;
  rows.reserve(points);
  double theta = 0.0;
  double prev = x0;
  for (std::size_t i = 0; i < points; ++i) {
    const double x = x0 + (x1 - x0) * static_cast<double>(i) / static_cast<double>(points - 1);
    if (i > 0) theta += boost::math::quadrature::gauss<double, 10>::integrate(phase, prev, x);
    rows.push_back(SampleRow{x, phase.density()(x), phase(x), theta});
    prev = x;
  }
  return rows;
}

}  // namespace semigrav::reconstruct
