#include "semigrav/moments.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "semigrav/errors.hpp"

namespace semigrav::moments {

namespace {

double binomial(std::size_t n, std::size_t k) {
  double c = 1.0;
  for (std::size_t i = 1; i <= k; ++i) c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
  return c;
}

// (k-1)!! for even k, the Gaussian central moment factor.
double double_factorial_odd(std::size_t k) {
  double r = 1.0;
  for (std::size_t j = k; j > 1; j -= 2) r *= static_cast<double>(j - 1);
  return r;
}

}  // namespace

void HbarContext::validate() const {
  if (!(hbar > 0.0) || !std::isfinite(hbar)) throw ConfigError("hbar must be positive, got " + std::to_string(hbar));
  if (!(lambda >= 1.0)) throw ConfigError("lambda must be >= 1, got " + std::to_string(lambda));
}

CanonicalState point_particle(double x, double p) { return CanonicalState{x, p, 0.0, 0.0, 0.0}; }

SecondOrderState minimal_gaussian(double x_mean, double p_mean, double sigma, const HbarContext& ctx) {
  if (!(sigma > 0.0)) throw DegenerateStateError("minimal_gaussian: sigma must be positive");
  const double dxx = sigma * sigma;
  return SecondOrderState{x_mean, p_mean, dxx, 0.0, ctx.minimal_casimir() / dxx};
}

CentralMoments central_from_raw(const RawMomentSequence& raw) {
  if (raw.moments.empty() || raw.moments[0] != 1.0)
    throw DomainError("central_from_raw: raw moment sequence must start with <x^0> = 1");
  if (raw.moments.size() < 2) throw DomainError("central_from_raw: need at least <x^1>");

  const auto& m = raw.moments;
  const double mean = m[1];
  CentralMoments out;
  out.mean = mean;
  out.values.assign(m.size(), 0.0);
  out.values[0] = 1.0;
  for (std::size_t a = 2; a < m.size(); ++a) {
    double sum = 0.0;
    for (std::size_t i = 0; i <= a; ++i) {
      const double sign = ((a - i) % 2 == 0) ? 1.0 : -1.0;
      sum += binomial(a, i) * sign * std::pow(mean, static_cast<double>(a - i)) * m[i];
    }
    out.values[a] = sum;
  }
  return out;
}

RawMomentSequence raw_from_central(const CentralMoments& central) {
  if (central.values.empty() || central.values[0] != 1.0)
    throw DomainError("raw_from_central: central moments must start with Delta(x^0) = 1");
  RawMomentSequence raw;
  const std::size_t n = std::max<std::size_t>(central.values.size(), 2);
  raw.moments.assign(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    double sum = 0.0;
    for (std::size_t i = 0; i <= k; ++i) {
      const double c = (i == 1) ? 0.0 : (i < central.values.size() ? central.values[i] : 0.0);
      sum += binomial(k, i) * std::pow(central.mean, static_cast<double>(k - i)) * c;
    }
    raw.moments[k] = sum;
  }
  raw.moments[0] = 1.0;
  return raw;
}

MomentData moment_data(const SecondOrderState& state) {
  return MomentData{state.x_mean, state.p_mean, {1.0, 0.0, state.dxx}, {0.0, state.dxp, 0.0}};
}

MomentData gaussian_moment_data(const SecondOrderState& state, std::size_t order) {
  MomentData d{state.x_mean, state.p_mean, {}, {}};
  d.x_central.assign(order + 1, 0.0);
  d.xp_central.assign(order + 1, 0.0);
  d.x_central[0] = 1.0;
  for (std::size_t a = 2; a <= order; a += 2)
    d.x_central[a] = double_factorial_odd(a) * std::pow(state.dxx, static_cast<double>(a) / 2.0);
  // Isserlis: E[y^a z] = a Cov(y, z) E[y^(a-1)]
  for (std::size_t a = 1; a <= order; a += 2)
    d.xp_central[a] = static_cast<double>(a) * state.dxp * (a >= 2 ? d.x_central[a - 1] : 1.0);
  return d;
}

double symmetric_mixed_from_central(const MomentData& data, std::size_t n) {
  if (data.x_central.size() <= n || data.xp_central.size() <= n)
    throw UnsupportedOrderError("symmetric_mixed_from_central: central moments up to order " + std::to_string(n) +
                                " (x^n and x^n p) are required");
  // x^n p = sum_i C(n,i) X^(n-i) (x-X)^i [(p-P) + P]; Weyl ordering is linear.
  double sum = 0.0;
  for (std::size_t i = 0; i <= n; ++i) {
    const double xi = (i == 1) ? 0.0 : data.x_central[i];
    const double xpi = (i == 0) ? 0.0 : data.xp_central[i];
    sum += binomial(n, i) * std::pow(data.x_mean, static_cast<double>(n - i)) * (xpi + data.p_mean * xi);
  }
  return sum;
}

RawMomentSequence raw_sequence(const MomentData& data, std::size_t order) {
  if (data.x_central.size() <= order)
    throw UnsupportedOrderError("raw_sequence: position central moments up to order " + std::to_string(order) +
                                " are required");
  CentralMoments c{data.x_mean, std::vector<double>(data.x_central.begin(), data.x_central.begin() + order + 1)};
  c.values[0] = 1.0;
  if (c.values.size() > 1) c.values[1] = 0.0;
  RawMomentSequence raw = raw_from_central(c);
  raw.moments.resize(order + 1);
  const std::size_t mixed_order = std::min(order, data.xp_central.size() - 1);
  raw.mixed.resize(mixed_order + 1);
  for (std::size_t n = 0; n <= mixed_order; ++n) raw.mixed[n] = symmetric_mixed_from_central(data, n);
  return raw;
}

double casimir(const SecondOrderState& state) { return state.dxx * state.dpp - state.dxp * state.dxp; }

CanonicalState to_canonical(const SecondOrderState& state, const HbarContext& ctx) {
  ctx.validate();
  if (!(state.dxx > 0.0))
    throw DegenerateStateError("to_canonical: Delta(x^2) must be positive, got " + std::to_string(state.dxx));
  const double s = std::sqrt(state.dxx);
  double u = casimir(state);
  const double u_min = ctx.minimal_casimir();
  if (u < u_min) {
    if (u < u_min * (1.0 - kUncertaintyClampTolerance))
      throw UncertaintyViolationError("to_canonical: Delta(x^2)Delta(p^2) - Delta(xp)^2 = " + std::to_string(u) +
                                      " below lambda*hbar^2/4 = " + std::to_string(u_min));
    u = u_min;
  }
  return CanonicalState{state.x_mean, state.p_mean, s, state.dxp / s, u};
}

SecondOrderState from_canonical(const CanonicalState& c) {
  if (c.is_point_particle()) return SecondOrderState{c.x, c.p, 0.0, 0.0, 0.0};
  if (!(c.s > 0.0)) throw DegenerateStateError("from_canonical: width s must be positive");
  return SecondOrderState{c.x, c.p, c.s * c.s, c.s * c.ps, c.ps * c.ps + c.u_casimir / (c.s * c.s)};
}

HankelResult hankel_psd_check(const RawMomentSequence& raw) {
  const auto& m = raw.moments;
  if (m.size() < 3) throw DomainError("hankel_psd_check: need moments up to order 2");

  HankelResult result;
  result.positive = true;
  result.min_eigenvalue = std::numeric_limits<double>::infinity();
  result.min_scaled_eigenvalue = std::numeric_limits<double>::infinity();

  const std::size_t max_size = (m.size() - 1) / 2 + 1;
  for (std::size_t k = 1; k <= max_size; ++k) {
    Eigen::MatrixXd h(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) h(i, j) = m[i + j];

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> plain(h, Eigen::EigenvaluesOnly);
    result.min_eigenvalue = std::min(result.min_eigenvalue, plain.eigenvalues().minCoeff());

    // Congruence with diag(1/sqrt(m_2i)) preserves definiteness and evens out scales.
    Eigen::VectorXd d(k);
    for (std::size_t i = 0; i < k; ++i) d(i) = h(i, i) > 0.0 ? 1.0 / std::sqrt(h(i, i)) : 1.0;
    const Eigen::MatrixXd scaled = d.asDiagonal() * h * d.asDiagonal();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(scaled, Eigen::EigenvaluesOnly);
    const double lo = solver.eigenvalues().minCoeff();
    const double norm = solver.eigenvalues().cwiseAbs().maxCoeff();
    result.min_scaled_eigenvalue = std::min(result.min_scaled_eigenvalue, lo);
    if (lo < -kHankelTolerance * norm && result.positive) {
      result.positive = false;
      result.failing_size = k;
    }
  }
  return result;
}

bool hierarchy_check(std::span<const CentralMixedMoment> moments, const HbarContext& ctx, double c_max,
                     const HierarchyScales& scales) {
  ctx.validate();
  if (!scales.length || !scales.momentum)
    throw ConfigError("hierarchy_check: both a length scale and a momentum scale are required");
  if (!(*scales.length > 0.0) || !(*scales.momentum > 0.0))
    throw ConfigError("hierarchy_check: scales must be positive");
  for (const auto& mm : moments) {
    const double bound = c_max * std::pow(ctx.hbar, 0.5 * (mm.x_power + mm.p_power)) *
                         std::pow(*scales.length, mm.x_power) * std::pow(*scales.momentum, mm.p_power);
    if (std::abs(mm.value) > bound) return false;
  }
  return true;
}

bool hierarchy_check(const SecondOrderState& state, const HbarContext& ctx, double c_max,
                     const HierarchyScales& scales) {
  const std::array<CentralMixedMoment, 3> entries{
      CentralMixedMoment{2, 0, state.dxx}, CentralMixedMoment{1, 1, state.dxp}, CentralMixedMoment{0, 2, state.dpp}};
  return hierarchy_check(entries, ctx, c_max, scales);
}

Coordinates to_coordinates(const SecondOrderState& s) { return {s.x_mean, s.p_mean, s.dxx, s.dxp, s.dpp}; }

SecondOrderState from_coordinates(const Coordinates& z) { return {z[0], z[1], z[2], z[3], z[4]}; }

PoissonTensor poisson_tensor(const SecondOrderState& s) {
  PoissonTensor j{};
  j[0][1] = 1.0;
  j[2][3] = 2.0 * s.dxx;
  j[3][4] = 2.0 * s.dpp;
  j[2][4] = 4.0 * s.dxp;
  for (std::size_t a = 0; a < 5; ++a)
    for (std::size_t b = 0; b < a; ++b) j[a][b] = -j[b][a];
  return j;
}

double bracket(const Coordinates& grad_f, const Coordinates& grad_g, const SecondOrderState& state) {
  const PoissonTensor j = poisson_tensor(state);
  double sum = 0.0;
  for (std::size_t a = 0; a < 5; ++a)
    for (std::size_t b = 0; b < 5; ++b) sum += grad_f[a] * j[a][b] * grad_g[b];
  return sum;
}

}  // namespace semigrav::moments
