#include "semigrav/phase.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "semigrav/errors.hpp"

namespace semigrav::experiments {

namespace {

constexpr double kQuadratureTol = 1e-11;
constexpr unsigned kMaxDepth = 12;

template <class F>
double integrate_piece(F&& f, double a, double b) {
  if (a == b) return 0.0;
  double err = 0.0;
  double l1 = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, kMaxDepth, kQuadratureTol,
                                                                                &err, &l1);
  if (!std::isfinite(v) || err > 1e-9 * std::max(1.0, l1)) {
    std::ostringstream os;
    os << "line integral on [" << a << ", " << b << "] did not converge (error estimate " << err << ")";
    throw QuadratureError(os.str());
  }
  return v;
}

// Integrates f(t) over [ta, tb] split at the trajectory's step boundaries.
template <class F>
double integrate_along(const dynamics::Trajectory& traj, double ta, double tb, F&& f) {
  if (ta == tb) return 0.0;
  if (tb < ta) return -integrate_along(traj, tb, ta, f);
  if (ta < traj.t_begin() || tb > traj.t_end())
    throw DomainError("phase: interval outside the integrated trajectory");
  std::vector<double> knots{ta};
  for (double t : traj.t)
    if (t > ta && t < tb) knots.push_back(t);
  knots.push_back(tb);
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) sum += integrate_piece(f, knots[i], knots[i + 1]);
  return sum;
}

}  // namespace

PathSegment PathSegment::straight(double x0, double t0, double x1, double t1) {
  PathSegment s;
  s.kind = SegmentKind::custom;
  s.tau0 = 0.0;
  s.tau1 = 1.0;
  s.point = [=](double tau) { return std::array<double, 2>{x0 + (x1 - x0) * tau, t0 + (t1 - t0) * tau}; };
  s.tangent = [=](double) { return std::array<double, 2>{x1 - x0, t1 - t0}; };
  return s;
}

PathSegment PathSegment::vertical(double x0, double x1, double t) {
  PathSegment s = straight(x0, t, x1, t);
  s.kind = SegmentKind::fixed_time_vertical;
  return s;
}

PathSegment PathSegment::com(const dynamics::Trajectory& traj, double t0, double t1) {
  if (t0 < traj.t_begin() || t1 > traj.t_end() || t0 > traj.t_end() || t1 < traj.t_begin())
    throw DomainError("PathSegment::com: interval outside the integrated trajectory");
  auto shared = std::make_shared<const dynamics::Trajectory>(traj);
  PathSegment s;
  s.kind = SegmentKind::com_trajectory;
  s.tau0 = t0;
  s.tau1 = t1;
  s.point = [shared](double t) { return std::array<double, 2>{shared->at(t).x, t}; };
  s.tangent = [shared](double t) { return std::array<double, 2>{shared->at(t).p / shared->mass, 1.0}; };
  const double lo = std::min(t0, t1);
  const double hi = std::max(t0, t1);
  for (double t : traj.t)
    if (t > lo && t < hi) s.breakpoints.push_back(t);
  if (t1 < t0) std::reverse(s.breakpoints.begin(), s.breakpoints.end());
  return s;
}

void PhasePath::validate(double tol) const {
  if (segments.empty()) throw ConfigError("PhasePath: no segments");
  for (const auto& s : segments)
    if (!s.point || !s.tangent) throw ConfigError("PhasePath: segment without parametrization");
  for (std::size_t i = 0; i + 1 < segments.size(); ++i) {
    const auto a = segments[i].end();
    const auto b = segments[i + 1].start();
    const double scale = std::max({1.0, std::abs(a[0]), std::abs(a[1])});
    if (std::abs(a[0] - b[0]) > tol * scale || std::abs(a[1] - b[1]) > tol * scale) {
      std::ostringstream os;
      os << "PhasePath: segment " << i << " ends at (" << a[0] << ", " << a[1] << ") but segment " << i + 1
         << " starts at (" << b[0] << ", " << b[1] << ")";
      throw ConfigError(os.str());
    }
  }
}

double phase_line_integral(const PhasePath& path, const PhasePartials& partials) {
  path.validate();
  if (!partials.dx || !partials.dt) throw ConfigError("phase_line_integral: both partials are required");
  double total = 0.0;
  for (const auto& seg : path.segments) {
    auto integrand = [&](double tau) {
      const auto p = seg.point(tau);
      const auto d = seg.tangent(tau);
      double v = 0.0;
      if (d[0] != 0.0) v += partials.dx(p[0], p[1]) * d[0];
      if (d[1] != 0.0) v += partials.dt(p[0], p[1]) * d[1];
      return v;
    };
    std::vector<double> knots{seg.tau0};
    knots.insert(knots.end(), seg.breakpoints.begin(), seg.breakpoints.end());
    knots.push_back(seg.tau1);
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) total += integrate_piece(integrand, knots[i], knots[i + 1]);
  }
  return total;
}

PhasePartials linear_potential_partials(double g, double mass, double p0, const moments::HbarContext& ctx) {
  ctx.validate();
  const double hbar = ctx.hbar;
  PhasePartials out;
  out.dx = [=](double, double t) { return (p0 - mass * g * t) / hbar; };
  out.dt = [=](double x, double t) {
    const double p = p0 - mass * g * t;
    return -mass * g * x / hbar - p * p / (2.0 * mass * hbar);
  };
  return out;
}

double packet_phase_dx(const moments::CanonicalState& c, double x, const moments::HbarContext& ctx) {
  double v = c.p / ctx.hbar;
  // Delta(xp) / Delta(x^2) = p_s / s
  if (c.s > 0.0) v += (x - c.x) * c.ps / (c.s * ctx.hbar);
  return v;
}

double propagation_phase_plane_wave(const dynamics::Trajectory& traj, const dynamics::PotentialModel& pot,
                                    double mass, const moments::HbarContext& ctx, double ta, double tb) {
  ctx.validate();
  return integrate_along(traj, ta, tb, [&](double t) {
           const auto c = traj.at(t);
           return c.p * (c.p / mass) - dynamics::classical_energy(c.x, c.p, pot, mass);
         }) /
         ctx.hbar;
}

double propagation_phase_plane_wave(const dynamics::Trajectory& traj, const dynamics::PotentialModel& pot,
                                    double mass, const moments::HbarContext& ctx) {
  return propagation_phase_plane_wave(traj, pot, mass, ctx, traj.t_begin(), traj.t_end());
}

double propagation_phase_second_order(const dynamics::Trajectory& traj, const dynamics::PotentialModel& pot,
                                      double mass, const moments::HbarContext& ctx, double ta, double tb,
                                      bool include_width_sector) {
  if (!include_width_sector) return propagation_phase_plane_wave(traj, pot, mass, ctx, ta, tb);
  ctx.validate();
  return integrate_along(traj, ta, tb, [&](double t) {
           const auto c = traj.at(t);
           return c.p * (c.p / mass) + c.ps * (c.ps / mass) - dynamics::effective_hamiltonian(c, pot, mass);
         }) /
         ctx.hbar;
}

double propagation_phase_second_order(const dynamics::Trajectory& traj, const dynamics::PotentialModel& pot,
                                      double mass, const moments::HbarContext& ctx, bool include_width_sector) {
  return propagation_phase_second_order(traj, pot, mass, ctx, traj.t_begin(), traj.t_end(), include_width_sector);
}

}  // namespace semigrav::experiments
