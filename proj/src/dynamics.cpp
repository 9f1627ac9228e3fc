#include "semigrav/dynamics.hpp"

#include <cmath>
#include <sstream>

#include "semigrav/errors.hpp"

namespace semigrav::dynamics {

namespace {

CanonicalState canonical_from_raw_moments(const SecondOrderState& m) {
  const double s = std::sqrt(std::max(m.dxx, 0.0));
  return CanonicalState{m.x_mean, m.p_mean, s, s > 0.0 ? m.dxp / s : 0.0, moments::casimir(m)};
}

}  // namespace

double classical_energy(double x, double p, const PotentialModel& pot, double mass) {
  return p * p / (2.0 * mass) + mass * pot.phi(x);
}

double effective_hamiltonian(const SecondOrderState& st, const PotentialModel& pot, double mass) {
  return classical_energy(st.x_mean, st.p_mean, pot, mass) + st.dpp / (2.0 * mass) +
         0.5 * mass * pot.d2phi(st.x_mean) * st.dxx;
}

double effective_hamiltonian(const CanonicalState& c, const PotentialModel& pot, double mass) {
  double h = classical_energy(c.x, c.p, pot, mass) + c.ps * c.ps / (2.0 * mass) +
             0.5 * mass * pot.d2phi(c.x) * c.s * c.s;
  if (c.u_casimir != 0.0) h += c.u_casimir / (2.0 * mass * c.s * c.s);
  return h;
}

CanonicalRates eom_rhs_canonical(const CanonicalState& c, const PotentialModel& pot, double mass) {
  if (c.u_casimir > 0.0 && !(c.s > 0.0)) {
    std::ostringstream os;
    os << "eom_rhs_canonical: width s = " << c.s << " with U = " << c.u_casimir;
    throw SingularityError(os.str());
  }
  pot.check_domain(c.x);
  CanonicalRates r;
  r.dx = c.p / mass;
  r.dp = -mass * (pot.dphi(c.x) + 0.5 * pot.d3phi(c.x) * c.s * c.s);
  r.ds = c.ps / mass;
  r.dps = -mass * pot.d2phi(c.x) * c.s;
  if (c.u_casimir != 0.0) r.dps += c.u_casimir / (mass * c.s * c.s * c.s);
  return r;
}

moments::Coordinates hamiltonian_gradient(const SecondOrderState& st, const PotentialModel& pot, double mass) {
  pot.check_domain(st.x_mean);
  return {mass * (pot.dphi(st.x_mean) + 0.5 * pot.d3phi(st.x_mean) * st.dxx), st.p_mean / mass,
          0.5 * mass * pot.d2phi(st.x_mean), 0.0, 1.0 / (2.0 * mass)};
}

SecondOrderState eom_rhs_moments(const SecondOrderState& st, const PotentialModel& pot, double mass) {
  const auto grad = hamiltonian_gradient(st, pot, mass);
  const auto j = moments::poisson_tensor(st);
  moments::Coordinates rate{};
  for (std::size_t a = 0; a < 5; ++a)
    for (std::size_t b = 0; b < 5; ++b) rate[a] += j[a][b] * grad[b];
  return moments::from_coordinates(rate);
}

SecondOrderState moment_rates_from_canonical(const CanonicalState& c, const CanonicalRates& r) {
  SecondOrderState d;
  d.x_mean = r.dx;
  d.p_mean = r.dp;
  d.dxx = 2.0 * c.s * r.ds;
  d.dxp = r.ds * c.ps + c.s * r.dps;
  d.dpp = 2.0 * c.ps * r.dps;
  if (c.u_casimir != 0.0) d.dpp -= 2.0 * c.u_casimir * r.ds / (c.s * c.s * c.s);
  return d;
}

CanonicalState Trajectory::at(double time) const {
  const auto y = dense(time);
  if (chart == Chart::moments) return canonical_from_raw_moments(SecondOrderState{y[0], y[1], y[2], y[3], y[4]});
  return CanonicalState{y[0], y[1], y[2], y[3], samples.front().u_casimir};
}

Trajectory integrate(const Flow& flow, const CanonicalState& initial, double t0, double t1,
                     const IntegratorConfig& cfg, std::span<const CanonicalEvent> events) {
  if (!(flow.mass > 0.0)) throw ConfigError("integrate: mass must be positive");
  if (initial.u_casimir < 0.0) throw ConfigError("integrate: U must be non-negative");
  if (initial.u_casimir > 0.0 && !(initial.s > 0.0))
    throw DegenerateStateError("integrate: width must be positive when U > 0");
  flow.potential.check_domain(initial.x);

  const double u = initial.u_casimir;
  const auto& pot = flow.potential;
  const double mass = flow.mass;
  auto rhs = [&](double, const ode::State<4>& y) {
    const auto r = eom_rhs_canonical(CanonicalState{y[0], y[1], y[2], y[3], u}, pot, mass);
    return ode::State<4>{r.dx, r.dp, r.ds, r.dps};
  };
  const double floor = flow.width_floor();
  ode::Guard<4> guard = [&](double t, const ode::State<4>& y) -> std::optional<std::string> {
    if (!pot.in_domain(y[0])) {
      std::ostringstream os;
      os << "left the potential domain at t = " << t << " (x = " << y[0] << ")";
      return os.str();
    }
    if (u > 0.0 && y[2] < floor) {
      std::ostringstream os;
      os << "width fell below floor " << floor << " at t = " << t;
      return os.str();
    }
    return std::nullopt;
  };

  const ode::State<4> y0{initial.x, initial.p, initial.s, initial.ps};
  ode::Solution<4> sol = cfg.method == ode::Method::fixed_step
                             ? ode::integrate_splitting<4>(rhs, t0, y0, t1, cfg, {true, false, true, false}, events, guard)
                             : ode::integrate_dopri5<4>(rhs, t0, y0, t1, cfg, events, guard);

  Trajectory traj;
  traj.chart = Chart::canonical;
  traj.mass = mass;
  traj.status = sol.status;
  traj.message = sol.message;
  traj.events = std::move(sol.events);
  traj.dense = std::move(sol.dense);
  traj.t = std::move(sol.t);
  traj.samples.reserve(sol.y.size());
  for (const auto& y : sol.y) {
    const CanonicalState c{y[0], y[1], y[2], y[3], u};
    traj.samples.push_back(c);
    traj.energy_series.push_back(pot.in_domain(c.x) ? effective_hamiltonian(c, pot, mass) : NAN);
    traj.casimir_series.push_back(c.is_point_particle() ? 0.0 : moments::casimir(moments::from_canonical(c)));
  }
  return traj;
}

Trajectory integrate_moments(const Flow& flow, const SecondOrderState& initial, double t0, double t1,
                             const IntegratorConfig& cfg) {
  if (!(flow.mass > 0.0)) throw ConfigError("integrate_moments: mass must be positive");
  if (cfg.method != ode::Method::adaptive_rk)
    throw ConfigError("integrate_moments: the moment chart is not separable, use adaptive_rk");
  if (!(initial.dxx > 0.0)) throw DegenerateStateError("integrate_moments: Delta(x^2) must be positive");
  flow.potential.check_domain(initial.x_mean);

  const auto& pot = flow.potential;
  const double mass = flow.mass;
  auto rhs = [&](double, const ode::State<5>& y) {
    const auto d = eom_rhs_moments(moments::from_coordinates(y), pot, mass);
    return moments::to_coordinates(d);
  };
  const double floor2 = flow.width_floor() * flow.width_floor();
  ode::Guard<5> guard = [&](double t, const ode::State<5>& y) -> std::optional<std::string> {
    if (!pot.in_domain(y[0])) return "left the potential domain at t = " + std::to_string(t);
    if (y[2] < floor2) return "Delta(x^2) fell below the width floor at t = " + std::to_string(t);
    return std::nullopt;
  };
  auto sol = ode::integrate_dopri5<5>(rhs, t0, moments::to_coordinates(initial), t1, cfg, {}, guard);

  Trajectory traj;
  traj.chart = Chart::moments;
  traj.mass = mass;
  traj.status = sol.status;
  traj.message = sol.message;
  traj.dense = std::move(sol.dense);
  traj.t = std::move(sol.t);
  for (const auto& y : sol.y) {
    const auto m = moments::from_coordinates(y);
    traj.samples.push_back(canonical_from_raw_moments(m));
    traj.energy_series.push_back(pot.in_domain(m.x_mean) ? effective_hamiltonian(m, pot, mass) : NAN);
    traj.casimir_series.push_back(moments::casimir(m));
  }
  return traj;
}

SecondOrderState closed_form_free(const SecondOrderState& s0, double mass, double t) {
  SecondOrderState s;
  s.x_mean = s0.x_mean + s0.p_mean / mass * t;
  s.p_mean = s0.p_mean;
  s.dxx = s0.dxx + 2.0 * s0.dxp / mass * t + s0.dpp / (mass * mass) * t * t;
  s.dxp = s0.dxp + s0.dpp / mass * t;
  s.dpp = s0.dpp;
  return s;
}

SecondOrderState closed_form_linear(const SecondOrderState& s0, double g, double mass, double t) {
  SecondOrderState s = closed_form_free(s0, mass, t);
  s.x_mean -= 0.5 * g * t * t;
  s.p_mean -= mass * g * t;
  return s;
}

double spreading_frequency(const SecondOrderState& s0, double mass) {
  if (!(s0.dxx > 0.0)) throw DegenerateStateError("spreading_frequency: Delta(x^2) must be positive");
  return std::sqrt(s0.dpp / (mass * mass * s0.dxx));
}

double tidal_balance_width(double u, double r) {
  if (!(u >= 0.0) || !(r > 0.0)) throw DomainError("tidal_balance_width: need u >= 0 and r > 0");
  return std::pow(0.5 * u * r * r * r, 0.25);
}

std::array<double, 2> frozen_width_rhs(double s, double ps, double u, double r) {
  if (!(s > 0.0)) throw SingularityError("frozen_width_rhs: width must be positive");
  return {ps, u / (s * s * s) + 2.0 * s / (r * r * r)};
}

}  // namespace semigrav::dynamics
