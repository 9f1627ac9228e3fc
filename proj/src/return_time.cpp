#include "semigrav/return_time.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "semigrav/errors.hpp"
#include "semigrav/parallel.hpp"

namespace semigrav::experiments {

void ReturnTimeProblem::validate() const {
  if (!(r0 > 0.0)) throw ConfigError("return_time: r0 must be positive");
  if (!(u >= 0.0) || !std::isfinite(u)) throw ConfigError("return_time: u must be non-negative");
  if (!std::isfinite(epsilon)) throw ConfigError("return_time: epsilon must be finite");
  if (epsilon + 1.0 / r0 <= 0.0) throw ConfigError("return_time: epsilon leaves no outward launch momentum");
  const double s = initial_width();
  if (u > 0.0 && !(s > 0.0)) throw ConfigError("return_time: s0 must be positive when u > 0");
  if (s < 0.0) throw ConfigError("return_time: s0 must be non-negative");
}

double ReturnTimeProblem::launch_momentum() const { return std::sqrt(2.0 * (epsilon + 1.0 / r0)); }

double ReturnTimeProblem::initial_width() const {
  return std::isnan(s0) ? dynamics::tidal_balance_width(u, r0) : s0;
}

moments::CanonicalState ReturnTimeProblem::initial_state() const {
  return moments::CanonicalState{r0, launch_momentum(), initial_width(), ps0, u};
}

const char* to_string(ReturnStatus s) {
  switch (s) {
    case ReturnStatus::returned: return "returned";
    case ReturnStatus::escaped: return "escaped";
    case ReturnStatus::aborted: return "aborted";
  }
  return "unknown";
}

double kepler_return_time(double epsilon, double r0) {
  if (!(epsilon < 0.0)) throw DomainError("kepler_return_time: orbit is unbound for epsilon >= 0");
  if (!(r0 > 0.0)) throw DomainError("kepler_return_time: r0 must be positive");
  const double a = -0.5 / epsilon;
  if (r0 > 2.0 * a) throw DomainError("kepler_return_time: r0 beyond the turning point");
  const double e0 = std::acos(1.0 - r0 / a);
  return std::pow(a, 1.5) * (2.0 * std::numbers::pi - 2.0 * e0 + 2.0 * std::sin(e0));
}

ReturnTimeResult return_time(const ReturnTimeProblem& problem, const dynamics::IntegratorConfig& cfg) {
  problem.validate();
  const auto init = problem.initial_state();
  const dynamics::Flow flow{dynamics::PotentialModel::newtonian(1.0, dynamics::Units::nondimensional), 1.0,
                            problem.r0};
  const double h0 = dynamics::effective_hamiltonian(init, flow.potential, 1.0);
  const double r0 = problem.r0;
  const double guard = kEscapeGuardFactor * r0;

  std::vector<dynamics::CanonicalEvent> events;
  events.push_back({[r0](double, const ode::State<4>& y) { return y[0] - r0; }, ode::Direction::falling, true});
  // The effective energy is conserved, so a positive value at launch decides
  // whether crossing the guard radius outward counts as escape.
  if (h0 > 0.0)
    events.push_back({[guard](double, const ode::State<4>& y) { return y[0] - guard; }, ode::Direction::rising, true});

  // Generous horizon: ten classical periods where bound, otherwise the time
  // to coast to the guard radius at the launch speed, times ten.
  double horizon = 10.0 * guard / init.p;
  if (problem.epsilon < 0.0 && 2.0 * (-0.5 / problem.epsilon) >= r0)
    horizon = std::max(horizon, 10.0 * kepler_return_time(problem.epsilon, r0));

  auto traj = dynamics::integrate(flow, init, 0.0, horizon, cfg, events);
  if (traj.aborted()) throw SingularityError("return_time: integration aborted: " + traj.message);
  if (traj.status == ode::Status::event && !traj.events.empty()) {
    const auto& hit = traj.events.back();
    if (hit.index == 0) return ReturnTimeResult{hit.t, std::move(traj)};
    std::ostringstream os;
    os << "return_time: escaped past r = " << guard << " at t = " << hit.t << " with H = " << h0;
    throw NoReturnError(os.str());
  }
  std::ostringstream os;
  os << "return_time: no return within t = " << horizon;
  throw NoReturnError(os.str());
}

std::vector<ReturnTimeRow> return_time_curve(const std::vector<double>& grid, const std::vector<double>& u_list,
                                             const ReturnTimeProblem& tmpl, const dynamics::IntegratorConfig& cfg,
                                             Abscissa abscissa) {
  cfg.validate();
  const std::size_t n_grid = grid.size();
  return parallel_map<ReturnTimeRow>(grid.size() * u_list.size(), [&](std::size_t i) {
    ReturnTimeRow row;
    row.abscissa = grid[i % n_grid];
    row.u = u_list[i / n_grid];
    ReturnTimeProblem p = tmpl;
    p.u = row.u;
    p.epsilon = abscissa == Abscissa::kinetic ? row.abscissa - 1.0 / tmpl.r0 : row.abscissa;
    row.epsilon = p.epsilon;
    try {
      row.t_return = return_time(p, cfg).t_return;
      row.status = ReturnStatus::returned;
    } catch (const NoReturnError& e) {
      row.t_return = std::numeric_limits<double>::quiet_NaN();
      row.status = ReturnStatus::escaped;
      row.message = e.what();
    } catch (const SingularityError& e) {
      row.t_return = std::numeric_limits<double>::quiet_NaN();
      row.status = ReturnStatus::aborted;
      row.message = e.what();
    }
    return row;
  });
}

}  // namespace semigrav::experiments
