#pragma once

// Out-and-back flight in the nondimensional Newtonian problem
//   H = p^2/2 + p_s^2/2 + u/(2 s^2) - 1/r - s^2/r^3
// launched outward from r0 with classical energy epsilon = p0^2/2 - 1/r0.

#include <limits>
#include <string>
#include <vector>

#include "semigrav/dynamics.hpp"

namespace semigrav::experiments {

// Abscissa of a return-time grid: the classical energy epsilon or the launch
// kinetic energy K = epsilon + 1/r0.
enum class Abscissa { epsilon, kinetic };

struct ReturnTimeProblem {
  double epsilon = -0.5;
  double u = 0.0;
  // Initial width; NaN selects the tidal-balance width (u r0^3 / 2)^(1/4),
  // which is zero for u = 0 (point particle).
  double s0 = std::numeric_limits<double>::quiet_NaN();
  double ps0 = 0.0;
  double r0 = 1.0;

  void validate() const;
  double launch_momentum() const;
  double initial_width() const;
  moments::CanonicalState initial_state() const;
};

inline constexpr double kEscapeGuardFactor = 100.0;

enum class ReturnStatus { returned, escaped, aborted };
const char* to_string(ReturnStatus s);

struct ReturnTimeResult {
  double t_return = 0.0;
  dynamics::Trajectory trajectory;
};

// Time of the first inward crossing of r = r0. Throws NoReturnError on escape
// and SingularityError when the integration aborts.
ReturnTimeResult return_time(const ReturnTimeProblem& problem, const dynamics::IntegratorConfig& cfg);

// Radial Kepler return time for a point particle, t = a^(3/2) (2 pi - 2 E0 + 2 sin E0)
// with a = -1/(2 epsilon) and r0 = a (1 - cos E0). Requires epsilon < 0.
double kepler_return_time(double epsilon, double r0 = 1.0);

struct ReturnTimeRow {
  double abscissa = 0.0;
  double epsilon = 0.0;
  double u = 0.0;
  double t_return = 0.0;
  ReturnStatus status = ReturnStatus::returned;
  std::string message;
};

// Rows ordered by u (outer) then grid point (inner). Grid points are
// integrated concurrently; the row order does not depend on scheduling.
std::vector<ReturnTimeRow> return_time_curve(const std::vector<double>& grid, const std::vector<double>& u_list,
                                             const ReturnTimeProblem& tmpl, const dynamics::IntegratorConfig& cfg,
                                             Abscissa abscissa = Abscissa::epsilon);

}  // namespace semigrav::experiments
