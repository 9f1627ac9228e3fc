#pragma once

// Propagation phase of a wave packet as a line integral of d theta over
// spacetime paths, and along integrated centre-of-mass trajectories.

#include <array>
#include <functional>
#include <vector>

#include "semigrav/dynamics.hpp"

namespace semigrav::experiments {

enum class SegmentKind { com_trajectory, fixed_time_vertical, custom };

// Parametrized curve tau -> (x(tau), t(tau)) on [tau0, tau1].
struct PathSegment {
  SegmentKind kind = SegmentKind::custom;
  double tau0 = 0.0;
  double tau1 = 1.0;
  std::function<std::array<double, 2>(double)> point;
  // (dx/dtau, dt/dtau)
  std::function<std::array<double, 2>(double)> tangent;
  // Interior parameter values where the integrand may lose smoothness.
  std::vector<double> breakpoints;

  std::array<double, 2> start() const { return point(tau0); }
  std::array<double, 2> end() const { return point(tau1); }

  static PathSegment straight(double x0, double t0, double x1, double t1);
  static PathSegment vertical(double x0, double x1, double t);
  // tau = t along the centre of mass of an integrated trajectory, dx/dt = p/m.
  static PathSegment com(const dynamics::Trajectory& traj, double t0, double t1);
};

struct PhasePath {
  std::vector<PathSegment> segments;

  // Throws ConfigError when consecutive segments do not join.
  void validate(double tol = 1e-9) const;
};

using Partial = std::function<double(double x, double t)>;

struct PhasePartials {
  Partial dx;
  Partial dt;
};

// sum over segments of int (theta_x dx/dtau + theta_t dt/dtau) dtau, by adaptive
// Gauss-Kronrod quadrature. Throws QuadratureError when a piece does not converge.
double phase_line_integral(const PhasePath& path, const PhasePartials& partials);

// Uniform field Phi = g x, gauge fixed so the com phase equals the action:
//   theta_x = p(t)/hbar,  theta_t = -m g x / hbar - p(t)^2 / (2 m hbar),  p(t) = p0 - m g t.
PhasePartials linear_potential_partials(double g, double mass, double p0, const moments::HbarContext& ctx);

// theta_x of the second-order packet: P/hbar + (x - X) Delta(xp) / (hbar Delta(x^2)).
double packet_phase_dx(const moments::CanonicalState& state, double x, const moments::HbarContext& ctx);

// (1/hbar) int (p dx/dt - H_classical) dt along the centre of mass over [ta, tb].
// Reversed bounds give the negative.
double propagation_phase_plane_wave(const dynamics::Trajectory& traj, const dynamics::PotentialModel& pot,
                                    double mass, const moments::HbarContext& ctx, double ta, double tb);
double propagation_phase_plane_wave(const dynamics::Trajectory& traj, const dynamics::PotentialModel& pot,
                                    double mass, const moments::HbarContext& ctx);

// (1/hbar) int (p dx/dt + p_s ds/dt - H_eff) dt. Without the width sector the
// p_s, Phi'' and U/s^2 terms are dropped and the result is the plane-wave phase.
double propagation_phase_second_order(const dynamics::Trajectory& traj, const dynamics::PotentialModel& pot,
                                      double mass, const moments::HbarContext& ctx, double ta, double tb,
                                      bool include_width_sector = true);
double propagation_phase_second_order(const dynamics::Trajectory& traj, const dynamics::PotentialModel& pot,
                                      double mass, const moments::HbarContext& ctx,
                                      bool include_width_sector = true);

}  // namespace semigrav::experiments
