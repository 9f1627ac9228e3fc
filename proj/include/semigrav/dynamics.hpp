#pragma once

// Second-order effective dynamics of a wave packet in an external potential.
//
// Moment chart:    H = p^2/2m + m Phi(x) + Delta(p^2)/2m + (m/2) Phi''(x) Delta(x^2)
// Canonical chart: H = p^2/2m + p_s^2/2m + U/(2 m s^2) + m Phi(x) + (m/2) Phi''(x) s^2

#include <span>
#include <string>
#include <vector>

#include "semigrav/moments.hpp"
#include "semigrav/ode.hpp"
#include "semigrav/potential.hpp"

namespace semigrav::dynamics {

using moments::CanonicalState;
using moments::SecondOrderState;
using ode::IntegratorConfig;

struct CanonicalRates {
  double dx = 0.0;
  double dp = 0.0;
  double ds = 0.0;
  double dps = 0.0;
};

// Potential, particle mass and the length scale for the width floor.
struct Flow {
  PotentialModel potential = PotentialModel::free();
  double mass = 1.0;
  double scale_length = 1.0;

  // Widths below this abort integration when U > 0.
  double width_floor() const { return 1e-12 * scale_length; }
};

double effective_hamiltonian(const SecondOrderState& state, const PotentialModel& pot, double mass);
double effective_hamiltonian(const CanonicalState& state, const PotentialModel& pot, double mass);

// Classical energy p^2/2m + m Phi(x) of the centroid.
double classical_energy(double x, double p, const PotentialModel& pot, double mass);

// Hamiltonian flow of the canonical-chart H. Throws SingularityError for
// s <= 0 with U > 0 and DomainError outside the potential domain.
CanonicalRates eom_rhs_canonical(const CanonicalState& state, const PotentialModel& pot, double mass);

// Flow generated by the second-order moment brackets, dz/dt = J(z) grad H(z).
SecondOrderState eom_rhs_moments(const SecondOrderState& state, const PotentialModel& pot, double mass);

// Gradient of the moment-chart H in the order (x, p, dxx, dxp, dpp).
moments::Coordinates hamiltonian_gradient(const SecondOrderState& state, const PotentialModel& pot, double mass);

// Time derivative of the moments implied by canonical rates (chain rule).
SecondOrderState moment_rates_from_canonical(const CanonicalState& state, const CanonicalRates& rates);

enum class Chart { canonical, moments };

struct Trajectory {
  std::vector<double> t;
  std::vector<CanonicalState> samples;
  std::vector<double> energy_series;
  std::vector<double> casimir_series;
  ode::Status status = ode::Status::completed;
  std::string message;
  std::vector<ode::EventHit> events;

  Chart chart = Chart::canonical;
  double mass = 1.0;
  ode::DenseOutput dense;

  bool aborted() const {
    return status == ode::Status::singularity || status == ode::Status::step_underflow ||
           status == ode::Status::max_steps;
  }
  double t_begin() const { return t.front(); }
  double t_end() const { return t.back(); }
  // Dense evaluation. In the moment chart U is recomputed from the moments.
  CanonicalState at(double time) const;
};

using CanonicalEvent = ode::Event<4>;

Trajectory integrate(const Flow& flow, const CanonicalState& initial, double t0, double t1,
                     const IntegratorConfig& cfg, std::span<const CanonicalEvent> events = {});

// Integrates the five-dimensional moment system directly; the Casimir series
// then measures genuine drift rather than rounding.
Trajectory integrate_moments(const Flow& flow, const SecondOrderState& initial, double t0, double t1,
                             const IntegratorConfig& cfg);

// Exact solution of the free second-order system after time t.
SecondOrderState closed_form_free(const SecondOrderState& initial, double mass, double t);

// Free solution with the centroid of a uniform field Phi = g x.
SecondOrderState closed_form_linear(const SecondOrderState& initial, double g, double mass, double t);

// Spreading frequency omega_sigma = sqrt(Delta(p^2)_0 / (m^2 Delta(x^2)_0)).
double spreading_frequency(const SecondOrderState& initial, double mass);

// Nondimensional Newtonian width equation s'' = u/s^3 + 2 s/r^3 at frozen r:
// width at which the uncertainty and tidal terms have equal magnitude.
double tidal_balance_width(double u, double r);

// Right-hand side of the frozen-r width equation, (ds/dt, dp_s/dt).
std::array<double, 2> frozen_width_rhs(double s, double ps, double u, double r);

}  // namespace semigrav::dynamics
