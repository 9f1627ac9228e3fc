#pragma once

// Explicit integrators for small autonomous-in-structure ODE systems:
// Dormand-Prince 5(4) with Hairer's continuous extension, and a fixed-step
// kick-drift-kick splitting for separable Hamiltonians. Both record a dense
// output and support sign-change events refined on the interpolant.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/math/tools/toms748_solve.hpp>

#include "semigrav/errors.hpp"

namespace semigrav::ode {

enum class Method { adaptive_rk, fixed_step };

struct IntegratorConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double h_init = 1e-3;
  double h_min = 1e-14;
  double h_max = 1.0;
  Method method = Method::adaptive_rk;
  std::size_t max_steps = 2'000'000;

  void validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw ConfigError("integrator tolerances must be positive");
    if (!(h_min > 0.0) || !(h_min <= h_init) || !(h_init <= h_max))
      throw ConfigError("integrator steps must satisfy 0 < h_min <= h_init <= h_max");
    if (max_steps == 0) throw ConfigError("integrator max_steps must be positive");
  }
};

enum class Status { completed, event, step_underflow, max_steps, singularity };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::completed: return "completed";
    case Status::event: return "event";
    case Status::step_underflow: return "step_underflow";
    case Status::max_steps: return "max_steps";
    case Status::singularity: return "singularity";
  }
  return "unknown";
}

enum class Direction { rising, falling, either };

template <std::size_t N>
using State = std::array<double, N>;

template <std::size_t N>
struct Event {
  std::function<double(double, const State<N>&)> function;
  Direction direction = Direction::either;
  bool terminal = false;
};

struct EventHit {
  std::size_t index = 0;
  double t = 0.0;
  std::vector<double> y;
};

// One step of the continuous extension
//   y(t0 + th h) = r1 + th (r2 + (1-th) (r3 + th (r4 + (1-th) r5))).
// With r5 = 0 this is the cubic Hermite interpolant.
struct DenseSegment {
  double t0 = 0.0;
  double h = 0.0;
  std::vector<double> coeffs;  // 5 * dim, grouped by coefficient
};

class DenseOutput {
 public:
  DenseOutput() = default;
  explicit DenseOutput(std::size_t dim) : dim_(dim) {}

  std::size_t dimension() const { return dim_; }
  bool empty() const { return segments_.empty(); }
  double t_begin() const { return segments_.front().t0; }
  double t_end() const { return segments_.back().t0 + segments_.back().h; }
  const std::vector<DenseSegment>& segments() const { return segments_; }

  void push(DenseSegment seg) { segments_.push_back(std::move(seg)); }
  void truncate(double t_stop) {
    while (!segments_.empty() && segments_.back().t0 >= t_stop) segments_.pop_back();
    if (!segments_.empty()) {
      // keep the polynomial, only restrict its range
      auto& last = segments_.back();
      const double full = last.h;
      if (last.t0 + full > t_stop) stop_ = t_stop;
    }
  }

  // Throws DomainError outside [t_begin, t_end].
  std::vector<double> operator()(double t) const {
    if (segments_.empty()) throw DomainError("dense output is empty");
    const double hi = stop_ ? *stop_ : t_end();
    const double span = std::abs(hi - t_begin());
    const double slack = 1e-12 * std::max(1.0, span);
    if (t < t_begin() - slack || t > hi + slack) throw DomainError("dense output evaluated outside its range");
    auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                               [](double v, const DenseSegment& s) { return v < s.t0; });
    if (it != segments_.begin()) --it;
    return eval(*it, t);
  }

  std::vector<double> eval(const DenseSegment& seg, double t) const {
    const double th = (t - seg.t0) / seg.h;
    const double th1 = 1.0 - th;
    std::vector<double> y(dim_);
    const double* c = seg.coeffs.data();
    for (std::size_t i = 0; i < dim_; ++i) {
      const double r1 = c[i], r2 = c[dim_ + i], r3 = c[2 * dim_ + i], r4 = c[3 * dim_ + i], r5 = c[4 * dim_ + i];
      y[i] = r1 + th * (r2 + th1 * (r3 + th * (r4 + th1 * r5)));
    }
    return y;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<DenseSegment> segments_;
  std::optional<double> stop_;
};

template <std::size_t N>
struct Solution {
  std::vector<double> t;
  std::vector<State<N>> y;
  DenseOutput dense{N};
  Status status = Status::completed;
  std::vector<EventHit> events;
  std::string message;
};

// Returns a diagnostic when the state has left the admissible region.
template <std::size_t N>
using Guard = std::function<std::optional<std::string>(double, const State<N>&)>;

namespace detail {

template <std::size_t N>
bool finite(const State<N>& y) {
  return std::all_of(y.begin(), y.end(), [](double v) { return std::isfinite(v); });
}

template <std::size_t N, class Rhs>
std::optional<State<N>> try_rhs(Rhs& rhs, double t, const State<N>& y) {
  try {
    State<N> f = rhs(t, y);
    if (!finite<N>(f)) return std::nullopt;
    return f;
  } catch (const DomainError&) {
    return std::nullopt;
  } catch (const SingularityError&) {
    return std::nullopt;
  }
}

template <std::size_t N>
DenseSegment hermite_segment(double t0, double h, const State<N>& y0, const State<N>& y1, const State<N>& f0,
                             const State<N>& f1) {
  DenseSegment seg{t0, h, std::vector<double>(5 * N, 0.0)};
  for (std::size_t i = 0; i < N; ++i) {
    const double r2 = y1[i] - y0[i];
    const double r3 = h * f0[i] - r2;
    seg.coeffs[i] = y0[i];
    seg.coeffs[N + i] = r2;
    seg.coeffs[2 * N + i] = r3;
    seg.coeffs[3 * N + i] = r2 - h * f1[i] - r3;
  }
  return seg;
}

// Scans the events over one accepted step; returns the earliest terminal hit.
template <std::size_t N>
std::optional<double> scan_events(std::span<const Event<N>> events, const DenseOutput& dense,
                                  const DenseSegment& seg, double t0, const State<N>& y0, double t1,
                                  const State<N>& y1, std::vector<EventHit>& hits) {
  std::optional<double> terminal_t;
  std::vector<EventHit> step_hits;
  for (std::size_t k = 0; k < events.size(); ++k) {
    const auto& ev = events[k];
    const double g0 = ev.function(t0, y0);
    const double g1 = ev.function(t1, y1);
    const bool rising = g0 < 0.0 && g1 >= 0.0;
    const bool falling = g0 > 0.0 && g1 <= 0.0;
    const bool hit = (ev.direction == Direction::rising && rising) ||
                     (ev.direction == Direction::falling && falling) ||
                     (ev.direction == Direction::either && (rising || falling));
    if (!hit) continue;
    auto g_of_t = [&](double t) {
      const auto yv = dense.eval(seg, t);
      State<N> ys;
      std::copy(yv.begin(), yv.end(), ys.begin());
      return ev.function(t, ys);
    };
    double tr = t1;
    if (g1 != 0.0) {
      std::uintmax_t iters = 200;
      auto tol = [](double a, double b) { return std::abs(b - a) <= 4e-16 * std::max(std::abs(a), std::abs(b)); };
      const auto bracket = boost::math::tools::toms748_solve(g_of_t, t0, t1, g0, g1, tol, iters);
      tr = 0.5 * (bracket.first + bracket.second);
    }
    step_hits.push_back(EventHit{k, tr, dense.eval(seg, tr)});
    if (ev.terminal && (!terminal_t || tr < *terminal_t)) terminal_t = tr;
  }
  std::sort(step_hits.begin(), step_hits.end(), [](const EventHit& a, const EventHit& b) { return a.t < b.t; });
  for (auto& h : step_hits)
    if (!terminal_t || h.t <= *terminal_t) hits.push_back(std::move(h));
  return terminal_t;
}

template <std::size_t N>
void finish_at_event(Solution<N>& sol, double t_event) {
  const auto yv = sol.dense(t_event);
  State<N> ye;
  std::copy(yv.begin(), yv.end(), ye.begin());
  sol.t.push_back(t_event);
  sol.y.push_back(ye);
  sol.dense.truncate(t_event);
  sol.status = Status::event;
}

}  // namespace detail

// Dormand-Prince 5(4) with step-size control on the mixed error norm.
template <std::size_t N, class Rhs>
Solution<N> integrate_dopri5(Rhs rhs, double t0, const State<N>& y0, double t1, const IntegratorConfig& cfg,
                             std::span<const Event<N>> events = {}, const Guard<N>& guard = {}) {
  cfg.validate();
  if (!(t1 > t0)) throw ConfigError("integration interval must satisfy t1 > t0");

  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                   a65 = -5103.0 / 18656;
  constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784, a76 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                   e6 = 22.0 / 525, e7 = -1.0 / 40;
  constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                   d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                   d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

  Solution<N> sol;
  sol.t.push_back(t0);
  sol.y.push_back(y0);
  if (guard) {
    if (auto msg = guard(t0, y0)) {
      sol.status = Status::singularity;
      sol.message = *msg;
      return sol;
    }
  }

  auto first = detail::try_rhs<N>(rhs, t0, y0);
  if (!first) {
    sol.status = Status::singularity;
    sol.message = "right-hand side not finite at the initial state";
    return sol;
  }
  State<N> k1 = *first;
  State<N> y = y0;
  double t = t0;
  double h = std::clamp(cfg.h_init, cfg.h_min, cfg.h_max);
  std::size_t steps = 0;

  while (t < t1) {
    if (steps++ >= cfg.max_steps) {
      sol.status = Status::max_steps;
      sol.message = "maximum number of steps reached";
      return sol;
    }
    bool last = false;
    if (t + h >= t1 || t + 1.01 * h >= t1) {
      h = t1 - t;
      last = true;
    }

    State<N> ys, k2, k3, k4, k5, k6, k7, y_new;
    bool ok = true;
    auto stage = [&](State<N>& k, auto&& combine, double c) {
      if (!ok) return;
      for (std::size_t i = 0; i < N; ++i) ys[i] = y[i] + h * combine(i);
      auto f = detail::try_rhs<N>(rhs, t + c * h, ys);
      if (!f) ok = false; else k = *f;
    };
    stage(k2, [&](std::size_t i) { return a21 * k1[i]; }, c2);
    stage(k3, [&](std::size_t i) { return a31 * k1[i] + a32 * k2[i]; }, c3);
    stage(k4, [&](std::size_t i) { return a41 * k1[i] + a42 * k2[i] + a43 * k3[i]; }, c4);
    stage(k5, [&](std::size_t i) { return a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]; }, c5);
    stage(k6, [&](std::size_t i) { return a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]; },
          1.0);
    if (ok) {
      for (std::size_t i = 0; i < N; ++i)
        y_new[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
      auto f = detail::try_rhs<N>(rhs, t + h, y_new);
      if (!f) ok = false; else k7 = *f;
    }

    double err = 0.0;
    if (ok) {
      for (std::size_t i = 0; i < N; ++i) {
        const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        const double sc = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
        err += (e / sc) * (e / sc);
      }
      err = std::sqrt(err / static_cast<double>(N));
      if (!std::isfinite(err)) ok = false;
    }

    if (!ok || err > 1.0) {
      const double fac = ok ? std::max(0.2, 0.9 * std::pow(err, -0.2)) : 0.25;
      h *= fac;
      if (h < cfg.h_min) {
        sol.status = Status::step_underflow;
        sol.message = "step size fell below h_min at t = " + std::to_string(t);
        return sol;
      }
      continue;
    }

    DenseSegment seg{t, h, std::vector<double>(5 * N)};
    for (std::size_t i = 0; i < N; ++i) {
      const double r2 = y_new[i] - y[i];
      const double r3 = h * k1[i] - r2;
      seg.coeffs[i] = y[i];
      seg.coeffs[N + i] = r2;
      seg.coeffs[2 * N + i] = r3;
      seg.coeffs[3 * N + i] = r2 - h * k7[i] - r3;
      seg.coeffs[4 * N + i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
    }
    sol.dense.push(seg);
    const double t_new = last ? t1 : t + h;

    if (!events.empty()) {
      if (auto te = detail::scan_events<N>(events, sol.dense, seg, t, y, t_new, y_new, sol.events)) {
        detail::finish_at_event(sol, *te);
        return sol;
      }
    }

    t = t_new;
    y = y_new;
    k1 = k7;
    sol.t.push_back(t);
    sol.y.push_back(y);

    if (guard) {
      if (auto msg = guard(t, y)) {
        sol.status = Status::singularity;
        sol.message = *msg;
        return sol;
      }
    }
    if (last) break;

    const double fac = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    h = std::min(h * fac, cfg.h_max);
  }
  sol.status = Status::completed;
  return sol;
}

// Kick-drift-kick splitting for H = T(momenta) + V(positions). `is_position`
// marks the configuration components; velocities and forces are read off the
// right-hand side, which must not mix the two groups.
template <std::size_t N, class Rhs>
Solution<N> integrate_splitting(Rhs rhs, double t0, const State<N>& y0, double t1, const IntegratorConfig& cfg,
                                const std::array<bool, N>& is_position, std::span<const Event<N>> events = {},
                                const Guard<N>& guard = {}) {
  cfg.validate();
  if (!(t1 > t0)) throw ConfigError("integration interval must satisfy t1 > t0");
  const auto n_steps = static_cast<std::size_t>(std::ceil((t1 - t0) / cfg.h_init - 1e-9));
  if (n_steps > cfg.max_steps) throw ConfigError("fixed-step integration would exceed max_steps");
  const double h = (t1 - t0) / static_cast<double>(n_steps);

  Solution<N> sol;
  sol.t.push_back(t0);
  sol.y.push_back(y0);
  State<N> y = y0;
  auto f0 = detail::try_rhs<N>(rhs, t0, y);
  if (!f0) {
    sol.status = Status::singularity;
    sol.message = "right-hand side not finite at the initial state";
    return sol;
  }
  State<N> f = *f0;

  for (std::size_t n = 0; n < n_steps; ++n) {
    const double t = t0 + h * static_cast<double>(n);
    const double t_new = (n + 1 == n_steps) ? t1 : t0 + h * static_cast<double>(n + 1);
    State<N> y_new = y;
    for (std::size_t i = 0; i < N; ++i)
      if (!is_position[i]) y_new[i] += 0.5 * h * f[i];
    auto f_half = detail::try_rhs<N>(rhs, t + 0.5 * h, y_new);
    if (!f_half) {
      sol.status = Status::singularity;
      sol.message = "right-hand side not finite at t = " + std::to_string(t);
      return sol;
    }
    for (std::size_t i = 0; i < N; ++i)
      if (is_position[i]) y_new[i] += h * (*f_half)[i];
    auto f_new = detail::try_rhs<N>(rhs, t_new, y_new);
    if (!f_new) {
      sol.status = Status::singularity;
      sol.message = "right-hand side not finite at t = " + std::to_string(t_new);
      return sol;
    }
    for (std::size_t i = 0; i < N; ++i)
      if (!is_position[i]) y_new[i] += 0.5 * h * (*f_new)[i];
    auto f_end = detail::try_rhs<N>(rhs, t_new, y_new);
    if (!f_end) {
      sol.status = Status::singularity;
      sol.message = "right-hand side not finite at t = " + std::to_string(t_new);
      return sol;
    }

    const auto seg = detail::hermite_segment<N>(t, t_new - t, y, y_new, f, *f_end);
    sol.dense.push(seg);
    if (!events.empty()) {
      if (auto te = detail::scan_events<N>(events, sol.dense, seg, t, y, t_new, y_new, sol.events)) {
        detail::finish_at_event(sol, *te);
        return sol;
      }
    }
    y = y_new;
    f = *f_end;
    sol.t.push_back(t_new);
    sol.y.push_back(y);
    if (guard) {
      if (auto msg = guard(t_new, y)) {
        sol.status = Status::singularity;
        sol.message = *msg;
        return sol;
      }
    }
  }
  sol.status = Status::completed;
  return sol;
}

}  // namespace semigrav::ode
