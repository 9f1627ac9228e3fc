#include "cli/commands.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <map>
#include <set>

#include "cli/svg.hpp"
#include "semigrav/csv.hpp"
#include "semigrav/dynamics.hpp"
#include "semigrav/eotvos.hpp"
#include "semigrav/errors.hpp"
#include "semigrav/interferometer.hpp"
#include "semigrav/parallel.hpp"
#include "semigrav/reconstruct.hpp"
#include "semigrav/return_time.hpp"

namespace semigrav::cli {

using nlohmann::json;

namespace {

const std::vector<KeySpec> kIntegratorKeys = {
    {"method", "adaptive (Dormand-Prince 5(4)) or splitting (fixed-step kick-drift-kick)"},
    {"rtol", "relative tolerance of the adaptive integrator"},
    {"atol", "absolute tolerance of the adaptive integrator"},
    {"step", "initial step (adaptive) or step size (splitting)"},
    {"h-max", "largest step of the adaptive integrator"},
    {"max-steps", "step budget per integration"},
};

const std::vector<KeySpec> kStateKeys = {
    {"x0", "initial <x>"},
    {"p0", "initial <p>"},
    {"dxx", "initial Delta(x^2); 0 with dxp = dpp = 0 selects a point particle"},
    {"dxp", "initial Delta(xp)"},
    {"dpp", "initial Delta(p^2); defaults to the minimal-uncertainty value"},
    {"mass", "particle mass"},
    {"hbar", "value of hbar in the chosen units"},
    {"lambda", "uncertainty factor (U >= lambda hbar^2/4)"},
};

std::vector<KeySpec> concat(std::vector<KeySpec> a, const std::vector<KeySpec>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

const std::map<std::string, std::vector<KeySpec>>& key_table() {
  static const std::map<std::string, std::vector<KeySpec>> table = {
      {"simulate",
       concat(concat({{"potential", "free, linear, quadratic or newtonian"},
                      {"g", "linear coefficient of Phi (field strength)"},
                      {"k", "quadratic coefficient of Phi (field gradient)"},
                      {"gm", "GM of the newtonian potential"},
                      {"t-end", "final time"},
                      {"samples", "number of output rows"},
                      {"scale-length", "length scale for the width floor"}},
                     kStateKeys),
              kIntegratorKeys)},
      {"return-time",
       concat({{"u", "list of u values; u = 0 is always included as the classical curve"},
               {"eps-grid", "grid start:stop:count or list of abscissa values"},
               {"abscissa", "epsilon (classical energy) or kinetic (launch kinetic energy)"},
               {"r0", "launch radius"},
               {"s0", "initial width; default is the tidal-balance width"},
               {"ps0", "initial width momentum"}},
              kIntegratorKeys)},
      {"eotvos",
       {{"g", "field strength"},
        {"d2g", "second derivative of the field"},
        {"width", "list of packet widths s, Delta(x^2) = s^2"},
        {"eta-max", "optional bound on eta; reports the largest allowed width"}}},
      {"reconstruct",
       concat({{"order", "expansion order N"},
               {"raw", "explicit raw moments <x^0>..<x^N> (requires mixed)"},
               {"mixed", "explicit Re<x^n p>, n = 0..M"},
               {"center", "basis center m (default <x>)"},
               {"alpha", "basis width alpha (default sqrt(2 Delta(x^2)))"},
               {"x-min", "left end of the sampling interval"},
               {"x-max", "right end of the sampling interval"},
               {"points", "number of sample points"}},
              kStateKeys)},
      {"interferometer",
       concat(concat({{"T", "pulse spacing, list or grid"},
                      {"gradient", "field gradient k of Phi = g x + k x^2/2, list or grid"},
                      {"g", "uniform field strength"},
                      {"hbar-k", "momentum kick"},
                      {"detection-x", "detection point at 2T (default midpoint of the arms)"},
                      {"scale-length", "length scale for the width floor"}},
                     kStateKeys),
              kIntegratorKeys)},
  };
  return table;
}

std::set<std::string> allowed_keys(const std::string& command) {
  std::set<std::string> out = {"out", "seed", "svg", "command"};
  for (const auto& k : command_keys(command)) out.insert(k.name);
  return out;
}

ode::IntegratorConfig integrator_from(const Params& p, json& resolved) {
  ode::IntegratorConfig cfg;
  const std::string method = p.text("method", "adaptive");
  if (method == "adaptive")
    cfg.method = ode::Method::adaptive_rk;
  else if (method == "splitting")
    cfg.method = ode::Method::fixed_step;
  else
    throw ConfigError("method must be adaptive or splitting, got '" + method + "'");
  cfg.rel_tol = p.number("rtol", cfg.rel_tol);
  cfg.abs_tol = p.number("atol", cfg.abs_tol);
  cfg.h_init = p.number("step", cfg.h_init);
  cfg.h_max = p.number("h-max", std::max(cfg.h_max, cfg.h_init));
  const long steps = p.integer("max-steps", static_cast<long>(cfg.max_steps));
  if (steps <= 0) throw ConfigError("max-steps must be positive");
  cfg.max_steps = static_cast<std::size_t>(steps);
  cfg.validate();
  resolved["method"] = method;
  resolved["rtol"] = cfg.rel_tol;
  resolved["atol"] = cfg.abs_tol;
  resolved["step"] = cfg.h_init;
  resolved["h-max"] = cfg.h_max;
  resolved["max-steps"] = cfg.max_steps;
  return cfg;
}

moments::HbarContext hbar_from(const Params& p, json& resolved) {
  moments::HbarContext ctx{p.number("hbar", 1.0), p.number("lambda", 1.0)};
  ctx.validate();
  resolved["hbar"] = ctx.hbar;
  resolved["lambda"] = ctx.lambda;
  return ctx;
}

moments::SecondOrderState state_from(const Params& p, const moments::HbarContext& ctx, double default_x0,
                                     double default_dxx, json& resolved) {
  moments::SecondOrderState s;
  s.x_mean = p.number("x0", default_x0);
  s.p_mean = p.number("p0", 0.0);
  s.dxx = p.number("dxx", default_dxx);
  s.dxp = p.number("dxp", 0.0);
  if (s.dxx < 0.0) throw ConfigError("dxx must be non-negative");
  if (p.has("dpp"))
    s.dpp = p.number("dpp");
  else if (s.dxx > 0.0)
    s.dpp = (ctx.minimal_casimir() + s.dxp * s.dxp) / s.dxx;
  resolved["x0"] = s.x_mean;
  resolved["p0"] = s.p_mean;
  resolved["dxx"] = s.dxx;
  resolved["dxp"] = s.dxp;
  resolved["dpp"] = s.dpp;
  return s;
}

bool is_point(const moments::SecondOrderState& s) { return s.dxx == 0.0 && s.dxp == 0.0 && s.dpp == 0.0; }

moments::CanonicalState canonical_from(const moments::SecondOrderState& s, const moments::HbarContext& ctx) {
  if (is_point(s)) return moments::point_particle(s.x_mean, s.p_mean);
  return moments::to_canonical(s, ctx);
}

double positive(const Params& p, const std::string& key, double fallback) {
  const double v = p.number(key, fallback);
  if (!(v > 0.0)) throw ConfigError("'" + key + "' must be positive");
  return v;
}

class Artifacts {
 public:
  Artifacts(const RunConfig& cfg) : cfg_(cfg) {
    std::error_code ec;
    std::filesystem::create_directories(cfg.output_dir, ec);
    if (ec) throw ConfigError("cannot create output directory " + cfg.output_dir.string() + ": " + ec.message());
    manifest_["command"] = cfg.command;
    manifest_["version"] = SEMIGRAV_VERSION;
    manifest_["seed"] = cfg.seed;
    json given = json::object();
    for (const auto& [k, e] : cfg.params.entries()) given[k] = {{"value", e.value}, {"source", e.origin.describe()}};
    manifest_["given"] = given;
    manifest_["status"] = "ok";
    manifest_["outputs"] = json::array();
  }

  std::ofstream open(const std::string& name) {
    std::ofstream os(cfg_.output_dir / name, std::ios::binary);
    if (!os) throw ConfigError("cannot write " + (cfg_.output_dir / name).string());
    manifest_["outputs"].push_back(name);
    return os;
  }

  void svg(const std::string& name, const Plot& plot) {
    if (!cfg_.svg) return;
    auto os = open(name);
    write_svg(os, plot);
  }

  json& manifest() { return manifest_; }

  void abort(const std::string& message) {
    manifest_["status"] = "aborted";
    manifest_["message"] = message;
  }

  void finish() {
    std::ofstream os(cfg_.output_dir / "manifest.json", std::ios::binary);
    if (!os) throw ConfigError("cannot write manifest.json");
    os << manifest_.dump(2) << '\n';
  }

 private:
  const RunConfig& cfg_;
  json manifest_;
};

dynamics::PotentialModel potential_from(const Params& p, json& resolved, double& default_x0) {
  const std::string kind = p.text("potential", "free");
  resolved["potential"] = kind;
  if (kind == "free") return dynamics::PotentialModel::free();
  if (kind == "linear") {
    resolved["g"] = p.number("g", 9.81);
    return dynamics::PotentialModel::linear(resolved["g"].get<double>());
  }
  if (kind == "quadratic") {
    resolved["g"] = p.number("g", 0.0);
    resolved["k"] = p.number("k", 1.0);
    return dynamics::PotentialModel::quadratic(resolved["k"].get<double>(), resolved["g"].get<double>());
  }
  if (kind == "newtonian") {
    resolved["gm"] = positive(p, "gm", 1.0);
    default_x0 = 1.0;
    return dynamics::PotentialModel::newtonian(resolved["gm"].get<double>());
  }
  throw ConfigError("potential must be free, linear, quadratic or newtonian, got '" + kind + "'");
}

int run_simulate(const RunConfig& cfg, std::ostream& log) {
  const auto& p = cfg.params;
  json resolved;
  double default_x0 = 0.0;
  const auto pot = potential_from(p, resolved, default_x0);
  const auto ctx = hbar_from(p, resolved);
  const auto state = state_from(p, ctx, default_x0, 0.01, resolved);
  const double mass = positive(p, "mass", 1.0);
  const double t_end = positive(p, "t-end", 1.0);
  const long samples = p.integer("samples", 201);
  if (samples < 2) throw ConfigError("samples must be at least 2");
  const double scale = positive(p, "scale-length", 1.0);
  const auto integ = integrator_from(p, resolved);
  resolved["mass"] = mass;
  resolved["t-end"] = t_end;
  resolved["samples"] = samples;
  resolved["scale-length"] = scale;
  pot.check_domain(state.x_mean);
  const auto initial = canonical_from(state, ctx);

  Artifacts out(cfg);
  out.manifest()["resolved"] = resolved;
  const auto traj = dynamics::integrate(dynamics::Flow{pot, mass, scale}, initial, 0.0, t_end, integ);
  out.manifest()["integration_status"] = ode::to_string(traj.status);
  out.manifest()["steps"] = traj.t.size() - 1;

  const double t_last = traj.t_end();
  Series xs{"<x>", {}, {}, false};
  {
    auto os = out.open("trajectory.csv");
    csv::Writer w(os, {"t", "x", "p", "s", "ps", "energy", "casimir"});
    for (long i = 0; i < samples; ++i) {
      const double t = i + 1 == samples ? t_last : t_last * static_cast<double>(i) / static_cast<double>(samples - 1);
      const auto c = traj.at(t);
      const double energy = pot.in_domain(c.x) ? dynamics::effective_hamiltonian(c, pot, mass) : NAN;
      const double casimir = c.is_point_particle() ? 0.0 : moments::casimir(moments::from_canonical(c));
      w.row({t, c.x, c.p, c.s, c.ps, energy, casimir});
      xs.x.push_back(t);
      xs.y.push_back(c.x);
    }
  }
  out.svg("trajectory.svg", Plot{"Centre of mass", "t", "<x>", false, false, {xs}});

  if (traj.aborted()) {
    out.abort(traj.message);
    out.finish();
    log << "simulate: integration aborted at t = " << t_last << ": " << traj.message << '\n';
    return kExitNumerical;
  }
  out.finish();
  return kExitOk;
}

int run_return_time(const RunConfig& cfg, std::ostream& log) {
  const auto& p = cfg.params;
  json resolved;
  std::vector<double> u_list = p.list("u", {0.0});
  for (double u : u_list)
    if (!(u >= 0.0)) throw ConfigError("u values must be non-negative");
  // The classical curve is always part of the sweep.
  if (std::find(u_list.begin(), u_list.end(), 0.0) == u_list.end()) u_list.insert(u_list.begin(), 0.0);
  const auto grid = p.list("eps-grid", parse_list("-0.9:-0.1:50", {"default", 0}));
  const std::string abscissa = p.text("abscissa", "epsilon");
  if (abscissa != "epsilon" && abscissa != "kinetic")
    throw ConfigError("abscissa must be epsilon or kinetic, got '" + abscissa + "'");
  experiments::ReturnTimeProblem tmpl;
  tmpl.r0 = positive(p, "r0", 1.0);
  if (p.has("s0")) tmpl.s0 = p.number("s0");
  tmpl.ps0 = p.number("ps0", 0.0);
  const auto integ = integrator_from(p, resolved);
  resolved["u"] = u_list;
  resolved["eps-grid"] = grid;
  resolved["abscissa"] = abscissa;
  resolved["r0"] = tmpl.r0;
  resolved["s0"] = p.has("s0") ? json(tmpl.s0) : json("tidal-balance");
  resolved["ps0"] = tmpl.ps0;
  for (double v : grid) {
    const double eps = abscissa == "kinetic" ? v - 1.0 / tmpl.r0 : v;
    if (eps + 1.0 / tmpl.r0 <= 0.0) throw ConfigError("eps-grid value " + csv::format(v) + " leaves no launch momentum");
  }

  Artifacts out(cfg);
  out.manifest()["resolved"] = resolved;
  const auto rows = experiments::return_time_curve(grid, u_list, tmpl, integ,
                                                   abscissa == "kinetic" ? experiments::Abscissa::kinetic
                                                                         : experiments::Abscissa::epsilon);
  bool aborted = false;
  json problems = json::array();
  {
    auto os = out.open("return_time.csv");
    csv::Writer w(os, {"epsilon", "u", "t_return", "status"});
    for (const auto& r : rows) {
      w.cell(r.epsilon).cell(r.u).cell(r.t_return).cell(experiments::to_string(r.status));
      w.end_row();
      if (r.status == experiments::ReturnStatus::aborted) aborted = true;
      if (r.status != experiments::ReturnStatus::returned)
        problems.push_back({{"epsilon", r.epsilon}, {"u", r.u}, {"message", r.message}});
    }
  }
  out.manifest()["non_returning"] = problems;

  Plot plot{"Particle return time", abscissa == "kinetic" ? "launch kinetic energy" : "epsilon", "return time",
            false, true, {}};
  for (std::size_t k = 0; k < u_list.size(); ++k) {
    Series s{u_list[k] == 0.0 ? "classical" : "u = " + csv::format(u_list[k]), {}, {}, u_list[k] == 0.0};
    for (std::size_t i = 0; i < grid.size(); ++i) {
      s.x.push_back(grid[i]);
      s.y.push_back(rows[k * grid.size() + i].t_return);
    }
    plot.series.push_back(std::move(s));
  }
  out.svg("return_time.svg", plot);

  if (aborted) {
    out.abort("one or more integrations aborted; see non_returning");
    out.finish();
    log << "return-time: numerical aborts in the sweep\n";
    return kExitNumerical;
  }
  out.finish();
  return kExitOk;
}

int run_eotvos(const RunConfig& cfg, std::ostream&) {
  const auto& p = cfg.params;
  json resolved;
  const double g = positive(p, "g", experiments::kTerrestrialG);
  const double d2g = p.number("d2g", experiments::kTerrestrialD2g);
  const auto widths = p.list("width");
  resolved["g"] = g;
  resolved["d2g"] = d2g;
  resolved["width"] = widths;
  const auto rows = experiments::eotvos_table(g, d2g, widths);

  Artifacts out(cfg);
  if (p.has("eta-max")) {
    const double eta_max = p.number("eta-max");
    resolved["eta-max"] = eta_max;
    out.manifest()["width_bound"] = experiments::width_bound_from_eta(g, d2g, eta_max);
  }
  out.manifest()["resolved"] = resolved;
  Series s{"eta", {}, {}, false};
  {
    auto os = out.open("eotvos.csv");
    csv::Writer w(os, {"g", "d2g", "dxx", "eta"});
    for (const auto& r : rows) {
      w.row({r.g, r.d2g, r.dxx, r.eta});
      s.x.push_back(std::sqrt(r.dxx));
      s.y.push_back(r.eta);
    }
  }
  out.svg("eotvos.svg", Plot{"Eotvos parameter", "width s", "eta", true, true, {s}});
  out.finish();
  return kExitOk;
}

int run_reconstruct(const RunConfig& cfg, std::ostream& log) {
  const auto& p = cfg.params;
  json resolved;
  const auto ctx = hbar_from(p, resolved);
  const long order = p.integer("order", 2);
  if (order < 0 || order > 40) throw ConfigError("order must lie in [0, 40]");
  resolved["order"] = order;

  moments::RawMomentSequence raw;
  reconstruct::HermiteBasis basis;
  basis.order = static_cast<std::size_t>(order);
  if (p.has("raw")) {
    if (!p.has("mixed")) throw ConfigError("explicit raw moments need the mixed moments as well");
    raw.moments = p.list("raw");
    raw.mixed = p.list("mixed");
    if (raw.order() < basis.order) throw ConfigError("raw moments do not reach the requested order");
    if (raw.order() < 2) throw ConfigError("explicit raw moments must reach order 2");
    const double mean = raw.moments[1];
    const double var = raw.moments[2] - mean * mean;
    if (!(var > 0.0)) throw ConfigError("explicit raw moments have non-positive variance");
    basis.center = mean;
    basis.alpha = std::sqrt(2.0 * var);
    resolved["raw"] = raw.moments;
    resolved["mixed"] = raw.mixed;
  } else {
    const auto state = state_from(p, ctx, 0.0, 1.0, resolved);
    if (!(state.dxx > 0.0)) throw ConfigError("reconstruct needs dxx > 0");
    moments::to_canonical(state, ctx);  // uncertainty check
    raw = moments::raw_sequence(moments::gaussian_moment_data(state, basis.order), basis.order);
    basis = reconstruct::HermiteBasis::centered_on(state, basis.order);
  }
  basis.center = p.number("center", basis.center);
  basis.alpha = positive(p, "alpha", basis.alpha);
  resolved["center"] = basis.center;
  resolved["alpha"] = basis.alpha;

  reconstruct::ReconstructedDensity density = [&] {
    try {
      return reconstruct::reconstruct_density(raw, basis);
    } catch (const NoRepresentingDistributionError& e) {
      throw ConfigError(e.what());
    }
  }();
  const auto phase = reconstruct::reconstruct_phase_derivative(raw, density, ctx);
  const double x_min = p.number("x-min", density.validity_lo());
  const double x_max = p.number("x-max", density.validity_hi());
  if (!(x_max > x_min)) throw ConfigError("x-max must exceed x-min");
  const long points = p.integer("points", 201);
  if (points < 2) throw ConfigError("points must be at least 2");
  resolved["x-min"] = x_min;
  resolved["x-max"] = x_max;
  resolved["points"] = points;

  Artifacts out(cfg);
  out.manifest()["resolved"] = resolved;
  const auto state = reconstruct::reconstructed_state(phase);
  out.manifest()["density_coeffs"] = state.density_coeffs;
  out.manifest()["phase_deriv_coeffs"] = state.phase_deriv_coeffs;
  out.manifest()["theta0"] = {{"value", state.theta0}, {"gauge", state.theta0_is_gauge}};
  json neg = json::array();
  for (const auto& iv : density.negative_intervals()) neg.push_back({iv.lo, iv.hi});
  out.manifest()["negative_density_intervals"] = neg;
  out.manifest()["validity_interval"] = {density.validity_lo(), density.validity_hi()};
  if (density.flagged()) log << "reconstruct: density is negative on " << neg.size() << " interval(s)\n";

  std::vector<reconstruct::SampleRow> rows;
  std::string failure;
  try {
    rows = reconstruct::sample(phase, x_min, x_max, static_cast<std::size_t>(points));
  } catch (const DomainError& e) {
    failure = e.what();
  }
  {
    auto os = out.open("reconstruction.csv");
    csv::Writer w(os, {"x", "rho", "dtheta_dx", "theta"});
    for (const auto& r : rows) w.row({r.x, r.rho, r.dtheta_dx, r.theta});
  }
  Series rho{"rho", {}, {}, false};
  for (const auto& r : rows) {
    rho.x.push_back(r.x);
    rho.y.push_back(r.rho);
  }
  out.svg("reconstruction.svg", Plot{"Reconstructed density", "x", "rho", false, false, {rho}});
  if (!failure.empty()) {
    out.abort(failure);
    out.finish();
    log << "reconstruct: " << failure << '\n';
    return kExitNumerical;
  }
  out.finish();
  return kExitOk;
}

int run_interferometer(const RunConfig& cfg, std::ostream& log) {
  const auto& p = cfg.params;
  json resolved;
  const auto ctx = hbar_from(p, resolved);
  const auto state = state_from(p, ctx, 0.0, 0.01, resolved);
  const auto Ts = p.list("T", {1.0});
  const auto gradients = p.list("gradient", {0.0});
  for (double T : Ts)
    if (!(T > 0.0)) throw ConfigError("T values must be positive");
  const double g = p.number("g", 0.0);
  const double hbar_k = p.number("hbar-k", 1.0);
  if (hbar_k == 0.0) throw ConfigError("hbar-k must be non-zero");
  const double mass = positive(p, "mass", 1.0);
  const double scale = positive(p, "scale-length", 1.0);
  const auto integ = integrator_from(p, resolved);
  resolved["T"] = Ts;
  resolved["gradient"] = gradients;
  resolved["g"] = g;
  resolved["hbar-k"] = hbar_k;
  resolved["mass"] = mass;
  resolved["scale-length"] = scale;
  if (p.has("detection-x")) resolved["detection-x"] = p.number("detection-x");

  experiments::MachZehnderConfig base;
  base.hbar_k = hbar_k;
  base.mass = mass;
  base.initial = canonical_from(state, ctx);
  base.ctx = ctx;
  base.integrator = integ;
  base.scale_length = scale;
  if (p.has("detection-x")) base.detection_x = p.number("detection-x");

  struct Outcome {
    double T = 0.0;
    double gradient = 0.0;
    std::optional<experiments::MachZehnderResult> result;
    std::string error;
  };
  const std::size_t n = Ts.size() * gradients.size();
  const auto outcomes = parallel_map<Outcome>(n, [&](std::size_t i) {
    Outcome o;
    o.gradient = gradients[i / Ts.size()];
    o.T = Ts[i % Ts.size()];
    auto c = base;
    c.T = o.T;
    c.potential = dynamics::PotentialModel::quadratic(o.gradient, g);
    try {
      o.result = experiments::mach_zehnder_phase(c);
    } catch (const SingularityError& e) {
      o.error = e.what();
    } catch (const QuadratureError& e) {
      o.error = e.what();
    }
    return o;
  });

  Artifacts out(cfg);
  out.manifest()["resolved"] = resolved;
  json flags = json::array();
  bool aborted = false;
  std::map<double, Series> by_gradient;
  {
    auto os = out.open("mz_phase.csv");
    csv::Writer w(os, {"T", "k", "gradient", "separation", "dtheta"});
    for (const auto& o : outcomes) {
      const double nan = std::numeric_limits<double>::quiet_NaN();
      const double sep = o.result ? o.result->separation : nan;
      const double dth = o.result ? o.result->dtheta : nan;
      w.row({o.T, hbar_k / ctx.hbar, o.gradient, sep, dth});
      if (!o.result) {
        aborted = true;
        flags.push_back({{"T", o.T}, {"gradient", o.gradient}, {"error", o.error}});
      } else if (o.result->flagged) {
        flags.push_back({{"T", o.T}, {"gradient", o.gradient}, {"flag", o.result->flag_reason}});
      }
      auto& s = by_gradient[o.gradient];
      s.label = "gradient " + csv::format(o.gradient);
      s.x.push_back(o.T);
      s.y.push_back(dth);
    }
  }
  out.manifest()["flags"] = flags;
  Plot plot{"Mach-Zehnder propagation phase", "T", "dtheta", false, false, {}};
  for (auto& [k, s] : by_gradient) plot.series.push_back(std::move(s));
  out.svg("mz_phase.svg", plot);
  if (aborted) {
    out.abort("one or more configurations aborted; see flags");
    out.finish();
    log << "interferometer: numerical aborts in the sweep\n";
    return kExitNumerical;
  }
  out.finish();
  return kExitOk;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"simulate", "return-time", "eotvos", "reconstruct",
                                                 "interferometer"};
  return names;
}

std::string command_help(const std::string& command) {
  if (command == "simulate") return "Integrate the second-order effective dynamics and write trajectory.csv";
  if (command == "return-time") return "Sweep Newtonian out-and-back return times and write return_time.csv";
  if (command == "eotvos") return "Tabulate the Eotvos parameter against packet width and write eotvos.csv";
  if (command == "reconstruct") return "Reconstruct density and phase from moments and write reconstruction.csv";
  if (command == "interferometer") return "Mach-Zehnder propagation phase sweep, written to mz_phase.csv";
  return {};
}

const std::vector<KeySpec>& command_keys(const std::string& command) {
  const auto& t = key_table();
  const auto it = t.find(command);
  if (it == t.end()) throw ConfigError("unknown command '" + command + "'");
  return it->second;
}

int run(const RunConfig& config, std::ostream& log) {
  config.params.require_known(allowed_keys(config.command), config.command);
  if (config.command == "simulate") return run_simulate(config, log);
  if (config.command == "return-time") return run_return_time(config, log);
  if (config.command == "eotvos") return run_eotvos(config, log);
  if (config.command == "reconstruct") return run_reconstruct(config, log);
  if (config.command == "interferometer") return run_interferometer(config, log);
  throw ConfigError("unknown command '" + config.command + "'");
}

}  // namespace semigrav::cli
