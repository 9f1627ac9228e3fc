#include <CLI11.hpp>

#include <iostream>
#include <map>

#include "cli/commands.hpp"
#include "cli/config.hpp"
#include "semigrav/errors.hpp"

namespace {

bool is_config_error(const semigrav::Error& e) {
  return dynamic_cast<const semigrav::ConfigError*>(&e) || dynamic_cast<const semigrav::DomainError*>(&e) ||
         dynamic_cast<const semigrav::DegenerateStateError*>(&e) ||
         dynamic_cast<const semigrav::UncertaintyViolationError*>(&e) ||
         dynamic_cast<const semigrav::UnsupportedOrderError*>(&e) ||
         dynamic_cast<const semigrav::NoRepresentingDistributionError*>(&e);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace semigrav::cli;

  CLI::App app{"Moment-based semiclassical dynamics in gravitational potentials"};
  app.set_version_flag("--version", std::string(SEMIGRAV_VERSION));
  app.require_subcommand(1);

  struct Sub {
    CLI::App* app = nullptr;
    std::map<std::string, std::string> values;
    std::string config;
    std::string out;
    std::string seed;
    bool svg = false;
  };
  std::map<std::string, Sub> subs;
  for (const auto& name : command_names()) {
    auto& s = subs[name];
    s.app = app.add_subcommand(name, command_help(name));
    s.app->add_option("--config", s.config, "flat key = value file; command-line flags override it");
    s.app->add_option("--out", s.out, "output directory");
    s.app->add_option("--seed", s.seed, "seed recorded in the manifest");
    s.app->add_flag("--svg", s.svg, "also write an SVG plot");
    for (const auto& key : command_keys(name)) s.app->add_option("--" + key.name, s.values[key.name], key.help);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    for (auto& [name, s] : subs) {
      if (!s.app->parsed()) continue;
      Params params;
      if (!s.config.empty()) params = load_config(s.config);
      for (const auto& [key, value] : s.values)
        if (s.app->count("--" + key) > 0) params.set(key, value, Origin{"--" + key, 0});
      if (!s.out.empty()) params.set("out", s.out, Origin{"--out", 0});
      if (!s.seed.empty()) params.set("seed", s.seed, Origin{"--seed", 0});
      if (s.svg) params.set("svg", "true", Origin{"--svg", 0});
      return run(resolve(name, std::move(params)), std::cerr);
    }
  } catch (const semigrav::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return is_config_error(e) ? kExitConfig : kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitConfig;
}
