#include "cli/config.hpp"

#include "diracjump/matching.hpp"

namespace diracjump::cli {
namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorKind::InvalidArgument, msg); }

bool needs_extension(Command c) { return c != Command::Validate; }

}  // namespace

Junction RunConfig::junction() const { return make_junction(ml, mr, vl, vr); }

NamedExtension RunConfig::named() const { return NamedExtension(*family, *strength); }

ExtensionParams RunConfig::raw() const { return ExtensionParams(*alpha, *a0, *a1, *a3); }

MatchingMatrix RunConfig::matching() const {
  return has_named() ? named_matrix(named(), junction()) : matching_closed_form(raw(), junction());
}

void check_config(const RunConfig& cfg) {
  (void)cfg.junction();  // Medium validates masses and velocities

  if (needs_extension(cfg.command)) {
    if (cfg.has_named() && cfg.has_raw())
      bad("give either --family/--strength or --alpha/--a0/--a1/--a3, not both");
    if (cfg.command == Command::Sweep) {
      if (!cfg.family) bad("sweep needs --family");
      if (cfg.strength) bad("sweep takes --smin/--smax instead of --strength");
      if (!cfg.smin || !cfg.smax) bad("sweep needs --smin and --smax");
      if (!(*cfg.smin < *cfg.smax)) bad("sweep needs --smin < --smax");
      if (cfg.n < 2) bad("sweep needs --n >= 2");
    } else if (cfg.has_named()) {
      if (!cfg.strength) bad("--family needs --strength");
      (void)cfg.named();
    } else if (cfg.has_raw()) {
      if (!(cfg.alpha && cfg.a0 && cfg.a1 && cfg.a3))
        bad("a raw extension needs all of --alpha --a0 --a1 --a3");
      (void)cfg.raw();
    } else {
      bad("select an extension with --family/--strength or --alpha/--a0/--a1/--a3");
    }
    if (cfg.strength && !cfg.family) bad("--strength needs --family");
  }

  if (cfg.command == Command::Scatter || cfg.command == Command::Resonances) {
    if (!cfg.emin || !cfg.emax) bad("this command needs --emin and --emax");
    if (cfg.command == Command::Scatter && cfg.n < 1) bad("--n must be >= 1");
    const EnergyWindow w{*cfg.emin, *cfg.emax, EnergyWindow::Kind::Scattering};
    validate_window(w, cfg.junction());
  }
  if (cfg.comparison_mass && !(*cfg.comparison_mass >= 0.0))
    bad("--comparison-mass must be non-negative");
  if (cfg.grid != 0 && cfg.grid < 16) bad("--grid must be >= 16");
  if (cfg.command == Command::Validate && cfg.samples < 1) bad("--samples must be >= 1");
  if (cfg.tolerance && !(*cfg.tolerance > 0.0)) bad("--tolerance must be positive");
  if (cfg.threads < 1) bad("--threads must be >= 1");
}

}  // namespace diracjump::cli
