#include "cli/commands.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "diracjump/roots.hpp"
#include "diracjump/spectral.hpp"
#include "diracjump/validation.hpp"

namespace diracjump::cli {
namespace {

constexpr std::size_t kDefaultResonanceGrid = 2048;

std::string column(const std::string& stem, std::size_t k) { return stem + "_" + std::to_string(k); }

std::vector<double> energy_grid(const RunConfig& cfg) {
  if (cfg.n == 1) return {*cfg.emin};
  return roots::uniform_grid(*cfg.emin, *cfg.emax, cfg.n);
}

void append_source(std::vector<Cell>& row, const RunConfig& cfg) {
  if (cfg.has_named()) {
    row.emplace_back(std::string(to_string(*cfg.family)));
    row.emplace_back(*cfg.strength);
  } else {
    row.emplace_back(std::string("raw"));
    row.emplace_back(std::monostate{});
  }
}

}  // namespace

std::string format_number(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& os, const Table& table) {
  for (std::size_t i = 0; i < table.header.size(); ++i)
    os << (i ? "," : "") << table.header[i];
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      if (const double* d = std::get_if<double>(&row[i])) os << format_number(*d);
      else if (const std::string* s = std::get_if<std::string>(&row[i])) os << *s;
    }
    os << '\n';
  }
}

void write_json(std::ostream& os, const Table& table) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < table.header.size(); ++i) {
      const Cell& c = i < row.size() ? row[i] : Cell{};
      if (const double* d = std::get_if<double>(&c))
        obj[table.header[i]] = std::isfinite(*d) ? nlohmann::ordered_json(*d) : nullptr;
      else if (const std::string* s = std::get_if<std::string>(&c))
        obj[table.header[i]] = *s;
      else
        obj[table.header[i]] = nullptr;
    }
    arr.push_back(std::move(obj));
  }
  os << arr.dump(2) << '\n';
}

Table cmd_scatter(const RunConfig& cfg) {
  const MatchingMatrix t = cfg.matching();
  const std::vector<double> energies = energy_grid(cfg);
  const ScatteringSweep s = scattering_sweep(t, energies, cfg.direction, cfg.backend, cfg.threads);

  Table table;
  table.header = {"E", "Re_r", "Im_r", "abs_r2", "Re_t", "Im_t", "T_flux", "unitarity_defect"};
  for (std::size_t i = 0; i < energies.size(); ++i)
    table.rows.push_back({s.energy[i], s.re_r[i], s.im_r[i], s.abs_r2[i], s.re_t[i], s.im_t[i],
                          s.t_flux[i], s.unitarity_defect[i]});
  return table;
}

Table cmd_bound(const RunConfig& cfg) {
  const Junction j = cfg.junction();
  const std::size_t grid = cfg.grid ? cfg.grid : kDefaultBoundGrid;
  const std::vector<BoundState> states = cfg.has_named()
                                             ? find_bound_states(cfg.named(), j, grid, cfg.backend)
                                             : find_bound_states(cfg.raw(), j, grid);
  Table table;
  table.header = {"energy", "residual", "scale", "family", "strength"};
  for (const BoundState& b : states) {
    std::vector<Cell> row{b.energy, b.residual, b.scale};
    append_source(row, cfg);
    table.rows.push_back(std::move(row));
  }
  return table;
}

Table cmd_sweep(const RunConfig& cfg) {
  const Junction j = cfg.junction();
  const std::size_t grid = cfg.grid ? cfg.grid : kDefaultBoundGrid;
  const SweepTable sweep = sweep_strength(*cfg.family, j, {*cfg.smin, *cfg.smax}, cfg.n,
                                          cfg.comparison_mass, grid, cfg.threads);
  std::size_t k_roots = 0, k_eq = 0;
  for (std::size_t i = 0; i < sweep.strengths.size(); ++i) {
    k_roots = std::max(k_roots, sweep.roots[i].size());
    k_eq = std::max(k_eq, sweep.equal_mass[i].size());
  }

  Table table;
  table.header.push_back("strength");
  for (std::size_t k = 1; k <= k_roots; ++k) table.header.push_back(column("root", k));
  for (std::size_t k = 1; k <= k_eq; ++k) table.header.push_back(column("equal_mass", k));
  for (std::size_t i = 0; i < sweep.strengths.size(); ++i) {
    std::vector<Cell> row{sweep.strengths[i]};
    for (std::size_t k = 0; k < k_roots; ++k)
      row.push_back(k < sweep.roots[i].size() ? Cell{sweep.roots[i][k]} : Cell{});
    for (std::size_t k = 0; k < k_eq; ++k)
      row.push_back(k < sweep.equal_mass[i].size() ? Cell{sweep.equal_mass[i][k]} : Cell{});
    table.rows.push_back(std::move(row));
  }
  return table;
}

Table cmd_resonances(const RunConfig& cfg) {
  const Junction j = cfg.junction();
  const EnergyWindow window{*cfg.emin, *cfg.emax, EnergyWindow::Kind::Scattering};
  const std::size_t grid = cfg.grid ? cfg.grid : kDefaultResonanceGrid;
  const ReflectionZeros zeros = cfg.has_named()
                                    ? find_reflection_zeros(cfg.named(), j, window, grid)
                                    : find_reflection_zeros(cfg.raw(), j, window, grid);
  Table table;
  table.header = {"kind", "energy"};
  if (zeros.identically_transparent) table.rows.push_back({std::string("identically_transparent"), {}});
  for (double e : zeros.energies) table.rows.push_back({std::string("reflection_zero"), e});
  for (double e : zero_momentum_resonances(j)) table.rows.push_back({std::string("zero_momentum"), e});
  return table;
}

ValidateResult cmd_validate(const RunConfig& cfg) {
  ValidationTolerances tol;
  if (cfg.tolerance) {
    tol.residual = *cfg.tolerance;
    tol.norm = *cfg.tolerance;
    tol.determinant = *cfg.tolerance;
    tol.rounding = *cfg.tolerance;
  }
  const ValidationReport report = run_validation_suite(cfg.junction(), cfg.samples, cfg.seed, tol);
  ValidateResult result;
  result.table.header = {"check", "value", "tolerance", "pass"};
  for (const ValidationCheck& c : report.checks) {
    result.table.rows.push_back({c.name, c.value, c.tolerance, std::string(c.pass ? "true" : "false")});
    if (!c.pass) result.failures.push_back(c.name);
  }
  return result;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dirac particle at a mass and Fermi-velocity jump: scattering, bound states, "
               "strength sweeps and self-checks."};
  app.set_config("--config", "", "plain key=value file (one per line, # comments); flags override it");
  app.require_subcommand(1, 1);
  app.fallthrough();

  RunConfig cfg;
  double vf = 0.0;
  std::string family, format = "csv", direction = "left", backend = "auto";
  double strength = 0, alpha = 0, a0 = 0, a1 = 0, a3 = 0, emin = 0, emax = 0, smin = 0, smax = 0;
  double cmass = 0, tolerance = 0;

  app.add_option("--ml", cfg.ml, "left rest mass m_l >= 0")->capture_default_str();
  app.add_option("--mr", cfg.mr, "right rest mass m_r >= 0")->capture_default_str();
  auto* o_vl = app.add_option("--vl", cfg.vl, "left Fermi velocity v_l > 0")->capture_default_str();
  auto* o_vr = app.add_option("--vr", cfg.vr, "right Fermi velocity v_r > 0")->capture_default_str();
  auto* o_vf = app.add_option("--vf", vf, "common Fermi velocity, sets v_l = v_r");
  o_vf->excludes(o_vl)->excludes(o_vr);

  auto* o_family = app.add_option("--family", family, "named point interaction")
                       ->check(CLI::IsMember({"equally-mixed", "inverted-mixed", "pure-scalar",
                                              "pure-vector"}));
  auto* o_strength = app.add_option(
      "--strength", strength,
      "delta < 0 (equally-mixed), lambda > 0 (inverted-mixed), a < 0 (pure-scalar), "
      "a > 0 (pure-vector)");
  auto* o_alpha = app.add_option("--alpha", alpha, "raw extension: phase alpha of U = e^{i alpha}(a0 - i a.sigma)");
  auto* o_a0 = app.add_option("--a0", a0, "raw extension: a0");
  auto* o_a1 = app.add_option("--a1", a1, "raw extension: a1 (nonzero)");
  auto* o_a3 = app.add_option("--a3", a3, "raw extension: a3 (a0^2 + a1^2 + a3^2 = 1)");

  auto* o_emin = app.add_option("--emin", emin, "lower energy of the scattering window");
  auto* o_emax = app.add_option("--emax", emax, "upper energy of the scattering window");
  app.add_option("--n", cfg.n, "energy points (scatter) or strength points (sweep)")->capture_default_str();
  auto* o_smin = app.add_option("--smin", smin, "sweep: first strength");
  auto* o_smax = app.add_option("--smax", smax, "sweep: last strength");
  auto* o_cmass = app.add_option("--comparison-mass", cmass,
                                 "sweep: mass of the equal-mass comparison curves (default m_l)");
  app.add_option("--grid", cfg.grid, "root-search grid points (default 512 bound, 2048 resonances)");
  app.add_option("--direction", direction, "incidence side")->check(CLI::IsMember({"left", "right"}))->capture_default_str();

  app.add_option("--out", cfg.out, "output file (default stdout)");
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  app.add_option("--samples", cfg.samples, "validate: random draws for the determinant audit")->capture_default_str();
  auto* o_tol = app.add_option("--tolerance", tolerance, "validate: override every absolute tolerance");
  app.add_option("--threads", cfg.threads, "worker threads for sweeps")->capture_default_str();
  app.add_option("--backend", backend, "batch kernel backend")
      ->check(CLI::IsMember({"auto", "scalar", "avx2"}))->capture_default_str();

  auto* scatter = app.add_subcommand("scatter", "reflection/transmission amplitudes on an energy grid");
  auto* bound = app.add_subcommand("bound", "bound-state energies inside the gap");
  auto* sweep = app.add_subcommand("sweep", "bound states versus strength with equal-mass curves");
  auto* resonances = app.add_subcommand("resonances", "reflection zeros and zero-momentum resonances");
  auto* validate = app.add_subcommand("validate", "deficiency-spinor and determinant self-checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kBadConfig;
  }

  if (*scatter) cfg.command = Command::Scatter;
  if (*bound) cfg.command = Command::Bound;
  if (*sweep) cfg.command = Command::Sweep;
  if (*resonances) cfg.command = Command::Resonances;
  if (*validate) cfg.command = Command::Validate;

  if (*o_vf) cfg.vl = cfg.vr = vf;
  if (*o_family) cfg.family = parse_family(family);
  if (*o_strength) cfg.strength = strength;
  if (*o_alpha) cfg.alpha = alpha;
  if (*o_a0) cfg.a0 = a0;
  if (*o_a1) cfg.a1 = a1;
  if (*o_a3) cfg.a3 = a3;
  if (*o_emin) cfg.emin = emin;
  if (*o_emax) cfg.emax = emax;
  if (*o_smin) cfg.smin = smin;
  if (*o_smax) cfg.smax = smax;
  if (*o_cmass) cfg.comparison_mass = cmass;
  if (*o_tol) cfg.tolerance = tolerance;
  cfg.format = format == "json" ? Format::Json : Format::Csv;
  cfg.direction = direction == "right" ? Direction::FromRight : Direction::FromLeft;
  cfg.backend = backend == "scalar" ? kernels::Backend::Scalar
                : backend == "avx2" ? kernels::Backend::Avx2
                                    : kernels::Backend::Auto;

  Table table;
  std::vector<std::string> failures;
  try {
    check_config(cfg);
    switch (cfg.command) {
      case Command::Scatter: table = cmd_scatter(cfg); break;
      case Command::Bound: table = cmd_bound(cfg); break;
      case Command::Sweep: table = cmd_sweep(cfg); break;
      case Command::Resonances: table = cmd_resonances(cfg); break;
      case Command::Validate: {
        auto result = cmd_validate(cfg);
        table = std::move(result.table);
        failures = std::move(result.failures);
        break;
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.is_config_error() ? kBadConfig : kNumericalFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumericalFailure;
  }

  std::ostringstream buffer;
  if (cfg.format == Format::Json)
    write_json(buffer, table);
  else
    write_csv(buffer, table);

  if (cfg.out.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(cfg.out, std::ios::binary);
    if (!file) {
      err << "error: cannot open " << cfg.out << " for writing\n";
      return kBadConfig;
    }
    file << buffer.str();
  }

  for (const std::string& f : failures) err << "FAILED: " << f << '\n';
  return failures.empty() ? kOk : kValidationFailed;
}

}  // namespace diracjump::cli
