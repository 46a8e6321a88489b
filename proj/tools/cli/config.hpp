#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "diracjump/kernels.hpp"
#include "diracjump/scattering.hpp"
#include "diracjump/types.hpp"

namespace diracjump::cli {

enum class Command { Scatter, Bound, Sweep, Resonances, Validate };
enum class Format { Csv, Json };

struct RunConfig {
  Command command = Command::Scatter;

  double ml = 1.0, mr = 2.0, vl = 1.0, vr = 1.0;

  std::optional<Family> family;
  std::optional<double> strength;
  std::optional<double> alpha, a0, a1, a3;

  std::optional<double> emin, emax;
  std::size_t n = 200;
  std::optional<double> smin, smax;
  std::optional<double> comparison_mass;
  std::size_t grid = 0;  // 0: the command's default
  Direction direction = Direction::FromLeft;

  std::string out;  // empty: stdout
  Format format = Format::Csv;
  std::uint64_t seed = 0;
  std::size_t samples = 1000;
  std::optional<double> tolerance;

  unsigned threads = 1;
  kernels::Backend backend = kernels::Backend::Auto;

  Junction junction() const;
  bool has_named() const { return family.has_value(); }
  bool has_raw() const { return alpha || a0 || a1 || a3; }
  NamedExtension named() const;
  ExtensionParams raw() const;
  /// Matching matrix of whichever extension was selected.
  MatchingMatrix matching() const;
};

/// Rejects invalid combinations before any computation; throws Error(InvalidArgument, ...).
void check_config(const RunConfig& cfg);

}  // namespace diracjump::cli
