#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dyson/dse.hpp"
#include "dyson/ode.hpp"
#include "dyson/recursions.hpp"

namespace dyson {

struct HopfSettings {
  int max_nodes = 6;
  std::vector<int> decorations{1, 2};
  std::vector<int> s{1, 2, 3};
  int max_k = 5;
};

struct OdeSettings {
  ode::OdeSpec spec;
  double x0 = 0.01;
  double x_probe = 1.0;
  std::optional<std::pair<double, double>> bracket;
  /// Fixed x for the phase-plane slice of a system.
  double slice_x = 0.5;
};

/// Normalized run configuration. At least one section is present.
struct Config {
  std::vector<std::string> residues;
  std::vector<int> s;
  int truncation = 0;
  std::optional<TheorySpec> theory;          // from "mellin"
  std::optional<PrimitiveSeries> primitives;  // from "p_series"
  std::optional<OdeSettings> ode;
  std::optional<HopfSettings> hopf;
};

/// Parses and validates a JSON document. Every problem is reported at once,
/// one "$.path: message" per line, in a ConfigError.
Config validate_config(std::string_view json_text, std::optional<int> truncation_override = std::nullopt);

}  // namespace dyson
