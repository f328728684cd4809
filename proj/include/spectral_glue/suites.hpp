#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spectral_glue/boundary_group.hpp"
#include "spectral_glue/io.hpp"
#include "spectral_glue/parallel.hpp"
#include "spectral_glue/tiling.hpp"

namespace spectral_glue {

/**
 * Inputs of a property suite. Without a fixture the engine suites draw a
 * fresh random instance per trial (p <= 5 components, Haar-random B); the
 * local-translation, tiling and pair-measure suites default to (0,1) u (3,4)
 * with 2Z and its tiling boundary matrix. Trial k is seeded with seed + k.
 */
struct SuiteOptions {
  std::uint64_t seed = 0;
  std::size_t trials = 0;  // 0 picks the suite default
  std::optional<IntervalUnion> omega;
  std::optional<BoundaryMatrix> boundary;
  std::optional<Lattice> lattice;
  Execution execution = Execution::parallel;
};

struct CheckResult {
  std::string name;
  double tolerance = 0.0;
  double max_residual = 0.0;
  std::size_t evaluations = 0;

  bool passed() const { return max_residual <= tolerance; }
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::vector<CheckResult> checks;
  /// Serialized inputs of the first failing trial.
  std::optional<io::Json> counterexample;

  bool passed() const;
  io::Json to_json() const;
};

/// unitarity, grouplaw, eigen, parseval, localtranslation, tiling, pairmeasure.
const std::vector<std::string>& suite_names();

/// Throws Error(invalid_input) for an unknown suite name.
SuiteReport run_suite(std::string_view name, const SuiteOptions& options);

}  // namespace spectral_glue
