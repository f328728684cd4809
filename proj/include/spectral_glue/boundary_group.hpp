#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "spectral_glue/geometry.hpp"
#include "spectral_glue/pwexp.hpp"

namespace spectral_glue {

inline constexpr double kUnitarityTol = 1e-10;

/**
 * Transition amplitudes b(i,k) from finite left endpoints alpha_i (rows) to
 * finite right endpoints beta_k (columns). row_index / col_index hold the
 * component ids of those endpoints in increasing order.
 */
struct BoundaryMatrix {
  Eigen::MatrixXcd entries;
  std::vector<std::size_t> row_index;
  std::vector<std::size_t> col_index;

  /// Attaches the endpoint indexing of omega to a bare matrix.
  static BoundaryMatrix for_domain(const IntervalUnion& omega, Eigen::MatrixXcd entries);
  static BoundaryMatrix identity(const IntervalUnion& omega);

  /// max |(B^* B - I)_{ij}|, or +inf for a non-square matrix.
  double unitarity_defect() const;

  /// b(i,k) addressed by row/column position.
  Complex operator()(std::size_t row, std::size_t col) const { return entries(row, col); }
};

/**
 * The unitary group U(t) glued from a boundary matrix: inside a component it
 * translates, and whatever leaves through alpha_i re-enters at every finite
 * beta_k with amplitude b(i,k). Immutable once built.
 */
class EvolutionEngine {
 public:
  const IntervalUnion& omega() const { return omega_; }
  const BoundaryMatrix& boundary() const { return boundary_; }
  /// Base step eps0 = l/4; +inf when every component is unbounded.
  double base_step() const { return base_step_; }

  /// One explicit step, |t| <= 2 eps0. Negative t uses the adjoint formula.
  PiecewiseExp evolve_small(const PiecewiseExp& f, double t) const;

  /// U(t) f for any real t, composed from small steps.
  PiecewiseExp evolve(const PiecewiseExp& f, double t) const;

 private:
  friend EvolutionEngine build_engine(const IntervalUnion& omega, const BoundaryMatrix& boundary);
  EvolutionEngine(IntervalUnion omega, BoundaryMatrix boundary, double base_step);

  IntervalUnion omega_;
  BoundaryMatrix boundary_;
  double base_step_;
  std::vector<long> row_of_component_;
  std::vector<long> col_of_component_;
};

/// Validates (omega, B) and builds the group. Throws NoExtension, NotUnitary,
/// DegenerateDomain or InvalidInput.
EvolutionEngine build_engine(const IntervalUnion& omega, const BoundaryMatrix& boundary);

struct LocalTranslationReport {
  bool passed = true;
  double max_discrepancy = 0.0;
  std::size_t samples = 0;
  // Worst sample: V inside component `from`, V + t inside component `to`.
  Interval worst_v{};
  double worst_t = 0.0;
  std::size_t worst_from = 0;
  std::size_t worst_to = 0;
};

/**
 * Samples (V, t) with V and V + t inside components of omega, including pairs
 * of different components, and compares U(t) f with f(. + t) on V for random
 * test functions. Discrepancies are relative to ||f||.
 */
LocalTranslationReport check_local_translation(const EvolutionEngine& engine, std::size_t samples,
                                               double tol, std::uint64_t seed = 0);

/// Local-translation discrepancy for one explicit (V, t) and test function.
double local_translation_discrepancy(const EvolutionEngine& engine, const Interval& v, double t,
                                     const PiecewiseExp& f);

enum class Verdict { no, unknown, yes };

const char* to_string(Verdict v);

struct GateReport {
  bool extension_exists = false;
  Verdict spectral_possible = Verdict::unknown;
  std::vector<std::string> reasons;
};

/// Necessary conditions for extensions and spectrality that can be read off
/// the interval structure alone.
GateReport gates(const IntervalUnion& omega);

}  // namespace spectral_glue
