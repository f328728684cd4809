#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "spectral_glue/geometry.hpp"
#include "spectral_glue/parallel.hpp"
#include "spectral_glue/pwexp.hpp"
#include "spectral_glue/random.hpp"
#include "spectral_glue/spectrum.hpp"
#include "spectral_glue/tiling.hpp"

namespace spectral_glue {

struct OrthogonalityReport {
  bool passed = true;
  /// max |<e_lambda, e_gamma>| over distinct pairs, = |omega_hat(gamma - lambda)|.
  double max_offdiag = 0.0;
  std::size_t worst_i = 0;
  std::size_t worst_j = 0;
};

/// Pairwise orthogonality of exponentials on a bounded domain.
OrthogonalityReport orthogonality_test(const IntervalUnion& omega, std::span<const double> lambdas,
                                       double tol, Execution execution = Execution::parallel);

/// sum_lambda |<f, e_lambda>|^2 / (m(Omega) ||f||^2). At most 1 for an
/// orthogonal family; 1 exactly when f lies in its closed span.
double completeness_ratio(const IntervalUnion& omega, std::span<const double> lambdas,
                          const PiecewiseExp& f);

/**
 * Trial function for completeness estimates: each component is cut into 1-3
 * pieces of at least 1/8 of its length, with amplitudes of modulus in
 * [0.5, 1] and frequencies in [-5, 5]. Bounding the jumps relative to the
 * norm is what makes an O(1/h) tail budget meaningful.
 */
PiecewiseExp completeness_trial(const IntervalUnion& omega, Rng& rng);

// Truncating a spectrum to |lambda - centre| <= h loses O(1/h) of an indicator's
// energy. Calibrated on (0,1) with Z and completeness_trial: N (1 - min ratio)
// stays near 0.7 for N >= 10 and reaches 2.05 at N = 5 (4000 trials).
inline constexpr double kTailBudgetConstant = 3.0;

/// kTailBudgetConstant / half_width, capped at 1.
double tail_budget(double half_width);

struct CompletenessReport {
  std::vector<double> ratios;  // one per trial, in trial order
  double min_ratio = 0.0;
  double tail_budget = 0.0;
  /// min_ratio > 1 - tail_budget: the candidate window is consistent with a
  /// spectrum. An estimate, not a proof.
  bool consistent = false;
};

/// Ratios for seeded random trial functions on omega; trial k uses seed + k.
CompletenessReport completeness_estimate(const IntervalUnion& omega, std::span<const double> lambdas,
                                         std::size_t trials, std::uint64_t seed,
                                         Execution execution = Execution::parallel);

/**
 * True when every point of the window is simple and its eigenvector is
 * constant across components (within 1e-8), i.e. the eigenfunctions are the
 * plain exponentials e_lambda on all of omega. Vacuously true on an empty
 * window.
 */
bool local_translation_criterion(const SpectrumSet& spectrum);

struct PairMeasureReport {
  double norm2 = 0.0;  // ||f||^2
  double sum = 0.0;    // |det A|^{-1} sum over the dual window of |f^(gamma*)|^2
  double defect = 0.0; // |norm2 - sum| / norm2
  /// Upper bound on the dual terms left out of the window, relative to
  /// norm2; absent when no bound is available.
  std::optional<double> tail_bound;
  std::size_t terms = 0;
};

/**
 * Parseval check of the lattice pair measure |det A|^{-1} sum delta_{gamma*}
 * on T* = (1/a) Z for a one-dimensional lattice a Z, using the dual points
 * k / a with |k| <= n. f is restricted to omega first.
 */
PairMeasureReport pair_measure_check(const IntervalUnion& omega, const Lattice& lattice, long n,
                                     const PiecewiseExp& f);

/**
 * The same check in R^d for f = indicator of a bounded box union and a
 * full-rank lattice, over dual points (A^T)^{-1} k with max |k_i| <= n.
 * Throws NotFullRank when d2 > 0.
 */
PairMeasureReport pair_measure_check(const BoxUnion& omega, const Lattice& lattice, long n);

/**
 * Product sets Omega_1 x R^{d2} with T = A (Z^{d1} x {0}): for f = g (x) h the
 * R^{d2} directions carry Lebesgue measure and contribute ||h||^2 exactly, so
 * the check reduces to the bounded factor with g = its indicator.
 */
PairMeasureReport product_pair_measure_check(const BoxUnion& omega, const Lattice& lattice, long n);

}  // namespace spectral_glue
