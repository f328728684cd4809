#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "spectral_glue/geometry.hpp"
#include "spectral_glue/pwexp.hpp"

namespace spectral_glue {

using Rng = std::mt19937_64;

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the phases
/// of diag(R) moved into Q.
Eigen::MatrixXcd random_unitary(std::size_t p, Rng& rng);

/// Bounded union of p intervals with lengths in [min_len, max_len] and gaps in
/// [min_gap, max_gap], starting at a random offset in [-2, 2].
IntervalUnion random_bounded_omega(std::size_t p, Rng& rng, double min_len = 0.5,
                                   double max_len = 2.0, double min_gap = 0.1,
                                   double max_gap = 1.5);

/// Random test function on omega: up to max_pieces pieces, amplitudes in the
/// unit disk, frequencies in [-5, 5], supports uniform within components.
/// Unbounded components contribute through a window of length 4 at their
/// finite end.
PiecewiseExp random_pwexp(const IntervalUnion& omega, Rng& rng, std::size_t max_pieces = 4);

/// Random test function supported inside the bounded interval `support`.
PiecewiseExp random_pwexp_on(const Interval& support, Rng& rng, std::size_t max_pieces = 3);

}  // namespace spectral_glue
