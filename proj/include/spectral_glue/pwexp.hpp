#pragma once

#include <complex>
#include <span>
#include <vector>

#include "spectral_glue/geometry.hpp"

namespace spectral_glue {

// Frequencies closer than this are treated as one when pieces are combined.
inline constexpr double kFrequencyMergeTol = 1e-12;
// Pieces shorter than this are clipping residue and are dropped.
inline constexpr double kMinPieceLength = 1e-14;

/// amp * exp(2 pi i freq x) on the open interval `support`, zero elsewhere.
struct Piece {
  Interval support;
  Complex amp;
  double freq = 0.0;

  friend bool operator==(const Piece&, const Piece&) = default;
};

/**
 * Returns the canonical form of a list of pieces.
 *
 * The real line is cut at every piece endpoint (endpoints within
 * kMinPieceLength of each other are identified), terms with matching
 * frequency on a segment are summed, vanishing terms are dropped and
 * neighbouring segments carrying identical terms are joined again. Output is
 * sorted by (support.lo, freq); supports of distinct segments are disjoint.
 * Applying it twice gives the same piece list bit for bit.
 */
std::vector<Piece> canonicalize(std::vector<Piece> pieces);

/**
 * Finite sum of exponentials on bounded subintervals, always in canonical
 * form. This class is closed under translation, restriction and the boundary
 * evolution, so every computation on it is exact up to rounding.
 */
class PiecewiseExp {
 public:
  PiecewiseExp() = default;
  explicit PiecewiseExp(std::vector<Piece> pieces);

  static PiecewiseExp indicator(const Interval& support);
  static PiecewiseExp exponential(const Interval& support, double freq, Complex amp = 1.0);

  const std::vector<Piece>& pieces() const { return pieces_; }
  bool empty() const { return pieces_.empty(); }

  /// Pointwise value; endpoints of pieces are treated as outside.
  Complex operator()(double x) const;

  /// Smallest interval containing every support (empty function gives {0,0}).
  Interval hull() const;

  PiecewiseExp operator-() const;
  friend PiecewiseExp operator+(const PiecewiseExp& f, const PiecewiseExp& g);
  friend PiecewiseExp operator-(const PiecewiseExp& f, const PiecewiseExp& g);
  friend PiecewiseExp operator*(Complex c, const PiecewiseExp& f);

  friend bool operator==(const PiecewiseExp&, const PiecewiseExp&) = default;

 private:
  std::vector<Piece> pieces_;
};

/// L2 inner product <f, g> = integral of f * conj(g).
Complex inner_product(const PiecewiseExp& f, const PiecewiseExp& g);

double norm(const PiecewiseExp& f);

/// (T(t) f)(x) = f(x + t).
PiecewiseExp translate(const PiecewiseExp& f, double t);

/// Multiplies by the indicator of omega.
PiecewiseExp restrict(const PiecewiseExp& f, const IntervalUnion& omega);

/// Sum of several functions with a single canonicalization pass.
PiecewiseExp sum(std::span<const PiecewiseExp> terms);

/// True when every support lies within omega, up to `tol` at the ends.
bool supported_in(const PiecewiseExp& f, const IntervalUnion& omega, double tol = 1e-12);

}  // namespace spectral_glue
