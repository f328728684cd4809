#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>
#include <Eigen/Dense>

#include "spectral_glue/boundary_group.hpp"
#include "spectral_glue/geometry.hpp"
#include "spectral_glue/pwexp.hpp"

namespace spectral_glue {

using Rational = mpq_class;

/// Parses "p/q", integers and decimals such as "-0.125" or "3e-2" exactly.
Rational parse_rational(std::string_view text);
/// Exact binary value of a finite double.
Rational exact_rational(double x);
std::string to_string(const Rational& q);

/**
 * Discrete subgroup T = A (Z^{d1} x {0}) of R^d. Columns of A are the
 * generators; only the first d1 of them generate T, the rest complete a basis.
 */
class Lattice {
 public:
  Lattice(std::vector<std::vector<Rational>> a, std::size_t d1);
  /// One-dimensional lattice a Z.
  static Lattice line(const Rational& a);

  std::size_t dim() const { return a_.size(); }
  std::size_t d1() const { return d1_; }
  std::size_t d2() const { return dim() - d1_; }
  const std::vector<std::vector<Rational>>& a() const { return a_; }
  const Rational& det() const { return det_; }
  const std::vector<std::vector<Rational>>& inverse() const { return inverse_; }

  Eigen::MatrixXd a_double() const;
  /// (A^T)^{-1}, whose columns generate the dual lattice when d2 = 0.
  Eigen::MatrixXd dual_basis() const;

 private:
  std::vector<std::vector<Rational>> a_;
  std::size_t d1_;
  Rational det_;
  std::vector<std::vector<Rational>> inverse_;
};

/// Box union with exact rational sides; full axes carry no bounds.
struct ExactBoxUnion {
  using Side = std::pair<Rational, Rational>;
  std::size_t dim = 0;
  std::vector<std::vector<Side>> boxes;
  std::vector<std::size_t> full_axes;

  Rational factor_measure() const;
};

ExactBoxUnion to_exact(const BoxUnion& omega);
ExactBoxUnion to_exact(const IntervalUnion& omega);

struct TilingReport {
  bool tiles = false;
  /// Measure of a fundamental domain where translates overlap, counted with
  /// excess multiplicity, and where no translate lands.
  Rational overlap;
  Rational uncovered;
  /// Measure of the (bounded factor of) omega and of a fundamental domain of T.
  Rational measure;
  Rational cell_measure;
};

/**
 * Decides whether omega + T partitions R^d up to measure zero, exactly.
 *
 * Full rank: boxes are reduced modulo a diagonal sublattice of T, shifted by
 * coset representatives, and the covering multiplicity is evaluated cell by
 * cell. Product case: full axes are stripped and the bounded factor is tested
 * against the projected lattice. Throws IncompatibleRank when the full axes
 * do not match d2.
 */
TilingReport tiles_by(const ExactBoxUnion& omega, const Lattice& lattice);
TilingReport tiles_by(const IntervalUnion& omega, const Lattice& lattice);

struct BoundedFactor {
  BoxUnion omega;   // the bounded factor Omega_1, dimension d1
  Lattice lattice;  // generators projected onto the bounded axes
};

/// Strips the full axes of a product domain. Throws IncompatibleRank when the
/// full axes do not match d2 or the projected generators are degenerate.
BoundedFactor bounded_factor(const BoxUnion& omega, const Lattice& lattice);

/// Points (A^T)^{-1} k, k in Z^d, inside the closed box [lo, hi]. Throws
/// ContinuousDual when d2 > 0.
std::vector<Eigen::VectorXd> dual_points(const Lattice& lattice, const Eigen::VectorXd& lo,
                                         const Eigen::VectorXd& hi);

/// y(x + t) and gamma(x + t) of the tiling decomposition x + t = y + gamma.
struct TilingStep {
  Eigen::VectorXd y;
  Eigen::VectorXd gamma;
};

/**
 * Tiling decomposition of R^d for a verified tiling pair. Construction runs
 * tiles_by and throws NotATiling when it fails.
 */
class TilingMap {
 public:
  TilingMap(const BoxUnion& omega, const Lattice& lattice);

  /// Throws BoundaryPoint when x + t lies within 1e-12 of a tile boundary.
  TilingStep translate(const Eigen::VectorXd& x, const Eigen::VectorXd& t) const;

 private:
  BoxUnion omega_;
  std::vector<std::size_t> factor_axes_;
  Eigen::MatrixXd generators_;       // d x d1
  Eigen::MatrixXd factor_inverse_;   // d1 x d1, inverse of generators restricted to factor axes
};

/// y(x + t) for the one-dimensional case.
double tiling_translate(const IntervalUnion& omega, const Lattice& lattice, double x, double t);

/// U(t) f(x) = f(x + t - gamma(x + t)), exact on piecewise exponentials (1D).
PiecewiseExp tiling_evolve(const IntervalUnion& omega, const Lattice& lattice,
                           const PiecewiseExp& f, double t);

struct PrutReport {
  double fourier_residual = 0.0;  // max |F(U f)(g) - exp(2 pi i g t) F f(g)|
  double norm_defect = 0.0;       // | ||U f|| - ||f|| |
};

/// Checks the tiling group against the multiplier exp(2 pi i g t) on the dual
/// points in [dual_lo, dual_hi].
PrutReport prut_group_check(const IntervalUnion& omega, const Lattice& lattice,
                            const PiecewiseExp& f, double t, double dual_lo, double dual_hi);

/// Boundary matrix of the tiling group: mass leaving beta_k continues at the
/// left endpoint alpha_i with beta_k - alpha_i in T. Throws NotATiling.
BoundaryMatrix boundary_from_tiling(const IntervalUnion& omega, const Lattice& lattice);

/// integral of f(x) exp(-2 pi i xi x) dx.
Complex fourier(const PiecewiseExp& f, double xi);

}  // namespace spectral_glue
