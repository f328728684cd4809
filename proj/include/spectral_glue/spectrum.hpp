#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "spectral_glue/boundary_group.hpp"
#include "spectral_glue/geometry.hpp"
#include "spectral_glue/parallel.hpp"
#include "spectral_glue/pwexp.hpp"

namespace spectral_glue {

// Roots closer than this are one spectrum point; the cluster size is its multiplicity.
inline constexpr double kRootClusterTol = 1e-8;
// Singular values of M(lambda) - I below this span the eigenspace.
inline constexpr double kEigenspaceSvdTol = 1e-7;
inline constexpr double kEigResidualTol = 1e-8;

/**
 * Secular matrices at one lambda for a bounded domain with p components.
 *
 *   M(lambda)_{k,i} = exp(-2 pi i lambda beta_k) b(i,k) exp(2 pi i lambda alpha_i)
 *   S(lambda)       = diag(exp(-2 pi i lambda l_k)) B^T
 *
 * S = Exp(lambda alpha) M Exp(-lambda alpha), so both have the same spectrum;
 * lambda is an eigenvalue of the generator exactly when 1 is an eigenvalue.
 */
struct SecularMatrix {
  double lambda = 0.0;
  Eigen::MatrixXcd s;
  Eigen::MatrixXcd m;
};

SecularMatrix secular(const IntervalUnion& omega, const BoundaryMatrix& boundary, double lambda);

struct Eigenphases {
  std::vector<double> phases;  // sorted, in (-pi, pi]
  Eigen::MatrixXcd vectors;    // column j belongs to phases[j]
};

/// Diagonalizes a unitary matrix. Throws EigFailure when ||S V - V D|| > 1e-8.
Eigenphases eigenphases(const Eigen::MatrixXcd& s);

struct SpectrumPoint {
  double lambda = 0.0;
  std::size_t multiplicity = 0;
  /// Euclidean-orthonormal solutions of M(lambda) c = c.
  std::vector<Eigen::VectorXcd> coeff_vectors;
  /// The same eigenspace, orthonormal for sum_G c_G conj(d_G) l_G, i.e. the
  /// coefficients of L2-orthonormal eigenfunctions.
  std::vector<Eigen::VectorXcd> function_coeffs;
};

struct SpectrumSet {
  IntervalUnion omega;
  double window_lo = 0.0;
  double window_hi = 0.0;
  std::vector<SpectrumPoint> points;  // sorted by lambda

  std::size_t total_multiplicity() const;
};

struct SpectrumOptions {
  double tol = 1e-12;
  Execution execution = Execution::parallel;
};

/**
 * Number of eigenphase branches of S that have wrapped below 0 by lambda,
 * up to a constant: crossings in (a, b] equal count(a) - count(b).
 *
 * Uses that the unwrapped phases all decrease and that their sum is known in
 * closed form, arg det B^T - 2 pi lambda m(Omega).
 */
long eigen_count(const IntervalUnion& omega, const BoundaryMatrix& boundary, double lambda);

/**
 * All lambda in [lo, hi] with 1 in spec M(lambda), with multiplicities and
 * eigenvectors. Throws UnboundedDomain, NoExtension, NotUnitary, EigFailure
 * or WindingMismatch.
 */
SpectrumSet find_spectrum(const IntervalUnion& omega, const BoundaryMatrix& boundary, double lo,
                          double hi, const SpectrumOptions& options = {});

/// L2-normalized eigenfunctions sum_G c_G chi_G e_lambda of one spectrum point.
std::vector<PiecewiseExp> eigenfunctions(const SpectrumPoint& point, const IntervalUnion& omega);

/// max over t and k of ||U(t) E_k - exp(2 pi i lambda t) E_k||.
double verify_eigen(const EvolutionEngine& engine, const SpectrumPoint& point,
                    std::span<const double> times);

/// sum over the window of |<f, E_k>|^2 / ||f||^2 (Bessel: at most 1).
double parseval_check(const SpectrumSet& spectrum, const PiecewiseExp& f,
                      Execution execution = Execution::parallel);

/// Smallest gap between consecutive spectrum points (needs two points).
double separation(const SpectrumSet& spectrum);

/// Change of the continuously unwrapped arg det S(lambda) from a to b,
/// followed numerically on a grid fine enough that no step wraps.
double det_winding(const IntervalUnion& omega, const BoundaryMatrix& boundary, double a, double b);

}  // namespace spectral_glue
