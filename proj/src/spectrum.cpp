#include "spectral_glue/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "spectral_glue/errors.hpp"

namespace spectral_glue {

namespace {

void require_bounded(const IntervalUnion& omega) {
  if (omega.empty()) throw Error(ErrorCode::degenerate_domain, "empty domain");
  if (!omega.bounded()) {
    throw Error(ErrorCode::unbounded_domain, "spectrum computation needs a bounded domain");
  }
}

Complex phase(double turns) { return std::polar(1.0, 2.0 * kPi * turns); }

// Sum of eigenphases of S mapped to [0, 2 pi).
double wrapped_phase_sum(const Eigen::MatrixXcd& s) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(s, false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::eig_failure, "eigenvalue iteration did not converge");
  }
  double total = 0.0;
  for (Eigen::Index j = 0; j < solver.eigenvalues().size(); ++j) {
    double a = std::arg(solver.eigenvalues()(j));
    if (a < 0.0) a += 2.0 * kPi;
    total += a;
  }
  return total;
}

// Basis of span(V) obtained by projecting standard basis vectors greedily,
// largest projection first, ties to the lower index. Each vector has a real
// positive entry at its anchor index.
std::vector<Eigen::VectorXcd> canonical_basis(const Eigen::MatrixXcd& v) {
  const Eigen::Index p = v.rows();
  std::vector<Eigen::VectorXcd> chosen;
  Eigen::MatrixXcd projector = v * v.adjoint();
  for (Eigen::Index step = 0; step < v.cols(); ++step) {
    Eigen::Index best = 0;
    double best_norm = -1.0;
    for (Eigen::Index j = 0; j < p; ++j) {
      const double n = projector.col(j).norm();
      if (n > best_norm * (1.0 + 1e-9)) {
        best_norm = n;
        best = j;
      }
    }
    Eigen::VectorXcd c = projector.col(best) / best_norm;
    chosen.push_back(c);
    projector -= c * c.adjoint();
  }
  return chosen;
}

std::vector<Eigen::VectorXcd> weighted_orthonormal(const std::vector<Eigen::VectorXcd>& vs,
                                                   const Eigen::VectorXd& lengths) {
  std::vector<Eigen::VectorXcd> out;
  auto dot = [&](const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
    Complex s{0.0, 0.0};
    for (Eigen::Index i = 0; i < a.size(); ++i) s += a(i) * std::conj(b(i)) * lengths(i);
    return s;
  };
  for (const auto& v : vs) {
    Eigen::VectorXcd w = v;
    for (const auto& u : out) w -= dot(w, u) * u;
    w /= std::sqrt(dot(w, w).real());
    out.push_back(w);
  }
  return out;
}

void bisect(const IntervalUnion& omega, const BoundaryMatrix& b, double lo, double hi, long count_lo,
            long count_hi, double tol, std::vector<double>& roots) {
  const long crossings = count_lo - count_hi;
  if (crossings == 0) return;
  if (crossings < 0) {
    throw Error(ErrorCode::winding_mismatch, "eigen count increased along lambda");
  }
  if (hi - lo <= tol) {
    roots.insert(roots.end(), static_cast<std::size_t>(crossings), 0.5 * (lo + hi));
    return;
  }
  const double mid = 0.5 * (lo + hi);
  const long count_mid = eigen_count(omega, b, mid);
  bisect(omega, b, lo, mid, count_lo, count_mid, tol, roots);
  bisect(omega, b, mid, hi, count_mid, count_hi, tol, roots);
}

struct Grid {
  double lo;
  double hi;
  std::size_t cells;
  double at(std::size_t g) const {
    return g == cells ? hi : lo + (hi - lo) * static_cast<double>(g) / static_cast<double>(cells);
  }
};

std::vector<double> scan_serial(const IntervalUnion& omega, const BoundaryMatrix& b,
                                const Grid& grid, double tol) {
  std::vector<long> counts(grid.cells + 1);
  for (std::size_t g = 0; g <= grid.cells; ++g) counts[g] = eigen_count(omega, b, grid.at(g));
  std::vector<double> roots;
  for (std::size_t g = 0; g < grid.cells; ++g) {
    bisect(omega, b, grid.at(g), grid.at(g + 1), counts[g], counts[g + 1], tol, roots);
  }
  return roots;
}

std::vector<double> scan_parallel(const IntervalUnion& omega, const BoundaryMatrix& b,
                                  const Grid& grid, double tol) {
  const auto n = static_cast<long>(grid.cells);
  std::vector<long> counts(grid.cells + 1);
  std::vector<std::vector<double>> per_cell(grid.cells);
  std::vector<std::string> errors(grid.cells + 1);
  const int workers = worker_count();

#pragma omp parallel for schedule(static) num_threads(workers)
  for (long g = 0; g <= n; ++g) {
    try {
      counts[g] = eigen_count(omega, b, grid.at(static_cast<std::size_t>(g)));
    } catch (const std::exception& e) {
      errors[g] = e.what();
    }
  }
  for (const auto& e : errors) {
    if (!e.empty()) throw Error(ErrorCode::eig_failure, e);
  }

#pragma omp parallel for schedule(dynamic) num_threads(workers)
  for (long g = 0; g < n; ++g) {
    try {
      bisect(omega, b, grid.at(static_cast<std::size_t>(g)), grid.at(static_cast<std::size_t>(g + 1)),
             counts[g], counts[g + 1], tol, per_cell[g]);
    } catch (const std::exception& e) {
      errors[g] = e.what();
    }
  }
  for (const auto& e : errors) {
    if (!e.empty()) throw Error(ErrorCode::winding_mismatch, e);
  }

  std::vector<double> roots;
  for (const auto& cell : per_cell) roots.insert(roots.end(), cell.begin(), cell.end());
  return roots;
}

}  // namespace

std::size_t SpectrumSet::total_multiplicity() const {
  std::size_t n = 0;
  for (const auto& p : points) n += p.multiplicity;
  return n;
}

SecularMatrix secular(const IntervalUnion& omega, const BoundaryMatrix& boundary, double lambda) {
  require_bounded(omega);
  const auto p = static_cast<Eigen::Index>(omega.size());
  if (boundary.entries.rows() != p || boundary.entries.cols() != p) {
    throw Error(ErrorCode::invalid_input, "boundary matrix must be p x p for a bounded domain");
  }
  SecularMatrix out{lambda, Eigen::MatrixXcd(p, p), Eigen::MatrixXcd(p, p)};
  for (Eigen::Index k = 0; k < p; ++k) {
    const Interval& ck = omega[static_cast<std::size_t>(k)];
    for (Eigen::Index i = 0; i < p; ++i) {
      const Interval& ci = omega[static_cast<std::size_t>(i)];
      const Complex b = boundary.entries(i, k);
      out.s(k, i) = phase(-lambda * ck.length()) * b;
      out.m(k, i) = phase(-lambda * ck.hi) * b * phase(lambda * ci.lo);
    }
  }
  return out;
}

Eigenphases eigenphases(const Eigen::MatrixXcd& s) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(s, true);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::eig_failure, "eigenvalue iteration did not converge");
  }
  Eigen::MatrixXcd vecs = solver.eigenvectors();
  for (Eigen::Index j = 0; j < vecs.cols(); ++j) vecs.col(j).normalize();
  const Eigen::VectorXcd& vals = solver.eigenvalues();
  const double residual = (s * vecs - vecs * vals.asDiagonal()).norm();
  if (!(residual <= kEigResidualTol)) {
    throw Error(ErrorCode::eig_failure, "diagonalization residual " + std::to_string(residual));
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(vals.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::vector<double> raw(order.size());
  for (std::size_t j = 0; j < raw.size(); ++j) {
    double a = std::arg(vals(static_cast<Eigen::Index>(j)));
    if (a <= -kPi) a = kPi;
    raw[j] = a;
  }
  std::sort(order.begin(), order.end(),
            [&](Eigen::Index a, Eigen::Index b) { return raw[a] < raw[b]; });
  Eigenphases out;
  out.vectors.resize(vecs.rows(), vecs.cols());
  for (std::size_t j = 0; j < order.size(); ++j) {
    out.phases.push_back(raw[order[j]]);
    out.vectors.col(static_cast<Eigen::Index>(j)) = vecs.col(order[j]);
  }
  return out;
}

long eigen_count(const IntervalUnion& omega, const BoundaryMatrix& boundary, double lambda) {
  const SecularMatrix sm = secular(omega, boundary, lambda);
  const double base = std::arg(boundary.entries.transpose().determinant());
  const double unwrapped_sum = base - 2.0 * kPi * lambda * measure(omega);
  return std::lround((unwrapped_sum - wrapped_phase_sum(sm.s)) / (2.0 * kPi));
}

double det_winding(const IntervalUnion& omega, const BoundaryMatrix& boundary, double a, double b) {
  require_bounded(omega);
  const double speed = measure(omega);
  const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(std::abs(b - a) * 8.0 * speed)));
  Complex prev = secular(omega, boundary, a).s.determinant();
  double total = 0.0;
  for (std::size_t k = 1; k <= steps; ++k) {
    const double lambda = a + (b - a) * static_cast<double>(k) / static_cast<double>(steps);
    const Complex cur = secular(omega, boundary, lambda).s.determinant();
    total += std::arg(cur / prev);
    prev = cur;
  }
  return total;
}

SpectrumSet find_spectrum(const IntervalUnion& omega, const BoundaryMatrix& boundary, double lo,
                          double hi, const SpectrumOptions& options) {
  require_bounded(omega);
  const EvolutionEngine engine = build_engine(omega, boundary);
  const BoundaryMatrix& b = engine.boundary();
  if (!(lo < hi)) throw Error(ErrorCode::invalid_input, "window needs lo < hi");

  const double step = 1.0 / (8.0 * omega.max_length());
  Grid grid{lo - step, hi + step, 0};
  grid.cells = static_cast<std::size_t>(std::ceil((grid.hi - grid.lo) / step));

  std::vector<double> roots = options.execution == Execution::parallel
                                  ? scan_parallel(omega, b, grid, options.tol)
                                  : scan_serial(omega, b, grid, options.tol);
  std::sort(roots.begin(), roots.end());

  const auto p = static_cast<Eigen::Index>(omega.size());
  Eigen::VectorXd lengths(p);
  for (Eigen::Index i = 0; i < p; ++i) lengths(i) = omega[static_cast<std::size_t>(i)].length();

  SpectrumSet out{omega, lo, hi, {}};
  const double edge = 10.0 * options.tol;
  for (std::size_t i = 0; i < roots.size();) {
    std::size_t j = i + 1;
    while (j < roots.size() && roots[j] - roots[j - 1] <= kRootClusterTol) ++j;
    const double lambda =
        std::accumulate(roots.begin() + static_cast<long>(i), roots.begin() + static_cast<long>(j), 0.0) /
        static_cast<double>(j - i);
    const std::size_t mult = j - i;
    i = j;
    if (lambda < lo - edge || lambda > hi + edge) continue;

    const SecularMatrix sm = secular(omega, b, lambda);
    const Eigen::MatrixXcd shifted = sm.m - Eigen::MatrixXcd::Identity(p, p);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(shifted, Eigen::ComputeFullV);
    if (mult > static_cast<std::size_t>(p)) {
      throw Error(ErrorCode::eig_failure, "multiplicity exceeds component count");
    }
    const auto m = static_cast<Eigen::Index>(mult);
    const Eigen::MatrixXcd kernel = svd.matrixV().rightCols(m);
    SpectrumPoint point{lambda, mult, canonical_basis(kernel), {}};
    for (const auto& c : point.coeff_vectors) {
      const double residual = (sm.m * c - c).norm();
      if (!(residual <= kEigResidualTol)) {
        throw Error(ErrorCode::eig_failure, "eigenvector residual " + std::to_string(residual) +
                                                " at lambda " + std::to_string(lambda));
      }
    }
    point.function_coeffs = weighted_orthonormal(point.coeff_vectors, lengths);
    out.points.push_back(std::move(point));
  }

  const double expected = -det_winding(omega, b, lo, hi) / (2.0 * kPi);
  const double found = static_cast<double>(out.total_multiplicity());
  if (std::abs(found - expected) > static_cast<double>(p) + 1e-6) {
    throw Error(ErrorCode::winding_mismatch, "found " + std::to_string(found) +
                                                 " eigenvalues, det winding predicts " +
                                                 std::to_string(expected));
  }
  return out;
}

std::vector<PiecewiseExp> eigenfunctions(const SpectrumPoint& point, const IntervalUnion& omega) {
  std::vector<PiecewiseExp> out;
  for (const auto& c : point.function_coeffs) {
    std::vector<Piece> pieces;
    for (std::size_t g = 0; g < omega.size(); ++g) {
      pieces.push_back({omega[g], c(static_cast<Eigen::Index>(g)), point.lambda});
    }
    out.emplace_back(std::move(pieces));
  }
  return out;
}

double verify_eigen(const EvolutionEngine& engine, const SpectrumPoint& point,
                    std::span<const double> times) {
  double worst = 0.0;
  for (const auto& e : eigenfunctions(point, engine.omega())) {
    for (double t : times) {
      const PiecewiseExp diff = engine.evolve(e, t) - phase(point.lambda * t) * e;
      worst = std::max(worst, norm(diff));
    }
  }
  return worst;
}

double parseval_check(const SpectrumSet& spectrum, const PiecewiseExp& f, Execution execution) {
  const double f2 = inner_product(f, f).real();
  if (f2 == 0.0) throw Error(ErrorCode::invalid_input, "parseval ratio of the zero function");
  const auto n = static_cast<long>(spectrum.points.size());
  std::vector<double> terms(spectrum.points.size(), 0.0);
  auto term = [&](long i) {
    double s = 0.0;
    for (const auto& e : eigenfunctions(spectrum.points[static_cast<std::size_t>(i)], spectrum.omega)) {
      s += std::norm(inner_product(f, e));
    }
    return s;
  };
  if (execution == Execution::parallel) {
#pragma omp parallel for schedule(static) num_threads(worker_count())
    for (long i = 0; i < n; ++i) terms[static_cast<std::size_t>(i)] = term(i);
  } else {
    for (long i = 0; i < n; ++i) terms[static_cast<std::size_t>(i)] = term(i);
  }
  return std::accumulate(terms.begin(), terms.end(), 0.0) / f2;
}

double separation(const SpectrumSet& spectrum) {
  if (spectrum.points.size() < 2) {
    throw Error(ErrorCode::invalid_input, "separation needs at least two spectrum points");
  }
  double gap = kInf;
  for (std::size_t i = 1; i < spectrum.points.size(); ++i) {
    gap = std::min(gap, spectrum.points[i].lambda - spectrum.points[i - 1].lambda);
  }
  return gap;
}

}  // namespace spectral_glue
