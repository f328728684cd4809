#include "spectral_glue/spectral_pair.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "spectral_glue/errors.hpp"
#include "spectral_glue/random.hpp"

namespace spectral_glue {

namespace {

struct RowMax {
  double value = 0.0;
  std::size_t j = 0;
};

RowMax row_max(const IntervalUnion& omega, std::span<const double> lambdas, std::size_t i) {
  RowMax out;
  for (std::size_t j = i + 1; j < lambdas.size(); ++j) {
    const double v = std::abs(omega_hat(omega, lambdas[j] - lambdas[i]));
    if (v > out.value) out = {v, j};
  }
  return out;
}

// Closed-form coefficient <f, e_lambda> of a piecewise exponential.
Complex coefficient(const PiecewiseExp& f, double lambda) {
  Complex total{0.0, 0.0};
  for (const auto& p : f.pieces()) total += p.amp * chi_hat(p.support, lambda - p.freq);
  return total;
}

}  // namespace

PiecewiseExp completeness_trial(const IntervalUnion& omega, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> count(1, 3);
  std::vector<Piece> pieces;
  for (const auto& component : omega.intervals()) {
    if (!component.bounded()) throw Error(ErrorCode::unbounded_domain, "trial functions need bounded components");
    const int c = count(rng);
    // Lengths len/8 + (remaining share), so every piece keeps a fixed fraction.
    std::vector<double> w(static_cast<std::size_t>(c));
    for (auto& x : w) x = -std::log(1.0 - unit(rng));
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    const double len = component.length();
    const double floor_len = len / 8.0;
    double lo = component.lo;
    for (int i = 0; i < c; ++i) {
      const double piece_len = floor_len + (len - c * floor_len) * w[static_cast<std::size_t>(i)] / total;
      const double hi = i + 1 == c ? component.hi : lo + piece_len;
      const Complex amp = std::polar(0.5 + 0.5 * unit(rng), 2.0 * kPi * unit(rng));
      pieces.push_back({{lo, hi}, amp, -5.0 + 10.0 * unit(rng)});
      lo = hi;
    }
  }
  return PiecewiseExp(std::move(pieces));
}

OrthogonalityReport orthogonality_test(const IntervalUnion& omega, std::span<const double> lambdas,
                                       double tol, Execution execution) {
  if (!omega.bounded()) throw Error(ErrorCode::unbounded_domain, "orthogonality needs a bounded domain");
  const auto n = static_cast<long>(lambdas.size());
  std::vector<RowMax> rows(lambdas.size());
  if (execution == Execution::parallel) {
#pragma omp parallel for schedule(dynamic) num_threads(worker_count())
    for (long i = 0; i < n; ++i) rows[static_cast<std::size_t>(i)] = row_max(omega, lambdas, static_cast<std::size_t>(i));
  } else {
    for (long i = 0; i < n; ++i) rows[static_cast<std::size_t>(i)] = row_max(omega, lambdas, static_cast<std::size_t>(i));
  }
  OrthogonalityReport report;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].value > report.max_offdiag) {
      report.max_offdiag = rows[i].value;
      report.worst_i = i;
      report.worst_j = rows[i].j;
    }
  }
  report.passed = report.max_offdiag <= tol;
  return report;
}

double completeness_ratio(const IntervalUnion& omega, std::span<const double> lambdas,
                          const PiecewiseExp& f) {
  if (!omega.bounded()) throw Error(ErrorCode::unbounded_domain, "completeness needs a bounded domain");
  const PiecewiseExp g = restrict(f, omega);
  const double f2 = inner_product(g, g).real();
  if (!(f2 > 0.0)) throw Error(ErrorCode::invalid_input, "completeness ratio of the zero function");
  double total = 0.0;
  for (double lambda : lambdas) total += std::norm(coefficient(g, lambda));
  return total / (measure(omega) * f2);
}

double tail_budget(double half_width) {
  if (!(half_width > 0.0)) return 1.0;
  return std::min(1.0, kTailBudgetConstant / half_width);
}

CompletenessReport completeness_estimate(const IntervalUnion& omega, std::span<const double> lambdas,
                                         std::size_t trials, std::uint64_t seed, Execution execution) {
  CompletenessReport report;
  report.ratios.assign(trials, 0.0);
  auto trial = [&](std::size_t k) {
    Rng rng(seed + k);
    return completeness_ratio(omega, lambdas, completeness_trial(omega, rng));
  };
  const auto n = static_cast<long>(trials);
  if (execution == Execution::parallel) {
#pragma omp parallel for schedule(dynamic) num_threads(worker_count())
    for (long k = 0; k < n; ++k) report.ratios[static_cast<std::size_t>(k)] = trial(static_cast<std::size_t>(k));
  } else {
    for (long k = 0; k < n; ++k) report.ratios[static_cast<std::size_t>(k)] = trial(static_cast<std::size_t>(k));
  }
  report.min_ratio = report.ratios.empty() ? 0.0 : *std::min_element(report.ratios.begin(), report.ratios.end());
  double half_width = 0.0;
  if (!lambdas.empty()) {
    const auto [lo, hi] = std::minmax_element(lambdas.begin(), lambdas.end());
    half_width = 0.5 * (*hi - *lo);
  }
  report.tail_budget = tail_budget(half_width);
  report.consistent = !report.ratios.empty() && report.min_ratio > 1.0 - report.tail_budget;
  return report;
}

bool local_translation_criterion(const SpectrumSet& spectrum) {
  constexpr double tol = 1e-8;
  for (const auto& point : spectrum.points) {
    if (point.multiplicity != 1 || point.coeff_vectors.size() != 1) return false;
    const Eigen::VectorXcd& c = point.coeff_vectors.front();
    const double scale = c.norm();
    for (Eigen::Index i = 1; i < c.size(); ++i) {
      if (std::abs(c(i) - c(0)) > tol * scale) return false;
    }
  }
  return true;
}

PairMeasureReport pair_measure_check(const IntervalUnion& omega, const Lattice& lattice, long n,
                                     const PiecewiseExp& f) {
  if (lattice.d2() > 0) throw Error(ErrorCode::not_full_rank, "use the product-form check");
  if (lattice.dim() != 1) throw Error(ErrorCode::invalid_input, "interval unions need a 1D lattice");
  if (!omega.bounded()) throw Error(ErrorCode::unbounded_domain, "pair measure check needs a bounded domain");
  if (n < 0) throw Error(ErrorCode::invalid_input, "window size must be non-negative");
  const PiecewiseExp g = restrict(f, omega);
  PairMeasureReport report;
  report.norm2 = inner_product(g, g).real();
  if (!(report.norm2 > 0.0)) throw Error(ErrorCode::invalid_input, "pair measure check of the zero function");

  const double a = std::abs(lattice.a()[0][0].get_d());
  const double weight = 1.0 / a;
  std::vector<double> terms;
  for (long k = -n; k <= n; ++k) terms.push_back(std::norm(coefficient(g, static_cast<double>(k) / a)));
  report.terms = terms.size();
  report.sum = weight * std::accumulate(terms.begin(), terms.end(), 0.0);
  report.defect = std::abs(report.norm2 - report.sum) / report.norm2;

  // |f^(xi)| <= V / (pi (|xi| - nu)) for |xi| > nu = max |frequency|.
  double v = 0.0, nu = 0.0;
  for (const auto& p : g.pieces()) {
    v += std::abs(p.amp);
    nu = std::max(nu, std::abs(p.freq));
  }
  const double r = static_cast<double>(n + 1) / a;
  const double h = 1.0 / a;
  if (r > nu) {
    const double gap = r - nu;
    const double one_side = 1.0 / (gap * gap) + 1.0 / (h * gap);
    report.tail_bound = weight * (v / kPi) * (v / kPi) * 2.0 * one_side / report.norm2;
  }
  return report;
}

PairMeasureReport pair_measure_check(const BoxUnion& omega, const Lattice& lattice, long n) {
  if (lattice.d2() > 0 || !omega.full_axes().empty()) {
    throw Error(ErrorCode::not_full_rank, "use the product-form check");
  }
  if (omega.dim() != lattice.dim()) throw Error(ErrorCode::invalid_input, "dimension mismatch");
  if (n < 0) throw Error(ErrorCode::invalid_input, "window size must be non-negative");
  const auto d = static_cast<Eigen::Index>(omega.dim());
  const Eigen::MatrixXd basis = lattice.dual_basis();
  PairMeasureReport report;
  report.norm2 = omega.factor_measure();
  if (!(report.norm2 > 0.0)) throw Error(ErrorCode::invalid_input, "empty domain");

  std::vector<long> k(static_cast<std::size_t>(d), -n);
  std::vector<double> terms;
  while (true) {
    Eigen::VectorXd kv(d);
    for (Eigen::Index i = 0; i < d; ++i) kv(i) = static_cast<double>(k[static_cast<std::size_t>(i)]);
    const Eigen::VectorXd xi = basis * kv;
    Complex value{0.0, 0.0};
    for (const auto& box : omega.boxes()) {
      Complex term{1.0, 0.0};
      for (Eigen::Index j = 0; j < d; ++j) term *= chi_hat(box[static_cast<std::size_t>(j)], xi(j));
      value += term;
    }
    terms.push_back(std::norm(value));
    std::size_t axis = 0;
    while (axis < k.size() && k[axis] == n) {
      k[axis] = -n;
      ++axis;
    }
    if (axis == k.size()) break;
    ++k[axis];
  }
  report.terms = terms.size();
  report.sum = std::accumulate(terms.begin(), terms.end(), 0.0) / std::abs(lattice.det().get_d());
  report.defect = std::abs(report.norm2 - report.sum) / report.norm2;
  return report;
}

PairMeasureReport product_pair_measure_check(const BoxUnion& omega, const Lattice& lattice, long n) {
  const BoundedFactor factor = bounded_factor(omega, lattice);
  return pair_measure_check(factor.omega, factor.lattice, n);
}

}  // namespace spectral_glue
