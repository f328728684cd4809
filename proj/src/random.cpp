#include "spectral_glue/random.hpp"

#include <algorithm>
#include <cmath>

namespace spectral_glue {

namespace {

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Complex unit_disk(Rng& rng) {
  const double r = std::sqrt(uniform(rng, 0.0, 1.0));
  return std::polar(r, uniform(rng, -kPi, kPi));
}

Interval sampling_window(const Interval& iv) {
  if (iv.bounded()) return iv;
  if (iv.lo > -kInf) return {iv.lo, iv.lo + 4.0};
  if (iv.hi < kInf) return {iv.hi - 4.0, iv.hi};
  return {-2.0, 2.0};
}

}  // namespace

Eigen::MatrixXcd random_unitary(std::size_t p, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  const auto n = static_cast<Eigen::Index>(p);
  Eigen::MatrixXcd z(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) z(i, j) = Complex(gauss(rng), gauss(rng));
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

IntervalUnion random_bounded_omega(std::size_t p, Rng& rng, double min_len, double max_len,
                                   double min_gap, double max_gap) {
  std::vector<Interval> ivs;
  double x = uniform(rng, -2.0, 2.0);
  for (std::size_t i = 0; i < p; ++i) {
    const double len = uniform(rng, min_len, max_len);
    ivs.push_back({x, x + len});
    x += len + uniform(rng, min_gap, max_gap);
  }
  return IntervalUnion(std::move(ivs));
}

PiecewiseExp random_pwexp_on(const Interval& support, Rng& rng, std::size_t max_pieces) {
  const Interval w = sampling_window(support);
  std::uniform_int_distribution<std::size_t> count(1, std::max<std::size_t>(1, max_pieces));
  std::vector<Piece> pieces;
  const std::size_t n = count(rng);
  for (std::size_t k = 0; k < n; ++k) {
    double a = uniform(rng, w.lo, w.hi);
    double b = uniform(rng, w.lo, w.hi);
    if (a > b) std::swap(a, b);
    if (b - a < 1e-3) continue;
    pieces.push_back({{a, b}, unit_disk(rng), uniform(rng, -5.0, 5.0)});
  }
  if (pieces.empty()) pieces.push_back({w, unit_disk(rng), uniform(rng, -5.0, 5.0)});
  return PiecewiseExp(std::move(pieces));
}

PiecewiseExp random_pwexp(const IntervalUnion& omega, Rng& rng, std::size_t max_pieces) {
  std::vector<Piece> pieces;
  std::uniform_int_distribution<std::size_t> pick(0, omega.size() - 1);
  std::uniform_int_distribution<std::size_t> count(1, std::max<std::size_t>(1, max_pieces));
  const std::size_t n = count(rng);
  for (std::size_t k = 0; k < n; ++k) {
    const auto f = random_pwexp_on(omega[pick(rng)], rng, 1);
    pieces.insert(pieces.end(), f.pieces().begin(), f.pieces().end());
  }
  return PiecewiseExp(std::move(pieces));
}

}  // namespace spectral_glue
