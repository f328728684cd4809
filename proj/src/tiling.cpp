#include "spectral_glue/tiling.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>

#include "spectral_glue/errors.hpp"

namespace spectral_glue {

namespace {

using Matrix = std::vector<std::vector<Rational>>;

mpz_class floor_of(const Rational& q) {
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

mpz_class ceil_of(const Rational& q) {
  mpz_class out;
  mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

// Gauss-Jordan elimination; returns the determinant and fills the inverse
// when it exists.
Rational invert(const Matrix& a, Matrix& inverse) {
  const std::size_t n = a.size();
  Matrix work = a;
  inverse.assign(n, std::vector<Rational>(n, 0));
  for (std::size_t i = 0; i < n; ++i) inverse[i][i] = 1;
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && work[pivot][col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(work[pivot], work[col]);
      std::swap(inverse[pivot], inverse[col]);
      det = -det;
    }
    const Rational p = work[col][col];
    det *= p;
    for (std::size_t j = 0; j < n; ++j) {
      work[col][j] /= p;
      inverse[col][j] /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || work[r][col] == 0) continue;
      const Rational f = work[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        work[r][j] -= f * work[col][j];
        inverse[r][j] -= f * inverse[col][j];
      }
    }
  }
  return det;
}

Rational abs_of(const Rational& q) { return q < 0 ? Rational(-q) : q; }

using Side = ExactBoxUnion::Side;
using ExactBox = std::vector<Side>;

// Pieces of (lo, hi) folded into [0, period).
std::vector<Side> fold(const Side& side, const Rational& period) {
  const Rational shift = Rational(floor_of(side.first / period)) * period;
  const Rational a = side.first - shift;
  const Rational b = side.second - shift;
  std::vector<Side> out;
  for (Rational start = 0; start < b; start += period) {
    const Rational lo = std::max(a, start);
    const Rational hi = std::min(b, Rational(start + period));
    if (lo < hi) out.emplace_back(lo - start, hi - start);
  }
  return out;
}

void cartesian(const std::vector<std::vector<Side>>& per_axis, std::vector<ExactBox>& out) {
  ExactBox current(per_axis.size());
  auto rec = [&](auto&& self, std::size_t axis) -> void {
    if (axis == per_axis.size()) {
      out.push_back(current);
      return;
    }
    for (const auto& s : per_axis[axis]) {
      current[axis] = s;
      self(self, axis + 1);
    }
  };
  rec(rec, 0);
}

TilingReport tiles_full_rank(const std::vector<ExactBox>& boxes, const Lattice& lattice) {
  const std::size_t d = lattice.dim();
  const Matrix& inv = lattice.inverse();
  const Matrix& a = lattice.a();

  // Smallest D_j > 0 with D_j e_j in T.
  std::vector<Rational> period(d);
  for (std::size_t j = 0; j < d; ++j) {
    mpz_class num_gcd = 0;
    mpz_class den_lcm = 1;
    for (std::size_t i = 0; i < d; ++i) {
      if (inv[i][j] == 0) continue;
      num_gcd = gcd(num_gcd, mpz_class(abs(inv[i][j].get_num())));
      den_lcm = lcm(den_lcm, mpz_class(inv[i][j].get_den()));
    }
    period[j] = Rational(den_lcm, num_gcd);
    period[j].canonicalize();
  }

  // Coset representatives A k of T modulo the diagonal sublattice, inside [0, D).
  std::vector<mpz_class> k_lo(d), k_hi(d);
  for (std::size_t i = 0; i < d; ++i) {
    Rational lo = 0, hi = 0;
    for (std::size_t j = 0; j < d; ++j) {
      const Rational v = inv[i][j] * period[j];
      if (v < 0) lo += v; else hi += v;
    }
    k_lo[i] = floor_of(lo);
    k_hi[i] = ceil_of(hi);
  }
  std::vector<std::vector<Rational>> cosets;
  std::vector<mpz_class> k = k_lo;
  while (true) {
    std::vector<Rational> point(d, 0);
    bool inside = true;
    for (std::size_t r = 0; r < d && inside; ++r) {
      for (std::size_t j = 0; j < d; ++j) point[r] += a[r][j] * Rational(k[j]);
      inside = point[r] >= 0 && point[r] < period[r];
    }
    if (inside) cosets.push_back(point);
    std::size_t axis = 0;
    while (axis < d && k[axis] == k_hi[axis]) {
      k[axis] = k_lo[axis];
      ++axis;
    }
    if (axis == d) break;
    ++k[axis];
  }
  Rational volume = 1;
  for (const auto& p : period) volume *= p;
  const Rational cell = abs_of(lattice.det());
  const Rational expected_cosets = volume / cell;
  if (Rational(static_cast<long>(cosets.size())) != expected_cosets) {
    throw Error(ErrorCode::invalid_input, "coset enumeration failed for the lattice");
  }

  // Every box folded into the period cell and shifted by every coset.
  std::vector<ExactBox> pieces;
  for (const auto& box : boxes) {
    std::vector<std::vector<Side>> per_axis(d);
    for (std::size_t j = 0; j < d; ++j) per_axis[j] = fold(box[j], period[j]);
    std::vector<ExactBox> folded;
    cartesian(per_axis, folded);
    for (const auto& f : folded) {
      for (const auto& r : cosets) {
        std::vector<std::vector<Side>> shifted(d);
        for (std::size_t j = 0; j < d; ++j) {
          shifted[j] = fold({f[j].first + r[j], f[j].second + r[j]}, period[j]);
        }
        cartesian(shifted, pieces);
      }
    }
  }

  // Covering multiplicity on the grid spanned by all piece faces.
  std::vector<std::vector<Rational>> coords(d);
  for (std::size_t j = 0; j < d; ++j) {
    coords[j] = {Rational(0), period[j]};
    for (const auto& p : pieces) {
      coords[j].push_back(p[j].first);
      coords[j].push_back(p[j].second);
    }
    std::sort(coords[j].begin(), coords[j].end());
    coords[j].erase(std::unique(coords[j].begin(), coords[j].end()), coords[j].end());
  }
  std::vector<std::size_t> extent(d), stride(d);
  std::size_t cells = 1;
  for (std::size_t j = 0; j < d; ++j) {
    extent[j] = coords[j].size() - 1;
    stride[j] = cells;
    cells *= extent[j];
  }
  std::vector<long> cover(cells, 0);
  auto index_of = [&](std::size_t j, const Rational& v) {
    return static_cast<std::size_t>(std::lower_bound(coords[j].begin(), coords[j].end(), v) -
                                    coords[j].begin());
  };
  for (const auto& p : pieces) {
    std::vector<std::size_t> lo(d), hi(d);
    for (std::size_t j = 0; j < d; ++j) {
      lo[j] = index_of(j, p[j].first);
      hi[j] = index_of(j, p[j].second);
    }
    std::vector<std::size_t> idx = lo;
    while (true) {
      std::size_t flat = 0;
      for (std::size_t j = 0; j < d; ++j) flat += idx[j] * stride[j];
      ++cover[flat];
      std::size_t axis = 0;
      while (axis < d && idx[axis] + 1 == hi[axis]) {
        idx[axis] = lo[axis];
        ++axis;
      }
      if (axis == d) break;
      ++idx[axis];
    }
  }

  TilingReport report;
  report.overlap = 0;
  report.uncovered = 0;
  std::vector<std::size_t> idx(d, 0);
  for (std::size_t flat = 0; flat < cells; ++flat) {
    std::size_t rem = flat;
    Rational vol = 1;
    for (std::size_t j = 0; j < d; ++j) {
      idx[j] = rem % extent[j];
      rem /= extent[j];
      vol *= coords[j][idx[j] + 1] - coords[j][idx[j]];
    }
    if (cover[flat] == 0) report.uncovered += vol;
    if (cover[flat] > 1) report.overlap += vol * Rational(cover[flat] - 1);
  }
  report.overlap /= expected_cosets;
  report.uncovered /= expected_cosets;
  report.cell_measure = cell;
  report.measure = 0;
  for (const auto& box : boxes) {
    Rational vol = 1;
    for (const auto& s : box) vol *= s.second - s.first;
    report.measure += vol;
  }
  report.tiles = report.overlap == 0 && report.uncovered == 0;
  return report;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw Error(ErrorCode::invalid_input, "empty rational");
  if (s.find('/') != std::string::npos) {
    Rational q;
    if (q.set_str(s, 10) != 0 || q.get_den() == 0) {
      throw Error(ErrorCode::invalid_input, "bad rational '" + s + "'");
    }
    q.canonicalize();
    return q;
  }
  std::size_t pos = 0;
  bool negative = false;
  if (s[pos] == '+' || s[pos] == '-') negative = s[pos++] == '-';
  std::string digits;
  long exponent = 0;
  bool seen_point = false;
  for (; pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.'); ++pos) {
    if (s[pos] == '.') {
      if (seen_point) throw Error(ErrorCode::invalid_input, "bad decimal '" + s + "'");
      seen_point = true;
      continue;
    }
    digits.push_back(s[pos]);
    if (seen_point) --exponent;
  }
  if (digits.empty()) throw Error(ErrorCode::invalid_input, "bad decimal '" + s + "'");
  if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
    const std::string tail = s.substr(pos + 1);
    try {
      std::size_t used = 0;
      exponent += std::stol(tail, &used);
      if (used != tail.size()) throw std::invalid_argument(tail);
    } catch (const std::exception&) {
      throw Error(ErrorCode::invalid_input, "bad exponent in '" + s + "'");
    }
    pos = s.size();
  }
  if (pos != s.size()) throw Error(ErrorCode::invalid_input, "bad decimal '" + s + "'");
  mpz_class mantissa(digits, 10);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
  Rational q = exponent >= 0 ? Rational(mantissa * scale) : Rational(mantissa, scale);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

Rational exact_rational(double x) {
  if (!std::isfinite(x)) throw Error(ErrorCode::invalid_input, "non-finite value has no rational form");
  return Rational(x);
}

std::string to_string(const Rational& q) { return q.get_str(); }

Lattice::Lattice(std::vector<std::vector<Rational>> a, std::size_t d1) : a_(std::move(a)), d1_(d1) {
  const std::size_t d = a_.size();
  if (d == 0) throw Error(ErrorCode::invalid_input, "lattice needs d >= 1");
  for (const auto& row : a_) {
    if (row.size() != d) throw Error(ErrorCode::invalid_input, "lattice matrix must be square");
  }
  if (d1_ > d) throw Error(ErrorCode::invalid_input, "d1 exceeds the dimension");
  det_ = invert(a_, inverse_);
  if (det_ == 0) throw Error(ErrorCode::invalid_input, "lattice matrix is singular");
}

Lattice Lattice::line(const Rational& a) { return Lattice({{a}}, 1); }

Eigen::MatrixXd Lattice::a_double() const {
  const auto d = static_cast<Eigen::Index>(dim());
  Eigen::MatrixXd m(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = a_[i][j].get_d();
  }
  return m;
}

Eigen::MatrixXd Lattice::dual_basis() const {
  const auto d = static_cast<Eigen::Index>(dim());
  Eigen::MatrixXd m(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = inverse_[j][i].get_d();
  }
  return m;
}

Rational ExactBoxUnion::factor_measure() const {
  Rational total = 0;
  for (const auto& box : boxes) {
    Rational vol = 1;
    for (std::size_t j = 0; j < dim; ++j) {
      if (std::find(full_axes.begin(), full_axes.end(), j) != full_axes.end()) continue;
      vol *= box[j].second - box[j].first;
    }
    total += vol;
  }
  return total;
}

ExactBoxUnion to_exact(const BoxUnion& omega) {
  ExactBoxUnion out;
  out.dim = omega.dim();
  out.full_axes = omega.full_axes();
  for (const auto& box : omega.boxes()) {
    std::vector<Side> sides;
    for (std::size_t j = 0; j < omega.dim(); ++j) {
      if (omega.is_full_axis(j)) {
        sides.emplace_back(0, 0);
      } else {
        sides.emplace_back(exact_rational(box[j].lo), exact_rational(box[j].hi));
      }
    }
    out.boxes.push_back(std::move(sides));
  }
  return out;
}

ExactBoxUnion to_exact(const IntervalUnion& omega) {
  if (!omega.bounded()) throw Error(ErrorCode::invalid_input, "tiling needs a bounded domain");
  return to_exact(to_box_union(omega));
}

TilingReport tiles_by(const ExactBoxUnion& omega, const Lattice& lattice) {
  if (omega.dim != lattice.dim()) {
    throw Error(ErrorCode::invalid_input, "domain and lattice dimensions differ");
  }
  if (omega.full_axes.size() != lattice.d2()) {
    throw Error(ErrorCode::incompatible_rank,
                std::to_string(omega.full_axes.size()) + " full-line axes but d2 = " +
                    std::to_string(lattice.d2()));
  }
  if (lattice.d2() == 0) return tiles_full_rank(omega.boxes, lattice);

  std::vector<std::size_t> factor;
  for (std::size_t j = 0; j < omega.dim; ++j) {
    if (std::find(omega.full_axes.begin(), omega.full_axes.end(), j) == omega.full_axes.end()) {
      factor.push_back(j);
    }
  }
  Matrix projected(factor.size(), std::vector<Rational>(lattice.d1()));
  for (std::size_t r = 0; r < factor.size(); ++r) {
    for (std::size_t c = 0; c < lattice.d1(); ++c) projected[r][c] = lattice.a()[factor[r]][c];
  }
  Matrix unused;
  if (invert(projected, unused) == 0) {
    throw Error(ErrorCode::incompatible_rank, "generators are degenerate on the bounded axes");
  }
  std::vector<ExactBox> boxes;
  for (const auto& box : omega.boxes) {
    ExactBox b;
    for (auto j : factor) b.push_back(box[j]);
    boxes.push_back(std::move(b));
  }
  return tiles_full_rank(boxes, Lattice(std::move(projected), lattice.d1()));
}

TilingReport tiles_by(const IntervalUnion& omega, const Lattice& lattice) {
  return tiles_by(to_exact(omega), lattice);
}

BoundedFactor bounded_factor(const BoxUnion& omega, const Lattice& lattice) {
  if (omega.dim() != lattice.dim()) {
    throw Error(ErrorCode::invalid_input, "domain and lattice dimensions differ");
  }
  if (omega.full_axes().size() != lattice.d2()) {
    throw Error(ErrorCode::incompatible_rank,
                std::to_string(omega.full_axes().size()) + " full-line axes but d2 = " +
                    std::to_string(lattice.d2()));
  }
  std::vector<std::size_t> factor;
  for (std::size_t j = 0; j < omega.dim(); ++j) {
    if (!omega.is_full_axis(j)) factor.push_back(j);
  }
  Matrix projected(factor.size(), std::vector<Rational>(lattice.d1()));
  for (std::size_t r = 0; r < factor.size(); ++r) {
    for (std::size_t c = 0; c < lattice.d1(); ++c) projected[r][c] = lattice.a()[factor[r]][c];
  }
  Matrix unused;
  if (invert(projected, unused) == 0) {
    throw Error(ErrorCode::incompatible_rank, "generators are degenerate on the bounded axes");
  }
  std::vector<BoxUnion::Box> boxes;
  for (const auto& box : omega.boxes()) {
    BoxUnion::Box b;
    for (auto j : factor) b.push_back(box[j]);
    boxes.push_back(std::move(b));
  }
  return {BoxUnion(factor.size(), std::move(boxes)), Lattice(std::move(projected), lattice.d1())};
}

std::vector<Eigen::VectorXd> dual_points(const Lattice& lattice, const Eigen::VectorXd& lo,
                                         const Eigen::VectorXd& hi) {
  if (lattice.d2() > 0) {
    throw Error(ErrorCode::continuous_dual, "dual set contains continuous directions");
  }
  const auto d = static_cast<Eigen::Index>(lattice.dim());
  if (lo.size() != d || hi.size() != d) {
    throw Error(ErrorCode::invalid_input, "window dimension mismatch");
  }
  const Eigen::MatrixXd basis = lattice.dual_basis();
  const Eigen::MatrixXd at = lattice.a_double().transpose();
  std::vector<long> k_lo(static_cast<std::size_t>(d)), k_hi(static_cast<std::size_t>(d));
  for (Eigen::Index i = 0; i < d; ++i) {
    double mn = 0.0, mx = 0.0;
    for (Eigen::Index j = 0; j < d; ++j) {
      mn += std::min(at(i, j) * lo(j), at(i, j) * hi(j));
      mx += std::max(at(i, j) * lo(j), at(i, j) * hi(j));
    }
    k_lo[static_cast<std::size_t>(i)] = static_cast<long>(std::floor(mn)) - 1;
    k_hi[static_cast<std::size_t>(i)] = static_cast<long>(std::ceil(mx)) + 1;
  }
  constexpr double slack = 1e-12;
  std::vector<Eigen::VectorXd> out;
  std::vector<long> k = k_lo;
  while (true) {
    Eigen::VectorXd kv(d);
    for (Eigen::Index i = 0; i < d; ++i) kv(i) = static_cast<double>(k[static_cast<std::size_t>(i)]);
    const Eigen::VectorXd point = basis * kv;
    if (((point.array() >= lo.array() - slack) && (point.array() <= hi.array() + slack)).all()) {
      out.push_back(point);
    }
    std::size_t axis = 0;
    while (axis < k.size() && k[axis] == k_hi[axis]) {
      k[axis] = k_lo[axis];
      ++axis;
    }
    if (axis == k.size()) break;
    ++k[axis];
  }
  std::sort(out.begin(), out.end(), [](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
  });
  return out;
}

TilingMap::TilingMap(const BoxUnion& omega, const Lattice& lattice) : omega_(omega) {
  const TilingReport report = tiles_by(to_exact(omega), lattice);
  if (!report.tiles) {
    throw Error(ErrorCode::not_a_tiling, "overlap " + to_string(report.overlap) + ", uncovered " +
                                             to_string(report.uncovered));
  }
  for (std::size_t j = 0; j < omega.dim(); ++j) {
    if (!omega.is_full_axis(j)) factor_axes_.push_back(j);
  }
  const Eigen::MatrixXd a = lattice.a_double();
  const auto d1 = static_cast<Eigen::Index>(lattice.d1());
  generators_ = a.leftCols(d1);
  Eigen::MatrixXd projected(d1, d1);
  for (Eigen::Index r = 0; r < d1; ++r) {
    projected.row(r) = generators_.row(static_cast<Eigen::Index>(factor_axes_[static_cast<std::size_t>(r)]));
  }
  factor_inverse_ = projected.inverse();
}

TilingStep TilingMap::translate(const Eigen::VectorXd& x, const Eigen::VectorXd& t) const {
  constexpr double margin = 1e-12;
  const Eigen::VectorXd z = x + t;
  const auto d1 = static_cast<Eigen::Index>(factor_axes_.size());
  Eigen::VectorXd zf(d1);
  for (Eigen::Index r = 0; r < d1; ++r) zf(r) = z(static_cast<Eigen::Index>(factor_axes_[static_cast<std::size_t>(r)]));

  std::vector<TilingStep> hits;
  bool near_face = false;
  for (const auto& box : omega_.boxes()) {
    // k = P^{-1}(z_F - y_F) for y_F in the box: bound each coordinate over the corners.
    std::vector<long> k_lo(static_cast<std::size_t>(d1)), k_hi(static_cast<std::size_t>(d1));
    for (Eigen::Index i = 0; i < d1; ++i) {
      double mn = 0.0, mx = 0.0;
      for (Eigen::Index j = 0; j < d1; ++j) {
        const Interval& side = box[factor_axes_[static_cast<std::size_t>(j)]];
        const double c = factor_inverse_(i, j);
        mn += std::min(c * (zf(j) - side.lo), c * (zf(j) - side.hi));
        mx += std::max(c * (zf(j) - side.lo), c * (zf(j) - side.hi));
      }
      k_lo[static_cast<std::size_t>(i)] = static_cast<long>(std::floor(mn)) - 1;
      k_hi[static_cast<std::size_t>(i)] = static_cast<long>(std::ceil(mx)) + 1;
    }
    std::vector<long> k = k_lo;
    while (true) {
      Eigen::VectorXd kv(d1);
      for (Eigen::Index i = 0; i < d1; ++i) kv(i) = static_cast<double>(k[static_cast<std::size_t>(i)]);
      const Eigen::VectorXd gamma = generators_ * kv;
      const Eigen::VectorXd y = z - gamma;
      bool loose = true;
      bool strict = true;
      for (auto j : factor_axes_) {
        const auto jj = static_cast<Eigen::Index>(j);
        loose = loose && y(jj) > box[j].lo - margin && y(jj) < box[j].hi + margin;
        strict = strict && y(jj) > box[j].lo + margin && y(jj) < box[j].hi - margin;
      }
      if (strict) {
        hits.push_back({y, gamma});
      } else if (loose) {
        near_face = true;
      }
      std::size_t axis = 0;
      while (axis < k.size() && k[axis] == k_hi[axis]) {
        k[axis] = k_lo[axis];
        ++axis;
      }
      if (axis == k.size()) break;
      ++k[axis];
    }
  }
  if (near_face || hits.empty()) {
    throw Error(ErrorCode::boundary_point, "x + t lies on a tile boundary; perturb by 1e-12");
  }
  if (hits.size() > 1) throw Error(ErrorCode::not_a_tiling, "translates overlap at x + t");
  return hits.front();
}

double tiling_translate(const IntervalUnion& omega, const Lattice& lattice, double x, double t) {
  const TilingMap map(to_box_union(omega), lattice);
  return map.translate(Eigen::VectorXd::Constant(1, x), Eigen::VectorXd::Constant(1, t)).y(0);
}

Complex fourier(const PiecewiseExp& f, double xi) {
  Complex total{0.0, 0.0};
  for (const auto& p : f.pieces()) total += p.amp * chi_hat(p.support, xi - p.freq);
  return total;
}

PiecewiseExp tiling_evolve(const IntervalUnion& omega, const Lattice& lattice,
                           const PiecewiseExp& f, double t) {
  if (lattice.dim() != 1) throw Error(ErrorCode::invalid_input, "tiling evolution is one-dimensional");
  const TilingReport report = tiles_by(omega, lattice);
  if (!report.tiles) throw Error(ErrorCode::not_a_tiling, "domain does not tile with the lattice");
  const double a = std::abs(lattice.a()[0][0].get_d());
  const double width = omega[omega.size() - 1].hi - omega[0].lo;
  const PiecewiseExp g = restrict(f, omega);
  const auto k_lo = static_cast<long>(std::floor((t - width) / a));
  const auto k_hi = static_cast<long>(std::ceil((t + width) / a));
  std::vector<PiecewiseExp> parts;
  for (long k = k_lo; k <= k_hi; ++k) {
    parts.push_back(restrict(translate(g, t - a * static_cast<double>(k)), omega));
  }
  return sum(parts);
}

PrutReport prut_group_check(const IntervalUnion& omega, const Lattice& lattice,
                            const PiecewiseExp& f, double t, double dual_lo, double dual_hi) {
  const PiecewiseExp g = restrict(f, omega);
  const PiecewiseExp evolved = tiling_evolve(omega, lattice, g, t);
  PrutReport report;
  for (const auto& point :
       dual_points(lattice, Eigen::VectorXd::Constant(1, dual_lo), Eigen::VectorXd::Constant(1, dual_hi))) {
    const double xi = point(0);
    const Complex lhs = fourier(evolved, xi);
    const Complex rhs = std::polar(1.0, 2.0 * kPi * xi * t) * fourier(g, xi);
    report.fourier_residual = std::max(report.fourier_residual, std::abs(lhs - rhs));
  }
  report.norm_defect = std::abs(norm(evolved) - norm(g));
  return report;
}

BoundaryMatrix boundary_from_tiling(const IntervalUnion& omega, const Lattice& lattice) {
  const TilingMap map(to_box_union(omega), lattice);
  const std::size_t p = omega.size();
  const double delta = omega.min_length() / 4.0;
  Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p));
  for (std::size_t k = 0; k < p; ++k) {
    const double y = map.translate(Eigen::VectorXd::Constant(1, omega[k].hi),
                                   Eigen::VectorXd::Constant(1, delta)).y(0);
    bool matched = false;
    for (std::size_t i = 0; i < p && !matched; ++i) {
      if (std::abs(y - (omega[i].lo + delta)) <= 1e-9) {
        b(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = 1.0;
        matched = true;
      }
    }
    if (!matched) {
      throw Error(ErrorCode::not_a_tiling, "right endpoint does not continue at a left endpoint");
    }
  }
  return BoundaryMatrix::for_domain(omega, std::move(b));
}

}  // namespace spectral_glue
