#include <doctest.h>

#include <cmath>
#include <optional>
#include <random>

#include "spectral_glue/errors.hpp"
#include "spectral_glue/random.hpp"
#include "spectral_glue/tiling.hpp"

using namespace spectral_glue;

namespace {

const IntervalUnion kUnit({{0.0, 1.0}});
const IntervalUnion kTilingPair({{0.0, 1.0}, {3.0, 4.0}});

Eigen::VectorXd vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::invalid_input;
}

// Quarters of the fundamental domain [0,2) x [0,1) of T = <(2,0), (1,1)>, each
// moved by a random element of T; optionally one quarter is pushed off by
// (1, 0), which is not in T.
std::optional<BoxUnion> scattered_domain(Rng& rng, bool broken) {
  std::uniform_int_distribution<int> coef(-2, 2);
  std::vector<BoxUnion::Box> boxes;
  for (int qx = 0; qx < 2; ++qx) {
    for (int qy = 0; qy < 2; ++qy) {
      const int m = coef(rng), n = coef(rng);
      double dx = 2.0 * m + n, dy = n;
      if (broken && qx == 0 && qy == 0) dx += 1.0;
      boxes.push_back({{qx + dx, qx + 1.0 + dx}, {0.5 * qy + dy, 0.5 * qy + 0.5 + dy}});
    }
  }
  try {
    return BoxUnion(2, boxes);
  } catch (const Error&) {
    return std::nullopt;  // pieces collided in the plane
  }
}

const Lattice kSkew({{2, 1}, {0, 1}}, 2);

// x -> S x with S = signed permutation times a dyadic diagonal.
struct AxisMap {
  std::size_t perm[2];
  double scale[2];

  BoxUnion apply(const BoxUnion& omega) const {
    std::vector<BoxUnion::Box> out;
    for (const BoxUnion::Box& box : omega.boxes()) {
      BoxUnion::Box mapped(2);
      for (std::size_t axis = 0; axis < 2; ++axis) {
        const Interval& side = box[perm[axis]];
        const double a = scale[axis] * side.lo, b = scale[axis] * side.hi;
        mapped[axis] = {std::min(a, b), std::max(a, b)};
      }
      out.push_back(mapped);
    }
    return BoxUnion(2, out);
  }

  Lattice apply(const Lattice& lattice) const {
    std::vector<std::vector<Rational>> a(2, std::vector<Rational>(2));
    for (std::size_t row = 0; row < 2; ++row)
      for (std::size_t col = 0; col < 2; ++col) a[row][col] = exact_rational(scale[row]) * lattice.a()[perm[row]][col];
    return Lattice(a, 2);
  }

  Rational det() const {
    Rational d = exact_rational(scale[0]) * exact_rational(scale[1]);
    return d < 0 ? Rational(-d) : d;
  }
};

}  // namespace

TEST_CASE("parse_rational") {
  CHECK(parse_rational("1/2") == Rational(1, 2));
  CHECK(parse_rational("-0.125") == Rational(-1, 8));
  CHECK(parse_rational("3e-2") == Rational(3, 100));
  CHECK(parse_rational("4") == Rational(4));
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK_THROWS_AS(parse_rational("abc"), Error);
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK(exact_rational(0.1) != Rational(1, 10));
  CHECK(exact_rational(0.375) == Rational(3, 8));
  CHECK(to_string(Rational(-3, 4)) == "-3/4");
}

TEST_CASE("tiling examples") {
  const TilingReport yes = tiles_by(kTilingPair, Lattice::line(2));
  CHECK(yes.tiles);
  CHECK(yes.overlap == 0);
  CHECK(yes.uncovered == 0);
  CHECK(yes.measure == 2);

  const TilingReport no = tiles_by(IntervalUnion({{0.0, 1.0}, {2.0, 3.0}}), Lattice::line(2));
  CHECK_FALSE(no.tiles);
  CHECK(no.overlap == 1);
  CHECK(no.uncovered == 1);

  const BoxUnion strip(2, {{{0.0, 1.0}, {-kInf, kInf}}}, {1});
  CHECK(tiles_by(to_exact(strip), Lattice({{1, 0}, {0, 1}}, 1)).tiles);
  CHECK(code_of([&] { tiles_by(to_exact(strip), Lattice({{1, 0}, {0, 1}}, 2)); }) == ErrorCode::incompatible_rank);

  CHECK(tiles_by(IntervalUnion({{0.0, 0.5}, {1.5, 2.0}}), Lattice::line(1)).tiles);
  CHECK_FALSE(tiles_by(kUnit, Lattice::line(Rational(3, 2))).tiles);
}

TEST_CASE("tiling is invariant under axis maps and measures are consistent") {
  Rng rng(31);
  const AxisMap maps[] = {{{0, 1}, {0.5, 2.0}}, {{1, 0}, {-1.0, 0.25}}, {{1, 0}, {4.0, -1.5}}};
  int checked = 0;
  for (int trial = 0; trial < 60 && checked < 30; ++trial) {
    const bool broken = trial % 2 == 1;
    const std::optional<BoxUnion> omega = scattered_domain(rng, broken);
    if (!omega) continue;
    ++checked;
    const TilingReport base = tiles_by(to_exact(*omega), kSkew);
    CHECK(base.tiles == !broken);
    if (base.tiles) CHECK(base.measure == abs(kSkew.det()));
    for (const AxisMap& s : maps) {
      const TilingReport mapped = tiles_by(to_exact(s.apply(*omega)), s.apply(kSkew));
      CHECK(mapped.tiles == base.tiles);
      CHECK(mapped.overlap == base.overlap * s.det());
      CHECK(mapped.uncovered == base.uncovered * s.det());
    }
  }
  CHECK(checked >= 20);

  // Tiling by Z^d forces measure 1.
  const BoxUnion l_shape(2, {{{0.0, 0.5}, {0.0, 1.0}}, {{1.5, 2.0}, {3.0, 4.0}}});
  const TilingReport z2 = tiles_by(to_exact(l_shape), Lattice({{1, 0}, {0, 1}}, 2));
  CHECK(z2.tiles);
  CHECK(z2.measure == 1);
}

TEST_CASE("dual points") {
  const std::vector<Eigen::VectorXd> line = dual_points(Lattice::line(2), vec({-1.0}), vec({1.0}));
  REQUIRE(line.size() == 5);
  for (std::size_t k = 0; k < 5; ++k) CHECK(std::abs(line[k](0) - (0.5 * static_cast<double>(k) - 1.0)) < 1e-15);

  const std::vector<Eigen::VectorXd> square =
      dual_points(Lattice({{1, 0}, {0, 1}}, 2), vec({0.0, 0.0}), vec({1.0, 1.0}));
  CHECK(square.size() == 4);

  const Lattice skew({{2, 0}, {1, 1}}, 2);
  const Eigen::MatrixXd a = skew.a_double();
  const std::vector<Eigen::VectorXd> pts = dual_points(skew, vec({-1.0, -1.0}), vec({1.0, 1.0}));
  CHECK(pts.size() >= 4);
  for (const Eigen::VectorXd& g : pts) {
    CHECK(g.cwiseAbs().maxCoeff() <= 1.0 + 1e-12);
    for (Eigen::Index col = 0; col < 2; ++col) {
      const double pairing = g.dot(a.col(col));
      CHECK(std::abs(pairing - std::round(pairing)) < 1e-10);
    }
  }
  // Brute force: every integer k whose image lies in the window is listed.
  const Eigen::MatrixXd dual = skew.dual_basis();
  std::size_t expected = 0;
  for (int i = -10; i <= 10; ++i)
    for (int j = -10; j <= 10; ++j)
      if ((dual * vec({double(i), double(j)})).cwiseAbs().maxCoeff() <= 1.0 + 1e-12) ++expected;
  CHECK(pts.size() == expected);

  CHECK(code_of([] { dual_points(Lattice({{1, 0}, {0, 1}}, 1), vec({0.0, 0.0}), vec({1.0, 1.0})); }) ==
        ErrorCode::continuous_dual);
}

TEST_CASE("tiling translation examples") {
  const Lattice two = Lattice::line(2);
  CHECK(tiling_translate(kTilingPair, two, 0.5, 1.0) == doctest::Approx(3.5).epsilon(1e-15));
  CHECK(tiling_translate(kTilingPair, two, 0.5, 0.25) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(tiling_translate(kUnit, Lattice::line(1), 0.5, 0.75) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(tiling_translate(kTilingPair, two, 0.3, 0.0) == 0.3);
  CHECK(code_of([&] { tiling_translate(kTilingPair, two, 0.5, 0.5); }) == ErrorCode::boundary_point);
  CHECK(code_of([&] { tiling_translate(IntervalUnion({{0.0, 1.0}, {2.0, 3.0}}), two, 0.5, 0.1); }) ==
        ErrorCode::not_a_tiling);

  const BoxUnion strip(2, {{{0.0, 1.0}, {-kInf, kInf}}}, {1});
  const TilingMap map(strip, Lattice({{1, 0}, {0, 1}}, 1));
  const TilingStep step = map.translate(vec({0.5, 2.0}), vec({1.25, -7.0}));
  CHECK((step.y - vec({0.75, -5.0})).norm() < 1e-14);
  CHECK((step.gamma - vec({1.0, 0.0})).norm() < 1e-14);
}

TEST_CASE("tiling group examples") {
  const Lattice two = Lattice::line(2);
  const PrutReport circle = prut_group_check(kUnit, Lattice::line(1), PiecewiseExp::indicator({0.0, 0.5}), 0.5, -2, 2);
  CHECK(circle.fourier_residual <= 1e-10);
  CHECK(circle.norm_defect <= 1e-10);

  const PiecewiseExp left = PiecewiseExp::indicator({0.0, 1.0});
  CHECK(norm(tiling_evolve(kTilingPair, two, left, 2.0) - left) < 1e-14);
  CHECK(prut_group_check(kTilingPair, two, left, 2.0, -3, 3).fourier_residual <= 1e-10);

  const PiecewiseExp right = PiecewiseExp::indicator({3.0, 4.0});
  CHECK(norm(tiling_evolve(kTilingPair, two, right, 1.0) - left) < 1e-14);
  const PrutReport moved = prut_group_check(kTilingPair, two, right, 1.0, -3, 3);
  CHECK(moved.fourier_residual <= 1e-10);
  CHECK(moved.norm_defect <= 1e-10);
}

TEST_CASE("tiling group law and unitarity on random instances") {
  Rng rng(55);
  const Lattice two = Lattice::line(2);
  std::uniform_real_distribution<double> time(-5.0, 5.0);
  for (int trial = 0; trial < 50; ++trial) {
    const PiecewiseExp f = random_pwexp(kTilingPair, rng);
    const double t1 = time(rng), t2 = time(rng);
    const PiecewiseExp composed = tiling_evolve(kTilingPair, two, tiling_evolve(kTilingPair, two, f, t2), t1);
    CHECK(norm(composed - tiling_evolve(kTilingPair, two, f, t1 + t2)) <= 1e-10);
    CHECK(std::abs(norm(tiling_evolve(kTilingPair, two, f, t1)) - norm(f)) <= 1e-10);
  }
}

TEST_CASE("local translation inside one cell") {
  const Lattice two = Lattice::line(2);
  const PiecewiseExp f = PiecewiseExp::exponential({3.2, 3.4}, 1.5);
  // 3.2 + 0.5 and 3.4 + 0.5 stay inside (3, 4), so U(-0.5) is a plain shift.
  CHECK(norm(tiling_evolve(kTilingPair, two, f, -0.5) - translate(f, -0.5)) < 1e-14);
}

TEST_CASE("boundary matrix of the tiling group is the swap") {
  const BoundaryMatrix b = boundary_from_tiling(kTilingPair, Lattice::line(2));
  Eigen::MatrixXcd sw(2, 2);
  sw << 0.0, 1.0, 1.0, 0.0;
  CHECK((b.entries - sw).cwiseAbs().maxCoeff() == 0.0);
  CHECK(code_of([] { boundary_from_tiling(IntervalUnion({{0.0, 1.0}, {2.0, 3.0}}), Lattice::line(2)); }) ==
        ErrorCode::not_a_tiling);

  const BoundaryMatrix single = boundary_from_tiling(kUnit, Lattice::line(1));
  CHECK(single.entries(0, 0) == Complex(1.0, 0.0));
}

TEST_CASE("bounded factor") {
  const BoxUnion slab(3, {{{0.0, 2.0}, {-kInf, kInf}, {0.0, 0.5}}}, {1});
  const Lattice a({{2, 0, 0}, {7, 1, 3}, {0, 0, Rational(1, 2)}}, 2);
  // Both generators vanish on the last bounded axis.
  CHECK_THROWS_AS(bounded_factor(slab, a), Error);

  const Lattice b({{2, 0, 0}, {0, 0, 1}, {0, Rational(1, 2), 0}}, 2);
  const BoundedFactor f = bounded_factor(slab, b);
  CHECK(f.omega.dim() == 2);
  CHECK(f.lattice.dim() == 2);
  CHECK(tiles_by(to_exact(slab), b).tiles);
}
