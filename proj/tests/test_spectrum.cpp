#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "spectral_glue/errors.hpp"
#include "spectral_glue/random.hpp"
#include "spectral_glue/spectrum.hpp"

using namespace spectral_glue;

namespace {

const IntervalUnion kTwo({{0.0, 1.0}, {2.0, 3.0}});

BoundaryMatrix swap_boundary() {
  Eigen::MatrixXcd b(2, 2);
  b << 0.0, 1.0, 1.0, 0.0;
  return BoundaryMatrix::for_domain(kTwo, b);
}

BoundaryMatrix theta_boundary(const IntervalUnion& unit, double theta) {
  return BoundaryMatrix::for_domain(unit, Eigen::MatrixXcd::Constant(1, 1, std::polar(1.0, 2.0 * kPi * theta)));
}

struct PhasedPermutation {
  Eigen::MatrixXcd b;
  std::vector<std::size_t> next;  // mass leaving beta_k re-enters at alpha_{next[k]}
};

PhasedPermutation random_phased_permutation(std::size_t p, Rng& rng) {
  PhasedPermutation out;
  out.next.resize(p);
  for (std::size_t i = 0; i < p; ++i) out.next[i] = i;
  std::shuffle(out.next.begin(), out.next.end(), rng);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  const auto n = static_cast<Eigen::Index>(p);
  out.b = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t k = 0; k < p; ++k)
    out.b(static_cast<Eigen::Index>(out.next[k]), static_cast<Eigen::Index>(k)) = std::polar(1.0, angle(rng));
  return out;
}

// Closed-form spectrum of a phased permutation: every cycle c of the glued
// circles contributes (arg Phi_c / 2 pi + Z) / L_c, with L_c its total length
// and Phi_c the product of its phases.
std::vector<double> cycle_spectrum(const IntervalUnion& omega, const PhasedPermutation& perm, double lo,
                                   double hi) {
  const std::size_t p = omega.size();
  std::vector<bool> seen(p, false);
  std::vector<double> out;
  for (std::size_t start = 0; start < p; ++start) {
    if (seen[start]) continue;
    double length = 0.0;
    double phase = 0.0;
    std::size_t k = start;
    while (!seen[k]) {
      seen[k] = true;
      length += omega[k].length();
      const std::size_t i = perm.next[k];
      phase += std::arg(perm.b(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)));
      k = i;
    }
    const double offset = phase / (2.0 * kPi);
    for (long n = static_cast<long>(std::floor(lo * length - offset)) - 1;
         n <= static_cast<long>(std::ceil(hi * length - offset)) + 1; ++n) {
      const double lambda = (offset + static_cast<double>(n)) / length;
      if (lambda >= lo && lambda <= hi) out.push_back(lambda);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> expand(const SpectrumSet& s) {
  std::vector<double> out;
  for (const SpectrumPoint& pt : s.points)
    for (std::size_t k = 0; k < pt.multiplicity; ++k) out.push_back(pt.lambda);
  return out;
}

}  // namespace

TEST_CASE("secular matrix examples") {
  const SecularMatrix at_half = secular(kTwo, swap_boundary(), 0.5);
  CHECK(std::abs(at_half.m(0, 0)) < 1e-15);
  CHECK(std::abs(at_half.m(1, 1)) < 1e-15);
  CHECK(std::abs(at_half.m(0, 1) - Complex(-1.0, 0.0)) < 1e-14);
  CHECK(std::abs(at_half.m(1, 0) - Complex(-1.0, 0.0)) < 1e-14);

  const IntervalUnion unit({{0.0, 1.0}});
  const SecularMatrix th = secular(unit, theta_boundary(unit, 0.3), 0.3);
  CHECK(std::abs(th.m(0, 0) - 1.0) < 1e-14);
  CHECK(std::abs(th.s(0, 0) - 1.0) < 1e-14);
}

TEST_CASE("eigenphases examples") {
  Eigen::MatrixXcd swap(2, 2);
  swap << 0.0, 1.0, 1.0, 0.0;
  const Eigenphases e = eigenphases(swap);
  REQUIRE(e.phases.size() == 2);
  CHECK(std::abs(e.phases[0]) < 1e-14);
  CHECK(std::abs(e.phases[1] - kPi) < 1e-14);

  Rng rng(5);
  const Eigen::MatrixXcd u = random_unitary(4, rng);
  const Eigenphases r = eigenphases(u);
  for (Eigen::Index j = 0; j < 4; ++j) {
    const Eigen::VectorXcd v = r.vectors.col(j);
    CHECK((u * v - std::polar(1.0, r.phases[static_cast<std::size_t>(j)]) * v).norm() < 1e-10);
  }
  CHECK(std::is_sorted(r.phases.begin(), r.phases.end()));
}

TEST_CASE("spectrum of the unit interval with a phase") {
  const IntervalUnion unit({{0.0, 1.0}});
  const SpectrumSet id = find_spectrum(unit, BoundaryMatrix::identity(unit), -3.5, 3.5);
  REQUIRE(id.points.size() == 7);
  for (std::size_t k = 0; k < 7; ++k) {
    CHECK(std::abs(id.points[k].lambda - (static_cast<double>(k) - 3.0)) < 1e-10);
    CHECK(id.points[k].multiplicity == 1);
  }

  const SpectrumSet th = find_spectrum(unit, theta_boundary(unit, 0.3), -2.0, 2.0);
  REQUIRE(th.points.size() == 4);
  CHECK(std::abs(th.points[0].lambda + 1.7) < 1e-10);
  CHECK(std::abs(th.points[3].lambda - 1.3) < 1e-10);
}

TEST_CASE("spectrum of the swap") {
  const SpectrumSet s = find_spectrum(kTwo, swap_boundary(), -2.2, 2.2);
  REQUIRE(s.points.size() == 9);
  for (std::size_t k = 0; k < 9; ++k) {
    const SpectrumPoint& pt = s.points[k];
    CHECK(std::abs(pt.lambda - 0.5 * (static_cast<double>(k) - 4.0)) < 1e-10);
    REQUIRE(pt.multiplicity == 1);
    const Eigen::VectorXcd& c = pt.coeff_vectors[0];
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    // Integers carry (1, 1), half-integers (1, -1).
    CHECK(std::abs(c(1) - sign * c(0)) < 1e-10);
    CHECK(std::abs(std::abs(c(0)) - 1.0 / std::sqrt(2.0)) < 1e-10);
  }
  CHECK(std::abs(separation(s) - 0.5) < 1e-10);
}

TEST_CASE("identity on two intervals has multiplicity two at the integers") {
  const SpectrumSet s = find_spectrum(kTwo, BoundaryMatrix::identity(kTwo), -1.5, 1.5);
  REQUIRE(s.points.size() == 3);
  for (const SpectrumPoint& pt : s.points) {
    CHECK(pt.multiplicity == 2);
    CHECK(std::abs(pt.lambda - std::round(pt.lambda)) < 1e-10);
  }
  CHECK(s.total_multiplicity() == 6);
}

TEST_CASE("spectrum errors") {
  const IntervalUnion ray({{-kInf, 0.0}, {1.0, 2.0}});
  BoundaryMatrix b;
  b.entries = Eigen::MatrixXcd::Ones(1, 2);
  try {
    find_spectrum(ray, b, -1.0, 1.0);
    FAIL("expected UnboundedDomain");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::unbounded_domain);
  }
}

TEST_CASE("phased permutations match the cycle oracle") {
  Rng rng(2024);
  std::uniform_real_distribution<double> centre(-10.0, 10.0);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t p = 1 + static_cast<std::size_t>(trial % 5);
    const IntervalUnion omega = random_bounded_omega(p, rng);
    const PhasedPermutation perm = random_phased_permutation(p, rng);
    const double lo = centre(rng);
    const double hi = lo + 6.0;
    const std::vector<double> expected = cycle_spectrum(omega, perm, lo, hi);
    const SpectrumSet found = find_spectrum(omega, BoundaryMatrix::for_domain(omega, perm.b), lo, hi);
    const std::vector<double> got = expand(found);
    REQUIRE(got.size() == expected.size());
    for (std::size_t k = 0; k < got.size(); ++k) CHECK(std::abs(got[k] - expected[k]) < 1e-10);
  }
}

TEST_CASE("eigenfunctions are orthonormal eigenvectors of the group") {
  Rng rng(77);
  for (int trial = 0; trial < 5; ++trial) {
    const IntervalUnion omega = random_bounded_omega(3, rng);
    const BoundaryMatrix b = BoundaryMatrix::for_domain(omega, random_unitary(3, rng));
    const EvolutionEngine engine = build_engine(omega, b);
    const SpectrumSet s = find_spectrum(omega, b, -2.0, 2.0);
    std::vector<PiecewiseExp> all;
    const std::array<double, 4> times{0.1, 0.37, -1.2, 2.9};
    for (const SpectrumPoint& pt : s.points) {
      CHECK(verify_eigen(engine, pt, times) < 1e-8);
      for (const PiecewiseExp& e : eigenfunctions(pt, omega)) all.push_back(e);
    }
    CHECK(all.size() == s.total_multiplicity());
    for (std::size_t i = 0; i < all.size(); ++i)
      for (std::size_t j = 0; j < all.size(); ++j)
        CHECK(std::abs(inner_product(all[i], all[j]) - (i == j ? 1.0 : 0.0)) < 1e-9);
  }
}

TEST_CASE("determinant identity and winding") {
  Rng rng(13);
  const IntervalUnion omega = random_bounded_omega(3, rng);
  const BoundaryMatrix b = BoundaryMatrix::for_domain(omega, random_unitary(3, rng));
  const Complex det_bt = b.entries.transpose().determinant();
  for (double lambda : {-3.1, 0.0, 0.77, 5.5}) {
    const Complex lhs = secular(omega, b, lambda).s.determinant();
    CHECK(std::abs(lhs - std::polar(1.0, -2.0 * kPi * lambda * measure(omega)) * det_bt) < 1e-10);
  }
  const IntervalUnion unit({{0.0, 1.0}});
  CHECK(std::abs(det_winding(unit, theta_boundary(unit, 0.3), -1.25, 2.0) + 2.0 * kPi * 3.25) < 1e-8);

  // Crossings in (a, b] are count(a) - count(b).
  const BoundaryMatrix sw = swap_boundary();
  CHECK(eigen_count(kTwo, sw, -1.25) - eigen_count(kTwo, sw, 1.25) == 5);
}

TEST_CASE("parseval on the swap spectrum") {
  const SpectrumSet s = find_spectrum(kTwo, swap_boundary(), -20.5, 20.5);
  const PiecewiseExp f = PiecewiseExp::indicator({0.0, 1.0});
  const double ratio = parseval_check(s, f);
  CHECK(ratio <= 1.0 + 1e-12);
  CHECK(ratio > 0.98);
  const SpectrumSet narrow = find_spectrum(kTwo, swap_boundary(), -5.5, 5.5);
  CHECK(parseval_check(narrow, f) <= ratio + 1e-12);
}
