// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "spectral_glue/errors.hpp"
#include "spectral_glue/random.hpp"
#include "spectral_glue/spectral_pair.hpp"
#include "spectral_glue/spectrum.hpp"
#include "spectral_glue/suites.hpp"
#include "spectral_glue/tiling.hpp"

using namespace spectral_glue;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

const IntervalUnion kUnit({{0.0, 1.0}});
const IntervalUnion kTwo({{0.0, 1.0}, {2.0, 3.0}});
const IntervalUnion kTilingPair({{0.0, 1.0}, {3.0, 4.0}});

Eigen::MatrixXcd swap_matrix() {
  Eigen::MatrixXcd b(2, 2);
  b << 0.0, 1.0, 1.0, 0.0;
  return b;
}

BoundaryMatrix theta_boundary(double theta) {
  return BoundaryMatrix::for_domain(kUnit, Eigen::MatrixXcd::Constant(1, 1, std::polar(1.0, 2.0 * kPi * theta)));
}

// Spectrum of a permutation boundary matrix with phases: each cycle of glued
// components is a circle of length L with holonomy Phi, contributing
// (arg Phi / 2 pi + Z) / L once per point.
std::vector<double> cycle_oracle(const IntervalUnion& omega, const Eigen::MatrixXcd& b, double lo, double hi) {
  const std::size_t p = omega.size();
  std::vector<bool> seen(p, false);
  std::vector<double> out;
  for (std::size_t start = 0; start < p; ++start) {
    if (seen[start]) continue;
    double length = 0.0, phase = 0.0;
    for (std::size_t k = start; !seen[k];) {
      seen[k] = true;
      length += omega[k].length();
      std::size_t next = 0;
      for (std::size_t i = 0; i < p; ++i)
        if (std::abs(b(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k))) > 0.5) next = i;
      phase += std::arg(b(static_cast<Eigen::Index>(next), static_cast<Eigen::Index>(k)));
      k = next;
    }
    const double offset = phase / (2.0 * kPi);
    for (long n = static_cast<long>(std::floor(lo * length - offset)) - 1; n <= static_cast<long>(std::ceil(hi * length - offset)) + 1; ++n) {
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

double max_mismatch(const std::vector<double>& got, const std::vector<double>& expected) {
  if (got.size() != expected.size()) return kInf;
  double worst = 0.0;
  for (std::size_t k = 0; k < got.size(); ++k) worst = std::max(worst, std::abs(got[k] - expected[k]));
  return worst;
}

// Spectra computed for the first two criteria, reused by the eigen-relation check.
struct Computed {
  EvolutionEngine engine;
  SpectrumSet spectrum;
};
std::vector<Computed> g_computed;

Outcome criterion1() {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  for (double theta : {0.0, 0.3, 0.5}) {
    const BoundaryMatrix b = theta_boundary(theta);
    const SpectrumSet s = find_spectrum(kUnit, b, -5.5, 5.5);
    std::vector<double> expected;
    for (long n = -6; n <= 6; ++n)
      if (theta + n >= -5.5 && theta + n <= 5.5) expected.push_back(theta + static_cast<double>(n));
    bool simple = true;
    for (const SpectrumPoint& pt : s.points) simple = simple && pt.multiplicity == 1;
    const double err = max_mismatch(expand(s), expected);
    out.require(simple, "theta=" + num(theta) + " has a multiple point");
    out.require(err <= 1e-10, "theta=" + num(theta) + " max |error| " + num(err));
    g_computed.push_back({build_engine(kUnit, b), s});
  }
  const double elapsed = seconds_since(start);
  out.require(elapsed < 1.0, "runtime " + num(elapsed) + " s");
  if (out.passed) out.detail = "theta in {0, 0.3, 0.5} exact on [-5.5, 5.5], " + num(elapsed) + " s";
  return out;
}

Outcome criterion2() {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  const double lo = -5.25, hi = 5.25;

  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(2, 2);
  const BoundaryMatrix bi = BoundaryMatrix::for_domain(kTwo, id);
  const SpectrumSet si = find_spectrum(kTwo, bi, lo, hi);
  bool double_points = !si.points.empty();
  for (const SpectrumPoint& pt : si.points) double_points = double_points && pt.multiplicity == 2;
  out.require(double_points, "B=I multiplicities are not all 2");
  out.require(max_mismatch(expand(si), cycle_oracle(kTwo, id, lo, hi)) <= 1e-9, "B=I points differ from Z");

  const BoundaryMatrix bs = BoundaryMatrix::for_domain(kTwo, swap_matrix());
  const SpectrumSet ss = find_spectrum(kTwo, bs, lo, hi);
  out.require(max_mismatch(expand(ss), cycle_oracle(kTwo, swap_matrix(), lo, hi)) <= 1e-9,
              "swap points differ from Z/2");
  const double r = 1.0 / std::sqrt(2.0);
  double vec_err = 0.0;
  for (const SpectrumPoint& pt : ss.points) {
    if (pt.multiplicity != 1 || pt.coeff_vectors.size() != 1) {
      vec_err = kInf;
      continue;
    }
    const bool integer = std::abs(pt.lambda - std::round(pt.lambda)) < 0.25;
    Eigen::VectorXcd expected(2);
    expected << r, integer ? r : -r;
    Eigen::VectorXcd c = pt.coeff_vectors[0];
    c *= std::polar(1.0, -std::arg(c(0)));  // eigenvectors are defined up to a phase
    vec_err = std::max(vec_err, (c - expected).cwiseAbs().maxCoeff());
  }
  out.require(vec_err <= 1e-9, "swap eigenvector error " + num(vec_err));
  g_computed.push_back({build_engine(kTwo, bi), si});
  g_computed.push_back({build_engine(kTwo, bs), ss});

  const double elapsed = seconds_since(start);
  out.require(elapsed < 2.0, "runtime " + num(elapsed) + " s");
  if (out.passed)
    out.detail = "B=I: Z with m=2; swap: Z/2 with m=1, eigenvector error " + num(vec_err) + ", " + num(elapsed) + " s";
  return out;
}

Outcome criterion3() {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (const char* name : {"unitarity", "grouplaw"}) {
    SuiteOptions options;
    options.seed = 0;
    options.trials = 100;
    const SuiteReport report = run_suite(name, options);
    for (const CheckResult& c : report.checks) {
      worst = std::max(worst, c.max_residual);
      out.require(c.passed() && c.tolerance <= 1e-9,
                  std::string(name) + "/" + c.name + " residual " + num(c.max_residual));
    }
  }
  const double elapsed = seconds_since(start);
  out.require(elapsed < 30.0, "runtime " + num(elapsed) + " s");
  if (out.passed)
    out.detail = "100 random instances, worst residual " + num(worst) + ", " + num(elapsed) + " s";
  return out;
}

Outcome criterion4() {
  Outcome out;
  const std::vector<double> times{0.37, 1.0, -2.2};
  double worst = 0.0;
  std::size_t points = 0;
  for (const Computed& c : g_computed) {
    for (const SpectrumPoint& pt : c.spectrum.points) {
      worst = std::max(worst, verify_eigen(c.engine, pt, times));
      ++points;
    }
  }
  out.require(points > 0, "no spectrum points to check");
  out.require(worst <= 1e-8, "worst residual " + num(worst));
  if (out.passed) out.detail = std::to_string(points) + " points, worst residual " + num(worst);
  return out;
}

Outcome criterion5() {
  Outcome out;
  Rng rng(2025);
  std::uniform_real_distribution<double> centre(-20.0, 20.0);
  std::uniform_int_distribution<int> comps(1, 5);
  double worst_winding = 0.0, worst_slack = -kInf;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t p = static_cast<std::size_t>(comps(rng));
    const IntervalUnion omega = random_bounded_omega(p, rng);
    const BoundaryMatrix b = BoundaryMatrix::for_domain(omega, random_unitary(p, rng));
    const double lo = centre(rng), hi = lo + 10.0;
    const double m = measure(omega);
    const auto total = static_cast<double>(find_spectrum(omega, b, lo, hi).total_multiplicity());
    const double slack = std::abs(total - 10.0 * m) - static_cast<double>(p);
    worst_slack = std::max(worst_slack, slack);
    out.require(slack <= 0.0, "trial " + std::to_string(trial) + ": count " + num(total) + " vs 10 m = " + num(10.0 * m));
    // det S(lambda) = exp(-2 pi i lambda m) det B^T, so the phase winds by -2 pi m (b - a).
    const double dev = std::abs(det_winding(omega, b, lo, hi) + 2.0 * kPi * m * (hi - lo));
    worst_winding = std::max(worst_winding, dev);
    out.require(dev <= 1e-8, "trial " + std::to_string(trial) + ": winding deviation " + num(dev));
  }
  if (out.passed)
    out.detail = "20 instances, |count - 10 m| - p <= " + num(worst_slack) + ", winding deviation " + num(worst_winding);
  return out;
}

Outcome criterion6() {
  Outcome out;
  const IntervalUnion ray({{-kInf, 0.0}, {1.0, 2.0}});
  BoundaryMatrix any;
  any.entries = Eigen::MatrixXcd::Ones(1, 2);
  bool no_extension = false;
  try {
    build_engine(ray, any);
  } catch (const Error& e) {
    no_extension = e.code() == ErrorCode::no_extension;
  }
  out.require(no_extension, "(-inf,0) u (1,2) did not raise NoExtension");
  out.require(!gates(ray).extension_exists, "gates report an extension for (-inf,0) u (1,2)");
  const GateReport halves = gates(IntervalUnion({{-kInf, 0.0}, {1.0, kInf}}));
  out.require(halves.spectral_possible == Verdict::no, "(-inf,0) u (1,inf) is not ruled out");
  if (out.passed) out.detail = "NoExtension raised; spectral_possible = false";
  return out;
}

Outcome criterion7() {
  Outcome out;
  const BoundaryMatrix b = BoundaryMatrix::for_domain(kTwo, swap_matrix());
  const PiecewiseExp f = PiecewiseExp::indicator({0.0, 1.0});
  double previous = -1.0, ratio = 0.0;
  for (double w : {2.5, 5.5, 10.5, 20.5}) {
    ratio = parseval_check(find_spectrum(kTwo, b, -w, w), f);
    out.require(ratio >= previous, "not monotone at half-width " + num(w));
    previous = ratio;
  }
  out.require(ratio >= 0.95 && ratio <= 1.0 + 1e-9, "ratio " + num(ratio) + " on [-20.5, 20.5]");
  if (out.passed) out.detail = "ratio " + std::to_string(ratio) + " on [-20.5, 20.5], monotone over 4 nested windows";
  return out;
}

Outcome criterion8() {
  Outcome out;
  const Lattice two = Lattice::line(2);
  const TilingReport yes = tiles_by(kTilingPair, two);
  out.require(yes.tiles && yes.overlap == 0 && yes.uncovered == 0, "(0,1) u (3,4) with 2Z is not an exact tiling");
  const TilingReport no = tiles_by(kTwo, two);
  out.require(!no.tiles && no.overlap == 1, "(0,1) u (2,3) with 2Z: overlap " + to_string(no.overlap));
  const PiecewiseExp chi = PiecewiseExp::indicator({0.0, 1.0}) + PiecewiseExp::indicator({3.0, 4.0});
  const PairMeasureReport exact = pair_measure_check(kTilingPair, two, 20, chi);
  out.require(exact.defect == 0.0, "defect for the indicator " + num(exact.defect));
  const PairMeasureReport half = pair_measure_check(kTilingPair, two, 20, PiecewiseExp::indicator({0.0, 0.5}));
  out.require(half.defect <= 0.05, "defect for (0,0.5) at N=20 " + num(half.defect));
  if (out.passed)
    out.detail = "exact tiling, overlap 1 for (0,1) u (2,3), defects " + num(exact.defect) + " and " + num(half.defect);
  return out;
}

Outcome criterion9() {
  Outcome out;
  const Lattice two = Lattice::line(2);
  double worst = 0.0;
  const PrutReport reports[] = {
      prut_group_check(kUnit, Lattice::line(1), PiecewiseExp::indicator({0.0, 0.5}), 0.5, -2.0, 2.0),
      prut_group_check(kTilingPair, two, PiecewiseExp::indicator({0.0, 1.0}), 2.0, -3.0, 3.0),
      prut_group_check(kTilingPair, two, PiecewiseExp::indicator({3.0, 4.0}), 1.0, -3.0, 3.0)};
  for (const PrutReport& r : reports) worst = std::max({worst, r.fourier_residual, r.norm_defect});
  out.require(worst <= 1e-10, "fixture residual " + num(worst));

  Rng rng(9);
  std::uniform_real_distribution<double> time(-5.0, 5.0);
  double law = 0.0, unitary = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const PiecewiseExp f = random_pwexp(kTilingPair, rng);
    const double t1 = time(rng), t2 = time(rng);
    const PiecewiseExp lhs = tiling_evolve(kTilingPair, two, tiling_evolve(kTilingPair, two, f, t2), t1);
    law = std::max(law, norm(lhs - tiling_evolve(kTilingPair, two, f, t1 + t2)));
    unitary = std::max(unitary, std::abs(norm(tiling_evolve(kTilingPair, two, f, t1)) - norm(f)));
  }
  out.require(law <= 1e-10, "group law residual " + num(law));
  out.require(unitary <= 1e-10, "unitarity residual " + num(unitary));
  if (out.passed)
    out.detail = "fixtures " + num(worst) + ", group law " + num(law) + ", unitarity " + num(unitary) + " (50 trials)";
  return out;
}

Outcome criterion10() {
  Outcome out;
  struct Case {
    const char* name;
    IntervalUnion omega;
    BoundaryMatrix boundary;
  };
  const Case cases[] = {{"(0,1), B=1", kUnit, theta_boundary(0.0)},
                        {"(0,1), B=exp(0.6 pi i)", kUnit, theta_boundary(0.3)},
                        {"(0,1) u (3,4), tiling B", kTilingPair, boundary_from_tiling(kTilingPair, Lattice::line(2))}};
  double worst = 0.0;
  for (const Case& c : cases) {
    const SpectrumSet s = find_spectrum(c.omega, c.boundary, -10.0, 10.0);
    const bool criterion = local_translation_criterion(s);
    out.require(criterion, std::string(c.name) + ": criterion unexpectedly false");
    if (!criterion) continue;
    std::vector<double> lambdas;
    for (const SpectrumPoint& pt : s.points) lambdas.push_back(pt.lambda);
    const OrthogonalityReport r = orthogonality_test(c.omega, lambdas, 1e-9);
    worst = std::max(worst, r.max_offdiag);
    out.require(r.passed && r.max_offdiag <= 1e-9, std::string(c.name) + ": max off-diagonal " + num(r.max_offdiag));
  }
  if (out.passed) out.detail = "criterion true on 3 fixtures, max off-diagonal " + num(worst);
  return out;
}

}  // namespace

int main() {
  const std::vector<std::function<Outcome()>> criteria = {criterion1, criterion2, criterion3, criterion4,
                                                          criterion5, criterion6, criterion7, criterion8,
                                                          criterion9, criterion10};
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k]();
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.passed) ++failures;
    std::printf("%s criterion %zu: %s\n", o.passed ? "PASS" : "FAIL", k + 1, o.detail.c_str());
  }
  return failures == 0 ? 0 : 1;
}
