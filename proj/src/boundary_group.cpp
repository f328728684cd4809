#include "spectral_glue/boundary_group.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spectral_glue/errors.hpp"
#include "spectral_glue/random.hpp"

namespace spectral_glue {

BoundaryMatrix BoundaryMatrix::for_domain(const IntervalUnion& omega, Eigen::MatrixXcd entries) {
  return {std::move(entries), omega.finite_left_components(), omega.finite_right_components()};
}

BoundaryMatrix BoundaryMatrix::identity(const IntervalUnion& omega) {
  const auto n = static_cast<Eigen::Index>(omega.finite_left_count());
  return for_domain(omega, Eigen::MatrixXcd::Identity(n, n));
}

double BoundaryMatrix::unitarity_defect() const {
  if (entries.rows() != entries.cols()) return kInf;
  if (entries.size() == 0) return 0.0;
  const Eigen::MatrixXcd gram =
      entries.adjoint() * entries - Eigen::MatrixXcd::Identity(entries.rows(), entries.cols());
  return gram.cwiseAbs().maxCoeff();
}

EvolutionEngine::EvolutionEngine(IntervalUnion omega, BoundaryMatrix boundary, double base_step)
    : omega_(std::move(omega)), boundary_(std::move(boundary)), base_step_(base_step) {
  row_of_component_.assign(omega_.size(), -1);
  col_of_component_.assign(omega_.size(), -1);
  for (std::size_t r = 0; r < boundary_.row_index.size(); ++r) {
    row_of_component_[boundary_.row_index[r]] = static_cast<long>(r);
  }
  for (std::size_t c = 0; c < boundary_.col_index.size(); ++c) {
    col_of_component_[boundary_.col_index[c]] = static_cast<long>(c);
  }
}

EvolutionEngine build_engine(const IntervalUnion& omega, const BoundaryMatrix& boundary) {
  if (omega.empty()) throw Error(ErrorCode::degenerate_domain, "empty domain");
  const std::size_t left = omega.finite_left_count();
  const std::size_t right = omega.finite_right_count();
  if (left != right) {
    throw Error(ErrorCode::no_extension,
                std::to_string(left) + " finite left endpoints vs " + std::to_string(right) +
                    " finite right endpoints; a unitary boundary matrix must be square");
  }
  if (static_cast<std::size_t>(boundary.entries.rows()) != left ||
      static_cast<std::size_t>(boundary.entries.cols()) != right) {
    throw Error(ErrorCode::invalid_input, "boundary matrix is " +
                                              std::to_string(boundary.entries.rows()) + "x" +
                                              std::to_string(boundary.entries.cols()) +
                                              ", domain needs " + std::to_string(left) + "x" +
                                              std::to_string(right));
  }
  BoundaryMatrix b = boundary;
  if (b.row_index.empty() && b.col_index.empty()) b = BoundaryMatrix::for_domain(omega, b.entries);
  if (b.row_index != omega.finite_left_components() ||
      b.col_index != omega.finite_right_components()) {
    throw Error(ErrorCode::invalid_input,
                "boundary row/col indices do not match the finite endpoints of the domain");
  }
  const double defect = b.unitarity_defect();
  if (!(defect <= kUnitarityTol)) {
    throw Error(ErrorCode::not_unitary, "max |B*B - I| = " + std::to_string(defect));
  }
  const double l = omega.min_length();
  if (!(l > 0.0)) throw Error(ErrorCode::degenerate_domain, "minimum component length is zero");
  return EvolutionEngine(omega, std::move(b), l / 4.0);
}

PiecewiseExp EvolutionEngine::evolve_small(const PiecewiseExp& f, double t) const {
  if (std::abs(t) > 2.0 * base_step_ * (1.0 + 1e-12)) {
    throw Error(ErrorCode::step_too_large,
                "|t| = " + std::to_string(std::abs(t)) + " exceeds 2*eps0 = " +
                    std::to_string(2.0 * base_step_));
  }
  if (t == 0.0) return f;

  std::vector<Piece> out;
  out.reserve(2 * f.pieces().size());
  auto push_translated = [&out](const Piece& p, double lo, double hi, double tau, Complex factor) {
    // T(tau) on the part of p supported in (lo, hi).
    out.push_back({{lo - tau, hi - tau},
                   factor * p.amp * std::polar(1.0, 2.0 * kPi * p.freq * tau),
                   p.freq});
  };

  const auto& B = boundary_.entries;
  for (const auto& p : f.pieces()) {
    const auto comp = omega_.component_of(0.5 * (p.support.lo + p.support.hi));
    if (!comp) throw Error(ErrorCode::invalid_input, "function is not supported in the domain");
    const Interval& home = omega_[*comp];
    const double lo = std::max(p.support.lo, home.lo);
    const double hi = std::min(p.support.hi, home.hi);

    if (t > 0.0) {
      // Mass moves left; what crosses alpha_i re-enters at each beta_k.
      const double exit_edge = home.lo + t;
      if (hi > exit_edge || home.lo == -kInf) {
        push_translated(p, std::max(lo, exit_edge), hi, t, 1.0);
      }
      const long row = row_of_component_[*comp];
      if (row >= 0 && lo < exit_edge) {
        const double part_hi = std::min(hi, exit_edge);
        for (std::size_t col = 0; col < boundary_.col_index.size(); ++col) {
          const Complex b = B(row, static_cast<Eigen::Index>(col));
          if (b == Complex{0.0, 0.0}) continue;
          const double beta = omega_[boundary_.col_index[col]].hi;
          push_translated(p, lo, part_hi, t + home.lo - beta, b);
        }
      }
    } else {
      const double s = -t;
      const double exit_edge = home.hi - s;
      if (lo < exit_edge || home.hi == kInf) {
        push_translated(p, lo, std::min(hi, exit_edge), t, 1.0);
      }
      const long col = col_of_component_[*comp];
      if (col >= 0 && hi > exit_edge) {
        const double part_lo = std::max(lo, exit_edge);
        for (std::size_t row = 0; row < boundary_.row_index.size(); ++row) {
          const Complex b = B(static_cast<Eigen::Index>(row), col);
          if (b == Complex{0.0, 0.0}) continue;
          const double alpha = omega_[boundary_.row_index[row]].lo;
          push_translated(p, part_lo, hi, home.hi - alpha - s, std::conj(b));
        }
      }
    }
  }
  return PiecewiseExp(std::move(out));
}

PiecewiseExp EvolutionEngine::evolve(const PiecewiseExp& f, double t) const {
  if (t == 0.0) return f;
  if (!std::isfinite(base_step_)) return evolve_small(f, t);
  const double step = t > 0.0 ? base_step_ : -base_step_;
  const double n = std::floor(std::abs(t) / base_step_);
  const double remainder = t - n * step;
  PiecewiseExp g = evolve_small(f, remainder);
  for (double k = 0; k < n; k += 1.0) g = evolve_small(g, step);
  return g;
}

double local_translation_discrepancy(const EvolutionEngine& engine, const Interval& v, double t,
                                     const PiecewiseExp& f) {
  const IntervalUnion window({v});
  const PiecewiseExp evolved = restrict(engine.evolve(f, t), window);
  const PiecewiseExp shifted = restrict(translate(f, t), window);
  const double scale = norm(f);
  if (scale == 0.0) return 0.0;
  return norm(evolved - shifted) / scale;
}

LocalTranslationReport check_local_translation(const EvolutionEngine& engine, std::size_t samples,
                                               double tol, std::uint64_t seed) {
  const IntervalUnion& omega = engine.omega();
  const std::size_t p = omega.size();
  Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto window = [](const Interval& iv) -> Interval {
    if (iv.bounded()) return iv;
    if (iv.lo > -kInf) return {iv.lo, iv.lo + 4.0};
    if (iv.hi < kInf) return {iv.hi - 4.0, iv.hi};
    return {-2.0, 2.0};
  };

  LocalTranslationReport report;
  for (std::size_t s = 0; s < samples; ++s) {
    // Cycle through ordered component pairs so every (i, j) is visited.
    const std::size_t from = s % p;
    const std::size_t to = (s / p) % p;
    const Interval a = window(omega[from]);
    const Interval b = window(omega[to]);
    const double len = (0.1 + 0.8 * unit(rng)) * std::min(a.length(), b.length());
    const double v_lo = a.lo + unit(rng) * (a.length() - len);
    const double target_lo = b.lo + unit(rng) * (b.length() - len);
    const Interval v{v_lo, v_lo + len};
    const double t = target_lo - v_lo;

    const PiecewiseExp local = random_pwexp_on({target_lo, target_lo + len}, rng, 2);
    const PiecewiseExp global = random_pwexp(omega, rng, 3);
    const double d = std::max(local_translation_discrepancy(engine, v, t, local),
                              local_translation_discrepancy(engine, v, t, local + global));
    ++report.samples;
    if (d > report.max_discrepancy || s == 0) {
      report.max_discrepancy = d;
      report.worst_v = v;
      report.worst_t = t;
      report.worst_from = from;
      report.worst_to = to;
    }
  }
  report.passed = report.max_discrepancy <= tol;
  return report;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::no: return "false";
    case Verdict::unknown: return "unknown";
    case Verdict::yes: return "true";
  }
  return "unknown";
}

GateReport gates(const IntervalUnion& omega) {
  GateReport report;
  const std::size_t left = omega.finite_left_count();
  const std::size_t right = omega.finite_right_count();
  report.extension_exists = left == right;
  if (!report.extension_exists) {
    report.spectral_possible = Verdict::no;
    report.reasons.push_back("no self-adjoint extension: " + std::to_string(left) +
                             " finite left endpoints vs " + std::to_string(right) +
                             " finite right endpoints (boundary matrix cannot be square)");
    return report;
  }
  if (!omega.bounded()) {
    if (omega.size() == 1) {
      report.spectral_possible = Verdict::yes;
      report.reasons.push_back("domain is the whole line");
    } else {
      report.spectral_possible = Verdict::no;
      report.reasons.push_back(
          "unbounded domain with finitely many components has a positive gap; "
          "spectral sets of this kind cannot have gaps");
    }
    return report;
  }
  report.spectral_possible = Verdict::unknown;
  return report;
}

}  // namespace spectral_glue
