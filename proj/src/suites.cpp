#include "spectral_glue/suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "spectral_glue/errors.hpp"
#include "spectral_glue/random.hpp"
#include "spectral_glue/spectral_pair.hpp"
#include "spectral_glue/spectrum.hpp"

namespace spectral_glue {

namespace {

struct Check {
  const char* name;
  double tolerance;
};

struct Trial {
  std::vector<double> residuals;
  io::Json inputs = io::Json::object();
};

struct Instance {
  IntervalUnion omega;
  BoundaryMatrix boundary;
};

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

Instance random_instance(Rng& rng, std::size_t max_p) {
  const auto p = static_cast<std::size_t>(std::uniform_int_distribution<int>(1, static_cast<int>(max_p))(rng));
  IntervalUnion omega = random_bounded_omega(p, rng);
  BoundaryMatrix b = BoundaryMatrix::for_domain(omega, random_unitary(p, rng));
  return {std::move(omega), std::move(b)};
}

// Fixture boundary with its endpoint indexing filled in from omega.
Instance fixture(const IntervalUnion& omega, const std::optional<BoundaryMatrix>& boundary) {
  if (!boundary) return {omega, BoundaryMatrix::identity(omega)};
  if (boundary->row_index.empty() && boundary->col_index.empty()) {
    return {omega, BoundaryMatrix::for_domain(omega, boundary->entries)};
  }
  return {omega, *boundary};
}

Instance instance_for(const SuiteOptions& o, Rng& rng, std::size_t max_p) {
  if (!o.omega) return random_instance(rng, max_p);
  return fixture(*o.omega, o.boundary);
}

IntervalUnion tiling_omega() { return IntervalUnion({{0.0, 1.0}, {3.0, 4.0}}); }
Lattice tiling_lattice() { return Lattice::line(2); }

io::Json instance_json(const Instance& in) {
  return {{"omega", io::to_json(in.omega)}, {"boundary", io::to_json(in.boundary)}};
}

double relative(double value, double scale) { return scale > 0.0 ? value / scale : value; }

SuiteReport collect(const std::string& suite, const SuiteOptions& o, std::size_t trials,
                    const std::vector<Check>& checks, const std::function<Trial(std::size_t)>& run) {
  std::vector<Trial> results(trials);
  auto guarded = [&](std::size_t k) {
    try {
      results[k] = run(k);
    } catch (const std::exception& e) {
      results[k].residuals.assign(checks.size(), kInf);
      results[k].inputs["error"] = e.what();
    }
  };
  const auto n = static_cast<long>(trials);
  if (o.execution == Execution::parallel) {
#pragma omp parallel for schedule(dynamic) num_threads(worker_count())
    for (long k = 0; k < n; ++k) guarded(static_cast<std::size_t>(k));
  } else {
    for (long k = 0; k < n; ++k) guarded(static_cast<std::size_t>(k));
  }

  SuiteReport report;
  report.suite = suite;
  report.seed = o.seed;
  report.trials = trials;
  for (const auto& c : checks) report.checks.push_back({c.name, c.tolerance, 0.0, 0});
  for (std::size_t k = 0; k < trials; ++k) {
    const Trial& t = results[k];
    for (std::size_t c = 0; c < checks.size() && c < t.residuals.size(); ++c) {
      double r = t.residuals[c];
      if (std::isnan(r)) r = kInf;
      if (r < 0.0) continue;  // check not applicable to this trial
      CheckResult& cr = report.checks[c];
      cr.max_residual = std::max(cr.max_residual, r);
      ++cr.evaluations;
      if (!(r <= cr.tolerance) && !report.counterexample) {
        report.counterexample = io::Json{{"trial", k},
                                         {"seed", o.seed + k},
                                         {"check", cr.name},
                                         {"residual", std::isinf(r) ? io::Json("inf") : io::Json(r)},
                                         {"inputs", t.inputs}};
      }
    }
  }
  return report;
}

// Unitarity of B and of U(t) for t in [-10, 10].
SuiteReport unitarity_suite(const SuiteOptions& o) {
  const std::size_t trials = o.trials ? o.trials : 100;
  return collect("unitarity", o, trials, {{"boundary_unitarity", 1e-10}, {"norm_preservation", 1e-9}},
                 [&](std::size_t k) {
                   Rng rng(o.seed + k);
                   const Instance in = instance_for(o, rng, 5);
                   const EvolutionEngine engine = build_engine(in.omega, in.boundary);
                   const PiecewiseExp f = random_pwexp(in.omega, rng);
                   const double t = uniform(rng, -10.0, 10.0);
                   Trial out;
                   out.inputs = instance_json(in);
                   out.inputs["f"] = io::to_json(f);
                   out.inputs["t"] = t;
                   const double nf = norm(f);
                   out.residuals = {engine.boundary().unitarity_defect(),
                                    relative(std::abs(norm(engine.evolve(f, t)) - nf), nf)};
                   return out;
                 });
}

// Group law, adjoint, support propagation, splitting formula, strong continuity.
SuiteReport grouplaw_suite(const SuiteOptions& o) {
  const std::size_t trials = o.trials ? o.trials : 100;
  return collect(
      "grouplaw", o, trials,
      {{"group_law", 1e-9},
       {"adjoint", 1e-9},
       {"support_propagation", 1e-9},
       {"splitting_formula", 1e-9},
       {"strong_continuity", 1e-9}},
      [&](std::size_t k) {
        Rng rng(o.seed + k);
        const Instance in = instance_for(o, rng, 5);
        const EvolutionEngine engine = build_engine(in.omega, in.boundary);
        const PiecewiseExp f = random_pwexp(in.omega, rng);
        const PiecewiseExp g = random_pwexp(in.omega, rng);
        const double t1 = uniform(rng, -5.0, 5.0);
        const double t2 = uniform(rng, -5.0, 5.0);
        Trial out;
        out.inputs = instance_json(in);
        out.inputs["f"] = io::to_json(f);
        out.inputs["g"] = io::to_json(g);
        out.inputs["t1"] = t1;
        out.inputs["t2"] = t2;
        const double nf = norm(f);
        const double ng = norm(g);

        const double group = norm(engine.evolve(engine.evolve(f, t1), t2) - engine.evolve(f, t1 + t2));
        const double adjoint =
            std::abs(inner_product(engine.evolve(f, t1), g) - inner_product(f, engine.evolve(g, -t1)));

        // Mass near a finite left endpoint only reappears next to the right endpoints.
        double support = -1.0, splitting = -1.0;
        const auto& rows = engine.boundary().row_index;
        if (!rows.empty() && std::isfinite(engine.base_step())) {
          const auto r = static_cast<std::size_t>(
              std::uniform_int_distribution<int>(0, static_cast<int>(rows.size()) - 1)(rng));
          const double alpha = in.omega[rows[r]].lo;
          const double eps = engine.base_step() * uniform(rng, 0.2, 1.0);
          const PiecewiseExp h = random_pwexp_on({alpha, alpha + eps}, rng);
          const PiecewiseExp evolved = engine.evolve(h, eps);
          std::vector<Interval> landing;
          std::vector<PiecewiseExp> parts;
          const auto& cols = engine.boundary().col_index;
          for (std::size_t c = 0; c < cols.size(); ++c) {
            const double beta = in.omega[cols[c]].hi;
            landing.push_back({beta - eps, beta});
            parts.push_back(engine.boundary()(r, c) * translate(h, alpha + eps - beta));
          }
          const double nh = norm(h);
          support = relative(norm(evolved - restrict(evolved, IntervalUnion(landing))), nh);
          splitting = relative(norm(evolved - sum(parts)), nh);
          out.inputs["eps"] = eps;
          out.inputs["h"] = io::to_json(h);
        }

        double previous = kInf, violation = 0.0;
        for (double t : {1e-2, 1e-4, 1e-6}) {
          const double d = norm(engine.evolve(f, t) - f);
          violation = std::max(violation, d - previous);
          previous = d;
        }
        out.residuals = {relative(group, nf), relative(adjoint, nf * ng), support, splitting,
                         relative(violation, nf)};
        return out;
      });
}

// Eigen relation, orthogonality of eigenfunctions, det identity, similarity,
// Weyl count and det winding on random bounded instances.
SuiteReport eigen_suite(const SuiteOptions& o) {
  const std::size_t trials = o.trials ? o.trials : 20;
  return collect(
      "eigen", o, trials,
      {{"eigen_relation", 1e-8},
       {"eigenfunction_orthogonality", 1e-9},
       {"det_identity", 1e-10},
       {"similarity", 1e-10},
       {"count_audit", 1e-9},
       {"det_winding", 1e-8}},
      [&](std::size_t k) {
        Rng rng(o.seed + k);
        const Instance in = instance_for(o, rng, 4);
        const EvolutionEngine engine = build_engine(in.omega, in.boundary);
        const double a = uniform(rng, -5.0, 5.0);
        const double b = a + 4.0;
        Trial out;
        out.inputs = instance_json(in);
        out.inputs["window"] = {a, b};
        const SpectrumSet spectrum = find_spectrum(in.omega, engine.boundary(), a, b, {1e-12, Execution::serial});

        const double times[] = {0.37, 1.0, -2.2};
        double relation = 0.0;
        std::vector<PiecewiseExp> functions;
        for (const auto& point : spectrum.points) {
          relation = std::max(relation, verify_eigen(engine, point, times));
          for (auto& e : eigenfunctions(point, in.omega)) functions.push_back(std::move(e));
        }
        double ortho = 0.0;
        for (std::size_t i = 0; i < functions.size(); ++i) {
          for (std::size_t j = i + 1; j < functions.size(); ++j) {
            ortho = std::max(ortho, std::abs(inner_product(functions[i], functions[j])));
          }
        }

        const double lambda = uniform(rng, a, b);
        const SecularMatrix sm = secular(in.omega, engine.boundary(), lambda);
        const Complex expected = engine.boundary().entries.transpose().determinant() *
                                 std::polar(1.0, -2.0 * kPi * lambda * measure(in.omega));
        const double det = std::abs(sm.s.determinant() - expected);
        const auto ps = eigenphases(sm.s).phases;
        const auto pm = eigenphases(sm.m).phases;
        double similarity = 0.0;
        for (double x : pm) {
          double best = kInf;
          for (double y : ps) {
            best = std::min(best, std::abs(std::remainder(x - y, 2.0 * kPi)));
          }
          similarity = std::max(similarity, best);
        }

        const double mass = measure(in.omega) * (b - a);
        const auto p = static_cast<double>(in.omega.size());
        const double count = static_cast<double>(spectrum.total_multiplicity());
        const double audit = std::max(0.0, std::abs(count - mass) - p);
        const double winding = std::abs(det_winding(in.omega, engine.boundary(), a, b) + 2.0 * kPi * mass);
        out.residuals = {relation, ortho, det, similarity, audit, winding};
        return out;
      });
}

// Bessel bound and monotonicity over nested windows.
SuiteReport parseval_suite(const SuiteOptions& o) {
  const std::size_t trials = o.trials ? o.trials : 20;
  return collect("parseval", o, trials, {{"bessel", 1e-9}, {"nested_monotone", 1e-9}}, [&](std::size_t k) {
    Rng rng(o.seed + k);
    const Instance in = instance_for(o, rng, 3);
    const PiecewiseExp f = random_pwexp(in.omega, rng);
    Trial out;
    out.inputs = instance_json(in);
    out.inputs["f"] = io::to_json(f);
    const SpectrumSet full = find_spectrum(in.omega, in.boundary, -20.0, 20.0, {1e-12, Execution::serial});
    double bessel = 0.0, monotone = 0.0, previous = 0.0;
    for (double w : {2.5, 5.0, 10.0, 20.0}) {
      SpectrumSet part{full.omega, -w, w, {}};
      for (const auto& pt : full.points) {
        if (std::abs(pt.lambda) <= w) part.points.push_back(pt);
      }
      const double ratio = parseval_check(part, f, Execution::serial);
      bessel = std::max(bessel, ratio - 1.0);
      monotone = std::max(monotone, previous - ratio);
      previous = ratio;
    }
    out.residuals = {bessel, monotone};
    return out;
  });
}

SuiteReport local_translation_suite(const SuiteOptions& o) {
  const std::size_t samples = o.trials ? o.trials : 200;
  Instance in;
  if (o.omega) {
    in = fixture(*o.omega, o.boundary);
  } else {
    in = {tiling_omega(), boundary_from_tiling(tiling_omega(), tiling_lattice())};
  }
  SuiteOptions single = o;
  single.execution = Execution::serial;
  return collect("localtranslation", single, 1, {{"local_translation", 1e-9}}, [&](std::size_t) {
    const EvolutionEngine engine = build_engine(in.omega, in.boundary);
    const LocalTranslationReport r = check_local_translation(engine, samples, 1e-9, o.seed);
    Trial out;
    out.inputs = instance_json(in);
    out.inputs["samples"] = r.samples;
    out.inputs["V"] = {r.worst_v.lo, r.worst_v.hi};
    out.inputs["t"] = r.worst_t;
    out.inputs["from_component"] = r.worst_from;
    out.inputs["to_component"] = r.worst_to;
    out.residuals = {r.max_discrepancy};
    return out;
  });
}

// Tiling translation group: exact tiling, group law, unitarity, Fourier
// multiplier on the dual lattice, agreement with the glued engine.
SuiteReport tiling_suite(const SuiteOptions& o) {
  const std::size_t trials = o.trials ? o.trials : 50;
  const IntervalUnion omega = o.omega ? *o.omega : tiling_omega();
  const Lattice lattice = o.lattice ? *o.lattice : tiling_lattice();
  const TilingReport tiling = tiles_by(omega, lattice);
  const io::Json base = {{"omega", io::to_json(omega)}, {"lattice", io::to_json(lattice)},
                         {"tiling", io::to_json(tiling)}};
  const std::vector<Check> checks = {{"tiles", 0.0},
                                     {"group_law", 1e-10},
                                     {"unitarity", 1e-10},
                                     {"fourier_multiplier", 1e-10},
                                     {"engine_agreement", 1e-9}};
  if (!tiling.tiles) {
    SuiteOptions single = o;
    single.execution = Execution::serial;
    return collect("tiling", single, 1, checks, [&](std::size_t) {
      Trial out;
      out.inputs = base;
      out.residuals = {1.0, -1.0, -1.0, -1.0, -1.0};
      return out;
    });
  }
  const EvolutionEngine engine = build_engine(omega, boundary_from_tiling(omega, lattice));
  return collect("tiling", o, trials, checks, [&](std::size_t k) {
    Rng rng(o.seed + k);
    const PiecewiseExp f = random_pwexp(omega, rng);
    const double t1 = uniform(rng, -3.0, 3.0);
    const double t2 = uniform(rng, -3.0, 3.0);
    Trial out;
    out.inputs = base;
    out.inputs["f"] = io::to_json(f);
    out.inputs["t1"] = t1;
    out.inputs["t2"] = t2;
    const double nf = norm(f);
    const PiecewiseExp u1 = tiling_evolve(omega, lattice, f, t1);
    const double group =
        norm(tiling_evolve(omega, lattice, u1, t2) - tiling_evolve(omega, lattice, f, t1 + t2));
    const double unitary = std::abs(norm(u1) - nf);
    const PrutReport prut = prut_group_check(omega, lattice, f, t1, -3.0, 3.0);
    const double agreement = norm(u1 - engine.evolve(f, t1));
    out.residuals = {0.0, relative(group, nf), relative(unitary, nf), prut.fourier_residual,
                     relative(agreement, nf)};
    return out;
  });
}

// Lattice pair measure: the truncated Parseval defect is covered by the
// reported tail bound and shrinks as the window grows.
SuiteReport pair_measure_suite(const SuiteOptions& o) {
  const std::size_t trials = o.trials ? o.trials : 20;
  const IntervalUnion omega = o.omega ? *o.omega : tiling_omega();
  const Lattice lattice = o.lattice ? *o.lattice : tiling_lattice();
  return collect("pairmeasure", o, trials, {{"within_tail_bound", 1e-9}, {"window_monotone", 1e-9}},
                 [&](std::size_t k) {
                   Rng rng(o.seed + k);
                   const PiecewiseExp f = random_pwexp(omega, rng);
                   Trial out;
                   out.inputs = {{"omega", io::to_json(omega)}, {"lattice", io::to_json(lattice)},
                                 {"f", io::to_json(f)}};
                   double excess = -1.0, monotone = 0.0, previous = kInf;
                   for (long n : {10L, 20L, 40L, 80L}) {
                     const PairMeasureReport r = pair_measure_check(omega, lattice, n, f);
                     if (r.tail_bound) excess = std::max(excess, std::max(0.0, r.defect - *r.tail_bound));
                     monotone = std::max(monotone, r.defect - previous);
                     previous = r.defect;
                     out.inputs["defect_n" + std::to_string(n)] = r.defect;
                   }
                   out.residuals = {excess, monotone};
                   return out;
                 });
}

}  // namespace

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed(); });
}

io::Json SuiteReport::to_json() const {
  io::Json list = io::Json::array();
  for (const auto& c : checks) {
    list.push_back({{"name", c.name},
                    {"tolerance", c.tolerance},
                    {"max_residual", std::isinf(c.max_residual) ? io::Json("inf") : io::Json(c.max_residual)},
                    {"evaluations", c.evaluations},
                    {"passed", c.passed()}});
  }
  io::Json out = {{"suite", suite}, {"seed", seed}, {"trials", trials}, {"passed", passed()}, {"checks", list}};
  if (counterexample) out["counterexample"] = *counterexample;
  return out;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"unitarity", "grouplaw",         "eigen",      "parseval",
                                                 "localtranslation", "tiling", "pairmeasure"};
  return names;
}

SuiteReport run_suite(std::string_view name, const SuiteOptions& options) {
  if (name == "unitarity") return unitarity_suite(options);
  if (name == "grouplaw") return grouplaw_suite(options);
  if (name == "eigen") return eigen_suite(options);
  if (name == "parseval") return parseval_suite(options);
  if (name == "localtranslation") return local_translation_suite(options);
  if (name == "tiling") return tiling_suite(options);
  if (name == "pairmeasure") return pair_measure_suite(options);
  throw Error(ErrorCode::invalid_input, "unknown suite '" + std::string(name) + "'");
}

}  // namespace spectral_glue
