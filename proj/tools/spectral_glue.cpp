// Command-line front end. Exit codes: 0 success, 1 malformed input, 2 gate
// failure, 3 winding mismatch, 4 violated invariant.

#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "spectral_glue/boundary_group.hpp"
#include "spectral_glue/errors.hpp"
#include "spectral_glue/io.hpp"
#include "spectral_glue/spectral_pair.hpp"
#include "spectral_glue/spectrum.hpp"
#include "spectral_glue/suites.hpp"
#include "spectral_glue/tiling.hpp"

namespace fs = std::filesystem;
using namespace spectral_glue;
using io::Json;

namespace {

enum Exit { ok = 0, malformed = 1, gate = 2, winding = 3, invariant = 4 };

int exit_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::no_extension:
    case ErrorCode::unbounded_domain:
    case ErrorCode::not_a_tiling:
      return gate;
    case ErrorCode::winding_mismatch:
      return winding;
    case ErrorCode::eig_failure:
      return invariant;
    default:
      return malformed;
  }
}

// Files are collected first and written only once everything succeeded.
using Outputs = std::vector<std::pair<fs::path, std::string>>;

void write_all(const Outputs& outputs) {
  for (const auto& [path, content] : outputs) io::write_atomic(path, content);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

IntervalUnion load_omega(const std::string& path) {
  return io::interval_union_from_json(io::read_json_file(path));
}

// Gate failures are reported on stderr with the reason and exit code 2.
bool passes_gates(const IntervalUnion& omega, bool need_bounded) {
  const GateReport g = gates(omega);
  if (!g.extension_exists) {
    for (const auto& r : g.reasons) std::cerr << "gate: " << r << "\n";
    return false;
  }
  if (need_bounded && !omega.bounded()) {
    std::cerr << "gate: spectrum computation needs a bounded domain\n";
    return false;
  }
  return true;
}

std::vector<double> parse_times(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::invalid_input, "bad time '" + item + "'");
    }
  }
  if (out.empty()) throw Error(ErrorCode::invalid_input, "--times needs at least one value");
  return out;
}

struct SpectrumArgs {
  std::string omega, boundary, out = ".";
  std::vector<double> window;
  double tol = 1e-12;
  bool serial = false;
};

int cmd_spectrum(const SpectrumArgs& a) {
  const IntervalUnion omega = load_omega(a.omega);
  if (!passes_gates(omega, true)) return gate;
  const BoundaryMatrix b = io::boundary_from_json(io::read_json_file(a.boundary));
  const SpectrumSet s = find_spectrum(omega, b, a.window[0], a.window[1],
                                      {a.tol, a.serial ? Execution::serial : Execution::parallel});
  const EvolutionEngine engine = build_engine(omega, b);
  const fs::path dir(a.out);
  write_all({{dir / "spectrum.csv", io::spectrum_csv(s)},
             {dir / "spectrum.json", dump(io::to_json(s))},
             {dir / "spectrum.svg", io::spectrum_svg(s)},
             {dir / "eigenphases.svg", io::eigenphases_svg(omega, engine.boundary(), a.window[0], a.window[1])}});
  std::cout << s.points.size() << " spectrum points, total multiplicity " << s.total_multiplicity() << "\n";
  return ok;
}

struct EvolveArgs {
  std::string omega, boundary, function, times, out = ".";
};

int cmd_evolve(const EvolveArgs& a) {
  const IntervalUnion omega = load_omega(a.omega);
  if (!passes_gates(omega, false)) return gate;
  const BoundaryMatrix b = io::boundary_from_json(io::read_json_file(a.boundary));
  const PiecewiseExp f = io::pwexp_from_json(io::read_json_file(a.function));
  if (!supported_in(f, omega)) throw Error(ErrorCode::invalid_input, "function is not supported in omega");
  const std::vector<double> times = parse_times(a.times);
  const EvolutionEngine engine = build_engine(omega, b);
  const fs::path dir(a.out);
  Outputs outputs;
  std::vector<std::pair<double, PiecewiseExp>> snapshots;
  for (std::size_t i = 0; i < times.size(); ++i) {
    PiecewiseExp g = engine.evolve(f, times[i]);
    outputs.emplace_back(dir / ("evolve_" + std::to_string(i) + ".json"), dump(io::to_json(g)));
    std::cout << "evolve_" << i << ".json: t = " << io::format_double(times[i]) << "\n";
    snapshots.emplace_back(times[i], std::move(g));
  }
  outputs.emplace_back(dir / "snapshots.svg", io::snapshots_svg(omega, snapshots));
  write_all(outputs);
  return ok;
}

struct VerifyArgs {
  std::string suite, omega, boundary, lattice, out;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  bool serial = false;
};

int cmd_verify(const VerifyArgs& a) {
  SuiteOptions o;
  o.seed = a.seed;
  o.trials = a.trials;
  o.execution = a.serial ? Execution::serial : Execution::parallel;
  if (!a.omega.empty()) {
    o.omega = load_omega(a.omega);
    if (!passes_gates(*o.omega, false)) return gate;
  }
  if (!a.boundary.empty()) o.boundary = io::boundary_from_json(io::read_json_file(a.boundary));
  if (!a.lattice.empty()) o.lattice = io::lattice_from_json(io::read_json_file(a.lattice));
  const SuiteReport r = run_suite(a.suite, o);
  const std::string text = dump(r.to_json());
  if (a.out.empty()) {
    std::cout << text;
  } else {
    io::write_atomic(a.out, text);
  }
  if (!r.passed()) {
    std::cerr << "violated invariant; first counterexample:\n" << r.counterexample->dump(2) << "\n";
    return invariant;
  }
  return ok;
}

struct TilingArgs {
  std::string omega, lattice, out, boundary_out;
  std::vector<double> translate;
  std::vector<double> dual_window;
};

int cmd_tiling(const TilingArgs& a) {
  const Json oj = io::read_json_file(a.omega);
  const Lattice lattice = io::lattice_from_json(io::read_json_file(a.lattice));
  const bool boxes = io::is_box_union(oj);
  const BoxUnion omega = boxes ? io::box_union_from_json(oj) : to_box_union(io::interval_union_from_json(oj));
  const TilingReport report = tiles_by(to_exact(omega), lattice);
  Json j = io::to_json(report);
  Outputs outputs;
  if (!a.translate.empty() || !a.dual_window.empty() || !a.boundary_out.empty()) {
    if (boxes || lattice.dim() != 1) {
      throw Error(ErrorCode::invalid_input, "--translate, --dual-window and --boundary-out are one-dimensional");
    }
  }
  if (!a.translate.empty() || !a.boundary_out.empty()) {
    const IntervalUnion line = io::interval_union_from_json(oj);
    if (!a.translate.empty()) {
      j["translate"] = {{"x", a.translate[0]},
                        {"t", a.translate[1]},
                        {"y", tiling_translate(line, lattice, a.translate[0], a.translate[1])}};
    }
    if (!a.boundary_out.empty()) {
      outputs.emplace_back(a.boundary_out, dump(io::to_json(boundary_from_tiling(line, lattice))));
    }
  }
  if (!a.dual_window.empty()) {
    Json pts = Json::array();
    for (const auto& p : dual_points(lattice, Eigen::VectorXd::Constant(1, a.dual_window[0]),
                                     Eigen::VectorXd::Constant(1, a.dual_window[1]))) {
      pts.push_back(p(0));
    }
    j["dual_points"] = pts;
  }
  if (a.out.empty()) {
    std::cout << dump(j);
  } else {
    outputs.emplace_back(a.out, dump(j));
  }
  write_all(outputs);
  return ok;
}

struct PairArgs {
  std::string omega, lattice, function, out;
  long n = 20;
};

Json pair_json(const PairMeasureReport& r, long n) {
  Json j = {{"n", n}, {"norm2", r.norm2}, {"sum", r.sum}, {"defect", r.defect}, {"terms", r.terms}};
  j["tail_bound"] = r.tail_bound ? Json(*r.tail_bound) : Json(nullptr);
  return j;
}

int cmd_pairmeasure(const PairArgs& a) {
  const Json oj = io::read_json_file(a.omega);
  const Lattice lattice = io::lattice_from_json(io::read_json_file(a.lattice));
  PairMeasureReport r;
  if (io::is_box_union(oj)) {
    if (!a.function.empty()) throw Error(ErrorCode::invalid_input, "box unions use f = indicator of omega");
    const BoxUnion omega = io::box_union_from_json(oj);
    r = lattice.d2() > 0 ? product_pair_measure_check(omega, lattice, a.n) : pair_measure_check(omega, lattice, a.n);
  } else {
    const IntervalUnion omega = io::interval_union_from_json(oj);
    PiecewiseExp f;
    if (a.function.empty()) {
      std::vector<Piece> pieces;
      for (const auto& iv : omega.intervals()) pieces.push_back({iv, 1.0, 0.0});
      f = PiecewiseExp(std::move(pieces));
    } else {
      f = io::pwexp_from_json(io::read_json_file(a.function));
    }
    r = pair_measure_check(omega, lattice, a.n, f);
  }
  const std::string text = dump(pair_json(r, a.n));
  if (a.out.empty()) {
    std::cout << text;
  } else {
    io::write_atomic(a.out, text);
  }
  return ok;
}

struct ReportArgs {
  std::string omega, boundary, candidate, out;
  std::vector<double> window;
  std::size_t trials = 20;
  std::uint64_t seed = 0;
};

int cmd_report(const ReportArgs& a) {
  const IntervalUnion omega = load_omega(a.omega);
  const GateReport g = gates(omega);
  Json j = {{"gates",
             {{"extension_exists", g.extension_exists},
              {"spectral_possible", to_string(g.spectral_possible)},
              {"reasons", g.reasons}}}};
  if (!passes_gates(omega, true)) {
    std::cout << dump(j);
    return gate;
  }
  std::vector<double> candidate;
  if (!a.candidate.empty()) {
    const Json cj = io::read_json_file(a.candidate);
    if (!cj.is_array()) throw Error(ErrorCode::invalid_input, "candidate must be a JSON array of numbers");
    for (const auto& x : cj) {
      if (!x.is_number()) throw Error(ErrorCode::invalid_input, "candidate must be a JSON array of numbers");
      candidate.push_back(x.get<double>());
    }
  } else {
    if (a.boundary.empty()) throw Error(ErrorCode::invalid_input, "need --boundary or --candidate");
    const BoundaryMatrix b = io::boundary_from_json(io::read_json_file(a.boundary));
    const SpectrumSet s = find_spectrum(omega, b, a.window[0], a.window[1]);
    for (const auto& p : s.points) candidate.push_back(p.lambda);
    j["local_translation"] = local_translation_criterion(s);
    j["total_multiplicity"] = s.total_multiplicity();
  }
  const OrthogonalityReport orth = orthogonality_test(omega, candidate, 1e-9);
  const CompletenessReport comp = completeness_estimate(omega, candidate, a.trials, a.seed);
  j["candidate"] = candidate;
  j["max_offdiag"] = orth.max_offdiag;
  j["ratios"] = comp.ratios;
  j["min_ratio"] = comp.min_ratio;
  j["tail_budget"] = comp.tail_budget;
  j["verdict"] = !orth.passed ? "not-orthogonal" : comp.consistent ? "consistent" : "incomplete";
  const std::string text = dump(j);
  if (a.out.empty()) {
    std::cout << text;
  } else {
    io::write_atomic(a.out, text);
  }
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unitary groups of local translations on interval unions: spectra, evolution, tilings"};
  app.require_subcommand(1);

  SpectrumArgs sa;
  auto* spectrum = app.add_subcommand("spectrum", "Spectrum of the group glued by a boundary matrix");
  spectrum->add_option("--omega", sa.omega, "IntervalUnion JSON")->required();
  spectrum->add_option("--boundary", sa.boundary, "BoundaryMatrix JSON")->required();
  spectrum->add_option("--window", sa.window, "lambda window A B")->required()->expected(2);
  spectrum->add_option("--tol", sa.tol, "bisection tolerance in lambda");
  spectrum->add_option("--out", sa.out, "output directory");
  spectrum->add_flag("--serial", sa.serial, "use the serial reference scan");

  EvolveArgs ea;
  auto* evolve = app.add_subcommand("evolve", "Evolve a piecewise exponential");
  evolve->add_option("--omega", ea.omega)->required();
  evolve->add_option("--boundary", ea.boundary)->required();
  evolve->add_option("--function", ea.function, "PiecewiseExp JSON")->required();
  evolve->add_option("--times", ea.times, "comma-separated times")->required();
  evolve->add_option("--out", ea.out, "output directory");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Run a property suite");
  verify->add_option("--suite", va.suite)->required()->check(CLI::IsMember(suite_names()));
  verify->add_option("--seed", va.seed);
  verify->add_option("--trials", va.trials, "trial count (0: suite default)");
  verify->add_option("--omega", va.omega, "fixture domain");
  verify->add_option("--boundary", va.boundary, "fixture boundary matrix");
  verify->add_option("--lattice", va.lattice, "fixture lattice");
  verify->add_option("--out", va.out, "report file (default: stdout)");
  verify->add_flag("--serial", va.serial, "run trials serially");

  TilingArgs ta;
  auto* tiling = app.add_subcommand("tiling", "Exact tiling test");
  tiling->add_option("--omega", ta.omega, "IntervalUnion or BoxUnion JSON")->required();
  tiling->add_option("--lattice", ta.lattice, "Lattice JSON")->required();
  tiling->add_option("--out", ta.out, "report file (default: stdout)");
  tiling->add_option("--boundary-out", ta.boundary_out, "write the tiling boundary matrix (1D)");
  tiling->add_option("--translate", ta.translate, "x t: report y(x + t) (1D)")->expected(2);
  tiling->add_option("--dual-window", ta.dual_window, "lo hi: list dual points (1D)")->expected(2);

  PairArgs pa;
  auto* pair = app.add_subcommand("pairmeasure", "Parseval check of the lattice pair measure");
  pair->add_option("--omega", pa.omega)->required();
  pair->add_option("--lattice", pa.lattice)->required();
  pair->add_option("--n", pa.n, "dual window |k| <= n");
  pair->add_option("--function", pa.function, "PiecewiseExp JSON (default: indicator of omega)");
  pair->add_option("--out", pa.out, "report file (default: stdout)");

  ReportArgs ra;
  auto* report = app.add_subcommand("report", "Spectral-pair report for a computed or given candidate");
  report->add_option("--omega", ra.omega)->required();
  report->add_option("--boundary", ra.boundary);
  report->add_option("--candidate", ra.candidate, "JSON array of lambdas (instead of --boundary)");
  report->add_option("--lambda-window", ra.window, "A B")->expected(2)->default_val(std::vector<double>{-10, 10});
  report->add_option("--trials", ra.trials);
  report->add_option("--seed", ra.seed);
  report->add_option("--out", ra.out, "report file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : malformed;
  }

  try {
    if (*spectrum) return cmd_spectrum(sa);
    if (*evolve) return cmd_evolve(ea);
    if (*verify) return cmd_verify(va);
    if (*tiling) return cmd_tiling(ta);
    if (*pair) return cmd_pairmeasure(pa);
    if (*report) return cmd_report(ra);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return exit_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return malformed;
  }
  return malformed;
}
