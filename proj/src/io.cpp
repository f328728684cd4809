#include "spectral_glue/io.hpp"

#include <unistd.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "spectral_glue/errors.hpp"

namespace spectral_glue::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::invalid_input, what); }

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) bad(std::string(what) + " must be a number");
  return j.get<double>();
}

double endpoint(const Json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "-inf") return -kInf;
    if (s == "+inf" || s == "inf") return kInf;
    bad("endpoint string must be \"-inf\" or \"+inf\", got \"" + s + "\"");
  }
  return number(j, "endpoint");
}

Json endpoint_json(double x) {
  if (x == -kInf) return "-inf";
  if (x == kInf) return "+inf";
  return x;
}

Interval interval_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) bad("interval must be [lo, hi]");
  return {endpoint(j[0]), endpoint(j[1])};
}

std::size_t index_value(const Json& j) {
  if (!j.is_number_integer() || j.get<long long>() < 0) bad("index must be a non-negative integer");
  return j.get<std::size_t>();
}

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return parse_rational(std::to_string(j.get<long long>()));
  if (j.is_number_float()) return parse_rational(format_double(j.get<double>()));
  bad("lattice entry must be a number or a rational string");
}

std::string svg_header(double width, double height) {
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  return out.str();
}

std::string fmt(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::fixed, 2);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

Json to_json(const IntervalUnion& omega) {
  Json list = Json::array();
  for (const auto& iv : omega.intervals()) list.push_back({endpoint_json(iv.lo), endpoint_json(iv.hi)});
  return {{"intervals", list}};
}

IntervalUnion interval_union_from_json(const Json& j) {
  const Json& list = member(j, "intervals");
  if (!list.is_array()) bad("'intervals' must be an array");
  std::vector<Interval> out;
  for (const auto& item : list) out.push_back(interval_from_json(item));
  return IntervalUnion(std::move(out));
}

Json to_json(const BoxUnion& omega) {
  Json boxes = Json::array();
  for (const auto& box : omega.boxes()) {
    Json b = Json::array();
    for (const auto& side : box) b.push_back({endpoint_json(side.lo), endpoint_json(side.hi)});
    boxes.push_back(b);
  }
  return {{"dim", omega.dim()}, {"boxes", boxes}, {"full_axes", omega.full_axes()}};
}

BoxUnion box_union_from_json(const Json& j) {
  const std::size_t dim = index_value(member(j, "dim"));
  const Json& list = member(j, "boxes");
  if (!list.is_array()) bad("'boxes' must be an array");
  std::vector<BoxUnion::Box> boxes;
  for (const auto& item : list) {
    if (!item.is_array() || item.size() != dim) bad("every box needs one [lo, hi] per axis");
    BoxUnion::Box box;
    for (const auto& side : item) box.push_back(interval_from_json(side));
    boxes.push_back(std::move(box));
  }
  std::vector<std::size_t> full;
  if (j.contains("full_axes")) {
    if (!j["full_axes"].is_array()) bad("'full_axes' must be an array");
    for (const auto& a : j["full_axes"]) full.push_back(index_value(a));
  }
  return BoxUnion(dim, std::move(boxes), std::move(full));
}

bool is_box_union(const Json& j) { return j.is_object() && j.contains("boxes"); }

Json to_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  return {number(member(j, "re"), "re"), number(member(j, "im"), "im")};
}

Json to_json(const PiecewiseExp& f) {
  Json pieces = Json::array();
  for (const auto& p : f.pieces()) {
    pieces.push_back({{"support", {p.support.lo, p.support.hi}}, {"amp", to_json(p.amp)}, {"freq", p.freq}});
  }
  return {{"pieces", pieces}};
}

PiecewiseExp pwexp_from_json(const Json& j) {
  const Json& list = member(j, "pieces");
  if (!list.is_array()) bad("'pieces' must be an array");
  std::vector<Piece> pieces;
  for (const auto& item : list) {
    const Interval support = interval_from_json(member(item, "support"));
    const Complex amp = item.contains("amp") ? complex_from_json(item["amp"]) : Complex{1.0, 0.0};
    const double freq = item.contains("freq") ? number(item["freq"], "freq") : 0.0;
    pieces.push_back({support, amp, freq});
  }
  return PiecewiseExp(std::move(pieces));
}

Json to_json(const BoundaryMatrix& b) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < b.entries.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < b.entries.cols(); ++k) row.push_back(to_json(b.entries(i, k)));
    rows.push_back(row);
  }
  return {{"rows", b.entries.rows()},
          {"cols", b.entries.cols()},
          {"entries", rows},
          {"row_index", b.row_index},
          {"col_index", b.col_index}};
}

BoundaryMatrix boundary_from_json(const Json& j) {
  const std::size_t rows = index_value(member(j, "rows"));
  const std::size_t cols = index_value(member(j, "cols"));
  const Json& entries = member(j, "entries");
  if (!entries.is_array() || entries.size() != rows) bad("'entries' must have 'rows' rows");
  BoundaryMatrix b;
  b.entries.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    if (!entries[i].is_array() || entries[i].size() != cols) bad("every row needs 'cols' entries");
    for (std::size_t k = 0; k < cols; ++k) {
      b.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = complex_from_json(entries[i][k]);
    }
  }
  auto indices = [&](const char* key) {
    std::vector<std::size_t> out;
    if (j.contains(key)) {
      if (!j[key].is_array()) bad(std::string("'") + key + "' must be an array");
      for (const auto& x : j[key]) out.push_back(index_value(x));
    }
    return out;
  };
  b.row_index = indices("row_index");
  b.col_index = indices("col_index");
  return b;
}

Json to_json(const Lattice& lattice) {
  Json a = Json::array();
  for (const auto& row : lattice.a()) {
    Json r = Json::array();
    for (const auto& q : row) r.push_back(to_string(q));
    a.push_back(r);
  }
  return {{"A", a}, {"d1", lattice.d1()}};
}

Lattice lattice_from_json(const Json& j) {
  const Json& a = member(j, "A");
  if (!a.is_array() || a.empty()) bad("'A' must be a non-empty matrix");
  std::vector<std::vector<Rational>> rows;
  for (const auto& row : a) {
    if (!row.is_array()) bad("'A' rows must be arrays");
    std::vector<Rational> r;
    for (const auto& x : row) r.push_back(rational_from_json(x));
    rows.push_back(std::move(r));
  }
  const std::size_t d1 = j.contains("d1") ? index_value(j["d1"]) : rows.size();
  return Lattice(std::move(rows), d1);
}

Json to_json(const TilingReport& report) {
  return {{"tiles", report.tiles},
          {"overlap", to_string(report.overlap)},
          {"uncovered", to_string(report.uncovered)},
          {"measure", to_string(report.measure)},
          {"cell_measure", to_string(report.cell_measure)}};
}

Json to_json(const SpectrumSet& spectrum) {
  auto vectors = [](const std::vector<Eigen::VectorXcd>& vs) {
    Json out = Json::array();
    for (const auto& v : vs) {
      Json col = Json::array();
      for (Eigen::Index i = 0; i < v.size(); ++i) col.push_back(to_json(v(i)));
      out.push_back(col);
    }
    return out;
  };
  Json points = Json::array();
  for (const auto& p : spectrum.points) {
    points.push_back({{"lambda", p.lambda},
                      {"multiplicity", p.multiplicity},
                      {"coeff_vectors", vectors(p.coeff_vectors)},
                      {"function_coeffs", vectors(p.function_coeffs)}});
  }
  return {{"omega", to_json(spectrum.omega)},
          {"window", {spectrum.window_lo, spectrum.window_hi}},
          {"total_multiplicity", spectrum.total_multiplicity()},
          {"points", points}};
}

std::string spectrum_csv(const SpectrumSet& spectrum) {
  const std::size_t p = spectrum.omega.size();
  std::size_t max_m = 0;
  for (const auto& pt : spectrum.points) max_m = std::max(max_m, pt.coeff_vectors.size());
  std::string out = "lambda,multiplicity";
  for (std::size_t k = 0; k < max_m; ++k) {
    for (std::size_t g = 0; g < p; ++g) {
      out += ",c" + std::to_string(k) + "_" + std::to_string(g) + "_re";
      out += ",c" + std::to_string(k) + "_" + std::to_string(g) + "_im";
    }
  }
  out += '\n';
  for (const auto& pt : spectrum.points) {
    out += format_double(pt.lambda) + ',' + std::to_string(pt.multiplicity);
    for (std::size_t k = 0; k < max_m; ++k) {
      for (std::size_t g = 0; g < p; ++g) {
        if (k < pt.coeff_vectors.size()) {
          const Complex c = pt.coeff_vectors[k](static_cast<Eigen::Index>(g));
          out += ',' + format_double(c.real()) + ',' + format_double(c.imag());
        } else {
          out += ",,";
        }
      }
    }
    out += '\n';
  }
  return out;
}

std::string spectrum_svg(const SpectrumSet& spectrum) {
  const double width = 800, height = 240, margin = 40;
  const double lo = spectrum.window_lo, hi = spectrum.window_hi;
  std::size_t max_m = 1;
  for (const auto& p : spectrum.points) max_m = std::max(max_m, p.multiplicity);
  auto x_of = [&](double lambda) { return margin + (width - 2 * margin) * (lambda - lo) / (hi - lo); };
  auto y_of = [&](double m) { return height - margin - (height - 2 * margin) * m / static_cast<double>(max_m); };
  std::string out = svg_header(width, height);
  out += "<line x1=\"" + fmt(margin) + "\" y1=\"" + fmt(y_of(0)) + "\" x2=\"" + fmt(width - margin) +
         "\" y2=\"" + fmt(y_of(0)) + "\" stroke=\"black\"/>\n";
  out += "<text x=\"" + fmt(margin) + "\" y=\"" + fmt(height - 10) + "\" font-size=\"12\">" + format_double(lo) +
         "</text>\n";
  out += "<text x=\"" + fmt(width - margin) + "\" y=\"" + fmt(height - 10) +
         "\" font-size=\"12\" text-anchor=\"end\">" + format_double(hi) + "</text>\n";
  for (const auto& p : spectrum.points) {
    const double x = x_of(p.lambda);
    const double y = y_of(static_cast<double>(p.multiplicity));
    out += "<line x1=\"" + fmt(x) + "\" y1=\"" + fmt(y_of(0)) + "\" x2=\"" + fmt(x) + "\" y2=\"" + fmt(y) +
           "\" stroke=\"steelblue\"/>\n";
    out += "<circle cx=\"" + fmt(x) + "\" cy=\"" + fmt(y) + "\" r=\"3\" fill=\"steelblue\"><title>" +
           format_double(p.lambda) + " (m=" + std::to_string(p.multiplicity) + ")</title></circle>\n";
  }
  out += "</svg>\n";
  return out;
}

std::string eigenphases_svg(const IntervalUnion& omega, const BoundaryMatrix& boundary, double lo,
                            double hi, std::size_t samples) {
  const double width = 800, height = 320, margin = 40;
  auto x_of = [&](double lambda) { return margin + (width - 2 * margin) * (lambda - lo) / (hi - lo); };
  auto y_of = [&](double phase) { return height / 2 - (height / 2 - margin) * phase / kPi; };
  std::string out = svg_header(width, height);
  for (double level : {-kPi, 0.0, kPi}) {
    out += "<line x1=\"" + fmt(margin) + "\" y1=\"" + fmt(y_of(level)) + "\" x2=\"" + fmt(width - margin) +
           "\" y2=\"" + fmt(y_of(level)) + "\" stroke=\"" + (level == 0.0 ? "black" : "lightgray") + "\"/>\n";
  }
  samples = std::max<std::size_t>(samples, 2);
  for (std::size_t s = 0; s < samples; ++s) {
    const double lambda = lo + (hi - lo) * static_cast<double>(s) / static_cast<double>(samples - 1);
    for (double phase : eigenphases(secular(omega, boundary, lambda).s).phases) {
      out += "<circle cx=\"" + fmt(x_of(lambda)) + "\" cy=\"" + fmt(y_of(phase)) +
             "\" r=\"1.2\" fill=\"darkred\"/>\n";
    }
  }
  out += "</svg>\n";
  return out;
}

std::string snapshots_svg(const IntervalUnion& omega,
                          const std::vector<std::pair<double, PiecewiseExp>>& snapshots) {
  constexpr std::size_t grid = 2048;
  const double panel_w = 800, panel_h = 120, margin = 30;
  const std::size_t p = omega.size();
  const double slot = (panel_w - 2 * margin) / static_cast<double>(std::max<std::size_t>(p, 1));
  const double height = panel_h * static_cast<double>(std::max<std::size_t>(snapshots.size(), 1));
  std::string out = svg_header(panel_w, height);
  for (std::size_t s = 0; s < snapshots.size(); ++s) {
    const auto& [t, f] = snapshots[s];
    const double top = panel_h * static_cast<double>(s);
    std::vector<std::vector<double>> values(p, std::vector<double>(grid));
    double peak = 0.0;
    for (std::size_t g = 0; g < p; ++g) {
      Interval iv = omega[g];
      // Unbounded components are drawn over a window of length 4 at their finite end.
      if (iv.lo == -kInf) iv.lo = iv.hi - 4.0;
      if (iv.hi == kInf) iv.hi = iv.lo + 4.0;
      for (std::size_t k = 0; k < grid; ++k) {
        const double x = iv.lo + iv.length() * (static_cast<double>(k) + 0.5) / static_cast<double>(grid);
        values[g][k] = std::abs(f(x));
        peak = std::max(peak, values[g][k]);
      }
    }
    if (peak == 0.0) peak = 1.0;
    out += "<text x=\"4\" y=\"" + fmt(top + 14) + "\" font-size=\"12\">t = " + format_double(t) + "</text>\n";
    for (std::size_t g = 0; g < p; ++g) {
      out += "<polyline fill=\"none\" stroke=\"steelblue\" points=\"";
      for (std::size_t k = 0; k < grid; ++k) {
        const double x = margin + slot * static_cast<double>(g) +
                         0.95 * slot * static_cast<double>(k) / static_cast<double>(grid - 1);
        const double y = top + panel_h - 10 - (panel_h - 30) * values[g][k] / peak;
        out += fmt(x) + ',' + fmt(y) + ' ';
      }
      out += "\"/>\n";
    }
  }
  out += "</svg>\n";
  return out;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    bad(path.string() + ": " + e.what());
  }
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::invalid_input, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      out.close();
      fs::remove(tmp);
      throw Error(ErrorCode::invalid_input, "write failed for " + path.string());
    }
  }
  fs::rename(tmp, path);
}

}  // namespace spectral_glue::io
