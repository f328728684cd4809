#include "spectral_glue/pwexp.hpp"

#include <algorithm>
#include <cmath>

#include "spectral_glue/errors.hpp"

namespace spectral_glue {

namespace {

// Terms whose amplitude falls below this fraction of the largest amplitude are
// cancellation residue.
constexpr double kAmpDropRel = 1e-15;
// Neighbouring segments are joined when their amplitudes agree to this
// relative precision.
constexpr double kAmpMergeRel = 1e-14;

double snap_tol(double x) { return kMinPieceLength * std::max(1.0, std::abs(x)); }

struct Term {
  double freq;
  Complex amp;
};

struct Segment {
  std::size_t lo;
  std::size_t hi;
  std::vector<Term> terms;
};

bool same_terms(const std::vector<Term>& a, const std::vector<Term>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i].freq - b[i].freq) > kFrequencyMergeTol) return false;
    const double scale = std::max(std::abs(a[i].amp), std::abs(b[i].amp));
    if (std::abs(a[i].amp - b[i].amp) > kAmpMergeRel * scale) return false;
  }
  return true;
}

}  // namespace

std::vector<Piece> canonicalize(std::vector<Piece> pieces) {
  double scale = 0.0;
  for (const auto& p : pieces) {
    if (!p.support.bounded()) {
      throw Error(ErrorCode::invalid_input, "piece supports must be bounded");
    }
    scale = std::max(scale, std::abs(p.amp));
  }
  const double drop = kAmpDropRel * scale;
  std::erase_if(pieces, [&](const Piece& p) {
    return p.support.length() < kMinPieceLength || std::abs(p.amp) <= drop;
  });
  if (pieces.empty()) return {};

  std::vector<double> points;
  points.reserve(2 * pieces.size());
  for (const auto& p : pieces) {
    points.push_back(p.support.lo);
    points.push_back(p.support.hi);
  }
  std::sort(points.begin(), points.end());
  std::vector<double> cuts;
  double prev = points.front();
  for (double v : points) {
    if (cuts.empty() || v - prev > snap_tol(prev)) cuts.push_back(v);
    prev = v;
  }
  auto cut_index = [&](double v) {
    return static_cast<std::size_t>(std::upper_bound(cuts.begin(), cuts.end(), v) - cuts.begin()) - 1;
  };

  struct Entry {
    std::size_t seg;
    double freq;
    Complex amp;
  };
  std::vector<Entry> entries;
  entries.reserve(pieces.size());
  for (const auto& p : pieces) {
    const std::size_t i0 = cut_index(p.support.lo);
    const std::size_t i1 = cut_index(p.support.hi);
    for (std::size_t k = i0; k < i1; ++k) entries.push_back({k, p.freq, p.amp});
  }
  std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.seg != b.seg ? a.seg < b.seg : a.freq < b.freq;
  });

  std::vector<Segment> segments;
  for (std::size_t i = 0; i < entries.size();) {
    const std::size_t seg = entries[i].seg;
    std::vector<Term> terms;
    while (i < entries.size() && entries[i].seg == seg) {
      const double freq = entries[i].freq;
      double last = freq;
      Complex amp{0.0, 0.0};
      while (i < entries.size() && entries[i].seg == seg &&
             entries[i].freq - last <= kFrequencyMergeTol) {
        amp += entries[i].amp;
        last = entries[i].freq;
        ++i;
      }
      if (std::abs(amp) > drop) terms.push_back({freq, amp});
    }
    if (terms.empty()) continue;
    if (!segments.empty() && segments.back().hi == seg && same_terms(segments.back().terms, terms)) {
      segments.back().hi = seg + 1;
      continue;
    }
    segments.push_back({seg, seg + 1, std::move(terms)});
  }

  std::vector<Piece> out;
  for (const auto& s : segments) {
    for (const auto& t : s.terms) out.push_back({{cuts[s.lo], cuts[s.hi]}, t.amp, t.freq});
  }
  return out;
}

PiecewiseExp::PiecewiseExp(std::vector<Piece> pieces) : pieces_(canonicalize(std::move(pieces))) {}

PiecewiseExp PiecewiseExp::indicator(const Interval& support) {
  return PiecewiseExp({Piece{support, 1.0, 0.0}});
}

PiecewiseExp PiecewiseExp::exponential(const Interval& support, double freq, Complex amp) {
  return PiecewiseExp({Piece{support, amp, freq}});
}

Complex PiecewiseExp::operator()(double x) const {
  Complex value{0.0, 0.0};
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                             [](double v, const Piece& p) { return v < p.support.lo; });
  while (it != pieces_.begin()) {
    --it;
    if (!it->support.contains(x)) break;
    value += it->amp * std::polar(1.0, 2.0 * kPi * it->freq * x);
  }
  return value;
}

Interval PiecewiseExp::hull() const {
  if (pieces_.empty()) return {0.0, 0.0};
  double lo = kInf;
  double hi = -kInf;
  for (const auto& p : pieces_) {
    lo = std::min(lo, p.support.lo);
    hi = std::max(hi, p.support.hi);
  }
  return {lo, hi};
}

PiecewiseExp PiecewiseExp::operator-() const { return Complex{-1.0, 0.0} * *this; }

PiecewiseExp operator+(const PiecewiseExp& f, const PiecewiseExp& g) {
  std::vector<Piece> all = f.pieces_;
  all.insert(all.end(), g.pieces_.begin(), g.pieces_.end());
  return PiecewiseExp(std::move(all));
}

PiecewiseExp operator-(const PiecewiseExp& f, const PiecewiseExp& g) { return f + (-g); }

PiecewiseExp operator*(Complex c, const PiecewiseExp& f) {
  std::vector<Piece> out = f.pieces_;
  for (auto& p : out) p.amp *= c;
  return PiecewiseExp(std::move(out));
}

Complex inner_product(const PiecewiseExp& f, const PiecewiseExp& g) {
  // Canonical pieces come in runs sharing one support; distinct runs are disjoint.
  auto runs = [](const std::vector<Piece>& ps) {
    std::vector<std::pair<std::size_t, std::size_t>> r;
    for (std::size_t i = 0; i < ps.size();) {
      std::size_t j = i + 1;
      while (j < ps.size() && ps[j].support == ps[i].support) ++j;
      r.emplace_back(i, j);
      i = j;
    }
    return r;
  };
  const auto& fp = f.pieces();
  const auto& gp = g.pieces();
  const auto fr = runs(fp);
  const auto gr = runs(gp);

  Complex total{0.0, 0.0};
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < fr.size() && j < gr.size()) {
    const Interval& fs = fp[fr[i].first].support;
    const Interval& gs = gp[gr[j].first].support;
    const Interval overlap{std::max(fs.lo, gs.lo), std::min(fs.hi, gs.hi)};
    if (overlap.lo < overlap.hi) {
      for (std::size_t a = fr[i].first; a < fr[i].second; ++a) {
        for (std::size_t b = gr[j].first; b < gr[j].second; ++b) {
          total += fp[a].amp * std::conj(gp[b].amp) * chi_hat(overlap, gp[b].freq - fp[a].freq);
        }
      }
    }
    if (fs.hi < gs.hi) {
      ++i;
    } else {
      ++j;
    }
  }
  return total;
}

double norm(const PiecewiseExp& f) {
  return std::sqrt(std::max(0.0, inner_product(f, f).real()));
}

PiecewiseExp translate(const PiecewiseExp& f, double t) {
  std::vector<Piece> out = f.pieces();
  for (auto& p : out) {
    p.support = {p.support.lo - t, p.support.hi - t};
    p.amp *= std::polar(1.0, 2.0 * kPi * p.freq * t);
  }
  return PiecewiseExp(std::move(out));
}

PiecewiseExp restrict(const PiecewiseExp& f, const IntervalUnion& omega) {
  std::vector<Piece> out;
  for (const auto& p : f.pieces()) {
    for (const auto& iv : omega.intervals()) {
      const Interval clip{std::max(p.support.lo, iv.lo), std::min(p.support.hi, iv.hi)};
      if (clip.lo < clip.hi) out.push_back({clip, p.amp, p.freq});
    }
  }
  return PiecewiseExp(std::move(out));
}

PiecewiseExp sum(std::span<const PiecewiseExp> terms) {
  std::vector<Piece> all;
  for (const auto& t : terms) all.insert(all.end(), t.pieces().begin(), t.pieces().end());
  return PiecewiseExp(std::move(all));
}

bool supported_in(const PiecewiseExp& f, const IntervalUnion& omega, double tol) {
  return std::all_of(f.pieces().begin(), f.pieces().end(), [&](const Piece& p) {
    return std::any_of(omega.intervals().begin(), omega.intervals().end(), [&](const Interval& iv) {
      return p.support.lo >= iv.lo - tol && p.support.hi <= iv.hi + tol;
    });
  });
}

}  // namespace spectral_glue
