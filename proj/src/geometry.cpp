#include "spectral_glue/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spectral_glue/errors.hpp"

namespace spectral_glue {

IntervalUnion::IntervalUnion(std::vector<Interval> intervals) {
  for (const auto& iv : intervals) {
    if (std::isnan(iv.lo) || std::isnan(iv.hi) || !(iv.lo < iv.hi)) {
      throw Error(ErrorCode::invalid_input, "interval endpoints must satisfy lo < hi");
    }
  }
  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (const auto& iv : intervals) {
    if (!intervals_.empty()) {
      Interval& last = intervals_.back();
      if (iv.lo < last.hi) {
        throw Error(ErrorCode::invalid_input, "intervals overlap");
      }
      if (iv.lo == last.hi) {
        last.hi = iv.hi;
        continue;
      }
    }
    intervals_.push_back(iv);
  }
}

bool IntervalUnion::bounded() const {
  return std::all_of(intervals_.begin(), intervals_.end(),
                     [](const Interval& iv) { return iv.bounded(); });
}

double IntervalUnion::min_length() const {
  double l = kInf;
  for (const auto& iv : intervals_) l = std::min(l, iv.length());
  return l;
}

double IntervalUnion::max_length() const {
  double l = 0.0;
  for (const auto& iv : intervals_) l = std::max(l, iv.length());
  return l;
}

std::size_t IntervalUnion::finite_left_count() const {
  return finite_left_components().size();
}

std::size_t IntervalUnion::finite_right_count() const {
  return finite_right_components().size();
}

std::vector<std::size_t> IntervalUnion::finite_left_components() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    if (intervals_[i].lo > -kInf) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> IntervalUnion::finite_right_components() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    if (intervals_[i].hi < kInf) out.push_back(i);
  }
  return out;
}

std::optional<std::size_t> IntervalUnion::component_of(double x) const {
  auto it = std::upper_bound(intervals_.begin(), intervals_.end(), x,
                             [](double v, const Interval& iv) { return v < iv.lo; });
  if (it == intervals_.begin()) return std::nullopt;
  --it;
  if (it->contains(x)) return static_cast<std::size_t>(it - intervals_.begin());
  return std::nullopt;
}

double measure(const IntervalUnion& omega) {
  double total = 0.0;
  for (const auto& iv : omega.intervals()) {
    if (!iv.bounded()) return kInf;
    total += iv.length();
  }
  return total;
}

Complex chi_hat(const Interval& interval, double xi) {
  if (!interval.bounded()) {
    throw Error(ErrorCode::unbounded_transform, "indicator transform needs a bounded interval");
  }
  const double a = interval.lo;
  const double b = interval.hi;
  const double len = b - a;
  if (xi == 0.0) return {len, 0.0};
  // Both branches factor out the midpoint phase exp(-pi i xi (a+b)).
  const Complex mid_phase = std::polar(1.0, -kPi * xi * (a + b));
  if (std::abs(xi) * len < kChiHatTaylorSwitch) {
    const double z = kPi * xi * len;
    return mid_phase * (len * (1.0 - z * z / 6.0));
  }
  return mid_phase * (std::sin(kPi * xi * len) / (kPi * xi));
}

Complex omega_hat(const IntervalUnion& omega, double xi) {
  Complex total{0.0, 0.0};
  for (const auto& iv : omega.intervals()) total += chi_hat(iv, xi);
  return total;
}

BoxUnion::BoxUnion(std::size_t dim, std::vector<Box> boxes, std::vector<std::size_t> full_axes)
    : dim_(dim), boxes_(std::move(boxes)), full_axes_(std::move(full_axes)) {
  if (dim_ == 0) throw Error(ErrorCode::invalid_input, "box union needs dim >= 1");
  std::sort(full_axes_.begin(), full_axes_.end());
  full_axes_.erase(std::unique(full_axes_.begin(), full_axes_.end()), full_axes_.end());
  for (auto axis : full_axes_) {
    if (axis >= dim_) throw Error(ErrorCode::invalid_input, "full axis out of range");
  }
  for (auto& box : boxes_) {
    if (box.size() != dim_) {
      throw Error(ErrorCode::invalid_input, "box has " + std::to_string(box.size()) +
                                                " sides, expected " + std::to_string(dim_));
    }
    for (std::size_t j = 0; j < dim_; ++j) {
      if (is_full_axis(j)) {
        box[j] = Interval{-kInf, kInf};
        continue;
      }
      if (!box[j].bounded() || !(box[j].lo < box[j].hi)) {
        throw Error(ErrorCode::invalid_input, "non-full box sides must be bounded with lo < hi");
      }
    }
  }
  for (std::size_t a = 0; a < boxes_.size(); ++a) {
    for (std::size_t b = a + 1; b < boxes_.size(); ++b) {
      bool overlap = true;
      for (std::size_t j = 0; j < dim_ && overlap; ++j) {
        if (is_full_axis(j)) continue;
        overlap = std::max(boxes_[a][j].lo, boxes_[b][j].lo) <
                  std::min(boxes_[a][j].hi, boxes_[b][j].hi);
      }
      if (overlap) throw Error(ErrorCode::invalid_input, "boxes overlap in positive measure");
    }
  }
}

bool BoxUnion::is_full_axis(std::size_t axis) const {
  return std::binary_search(full_axes_.begin(), full_axes_.end(), axis);
}

double BoxUnion::factor_measure() const {
  double total = 0.0;
  for (const auto& box : boxes_) {
    double vol = 1.0;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (!is_full_axis(j)) vol *= box[j].length();
    }
    total += vol;
  }
  return total;
}

BoxUnion to_box_union(const IntervalUnion& omega) {
  std::vector<BoxUnion::Box> boxes;
  for (const auto& iv : omega.intervals()) boxes.push_back({iv});
  return BoxUnion(1, std::move(boxes));
}

}  // namespace spectral_glue
