#pragma once

#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

namespace spectral_glue {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Below this value of |xi|*(b-a) the transform of an indicator switches to its
// second order Taylor form.
inline constexpr double kChiHatTaylorSwitch = 1e-6;

/// Open interval (lo, hi); either endpoint may be infinite.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  bool bounded() const { return lo > -kInf && hi < kInf; }
  bool contains(double x) const { return lo < x && x < hi; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

/**
 * Finite union of disjoint open intervals, stored in increasing order.
 *
 * Intervals that touch (beta_i == alpha_{i+1}) are joined at construction,
 * since they differ from their union only by a point. Overlapping input is
 * rejected. Only the first component may start at -inf and only the last may
 * end at +inf.
 */
class IntervalUnion {
 public:
  IntervalUnion() = default;
  explicit IntervalUnion(std::vector<Interval> intervals);

  std::size_t size() const { return intervals_.size(); }
  bool empty() const { return intervals_.empty(); }
  const Interval& operator[](std::size_t i) const { return intervals_[i]; }
  const std::vector<Interval>& intervals() const { return intervals_; }

  bool bounded() const;
  double min_length() const;
  double max_length() const;
  std::size_t finite_left_count() const;
  std::size_t finite_right_count() const;

  /// Component indices whose left (right) endpoint is finite, in order.
  std::vector<std::size_t> finite_left_components() const;
  std::vector<std::size_t> finite_right_components() const;

  /// Index of the component containing x in its interior.
  std::optional<std::size_t> component_of(double x) const;

  friend bool operator==(const IntervalUnion&, const IntervalUnion&) = default;

 private:
  std::vector<Interval> intervals_;
};

/// Lebesgue measure; +inf when any component is unbounded.
double measure(const IntervalUnion& omega);

/// Integral of exp(-2 pi i xi x) over a bounded interval.
Complex chi_hat(const Interval& interval, double xi);

/// Fourier transform of the indicator of a bounded interval union.
Complex omega_hat(const IntervalUnion& omega, double xi);

/**
 * Finite union of axis-aligned open boxes in R^d.
 *
 * Axes listed in full_axes span the whole line in every box, which encodes
 * product sets Omega_1 x R^{d2}; all other axes are bounded.
 */
class BoxUnion {
 public:
  using Box = std::vector<Interval>;

  BoxUnion() = default;
  BoxUnion(std::size_t dim, std::vector<Box> boxes, std::vector<std::size_t> full_axes = {});

  std::size_t dim() const { return dim_; }
  const std::vector<Box>& boxes() const { return boxes_; }
  const std::vector<std::size_t>& full_axes() const { return full_axes_; }
  bool is_full_axis(std::size_t axis) const;

  /// Measure of the bounded factor (product over non-full axes).
  double factor_measure() const;

 private:
  std::size_t dim_ = 0;
  std::vector<Box> boxes_;
  std::vector<std::size_t> full_axes_;
};

BoxUnion to_box_union(const IntervalUnion& omega);

}  // namespace spectral_glue
