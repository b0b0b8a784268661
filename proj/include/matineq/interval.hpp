#pragma once

#include <string>

namespace matineq {

// Closed real interval [lo, hi]. Infinite endpoints are allowed for function
// domains; instance intervals are always finite.
class Interval {
 public:
  Interval() = default;
  Interval(double lo, double hi);

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  double length() const noexcept { return hi_ - lo_; }
  double midpoint() const noexcept { return 0.5 * (lo_ + hi_); }
  bool finite() const noexcept;

  bool contains(double x, double slack = 0.0) const noexcept {
    return x >= lo_ - slack && x <= hi_ + slack;
  }
  bool contains(const Interval& other) const noexcept {
    return other.lo_ >= lo_ && other.hi_ <= hi_;
  }

  Interval intersect(const Interval& other) const;
  Interval hull(const Interval& other) const noexcept;

  std::string to_string() const;

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double lo_ = 0.0;
  double hi_ = 0.0;
};

}  // namespace matineq
