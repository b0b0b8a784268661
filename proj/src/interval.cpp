#include "matineq/interval.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "matineq/error.hpp"

namespace matineq {

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
  if (std::isnan(lo) || std::isnan(hi) || lo > hi) {
    std::ostringstream os;
    os << "invalid interval [" << lo << ", " << hi << "]";
    throw Error(ErrorKind::InvalidArgument, os.str());
  }
}

bool Interval::finite() const noexcept { return std::isfinite(lo_) && std::isfinite(hi_); }

Interval Interval::intersect(const Interval& other) const {
  const double lo = std::max(lo_, other.lo_);
  const double hi = std::min(hi_, other.hi_);
  if (lo > hi) {
    throw Error(ErrorKind::DomainMismatch,
                "intervals " + to_string() + " and " + other.to_string() + " are disjoint");
  }
  return Interval(lo, hi);
}

Interval Interval::hull(const Interval& other) const noexcept {
  Interval out;
  out.lo_ = std::min(lo_, other.lo_);
  out.hi_ = std::max(hi_, other.hi_);
  return out;
}

std::string Interval::to_string() const {
  std::ostringstream os;
  os.precision(17);
  os << "[" << lo_ << ", " << hi_ << "]";
  return os.str();
}

}  // namespace matineq
