#include "meanlab/interval.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "meanlab/errors.hpp"

namespace meanlab {

Interval::Interval(double lo, double hi, bool lo_open, bool hi_open)
    : lo_(lo), hi_(hi), lo_open_(lo_open), hi_open_(hi_open) {
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw DomainError("interval endpoints must be finite");
  }
  if (!(lo < hi)) {
    std::ostringstream msg;
    msg << "degenerate interval: lo=" << lo << " must be below hi=" << hi;
    throw DomainError(msg.str());
  }
}

bool Interval::contains(double x) const noexcept {
  if (std::isnan(x)) return false;
  const bool above = lo_open_ ? x > lo_ : x >= lo_;
  const bool below = hi_open_ ? x < hi_ : x <= hi_;
  return above && below;
}

double Interval::clamp(double x) const noexcept {
  return std::clamp(x, clamped_lo(), clamped_hi());
}

double Interval::grid_point(int index, int count) const noexcept {
  const double a = clamped_lo();
  const double b = clamped_hi();
  if (index <= 0) return a;
  if (index >= count - 1) return b;
  const double t = static_cast<double>(index) / static_cast<double>(count - 1);
  return a + t * (b - a);
}

std::string Interval::to_string() const {
  std::ostringstream out;
  out.precision(17);
  out << (lo_open_ ? '(' : '[') << lo_ << ',' << hi_ << (hi_open_ ? ')' : ']');
  return out.str();
}

}  // namespace meanlab
