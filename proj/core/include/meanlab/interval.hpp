#pragma once

#include <string>

namespace meanlab {

/// Non-degenerate real interval. Open endpoints are handled by clamping to
/// [lo + eps, hi - eps] with eps = 1e-9 * (hi - lo).
class Interval {
 public:
  static constexpr double kClampFraction = 1e-9;

  /// Throws DomainError unless lo < hi and both are finite.
  Interval(double lo, double hi, bool lo_open = true, bool hi_open = true);

  static Interval open(double lo, double hi) { return Interval(lo, hi, true, true); }
  static Interval closed(double lo, double hi) { return Interval(lo, hi, false, false); }

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  bool lo_open() const noexcept { return lo_open_; }
  bool hi_open() const noexcept { return hi_open_; }
  double width() const noexcept { return hi_ - lo_; }
  double epsilon() const noexcept { return kClampFraction * width(); }

  bool contains(double x) const noexcept;

  /// Smallest / largest point used for evaluation and bracketing.
  double clamped_lo() const noexcept { return lo_open_ ? lo_ + epsilon() : lo_; }
  double clamped_hi() const noexcept { return hi_open_ ? hi_ - epsilon() : hi_; }

  /// Maps a contained point into [clamped_lo, clamped_hi].
  double clamp(double x) const noexcept;

  /// `count` equally spaced points from clamped_lo to clamped_hi inclusive (count >= 2).
  double grid_point(int index, int count) const noexcept;

  std::string to_string() const;

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double lo_;
  double hi_;
  bool lo_open_;
  bool hi_open_;
};

}  // namespace meanlab
