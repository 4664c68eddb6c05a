#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "meanlab/interval.hpp"

namespace meanlab {

/// Default residual tolerance used by means when inverting generators.
inline constexpr double kDefaultInversionTolerance = 1e-14;
/// Maximum number of bracket refinements per inversion.
inline constexpr int kInversionBudget = 200;

/// A continuous strictly increasing function on an interval.
///
/// Monotonicity is not assumed by construction; use check_monotone (the DSL
/// binding does so automatically). Instances are immutable and cheap to copy.
class Generator {
 public:
  using Body = std::function<double(double)>;

  Generator(Interval domain, Body body, std::string label);

  const Interval& domain() const noexcept { return domain_; }
  const std::string& label() const noexcept { return label_; }

  /// g(x). Points inside an open end but closer than the clamp epsilon are
  /// evaluated at the clamped point. Throws DomainError / EvalError.
  double eval(double x) const;
  double operator()(double x) const { return eval(x); }

  /// x with |g(x) - y| <= tol * max(1, |y|), found by bracketed
  /// bisection/secant on [clamped_lo, clamped_hi].
  /// Throws RangeError when y is not attained inside the bracket and
  /// ConvergenceError when the budget is exhausted.
  double invert(double y, double tol = kDefaultInversionTolerance) const;

 private:
  double eval_raw(double x) const;

  Interval domain_;
  std::shared_ptr<const Body> body_;
  std::string label_;
};

/// Ordered f_1, ..., f_n (n >= 2) over one shared interval.
class GeneratorSystem {
 public:
  /// Throws ArityError for n < 2 and DomainError for mismatched domains.
  explicit GeneratorSystem(std::vector<Generator> generators);

  std::size_t size() const noexcept { return generators_.size(); }
  const Generator& operator[](std::size_t i) const { return generators_[i]; }
  const std::vector<Generator>& generators() const noexcept { return generators_; }
  const Interval& domain() const noexcept { return generators_.front().domain(); }
  std::string label() const;

  auto begin() const noexcept { return generators_.begin(); }
  auto end() const noexcept { return generators_.end(); }

 private:
  std::vector<Generator> generators_;
};

Generator sum_generators(const GeneratorSystem& system);

/// Generator a*g + b on the same domain (a > 0 keeps it increasing).
Generator affine_transform(const Generator& g, double a, double b);

struct MonotonicityReport {
  bool passed = true;
  int grid_size = 0;
  /// Set on failure: x < y with g(x) >= g(y), or the point where evaluation failed.
  std::optional<double> witness_x;
  std::optional<double> witness_y;
  std::optional<double> witness_gx;
  std::optional<double> witness_gy;
  std::string message;
};

/// Grid evidence (not proof) of strict increase. grid_size must be >= 2.
MonotonicityReport check_monotone(const Generator& g, int grid_size);

struct AffineFit {
  double a = 0.0;
  double b = 0.0;
  /// Max absolute deviation |g - (a f + b)| over the sample grid.
  double residual = 0.0;
};

/// Least-squares fit g ~ a f + b on sample_count interior points.
/// Throws DegenerateError when f is numerically constant on the grid.
AffineFit affine_fit(const Generator& f, const Generator& g, int sample_count);

namespace generators {

Generator identity(const Interval& domain);
Generator linear(const Interval& domain, double slope, double intercept = 0.0);
Generator power(const Interval& domain, double exponent);
Generator exponential(const Interval& domain);
Generator logarithm(const Interval& domain);
Generator square_root(const Interval& domain);

}  // namespace generators

}  // namespace meanlab
