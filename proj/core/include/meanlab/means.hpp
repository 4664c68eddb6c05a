#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "meanlab/generator.hpp"
#include "meanlab/interval.hpp"

namespace meanlab {

/// A mean on I^n, or a variadic mean accepting any positive number of
/// arguments when arity() is empty. Immutable; evaluation is thread-safe.
class Mean {
 public:
  using Evaluator = std::function<double(std::span<const double>)>;

  Mean(Interval domain, std::optional<std::size_t> arity, Evaluator evaluator, std::string label);

  const Interval& domain() const noexcept { return domain_; }
  std::optional<std::size_t> arity() const noexcept { return arity_; }
  bool variadic() const noexcept { return !arity_.has_value(); }
  const std::string& label() const noexcept { return label_; }

  /// Throws ArityError on a size mismatch and DomainError for arguments outside the domain.
  double operator()(std::span<const double> xs) const;
  double operator()(std::initializer_list<double> xs) const {
    return (*this)(std::span<const double>(xs.begin(), xs.size()));
  }

  /// Finite arity, or ArityError for variadic means.
  std::size_t fixed_arity() const;

 private:
  Interval domain_;
  std::optional<std::size_t> arity_;
  std::shared_ptr<const Evaluator> evaluator_;
  std::string label_;
};

/// f^{-1}((f(x_1) + ... + f(x_n)) / n) for any n >= 1.
double qam_eval(const Generator& f, std::span<const double> xs, double tol = kDefaultInversionTolerance);

/// (f_1 + ... + f_n)^{-1}(f_1(x_1) + ... + f_n(x_n)) with |xs| = n.
double gqam_eval(const GeneratorSystem& system, std::span<const double> xs,
                 double tol = kDefaultInversionTolerance);

namespace means {

/// Quasi-arithmetic mean generated by f; variadic unless `arity` is given.
Mean quasi_arithmetic(const Generator& f, std::optional<std::size_t> arity = std::nullopt);
/// Generalized n-variable quasi-arithmetic mean of the system (arity n).
Mean generalized_quasi_arithmetic(const GeneratorSystem& system);

Mean arithmetic(const Interval& domain, std::optional<std::size_t> arity = std::nullopt);
/// Requires a positive domain.
Mean geometric(const Interval& domain, std::optional<std::size_t> arity = std::nullopt);
/// Lehmer mean (x^2 + y^2) / (x + y); two variables, positive domain.
/// Not quasi-arithmetic, and not increasing where one argument is below (sqrt2 - 1) times the other.
Mean lehmer2(const Interval& domain);
/// weight_max * max(x, y) + (1 - weight_max) * min(x, y).
Mean min_max_blend(const Interval& domain, double weight_max);

}  // namespace means

struct MeanPropertyReport {
  double value = 0.0;
  double min = 0.0;
  double max = 0.0;
  bool bounds_ok = false;
  /// Strictness is only tested when max - min exceeds kStrictSpread.
  bool strict_applicable = false;
  bool strict_ok = true;
  std::string error;

  bool passed() const noexcept { return error.empty() && bounds_ok && strict_ok; }
};

inline constexpr double kMeanSlack = 1e-9;
inline constexpr double kStrictSpread = 1e-6;

/// min <= M(xs) <= max with slack 1e-9 * max(1, |value|); when max - min > 1e-6
/// the inequalities must also hold strictly by more than that slack.
MeanPropertyReport mean_property_check(const Mean& m, std::span<const double> xs);

struct ReflexivityReport {
  double x = 0.0;
  double value = 0.0;
  double deviation = 0.0;
  bool passed = false;
  std::string error;
};

/// |M(x, ..., x) - x| <= 1e-9 * max(1, |x|). Variadic means are probed with `variadic_arity` copies.
ReflexivityReport reflexivity_check(const Mean& m, double x, std::size_t variadic_arity = 3);

/// CM-quasi-sum F(x) = outer(f_1(x_1) + ... + f_n(x_n)).
class QuasiSum {
 public:
  using Outer = std::function<double(double)>;

  /// Grid-checks that `outer` is strictly increasing on [F(a), F(b)], F = f_1 + ... + f_n.
  QuasiSum(GeneratorSystem inner, Outer outer, std::string outer_label);

  /// Outer generator taken as the numeric inverse of f_1 + ... + f_n.
  static QuasiSum with_inverse_outer(const GeneratorSystem& inner);

  const GeneratorSystem& inner() const noexcept { return inner_; }
  const std::string& outer_label() const noexcept { return outer_label_; }
  double outer(double s) const;
  double operator()(std::span<const double> xs) const;

 private:
  GeneratorSystem inner_;
  std::shared_ptr<const Outer> outer_;
  std::string outer_label_;
};

struct QuasiSumVerdict {
  /// True iff outer((f_1 + ... + f_n)(x)) stays within 1e-8 of x on the grid,
  /// i.e. the quasi-sum is reflexive and hence a generalized quasi-arithmetic mean.
  bool reflexive = false;
  double max_deviation = 0.0;
  double worst_x = 0.0;
  double worst_value = 0.0;
};

inline constexpr double kQuasiSumTolerance = 1e-8;

QuasiSumVerdict quasisum_reflexivity_check(const QuasiSum& q, int grid);

}  // namespace meanlab
