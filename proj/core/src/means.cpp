#include "meanlab/means.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "meanlab/errors.hpp"

namespace meanlab {

namespace {

std::pair<double, double> bounds(std::span<const double> xs) {
  const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  return {*lo, *hi};
}

// Inversion error can push the computed value marginally outside
// [min, max]; the exact mean always lies inside.
double clamp_to_bounds(double value, std::span<const double> xs) {
  const auto [lo, hi] = bounds(xs);
  return std::clamp(value, lo, hi);
}

void require_positive(const Interval& domain, const char* what) {
  if (domain.lo() < 0.0) {
    throw DomainError(std::string(what) + " requires a positive domain, got " + domain.to_string());
  }
}

double gqam_with_total(const GeneratorSystem& system, const Generator& total, std::span<const double> xs,
                       double tol) {
  double target = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) target += system[i].eval(xs[i]);
  return clamp_to_bounds(total.invert(target, tol), xs);
}

}  // namespace

Mean::Mean(Interval domain, std::optional<std::size_t> arity, Evaluator evaluator, std::string label)
    : domain_(domain),
      arity_(arity),
      evaluator_(std::make_shared<const Evaluator>(std::move(evaluator))),
      label_(std::move(label)) {
  if (arity_ && *arity_ < 1) throw ArityError("mean arity must be positive");
}

double Mean::operator()(std::span<const double> xs) const {
  if (xs.empty()) throw ArityError("mean '" + label_ + "' evaluated on no arguments");
  if (arity_ && xs.size() != *arity_) {
    throw ArityError("mean '" + label_ + "' takes " + std::to_string(*arity_) + " arguments, got " +
                     std::to_string(xs.size()));
  }
  for (double x : xs) {
    if (!domain_.contains(x)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "argument " << x << " outside " << domain_.to_string() << " of mean '" << label_ << "'";
      throw DomainError(msg.str());
    }
  }
  return (*evaluator_)(xs);
}

std::size_t Mean::fixed_arity() const {
  if (!arity_) throw ArityError("mean '" + label_ + "' is variadic");
  return *arity_;
}

double qam_eval(const Generator& f, std::span<const double> xs, double tol) {
  if (xs.empty()) throw ArityError("quasi-arithmetic mean of no arguments");
  double total = 0.0;
  for (double x : xs) total += f.eval(x);
  const double target = total / static_cast<double>(xs.size());
  return clamp_to_bounds(f.invert(target, tol), xs);
}

double gqam_eval(const GeneratorSystem& system, std::span<const double> xs, double tol) {
  if (xs.size() != system.size()) {
    throw ArityError("generalized mean of " + std::to_string(system.size()) + " generators got " +
                     std::to_string(xs.size()) + " arguments");
  }
  return gqam_with_total(system, sum_generators(system), xs, tol);
}

namespace means {

Mean quasi_arithmetic(const Generator& f, std::optional<std::size_t> arity) {
  return Mean(
      f.domain(), arity, [f](std::span<const double> xs) { return qam_eval(f, xs); }, "A[" + f.label() + "]");
}

Mean generalized_quasi_arithmetic(const GeneratorSystem& system) {
  const Generator total = sum_generators(system);
  return Mean(
      system.domain(), system.size(),
      [system, total](std::span<const double> xs) {
        return gqam_with_total(system, total, xs, kDefaultInversionTolerance);
      },
      "A" + system.label());
}

Mean arithmetic(const Interval& domain, std::optional<std::size_t> arity) {
  return Mean(
      domain, arity,
      [](std::span<const double> xs) {
        double total = 0.0;
        for (double x : xs) total += x;
        return clamp_to_bounds(total / static_cast<double>(xs.size()), xs);
      },
      "AM");
}

Mean geometric(const Interval& domain, std::optional<std::size_t> arity) {
  require_positive(domain, "geometric mean");
  return Mean(
      domain, arity,
      [](std::span<const double> xs) {
        double log_total = 0.0;
        for (double x : xs) log_total += std::log(x);
        return clamp_to_bounds(std::exp(log_total / static_cast<double>(xs.size())), xs);
      },
      "GM");
}

Mean lehmer2(const Interval& domain) {
  require_positive(domain, "Lehmer mean");
  return Mean(
      domain, 2,
      [](std::span<const double> xs) {
        const double x = xs[0];
        const double y = xs[1];
        return clamp_to_bounds((x * x + y * y) / (x + y), xs);
      },
      "L2");
}

Mean min_max_blend(const Interval& domain, double weight_max) {
  if (!(weight_max > 0.0 && weight_max < 1.0)) throw Error("blend weight must lie in (0, 1)");
  std::ostringstream label;
  label << "blend(" << weight_max << ")";
  return Mean(
      domain, 2,
      [weight_max](std::span<const double> xs) {
        const auto [lo, hi] = bounds(xs);
        return weight_max * hi + (1.0 - weight_max) * lo;
      },
      label.str());
}

}  // namespace means

MeanPropertyReport mean_property_check(const Mean& m, std::span<const double> xs) {
  MeanPropertyReport report;
  if (xs.empty()) {
    report.error = "no arguments";
    return report;
  }
  std::tie(report.min, report.max) = bounds(xs);
  try {
    report.value = m(xs);
  } catch (const Error& e) {
    report.error = e.what();
    return report;
  }
  const double slack = kMeanSlack * std::max(1.0, std::abs(report.value));
  report.bounds_ok = report.min - slack <= report.value && report.value <= report.max + slack;
  report.strict_applicable = report.max - report.min > kStrictSpread;
  if (report.strict_applicable) {
    report.strict_ok = report.value - report.min > slack && report.max - report.value > slack;
  }
  return report;
}

ReflexivityReport reflexivity_check(const Mean& m, double x, std::size_t variadic_arity) {
  ReflexivityReport report;
  report.x = x;
  const std::vector<double> xs(m.arity().value_or(variadic_arity), x);
  try {
    report.value = m(xs);
  } catch (const Error& e) {
    report.error = e.what();
    return report;
  }
  report.deviation = std::abs(report.value - x);
  report.passed = report.deviation <= kMeanSlack * std::max(1.0, std::abs(x));
  return report;
}

QuasiSum::QuasiSum(GeneratorSystem inner, Outer outer, std::string outer_label)
    : inner_(std::move(inner)),
      outer_(std::make_shared<const Outer>(std::move(outer))),
      outer_label_(std::move(outer_label)) {
  const Generator total = sum_generators(inner_);
  const Interval& d = inner_.domain();
  const double s_lo = total.eval(d.clamped_lo());
  const double s_hi = total.eval(d.clamped_hi());
  const Generator outer_on_range(Interval::closed(s_lo, s_hi), *outer_, outer_label_);
  const MonotonicityReport report = check_monotone(outer_on_range, 64);
  if (!report.passed) {
    throw MonotonicityError("outer generator of quasi-sum: " + report.message, report.witness_x.value_or(NAN),
                            report.witness_y.value_or(NAN), report.witness_gx.value_or(NAN),
                            report.witness_gy.value_or(NAN));
  }
}

QuasiSum QuasiSum::with_inverse_outer(const GeneratorSystem& inner) {
  const Generator total = sum_generators(inner);
  return QuasiSum(
      inner, [total](double s) { return total.invert(s); }, "(" + total.label() + ")^-1");
}

double QuasiSum::outer(double s) const {
  const double v = (*outer_)(s);
  if (!std::isfinite(v)) throw EvalError("outer generator '" + outer_label_ + "' is not finite");
  return v;
}

double QuasiSum::operator()(std::span<const double> xs) const {
  if (xs.size() != inner_.size()) throw ArityError("quasi-sum arity mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) s += inner_[i].eval(xs[i]);
  return outer(s);
}

QuasiSumVerdict quasisum_reflexivity_check(const QuasiSum& q, int grid) {
  QuasiSumVerdict verdict;
  const int points = std::max(grid, 2);
  const Interval& d = q.inner().domain();
  for (int k = 0; k < points; ++k) {
    const double x = d.grid_point(k, points);
    const std::vector<double> diagonal(q.inner().size(), x);
    const double value = q(diagonal);
    const double deviation = std::abs(value - x);
    if (k == 0 || deviation > verdict.max_deviation) {
      verdict.max_deviation = deviation;
      verdict.worst_x = x;
      verdict.worst_value = value;
    }
  }
  verdict.reflexive = verdict.max_deviation <= kQuasiSumTolerance;
  return verdict;
}

}  // namespace meanlab
