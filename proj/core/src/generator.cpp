#include "meanlab/generator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "meanlab/errors.hpp"

namespace meanlab {

namespace {

std::string format_number(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

}  // namespace

Generator::Generator(Interval domain, Body body, std::string label)
    : domain_(domain), body_(std::make_shared<const Body>(std::move(body))), label_(std::move(label)) {
  if (!*body_) throw Error("generator '" + label_ + "' has an empty body");
}

double Generator::eval_raw(double x) const {
  const double v = (*body_)(x);
  if (!std::isfinite(v)) {
    throw EvalError("generator '" + label_ + "' is not finite at x=" + format_number(x));
  }
  return v;
}

double Generator::eval(double x) const {
  if (!domain_.contains(x)) {
    throw DomainError("x=" + format_number(x) + " outside " + domain_.to_string() + " of '" + label_ + "'");
  }
  return eval_raw(domain_.clamp(x));
}

double Generator::invert(double y, double tol) const {
  if (!(tol > 0.0)) throw Error("inversion tolerance must be positive");
  if (!std::isfinite(y)) throw RangeError("cannot invert '" + label_ + "' at non-finite target");

  const double threshold = tol * std::max(1.0, std::abs(y));
  double lo = domain_.clamped_lo();
  double hi = domain_.clamped_hi();
  double f_lo = eval_raw(lo) - y;
  double f_hi = eval_raw(hi) - y;

  if (std::abs(f_lo) <= threshold) return lo;
  if (std::abs(f_hi) <= threshold) return hi;
  if (f_lo > 0.0 || f_hi < 0.0) {
    throw RangeError("target " + format_number(y) + " not attained by '" + label_ + "' on " +
                     domain_.to_string());
  }

  // Secant (false position) steps on the bracket; a step that fails to halve
  // the bracket forces a bisection next, so the width at least halves every
  // two iterations.
  bool force_bisection = false;
  for (int it = 0; it < kInversionBudget; ++it) {
    const double width = hi - lo;
    double x = 0.5 * (lo + hi);
    if (!force_bisection) {
      const double secant = lo - f_lo * (hi - lo) / (f_hi - f_lo);
      if (secant > lo && secant < hi) x = secant;
    }
    if (!(x > lo && x < hi)) {
      // Adjacent doubles: the bracket cannot shrink further.
      return std::abs(f_lo) <= std::abs(f_hi) ? lo : hi;
    }

    const double fx = eval_raw(x) - y;
    if (std::abs(fx) <= threshold) return x;
    if (fx < 0.0) {
      lo = x;
      f_lo = fx;
    } else {
      hi = x;
      f_hi = fx;
    }
    force_bisection = !force_bisection && (hi - lo) > 0.5 * width;
  }
  throw ConvergenceError("inversion of '" + label_ + "' at y=" + format_number(y) + " exhausted " +
                         std::to_string(kInversionBudget) + " iterations");
}

GeneratorSystem::GeneratorSystem(std::vector<Generator> generators) : generators_(std::move(generators)) {
  if (generators_.size() < 2) {
    throw ArityError("a generator system needs at least two generators, got " +
                     std::to_string(generators_.size()));
  }
  for (const auto& g : generators_) {
    if (!(g.domain() == generators_.front().domain())) {
      throw DomainError("generator '" + g.label() + "' is defined on " + g.domain().to_string() +
                        " but the system uses " + generators_.front().domain().to_string());
    }
  }
}

std::string GeneratorSystem::label() const {
  std::string out = "{";
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (i > 0) out += ", ";
    out += generators_[i].label();
  }
  return out + "}";
}

Generator sum_generators(const GeneratorSystem& system) {
  std::vector<Generator> parts = system.generators();
  std::string label;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) label += " + ";
    label += "(" + parts[i].label() + ")";
  }
  return Generator(
      system.domain(),
      [parts = std::move(parts)](double x) {
        double total = 0.0;
        for (const auto& g : parts) total += g.eval(x);
        return total;
      },
      label);
}

Generator affine_transform(const Generator& g, double a, double b) {
  std::ostringstream label;
  label.precision(17);
  label << a << "*(" << g.label() << ")+" << b;
  return Generator(
      g.domain(), [g, a, b](double x) { return a * g.eval(x) + b; }, label.str());
}

MonotonicityReport check_monotone(const Generator& g, int grid_size) {
  MonotonicityReport report;
  report.grid_size = grid_size;
  if (grid_size < 2) {
    report.passed = false;
    report.message = "grid_size must be at least 2";
    return report;
  }
  const Interval& d = g.domain();
  double prev_x = d.grid_point(0, grid_size);
  double prev_g = 0.0;
  try {
    prev_g = g.eval(prev_x);
  } catch (const Error& e) {
    report.passed = false;
    report.witness_x = prev_x;
    report.message = e.what();
    return report;
  }
  for (int k = 1; k < grid_size; ++k) {
    const double x = d.grid_point(k, grid_size);
    double gx = 0.0;
    try {
      gx = g.eval(x);
    } catch (const Error& e) {
      report.passed = false;
      report.witness_x = x;
      report.message = e.what();
      return report;
    }
    if (!(gx > prev_g)) {
      report.passed = false;
      report.witness_x = prev_x;
      report.witness_y = x;
      report.witness_gx = prev_g;
      report.witness_gy = gx;
      report.message = "'" + g.label() + "' is not strictly increasing: g(" + format_number(prev_x) +
                       ")=" + format_number(prev_g) + " >= g(" + format_number(x) + ")=" +
                       format_number(gx);
      return report;
    }
    prev_x = x;
    prev_g = gx;
  }
  return report;
}

AffineFit affine_fit(const Generator& f, const Generator& g, int sample_count) {
  if (sample_count < 3) throw Error("affine_fit needs at least 3 samples");
  if (!(f.domain() == g.domain())) throw DomainError("affine_fit requires a shared domain");

  const Interval& d = f.domain();
  std::vector<double> fs(sample_count);
  std::vector<double> gs(sample_count);
  for (int k = 0; k < sample_count; ++k) {
    const double x = d.lo() + d.width() * static_cast<double>(k + 1) / static_cast<double>(sample_count + 1);
    fs[k] = f.eval(x);
    gs[k] = g.eval(x);
  }

  const auto [fmin, fmax] = std::minmax_element(fs.begin(), fs.end());
  const double scale = std::max({1.0, std::abs(*fmin), std::abs(*fmax)});
  if (*fmax - *fmin <= 1e-12 * scale) {
    throw DegenerateError("'" + f.label() + "' is numerically constant on the sample grid");
  }

  double f_mean = 0.0;
  double g_mean = 0.0;
  for (int k = 0; k < sample_count; ++k) {
    f_mean += fs[k];
    g_mean += gs[k];
  }
  f_mean /= sample_count;
  g_mean /= sample_count;

  double sxy = 0.0;
  double sxx = 0.0;
  for (int k = 0; k < sample_count; ++k) {
    const double df = fs[k] - f_mean;
    sxy += df * (gs[k] - g_mean);
    sxx += df * df;
  }

  AffineFit fit;
  fit.a = sxy / sxx;
  fit.b = g_mean - fit.a * f_mean;
  for (int k = 0; k < sample_count; ++k) {
    fit.residual = std::max(fit.residual, std::abs(gs[k] - (fit.a * fs[k] + fit.b)));
  }
  return fit;
}

namespace generators {

Generator identity(const Interval& domain) {
  return Generator(domain, [](double x) { return x; }, "x");
}

Generator linear(const Interval& domain, double slope, double intercept) {
  std::ostringstream label;
  label.precision(17);
  label << slope << "*x";
  if (intercept != 0.0) label << (intercept > 0 ? "+" : "") << intercept;
  return Generator(domain, [slope, intercept](double x) { return slope * x + intercept; }, label.str());
}

Generator power(const Interval& domain, double exponent) {
  return Generator(domain, [exponent](double x) { return std::pow(x, exponent); },
                   "x^" + format_number(exponent));
}

Generator exponential(const Interval& domain) {
  return Generator(domain, [](double x) { return std::exp(x); }, "exp(x)");
}

Generator logarithm(const Interval& domain) {
  return Generator(domain, [](double x) { return std::log(x); }, "log(x)");
}

Generator square_root(const Interval& domain) {
  return Generator(domain, [](double x) { return std::sqrt(x); }, "sqrt(x)");
}

}  // namespace generators

}  // namespace meanlab
