#include "meanlab/gauss.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "meanlab/parallel.hpp"
#include "meanlab/sampling.hpp"

namespace meanlab {

namespace {

double spread(std::span<const double> xs) {
  const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  return *hi - *lo;
}

double midpoint(std::span<const double> xs) {
  const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  return *lo + 0.5 * (*hi - *lo);
}

}  // namespace

GaussResult gauss_iterate(const MeanTypeMapping& mapping, std::span<const double> x, GaussOptions options) {
  if (!(options.tol > 0.0)) throw Error("Gauss iteration tolerance must be positive");
  if (x.size() != mapping.size()) {
    throw ArityError("Gauss iteration of a " + std::to_string(mapping.size()) + "-component mapping got " +
                     std::to_string(x.size()) + " coordinates");
  }

  GaussResult result;
  IterationTrace& trace = result.trace;
  std::vector<double> current(x.begin(), x.end());
  trace.iterates.push_back(current);
  trace.gaps.push_back(spread(current));

  while (trace.gaps.back() > options.tol) {
    if (trace.iterations_used >= options.max_iter) {
      std::ostringstream msg;
      msg.precision(6);
      msg << "Gauss iteration did not reach gap " << options.tol << " within " << options.max_iter
          << " iterations (last gap " << trace.gaps.back() << ")";
      throw GaussConvergenceError(msg.str(), std::move(trace));
    }
    current = mapping.apply(current);
    ++trace.iterations_used;
    trace.iterates.push_back(current);
    trace.gaps.push_back(spread(current));
  }
  trace.converged = true;
  result.limit = midpoint(current);
  return result;
}

GaussComposition::GaussComposition(MeanTypeMapping source, GaussOptions options)
    : source_(std::move(source)), options_(options) {}

double GaussComposition::operator()(std::span<const double> xs) const {
  return gauss_iterate(source_, xs, options_).limit;
}

Mean GaussComposition::as_mean() const {
  std::string label = "Gamma(";
  for (std::size_t i = 0; i < source_.size(); ++i) {
    if (i > 0) label += ", ";
    label += source_[i].label();
  }
  label += ")";
  return Mean(
      source_.domain(), source_.size(), [self = *this](std::span<const double> xs) { return self(xs); },
      label);
}

GaussComposition gauss_composition(const MeanTypeMapping& mapping, GaussOptions options) {
  constexpr int kProbes = 8;
  const Interval& d = mapping.domain();
  for (int probe = 0; probe < kProbes; ++probe) {
    SampleStream rng(0x5eedULL, static_cast<std::uint64_t>(probe));
    const std::vector<double> x = rng.point(d, mapping.size());
    for (const Mean& m : mapping.components()) {
      const MeanPropertyReport report = mean_property_check(m, x);
      if (!report.passed()) {
        throw NotAMeanError("component '" + m.label() + "' is not a strict mean" +
                            (report.error.empty() ? std::string() : ": " + report.error));
      }
    }
  }
  return GaussComposition(mapping, options);
}

double invariance_residual(const Mean& k, const MeanTypeMapping& mapping, std::span<const double> x) {
  return std::abs(k(mapping.apply(x)) - k(x));
}

CyclicLimitReport cyclic_limit_check(const GeneratorSystem& system, const CyclicLimitOptions& options) {
  const Mean mean = means::generalized_quasi_arithmetic(system);
  const MeanTypeMapping mapping = cyclic_mapping(mean);
  const Generator total = sum_generators(system);
  const std::size_t n = system.size();

  CyclicLimitReport report;
  report.tol = options.tol;
  report.samples.resize(static_cast<std::size_t>(std::max(options.samples, 0)));
  parallel_for(
      report.samples.size(),
      [&](std::size_t i) {
        SampleStream rng(options.seed, i);
        CyclicLimitSample& s = report.samples[i];
        s.x = rng.point(system.domain(), n);
        const GaussResult g = gauss_iterate(mapping, s.x, options.gauss);
        s.gauss = g.limit;
        s.iterations = g.trace.iterations_used;
        s.closed_form = qam_eval(total, s.x);
        s.residual = std::abs(s.gauss - s.closed_form);
      },
      options.workers);

  for (std::size_t i = 0; i < report.samples.size(); ++i) {
    if (i == 0 || report.samples[i].residual > report.max_residual) {
      report.max_residual = report.samples[i].residual;
      report.worst_index = i;
    }
  }
  report.passed = report.max_residual <= options.tol;
  return report;
}

CyclicSymmetryReport cyclic_symmetry_check(const Mean& m, int samples, GaussOptions options, std::uint64_t seed) {
  const std::size_t n = m.fixed_arity();
  const GaussComposition gamma(cyclic_mapping(m), options);

  CyclicSymmetryReport report;
  report.threshold = 10.0 * options.tol;
  for (int s = 0; s < samples; ++s) {
    SampleStream rng(seed, static_cast<std::uint64_t>(s));
    const std::vector<double> x = rng.point(m.domain(), n);
    const double base = gamma(x);
    for (int i = 1; i < static_cast<int>(n); ++i) {
      const double deviation = std::abs(base - gamma(rotate_arguments(x, i)));
      if (deviation > report.max_deviation || report.worst_x.empty()) {
        report.max_deviation = deviation;
        report.worst_x = x;
        report.worst_rotation = i;
      }
    }
  }
  report.passed = report.max_deviation <= report.threshold;
  return report;
}

CyclicSymmetryReport cyclic_symmetry_check(const GeneratorSystem& system, int samples, GaussOptions options,
                                           std::uint64_t seed) {
  return cyclic_symmetry_check(means::generalized_quasi_arithmetic(system), samples, options, seed);
}

}  // namespace meanlab
