#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "meanlab/cyclic.hpp"
#include "meanlab/errors.hpp"
#include "meanlab/generator.hpp"
#include "meanlab/means.hpp"

namespace meanlab {

inline constexpr double kDefaultGaussTolerance = 1e-10;
inline constexpr int kDefaultMaxIterations = 5000;

struct GaussOptions {
  /// Iteration stops once max - min of the iterate is at most this.
  double tol = kDefaultGaussTolerance;
  int max_iter = kDefaultMaxIterations;
};

/// Record of x, M(x), M^2(x), ... and the spread max - min of each iterate.
struct IterationTrace {
  std::vector<std::vector<double>> iterates;
  std::vector<double> gaps;
  bool converged = false;
  int iterations_used = 0;
};

struct GaussResult {
  /// Midpoint of the final iterate's [min, max].
  double limit = 0.0;
  IterationTrace trace;
};

/// Iteration budget exhausted; carries the full trace.
class GaussConvergenceError : public ConvergenceError {
 public:
  GaussConvergenceError(const std::string& message, IterationTrace trace)
      : ConvergenceError(message), trace_(std::move(trace)) {}
  const IterationTrace& trace() const noexcept { return trace_; }

 private:
  IterationTrace trace_;
};

/// Gauss iteration of `x` by `mapping` until the spread is at most options.tol.
/// Throws GaussConvergenceError after options.max_iter steps.
GaussResult gauss_iterate(const MeanTypeMapping& mapping, std::span<const double> x, GaussOptions options = {});

/// Gauss composition Gamma(M_1, ..., M_n), evaluated by iteration.
class GaussComposition {
 public:
  GaussComposition(MeanTypeMapping source, GaussOptions options);

  const MeanTypeMapping& source() const noexcept { return source_; }
  const GaussOptions& options() const noexcept { return options_; }

  double operator()(std::span<const double> xs) const;
  /// The composition as an n-variable Mean.
  Mean as_mean() const;

 private:
  MeanTypeMapping source_;
  GaussOptions options_;
};

/// Builds Gamma after spot-checking that every component is a strict mean on
/// a few deterministic sample vectors; throws NotAMeanError otherwise.
GaussComposition gauss_composition(const MeanTypeMapping& mapping, GaussOptions options = {});

/// |K(M_1(x), ..., M_n(x)) - K(x)|.
double invariance_residual(const Mean& k, const MeanTypeMapping& mapping, std::span<const double> x);

struct CyclicLimitOptions {
  int samples = 100;
  /// Pass threshold on |Gamma(x) - A_{f_1 + ... + f_n}(x)|.
  double tol = 1e-7;
  GaussOptions gauss;
  std::uint64_t seed = 0;
  std::size_t workers = 0;
};

struct CyclicLimitSample {
  std::vector<double> x;
  double gauss = 0.0;
  double closed_form = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

struct CyclicLimitReport {
  std::vector<CyclicLimitSample> samples;
  double max_residual = 0.0;
  std::size_t worst_index = 0;
  double tol = 0.0;
  bool passed = false;
};

/// Compares the iterated Gauss composition of the cyclic mapping of
/// A_{f_1, ..., f_n} with the quasi-arithmetic mean generated by f_1 + ... + f_n
/// on random points of the domain.
CyclicLimitReport cyclic_limit_check(const GeneratorSystem& system, const CyclicLimitOptions& options = {});

struct CyclicSymmetryReport {
  double max_deviation = 0.0;
  std::vector<double> worst_x;
  int worst_rotation = 0;
  double threshold = 0.0;
  bool passed = false;
};

/// |Gamma(x) - Gamma(rotated x)| <= 10 * gauss tol for all rotations, where
/// Gamma is the Gauss composition of the cyclic mapping of `m`.
CyclicSymmetryReport cyclic_symmetry_check(const Mean& m, int samples, GaussOptions options = {},
                                           std::uint64_t seed = 0);
CyclicSymmetryReport cyclic_symmetry_check(const GeneratorSystem& system, int samples,
                                           GaussOptions options = {}, std::uint64_t seed = 0);

}  // namespace meanlab
