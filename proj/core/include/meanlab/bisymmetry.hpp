#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "meanlab/gauss.hpp"
#include "meanlab/generator.hpp"
#include "meanlab/interval.hpp"
#include "meanlab/means.hpp"

namespace meanlab {

/// Row-major grid x_{i,j}. Accessors are 0-based: at(i, j) is x_{i+1, j+1}.
class InputMatrix {
 public:
  InputMatrix(std::size_t rows, std::size_t cols, std::vector<double> values);
  /// Throws ArityError for ragged input.
  static InputMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }
  double at(std::size_t i, std::size_t j) const { return values_.at(i * cols_ + j); }
  std::vector<double> row(std::size_t i) const;
  std::vector<double> column(std::size_t j) const;
  const std::vector<double>& values() const noexcept { return values_; }
  bool within(const Interval& domain) const;

  std::vector<std::vector<double>> to_rows() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> values_;
};

struct EquationReport {
  double lhs = 0.0;
  double rhs = 0.0;
  /// |lhs - rhs|
  double residual = 0.0;
  double tol = 0.0;
  bool passed = false;
  InputMatrix matrix{1, 1, {0.0}};
};

/// M(M(row_1), ..., M(row_n)) against M(M(col_1), ..., M(col_n)).
EquationReport bisymmetry_check(const Mean& m, const InputMatrix& matrix, double tol);

/// Generalized bisymmetry of A = A_{f_1, ..., f_n} with outer mean
/// A_{f_1 + ... + f_n}: lhs feeds column j (x_{1,j}, ..., x_{n,j}) to A<j-1>,
/// rhs feeds row i (x_{i,1}, ..., x_{i,n}) to A<i-1>.
EquationReport generalized_bisymmetry_check(const GeneratorSystem& system, const InputMatrix& matrix, double tol);

/// Generalized bisymmetry of an arbitrary mean M with outer mean K (normally
/// the Gauss composition of the cyclic mapping of M): lhs feeds row i to
/// M<i-1>, rhs feeds column j to M<j-1>.
EquationReport gbs_for_mean_check(const Mean& m, const Mean& k, const InputMatrix& matrix, double tol);

/// Variadic associativity: A_f(xs, ys) against A_f(xs, y, ..., y) with y = A_f(ys).
EquationReport associativity_check(const Generator& f, std::span<const double> xs, std::span<const double> ys,
                                   double tol);

struct SearchOptions {
  int random_trials = 1000;
  /// Values per entry of the deterministic lattice run after the random trials.
  int lattice_levels = 3;
  /// Cap on lattice matrices (the full lattice has levels^(n*n) points).
  int lattice_limit = 256;
  std::uint64_t seed = 0;
  /// A residual above witness_factor * tol is reported as a counterexample.
  double witness_factor = 10.0;
};

struct SearchResult {
  bool found = false;
  /// Number of matrices evaluated before stopping.
  std::size_t trials_run = 0;
  std::optional<EquationReport> witness;
  std::size_t witness_trial = 0;
  double max_residual = 0.0;
};

using MatrixCheck = std::function<EquationReport(const InputMatrix&)>;

/// Seeded uniform random matrices over the clamped domain, then a coarse
/// lattice; stops at the first residual above witness_factor * tol.
SearchResult search_counterexample(const MatrixCheck& check, const Interval& domain, std::size_t n, double tol,
                                   const SearchOptions& options);

/// Uniform random n x n matrix drawn from stream `index` of `seed`.
InputMatrix random_matrix(const Interval& domain, std::size_t n, std::uint64_t seed, std::uint64_t index);

struct CharacterizeConfig {
  /// Random base points for the CM probes of M.
  int cm_samples = 64;
  /// Random base points for the CM probes of Gamma (each costs Gauss iterations).
  int gamma_cm_samples = 16;
  /// Increment used by the strict-monotonicity probe, as a fraction of the domain width (>= 1e-4 absolute).
  double increment_fraction = 1e-3;
  double monotone_slack = 1e-10;
  /// Continuity proxy: |M(x + delta e_k) - M(x)| <= lipschitz_bound * delta.
  double continuity_delta = 1e-5;
  double lipschitz_bound = 1e4;
  int reflexivity_grid = 32;
  /// Tolerance of the generalized bisymmetry equation.
  double tol = 1e-7;
  GaussOptions gauss;
  SearchOptions search;
};

enum class Condition { kCmFunction, kReflexive, kGeneralizedBisymmetric };

const char* to_string(Condition condition);

struct PhaseReport {
  Condition condition = Condition::kCmFunction;
  bool passed = false;
  std::string detail;
  /// Offending argument vector for the probe phases.
  std::vector<double> witness_point;
  /// Offending matrix for the generalized bisymmetry phase.
  std::optional<EquationReport> witness_equation;
  std::size_t trials_run = 0;
  double max_residual = 0.0;
};

struct CharacterizationVerdict {
  /// True when no condition was refuted. Numeric evidence only.
  bool consistent = false;
  std::optional<Condition> failing_condition;
  std::vector<PhaseReport> phases;
  std::string summary;

  const PhaseReport& phase(Condition condition) const;
};

/// Probes the three conditions characterizing generalized quasi-arithmetic
/// means: (i) CM-function (sampled strict monotonicity per variable and a
/// sampled Lipschitz bound standing in for continuity), (ii) reflexivity on a
/// grid, (iii) Gamma of the cyclic mapping is CM and the generalized
/// bisymmetry equation holds on searched matrices. All phases always run.
CharacterizationVerdict characterize(const Mean& m, const CharacterizeConfig& config = {});

}  // namespace meanlab
