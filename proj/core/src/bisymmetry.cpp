#include "meanlab/bisymmetry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "meanlab/cyclic.hpp"
#include "meanlab/errors.hpp"
#include "meanlab/sampling.hpp"

namespace meanlab {

InputMatrix::InputMatrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (rows_ == 0 || cols_ == 0 || values_.size() != rows_ * cols_) {
    throw ArityError("matrix of " + std::to_string(rows_) + "x" + std::to_string(cols_) + " needs " +
                     std::to_string(rows_ * cols_) + " values, got " + std::to_string(values_.size()));
  }
}

InputMatrix InputMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw ArityError("empty matrix");
  std::vector<double> values;
  for (const auto& r : rows) {
    if (r.size() != rows.front().size()) throw ArityError("ragged matrix rows");
    values.insert(values.end(), r.begin(), r.end());
  }
  return InputMatrix(rows.size(), rows.front().size(), std::move(values));
}

std::vector<double> InputMatrix::row(std::size_t i) const {
  const auto first = values_.begin() + static_cast<std::ptrdiff_t>(i * cols_);
  return {first, first + static_cast<std::ptrdiff_t>(cols_)};
}

std::vector<double> InputMatrix::column(std::size_t j) const {
  std::vector<double> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = at(i, j);
  return out;
}

bool InputMatrix::within(const Interval& domain) const {
  return std::all_of(values_.begin(), values_.end(), [&](double x) { return domain.contains(x); });
}

std::vector<std::vector<double>> InputMatrix::to_rows() const {
  std::vector<std::vector<double>> out;
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
  return out;
}

namespace {

EquationReport make_report(double lhs, double rhs, double tol, const InputMatrix& matrix) {
  EquationReport report;
  report.lhs = lhs;
  report.rhs = rhs;
  report.residual = std::abs(lhs - rhs);
  report.tol = tol;
  report.passed = report.residual <= tol;
  report.matrix = matrix;
  return report;
}

void require_square(const InputMatrix& matrix, std::size_t n) {
  if (!matrix.square() || matrix.rows() != n) {
    throw ArityError("expected a " + std::to_string(n) + "x" + std::to_string(n) + " matrix, got " +
                     std::to_string(matrix.rows()) + "x" + std::to_string(matrix.cols()));
  }
}

}  // namespace

EquationReport bisymmetry_check(const Mean& m, const InputMatrix& matrix, double tol) {
  const std::size_t n = m.arity().value_or(matrix.rows());
  require_square(matrix, n);
  std::vector<double> row_means(n);
  std::vector<double> column_means(n);
  for (std::size_t i = 0; i < n; ++i) {
    row_means[i] = m(matrix.row(i));
    column_means[i] = m(matrix.column(i));
  }
  return make_report(m(row_means), m(column_means), tol, matrix);
}

EquationReport generalized_bisymmetry_check(const GeneratorSystem& system, const InputMatrix& matrix, double tol) {
  const std::size_t n = system.size();
  require_square(matrix, n);
  const MeanTypeMapping inner = cyclic_mapping(means::generalized_quasi_arithmetic(system));
  const Mean outer = means::quasi_arithmetic(sum_generators(system), n);

  std::vector<double> from_columns(n);
  std::vector<double> from_rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    from_columns[i] = inner[i](matrix.column(i));
    from_rows[i] = inner[i](matrix.row(i));
  }
  return make_report(outer(from_columns), outer(from_rows), tol, matrix);
}

EquationReport gbs_for_mean_check(const Mean& m, const Mean& k, const InputMatrix& matrix, double tol) {
  const std::size_t n = m.fixed_arity();
  require_square(matrix, n);
  if (k.arity() && *k.arity() != n) throw ArityError("outer mean arity differs from the inner mean");
  const MeanTypeMapping inner = cyclic_mapping(m);

  std::vector<double> from_rows(n);
  std::vector<double> from_columns(n);
  for (std::size_t i = 0; i < n; ++i) {
    from_rows[i] = inner[i](matrix.row(i));
    from_columns[i] = inner[i](matrix.column(i));
  }
  return make_report(k(from_rows), k(from_columns), tol, matrix);
}

EquationReport associativity_check(const Generator& f, std::span<const double> xs, std::span<const double> ys,
                                   double tol) {
  if (xs.empty() || ys.empty()) throw ArityError("associativity needs non-empty argument lists");
  std::vector<double> joined(xs.begin(), xs.end());
  joined.insert(joined.end(), ys.begin(), ys.end());
  const double lhs = qam_eval(f, joined);

  const double y = qam_eval(f, ys);
  std::fill(joined.begin() + static_cast<std::ptrdiff_t>(xs.size()), joined.end(), y);
  const double rhs = qam_eval(f, joined);

  const InputMatrix layout = InputMatrix::from_rows({std::vector<double>(xs.begin(), xs.end())});
  return make_report(lhs, rhs, tol, layout);
}

InputMatrix random_matrix(const Interval& domain, std::size_t n, std::uint64_t seed, std::uint64_t index) {
  SampleStream rng(seed, index);
  return InputMatrix(n, n, rng.point(domain, n * n));
}

SearchResult search_counterexample(const MatrixCheck& check, const Interval& domain, std::size_t n, double tol,
                                   const SearchOptions& options) {
  SearchResult result;
  const double threshold = options.witness_factor * tol;
  auto consider = [&](const InputMatrix& matrix) {
    const EquationReport report = check(matrix);
    ++result.trials_run;
    result.max_residual = std::max(result.max_residual, report.residual);
    if (report.residual > threshold) {
      result.found = true;
      result.witness = report;
      result.witness_trial = result.trials_run - 1;
    }
    return result.found;
  };

  for (int t = 0; t < options.random_trials; ++t) {
    if (consider(random_matrix(domain, n, options.seed, static_cast<std::uint64_t>(t)))) return result;
  }

  const int levels = std::max(options.lattice_levels, 2);
  const std::size_t cells = n * n;
  std::vector<int> digits(cells, 0);
  for (int count = 0; count < options.lattice_limit; ++count) {
    std::vector<double> values(cells);
    for (std::size_t c = 0; c < cells; ++c) {
      // Lattice levels sit strictly inside the domain: (d + 1) / (levels + 1).
      values[c] = domain.lo() + domain.width() * (digits[c] + 1) / static_cast<double>(levels + 1);
    }
    if (consider(InputMatrix(n, n, std::move(values)))) return result;

    std::size_t c = 0;
    while (c < cells && ++digits[c] == levels) digits[c++] = 0;
    if (c == cells) break;
  }
  return result;
}

const char* to_string(Condition condition) {
  switch (condition) {
    case Condition::kCmFunction:
      return "cm-function";
    case Condition::kReflexive:
      return "reflexivity";
    case Condition::kGeneralizedBisymmetric:
      return "generalized-bisymmetry";
  }
  return "unknown";
}

const PhaseReport& CharacterizationVerdict::phase(Condition condition) const {
  for (const auto& p : phases) {
    if (p.condition == condition) return p;
  }
  throw Error(std::string("no phase for condition ") + to_string(condition));
}

namespace {

std::string format_point(std::span<const double> xs) {
  std::ostringstream out;
  out.precision(10);
  out << '(';
  for (std::size_t i = 0; i < xs.size(); ++i) out << (i ? ", " : "") << xs[i];
  out << ')';
  return out.str();
}

// Strict increase in each variable plus a sampled Lipschitz bound.
PhaseReport probe_cm(const Mean& m, int samples, std::uint64_t seed, const CharacterizeConfig& config) {
  PhaseReport phase;
  phase.condition = Condition::kCmFunction;
  const std::size_t n = m.fixed_arity();
  const Interval& d = m.domain();
  const double step = std::max(1e-4, config.increment_fraction * d.width());
  const double delta = config.continuity_delta;

  for (int s = 0; s < samples; ++s) {
    SampleStream rng(seed, static_cast<std::uint64_t>(s));
    std::vector<double> base = rng.point(d, n);
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<double> x = base;
      if (x[k] + step > d.clamped_hi()) x[k] = d.clamped_hi() - step;
      const double m0 = m(x);

      std::vector<double> raised = x;
      raised[k] += step;
      const double m1 = m(raised);
      ++phase.trials_run;
      if (!(m1 - m0 > config.monotone_slack * std::max(1.0, std::abs(m0)))) {
        std::ostringstream msg;
        msg.precision(10);
        msg << "not strictly increasing in variable " << k + 1 << ": M" << format_point(x) << " = " << m0
            << " but raising it by " << step << " gives " << m1;
        phase.detail = msg.str();
        phase.witness_point = x;
        return phase;
      }

      std::vector<double> nudged = x;
      nudged[k] += delta;
      const double change = std::abs(m(nudged) - m0);
      phase.max_residual = std::max(phase.max_residual, change / delta);
      if (change > config.lipschitz_bound * delta) {
        std::ostringstream msg;
        msg.precision(10);
        msg << "continuity probe: change " << change << " over step " << delta << " in variable " << k + 1
            << " at " << format_point(x) << " exceeds the Lipschitz bound " << config.lipschitz_bound;
        phase.detail = msg.str();
        phase.witness_point = x;
        return phase;
      }
    }
  }
  phase.passed = true;
  phase.detail = "strictly increasing in each variable on " + std::to_string(samples) +
                 " sampled points; continuity probed by a sampled Lipschitz bound (heuristic)";
  return phase;
}

PhaseReport probe_reflexivity(const Mean& m, int grid) {
  PhaseReport phase;
  phase.condition = Condition::kReflexive;
  const int points = std::max(grid, 2);
  for (int k = 0; k < points; ++k) {
    const double x = m.domain().grid_point(k, points);
    const ReflexivityReport r = reflexivity_check(m, x);
    ++phase.trials_run;
    phase.max_residual = std::max(phase.max_residual, r.deviation);
    if (!r.passed) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "M(x, ..., x) = " << r.value << " differs from x = " << x;
      if (!r.error.empty()) msg << " (" << r.error << ")";
      phase.detail = msg.str();
      phase.witness_point.assign(m.fixed_arity(), x);
      return phase;
    }
  }
  phase.passed = true;
  phase.detail = "reflexive on " + std::to_string(points) + " grid points";
  return phase;
}

PhaseReport probe_generalized_bisymmetry(const Mean& m, const CharacterizeConfig& config) {
  PhaseReport phase;
  phase.condition = Condition::kGeneralizedBisymmetric;
  const Mean gamma = gauss_composition(cyclic_mapping(m), config.gauss).as_mean();

  // The search runs first so a refutation always carries a witness matrix.
  const SearchResult search = search_counterexample(
      [&](const InputMatrix& matrix) { return gbs_for_mean_check(m, gamma, matrix, config.tol); }, m.domain(),
      m.fixed_arity(), config.tol, config.search);
  phase.trials_run = search.trials_run;
  phase.max_residual = search.max_residual;
  if (search.found) {
    std::ostringstream msg;
    msg.precision(10);
    msg << "generalized bisymmetry fails at trial " << search.witness_trial << ": lhs " << search.witness->lhs
        << ", rhs " << search.witness->rhs << ", residual " << search.witness->residual;
    phase.detail = msg.str();
    phase.witness_equation = search.witness;
    return phase;
  }

  PhaseReport gamma_cm = probe_cm(gamma, config.gamma_cm_samples, config.search.seed ^ 0x6a09e667ULL, config);
  if (!gamma_cm.passed) {
    phase.detail = "Gauss composition is not a CM-function: " + gamma_cm.detail;
    phase.witness_point = gamma_cm.witness_point;
    return phase;
  }
  phase.passed = true;
  std::ostringstream msg;
  msg.precision(3);
  msg << "equation holds on " << search.trials_run << " matrices (max residual " << search.max_residual
      << "); Gauss composition passed the CM probes";
  phase.detail = msg.str();
  return phase;
}

template <class Probe>
PhaseReport guarded(Condition condition, Probe&& probe) {
  try {
    return probe();
  } catch (const Error& e) {
    PhaseReport phase;
    phase.condition = condition;
    phase.passed = false;
    phase.detail = std::string("evaluation failed: ") + e.what();
    return phase;
  }
}

}  // namespace

CharacterizationVerdict characterize(const Mean& m, const CharacterizeConfig& config) {
  m.fixed_arity();
  CharacterizationVerdict verdict;
  verdict.phases.push_back(guarded(Condition::kCmFunction,
                                   [&] { return probe_cm(m, config.cm_samples, config.search.seed, config); }));
  verdict.phases.push_back(
      guarded(Condition::kReflexive, [&] { return probe_reflexivity(m, config.reflexivity_grid); }));
  verdict.phases.push_back(
      guarded(Condition::kGeneralizedBisymmetric, [&] { return probe_generalized_bisymmetry(m, config); }));

  for (const auto& p : verdict.phases) {
    if (!p.passed) {
      verdict.failing_condition = p.condition;
      break;
    }
  }
  verdict.consistent = !verdict.failing_condition.has_value();

  std::ostringstream summary;
  summary.precision(3);
  if (verdict.consistent) {
    summary << "consistent with a generalized quasi-arithmetic mean at tolerance " << config.tol
            << " (numeric evidence, not a proof)";
  } else {
    summary << "refuted: " << to_string(*verdict.failing_condition) << " fails; "
            << verdict.phase(*verdict.failing_condition).detail;
  }
  verdict.summary = summary.str();
  return verdict;
}

}  // namespace meanlab
