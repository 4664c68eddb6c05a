// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "meanlab/bisymmetry.hpp"
#include "meanlab/catalog.hpp"
#include "meanlab/cyclic.hpp"
#include "meanlab/gauss.hpp"
#include "meanlab/generator.hpp"
#include "meanlab/means.hpp"
#include "meanlab/sampling.hpp"
#include "oracles.hpp"

namespace {

using namespace meanlab;

struct Outcome {
  bool passed;
  std::string detail;
};

std::string fmt(const char* pattern, auto... args) {
  char buffer[512];
  std::snprintf(buffer, sizeof buffer, pattern, args...);
  return buffer;
}

// 1. Gauss composition of the cyclic mapping equals the quasi-arithmetic mean of the summed generator.
Outcome gauss_limit_closed_form() {
  const auto started = std::chrono::steady_clock::now();
  double worst = 0.0;
  bool ok = true;
  for (const auto& [name, s] : catalog::systems()) {
    CyclicLimitOptions options;
    options.samples = 200;
    options.tol = 1e-7;
    options.gauss.tol = 1e-10;
    const CyclicLimitReport r = cyclic_limit_check(s, options);
    worst = std::max(worst, r.max_residual);
    ok = ok && r.passed;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return {ok && seconds <= 10.0,
          fmt("5 systems x 200 points, max residual %.3e (<= 1e-7), %.2f s (<= 10 s)", worst, seconds)};
}

// 2. Generalized bisymmetry on random matrices; collapsed matrices reduce to invariance.
Outcome generalized_bisymmetry() {
  double worst = 0.0;
  double worst_collapse = 0.0;
  for (const auto& [name, s] : catalog::systems()) {
    const std::size_t n = s.size();
    for (std::uint64_t i = 0; i < 200; ++i) {
      worst = std::max(worst, generalized_bisymmetry_check(s, random_matrix(s.domain(), n, 0, i), 1e-7).residual);
    }
    const Mean a_f = means::quasi_arithmetic(sum_generators(s), n);
    const MeanTypeMapping cyclic = cyclic_mapping(means::generalized_quasi_arithmetic(s));
    for (std::uint64_t k = 0; k < 50; ++k) {
      SampleStream rng(1, k);
      const auto y = rng.point(s.domain(), n);
      std::vector<double> values;
      for (std::size_t i = 0; i < n; ++i) values.insert(values.end(), n, y[i]);
      const double collapsed = generalized_bisymmetry_check(s, InputMatrix(n, n, values), 1e-7).residual;
      worst_collapse = std::max(worst_collapse, std::abs(collapsed - invariance_residual(a_f, cyclic, y)));
    }
  }
  return {worst <= 1e-7 && worst_collapse <= 1e-9,
          fmt("max residual %.3e (<= 1e-7); collapsed vs invariance %.3e (<= 1e-9)", worst, worst_collapse)};
}

// 3. Exact cyclic-permutation identities.
Outcome permutation_identities() {
  long long checked = 0;
  for (int n = 1; n <= 12; ++n) {
    for (int k = 1; k <= n; ++k) {
      int image = k;
      for (int r = 0; r < n; ++r) image = sigma(n, image);
      if (image != k || CyclicIndex(n, n)(k) != k) return {false, fmt("sigma^n != id at n=%d k=%d", n, k)};
      ++checked;
    }
    for (int i = 1; i <= n; ++i) {
      if (sigma_pow(n, i, i) != n) return {false, fmt("sigma^i(i) != n at n=%d i=%d", n, i)};
      ++checked;
    }
    for (int a = 1; a <= n; ++a) {
      for (int b = 1; b <= n; ++b) {
        if (sigma_pow(n, 1 - b, a) != sigma_pow(n, 1 - a, b)) return {false, fmt("swap identity at n=%d", n)};
        ++checked;
      }
    }
  }
  return {true, fmt("%lld integer identities, n <= 12, zero tolerance", checked)};
}

// 4. Gauss iteration of (AM, GM) against an independent AGM loop.
Outcome arithmetic_geometric_oracle() {
  const Interval d = Interval::open(0.0, 10.0);
  const MeanTypeMapping mapping({means::arithmetic(d, 2), means::geometric(d, 2)});
  const GaussResult r = gauss_iterate(mapping, std::vector<double>{1.0, 2.0});
  const double error = std::abs(r.limit - static_cast<double>(oracle::agm(1.0L, 2.0L)));
  bool decreasing = true;
  for (std::size_t k = 1; k < r.trace.gaps.size(); ++k) decreasing = decreasing && r.trace.gaps[k] < r.trace.gaps[k - 1];
  int fixed = 0;
  for (int k = 1; k <= 20; ++k) {
    const double c = 0.45 * k;
    fixed += gauss_iterate(mapping, std::vector<double>{c, c}).limit == c;
  }
  return {error <= 1e-8 && decreasing && fixed == 20,
          fmt("|limit - AGM| = %.3e (<= 1e-8), gaps strictly decreasing: %s, (c,c)->c: %d/20", error,
              decreasing ? "yes" : "no", fixed)};
}

// 5. Affinely related generators give the same mean; a non-affine pair does not.
Outcome affine_equality() {
  double worst = 0.0;
  for (double a : {0.5, 3.0}) {
    for (const auto& [name, s] : catalog::systems()) {
      SampleStream shifts(5, static_cast<std::uint64_t>(a * 10));
      std::vector<Generator> transformed;
      for (const auto& f : s.generators()) transformed.push_back(affine_transform(f, a, shifts.uniform(-5.0, 5.0)));
      const GeneratorSystem t(transformed);
      for (std::uint64_t i = 0; i < 100; ++i) {
        SampleStream rng(6, i);
        const auto x = rng.point(s.domain(), s.size());
        worst = std::max(worst, std::abs(gqam_eval(s, x) - gqam_eval(t, x)));
      }
    }
    for (const auto& [name, g] : catalog::generators()) {
      const Generator t = affine_transform(g, a, -2.5);
      for (std::uint64_t i = 0; i < 100; ++i) {
        SampleStream rng(7, i);
        const auto x = rng.point(g.domain(), 2 + i % 3);
        worst = std::max(worst, std::abs(qam_eval(g, x) - qam_eval(t, x)));
      }
    }
  }
  const Interval d = Interval::open(0.0, 10.0);
  const Generator id = generators::identity(d);
  const Generator ex = generators::exponential(d);
  double discrepancy = 0.0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    SampleStream rng(8, i);
    const auto x = rng.point(d, 2);
    discrepancy = std::max(discrepancy, std::abs(qam_eval(id, x) - qam_eval(ex, x)));
  }
  const double residual = affine_fit(id, ex, 64).residual;
  return {worst <= 1e-8 && discrepancy > 1e-3 && residual > 0.1,
          fmt("a in {0.5, 3}: max difference %.3e (<= 1e-8); x vs exp: discrepancy %.3f (> 1e-3), fit residual %.3e "
              "(> 0.1)",
              worst, discrepancy, residual)};
}

// 6. The Lehmer mean is refuted with a reproducible bisymmetry witness.
Outcome lehmer_refutation() {
  const Mean lehmer = catalog::demo_mean("lehmer2");
  const CharacterizationVerdict a = characterize(lehmer);
  const CharacterizationVerdict b = characterize(lehmer);
  const PhaseReport& pa = a.phase(Condition::kGeneralizedBisymmetric);
  const PhaseReport& pb = b.phase(Condition::kGeneralizedBisymmetric);
  if (!pa.witness_equation || !pb.witness_equation) return {false, "no witness matrix found"};
  const bool reproducible = pa.witness_equation->matrix.values() == pb.witness_equation->matrix.values() &&
                            pa.witness_equation->residual == pb.witness_equation->residual;
  return {!a.consistent && pa.witness_equation->residual > 1e-4 && pa.trials_run <= 1000 && reproducible,
          fmt("refuted, witness residual %.4f (> 1e-4) after %zu trials (<= 1000), reproducible: %s",
              pa.witness_equation->residual, pa.trials_run, reproducible ? "yes" : "no")};
}

// 7. Mean axioms for every built-in mean and associativity of variadic quasi-arithmetic means.
Outcome mean_axioms() {
  std::vector<catalog::NamedMean> all = catalog::means();
  for (const auto& name : catalog::demo_names()) all.push_back({name, catalog::demo_mean(name)});
  int failures = 0;
  std::string first;
  for (const auto& [name, m] : all) {
    const std::size_t n = m.arity().value_or(3);
    for (std::uint64_t i = 0; i < 500; ++i) {
      SampleStream rng(9, i);
      const auto x = rng.point(m.domain(), n);
      const bool ok = mean_property_check(m, x).passed() && reflexivity_check(m, x[0]).passed;
      if (!ok && failures++ == 0) first = name;
    }
  }
  double assoc = 0.0;
  const std::pair<int, int> arities[] = {{1, 2}, {2, 2}, {2, 3}};
  for (const auto& [name, g] : catalog::generators()) {
    for (const auto& [k, m] : arities) {
      for (std::uint64_t i = 0; i < 50; ++i) {
        SampleStream rng(10, i);
        const auto xs = rng.point(g.domain(), static_cast<std::size_t>(k));
        const auto ys = rng.point(g.domain(), static_cast<std::size_t>(m));
        assoc = std::max(assoc, associativity_check(g, xs, ys, 1e-9).residual);
      }
    }
  }
  return {failures == 0 && assoc <= 1e-9,
          fmt("%zu means x 500 inputs: %d failures%s%s; associativity max residual %.3e (<= 1e-9)", all.size(),
              failures, failures ? ", first " : "", first.c_str(), assoc)};
}

// 8. Inversion round trip on 256-point grids.
Outcome inversion_round_trip() {
  std::vector<Generator> all;
  for (const auto& [name, g] : catalog::generators()) all.push_back(g);
  for (const auto& [name, s] : catalog::systems()) {
    for (const auto& g : s.generators()) all.push_back(g);
    all.push_back(sum_generators(s));
  }
  double worst = 0.0;
  for (const auto& g : all) {
    for (int k = 0; k < 256; ++k) {
      const double x = g.domain().grid_point(k, 256);
      worst = std::max(worst, std::abs(g.invert(g(x)) - x) / std::max(1.0, std::abs(x)));
    }
  }
  return {worst <= 1e-8, fmt("%zu generators, max relative error %.3e (<= 1e-8)", all.size(), worst)};
}

// 9. Deterministic reports and the exit-code contract.
Outcome cli_contract() {
  auto call = [](const std::vector<std::string>& args, std::string* out = nullptr) {
    std::ostringstream o;
    std::ostringstream e;
    const int code = cli::run(args, o, e);
    if (out) *out = o.str();
    return code;
  };
  const std::vector<std::string> m1{"--gen", "log(x)", "--gen", "x", "--interval", "0.1,10",
                                    "--seed", "42",    "--format", "json", "verify", "m1"};
  std::string first;
  std::string second;
  const int c1 = call(m1, &first);
  const int c2 = call(m1, &second);
  auto strip = [](const std::string& text) {
    cli::Json j = cli::Json::parse(text);
    j.erase("runtime_ms");
    return j.dump();
  };
  const bool same = c1 == 0 && c2 == 0 && strip(first) == strip(second);
  const int ok = call({"--gen", "x", "eval", "1", "2"});
  const int usage = call({"--gen", "x", "eval", "20"});
  const int convergence =
      call({"--gen", "x", "--gen", "x^3", "--interval", "0,5", "--max-iter", "1", "compose", "0.2", "4.9"});
  const int operational = call({"--gen", "x", "--output", "/nonexistent-dir/out.json", "eval", "1", "2"});
  const bool codes = ok == 0 && usage == 2 && convergence == 3 && operational == 4;
  return {same && codes, fmt("identical reports: %s; exit codes %d/%d/%d/%d (expected 0/2/3/4)",
                             same ? "yes" : "no", ok, usage, convergence, operational)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"gauss limit equals closed form", gauss_limit_closed_form},
      {"generalized bisymmetry", generalized_bisymmetry},
      {"cyclic permutation identities", permutation_identities},
      {"arithmetic-geometric oracle", arithmetic_geometric_oracle},
      {"affine equality", affine_equality},
      {"lehmer refutation", lehmer_refutation},
      {"mean axioms and associativity", mean_axioms},
      {"inversion round trip", inversion_round_trip},
      {"cli determinism and exit codes", cli_contract},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.passed;
    std::printf("[%s] %zu %s: %s\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
