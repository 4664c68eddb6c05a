#include "meanlab/catalog.hpp"

#include "meanlab/errors.hpp"

namespace meanlab::catalog {

namespace g = meanlab::generators;

std::vector<NamedGenerator> generators() {
  const Interval wide = Interval::open(0.0, 10.0);
  const Interval positive = Interval::open(0.1, 10.0);
  const Interval narrow = Interval::open(0.1, 5.0);
  return {
      {"x", g::identity(wide)},
      {"2x+1", g::linear(wide, 2.0, 1.0)},
      {"x^2", g::power(positive, 2.0)},
      {"x^3", g::power(narrow, 3.0)},
      {"exp", g::exponential(wide)},
      {"log", g::logarithm(positive)},
      {"sqrt", g::square_root(positive)},
  };
}

std::vector<NamedSystem> systems() {
  const Interval wide = Interval::open(0.0, 10.0);
  const Interval narrow = Interval::open(0.1, 5.0);
  const Interval positive = Interval::open(0.1, 10.0);
  const Interval exp_range = Interval::open(0.0, 5.0);
  return {
      {"{x,2x}", GeneratorSystem({g::identity(wide), g::linear(wide, 2.0)})},
      {"{x,x^3}", GeneratorSystem({g::identity(narrow), g::power(narrow, 3.0)})},
      {"{log x,x}", GeneratorSystem({g::logarithm(positive), g::identity(positive)})},
      {"{exp x,x}", GeneratorSystem({g::exponential(exp_range), g::identity(exp_range)})},
      {"{x,x^2,x^3}", GeneratorSystem({g::identity(narrow), g::power(narrow, 2.0), g::power(narrow, 3.0)})},
  };
}

std::vector<NamedMean> means() {
  std::vector<NamedMean> out;
  out.push_back({"AM", meanlab::means::arithmetic(Interval::open(0.0, 10.0))});
  out.push_back({"GM", meanlab::means::geometric(Interval::open(0.1, 10.0))});
  for (const auto& [name, f] : generators()) {
    out.push_back({"A[" + name + "]/2", meanlab::means::quasi_arithmetic(f, 2)});
    out.push_back({"A[" + name + "]/3", meanlab::means::quasi_arithmetic(f, 3)});
  }
  for (const auto& [name, system] : systems()) {
    out.push_back({"A" + name, meanlab::means::generalized_quasi_arithmetic(system)});
  }
  return out;
}

Mean demo_mean(std::string_view name) {
  const Interval domain = Interval::open(0.0, 10.0);
  if (name == "lehmer2") return meanlab::means::lehmer2(domain);
  if (name == "blend") return meanlab::means::min_max_blend(domain, 0.7);
  throw Error("unknown demo mean '" + std::string(name) + "' (expected lehmer2 or blend)");
}

std::vector<std::string> demo_names() { return {"lehmer2", "blend"}; }

}  // namespace meanlab::catalog
