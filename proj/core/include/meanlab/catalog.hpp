#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "meanlab/generator.hpp"
#include "meanlab/means.hpp"

namespace meanlab::catalog {

struct NamedGenerator {
  std::string name;
  Generator generator;
};

struct NamedSystem {
  std::string name;
  GeneratorSystem system;
};

struct NamedMean {
  std::string name;
  Mean mean;
};

/// Single generators, each on an interval where it is strictly increasing
/// and its slope stays away from zero.
std::vector<NamedGenerator> generators();

/// {x, 2x}, {x, x^3}, {log x, x}, {exp x, x}, {x, x^2, x^3}.
std::vector<NamedSystem> systems();

/// Arithmetic, geometric, the quasi-arithmetic means of generators() (two and
/// three variables) and the generalized means of systems().
std::vector<NamedMean> means();

/// Means that are not generalized quasi-arithmetic: "lehmer2" and "blend"
/// (0.3 min + 0.7 max), both on (0, 10). Throws Error for other names.
Mean demo_mean(std::string_view name);
std::vector<std::string> demo_names();

}  // namespace meanlab::catalog
