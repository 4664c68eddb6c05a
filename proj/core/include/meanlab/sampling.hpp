#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "meanlab/interval.hpp"

namespace meanlab {

/// Deterministic random stream derived from (seed, stream index). Every
/// sample index gets its own stream, so results do not depend on the order
/// or thread in which samples are drawn.
class SampleStream {
 public:
  SampleStream(std::uint64_t seed, std::uint64_t stream);

  /// Uniform in [0, 1) with 53 random bits.
  double canonical();
  double uniform(double lo, double hi);
  /// Uniform over the clamped interval [clamped_lo, clamped_hi].
  double uniform(const Interval& domain);
  std::vector<double> point(const Interval& domain, std::size_t n);

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace meanlab
