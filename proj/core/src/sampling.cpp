#include "meanlab/sampling.hpp"

namespace meanlab {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

SampleStream::SampleStream(std::uint64_t seed, std::uint64_t stream)
    : engine_(splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL))) {}

double SampleStream::canonical() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double SampleStream::uniform(double lo, double hi) { return lo + (hi - lo) * canonical(); }

double SampleStream::uniform(const Interval& domain) {
  return uniform(domain.clamped_lo(), domain.clamped_hi());
}

std::vector<double> SampleStream::point(const Interval& domain, std::size_t n) {
  std::vector<double> out(n);
  for (auto& x : out) x = uniform(domain);
  return out;
}

}  // namespace meanlab
