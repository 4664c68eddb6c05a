#include "meanlab/cyclic.hpp"

#include <string>

#include "meanlab/errors.hpp"

namespace meanlab {

namespace {

void check_index(int n, int k) {
  if (n < 1) throw IndexError("cycle length must be positive, got " + std::to_string(n));
  if (k < 1 || k > n) {
    throw IndexError("index " + std::to_string(k) + " outside {1, ..., " + std::to_string(n) + "}");
  }
}

int reduce(long long exponent, int n) {
  const long long r = exponent % n;
  return static_cast<int>(r < 0 ? r + n : r);
}

}  // namespace

int sigma(int n, int k) {
  check_index(n, k);
  return k == 1 ? n : k - 1;
}

int sigma_pow(int n, int i, int k) { return CyclicIndex(n, i)(k); }

CyclicIndex::CyclicIndex(int n, long long exponent) : n_(n), exponent_(0) {
  if (n < 1) throw IndexError("cycle length must be positive, got " + std::to_string(n));
  exponent_ = reduce(exponent, n);
}

int CyclicIndex::operator()(int k) const {
  check_index(n_, k);
  // sigma shifts every index down by one, wrapping 1 to n.
  return reduce(static_cast<long long>(k) - 1 - exponent_, n_) + 1;
}

CyclicIndex CyclicIndex::operator*(const CyclicIndex& other) const {
  if (other.n_ != n_) throw IndexError("cannot compose rotations of different lengths");
  return CyclicIndex(n_, static_cast<long long>(exponent_) + other.exponent_);
}

CyclicIndex CyclicIndex::inverse() const { return CyclicIndex(n_, -static_cast<long long>(exponent_)); }

std::vector<double> rotate_arguments(std::span<const double> xs, int i) {
  const int n = static_cast<int>(xs.size());
  const CyclicIndex s(n, i);
  std::vector<double> out(xs.size());
  for (int k = 1; k <= n; ++k) out[k - 1] = xs[s(k) - 1];
  return out;
}

Mean permuted_mean(const Mean& m, int i) {
  const std::size_t n = m.fixed_arity();
  const int shift = CyclicIndex(static_cast<int>(n), i).exponent();
  if (shift == 0) return m;
  return Mean(
      m.domain(), n, [m, shift](std::span<const double> xs) { return m(rotate_arguments(xs, shift)); },
      m.label() + "<" + std::to_string(shift) + ">");
}

MeanTypeMapping::MeanTypeMapping(std::vector<Mean> components) : components_(std::move(components)) {
  const std::size_t n = components_.size();
  if (n < 2) throw ArityError("a mean-type mapping needs at least two components");
  for (const auto& m : components_) {
    if (m.arity() != n) {
      throw ArityError("component '" + m.label() + "' does not have arity " + std::to_string(n));
    }
    if (!(m.domain() == components_.front().domain())) {
      throw DomainError("components of a mean-type mapping must share a domain");
    }
  }
}

std::vector<double> MeanTypeMapping::apply(std::span<const double> xs) const {
  if (xs.size() != components_.size()) throw ArityError("mean-type mapping applied to a wrong-size vector");
  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < components_.size(); ++i) out[i] = components_[i](xs);
  return out;
}

MeanTypeMapping cyclic_mapping(const Mean& m) {
  const std::size_t n = m.fixed_arity();
  if (n < 2) throw ArityError("cyclic mapping requires arity at least 2");
  std::vector<Mean> components;
  components.reserve(n);
  for (std::size_t i = 0; i < n; ++i) components.push_back(permuted_mean(m, static_cast<int>(i)));
  return MeanTypeMapping(std::move(components));
}

}  // namespace meanlab
