#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "meanlab/interval.hpp"
#include "meanlab/means.hpp"

namespace meanlab {

// The cyclic permutation sigma of {1, ..., n}: sigma(1) = n, sigma(k) = k - 1.
// Indices on this surface are 1-based; exponents may be any integer and are
// reduced modulo n, so sigma^{-1} is the inverse rotation.

/// Throws IndexError unless n >= 2 and 1 <= k <= n.
int sigma(int n, int k);
/// sigma^i(k) for any integer i.
int sigma_pow(int n, int i, int k);

/// sigma^i for a fixed cycle length n, exponent stored reduced into [0, n).
class CyclicIndex {
 public:
  CyclicIndex(int n, long long exponent);

  int n() const noexcept { return n_; }
  int exponent() const noexcept { return exponent_; }

  /// sigma^exponent(k), 1-based.
  int operator()(int k) const;

  CyclicIndex operator*(const CyclicIndex& other) const;  // sigma^{i+j}
  CyclicIndex inverse() const;
  bool is_identity() const noexcept { return exponent_ == 0; }

  friend bool operator==(const CyclicIndex&, const CyclicIndex&) = default;

 private:
  int n_;
  int exponent_;
};

/// (x_{sigma^i(1)}, ..., x_{sigma^i(n)}).
std::vector<double> rotate_arguments(std::span<const double> xs, int i);

/// M<i>(x_1, ..., x_n) = M(x_{sigma^i(1)}, ..., x_{sigma^i(n)}). M must have finite arity.
Mean permuted_mean(const Mean& m, int i);

/// An n-tuple of n-variable means on a shared domain, acting on I^n.
class MeanTypeMapping {
 public:
  /// Throws ArityError unless every component has arity n = components.size() >= 2.
  explicit MeanTypeMapping(std::vector<Mean> components);

  std::size_t size() const noexcept { return components_.size(); }
  const Mean& operator[](std::size_t i) const { return components_[i]; }
  const std::vector<Mean>& components() const noexcept { return components_; }
  const Interval& domain() const noexcept { return components_.front().domain(); }

  std::vector<double> apply(std::span<const double> xs) const;

 private:
  std::vector<Mean> components_;
};

/// (M<0>, ..., M<n-1>).
MeanTypeMapping cyclic_mapping(const Mean& m);

}  // namespace meanlab
