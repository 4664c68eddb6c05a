#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace meanlab {

/// Calls body(i) for i in [0, count), fanned across worker threads. Each
/// index is visited exactly once; after all workers have joined, the
/// exception from the lowest failing index is rethrown. `workers == 0` picks hardware concurrency.
template <class Body>
void parallel_for(std::size_t count, Body&& body, std::size_t workers = 0) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::size_t> failed_at(workers, count);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < count; i += workers) {
            failed_at[w] = i;
            body(i);
          }
          failed_at[w] = count;
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  std::size_t first = workers;
  for (std::size_t w = 0; w < workers; ++w) {
    if (errors[w] && (first == workers || failed_at[w] < failed_at[first])) first = w;
  }
  if (first != workers) std::rethrow_exception(errors[first]);
}

}  // namespace meanlab
