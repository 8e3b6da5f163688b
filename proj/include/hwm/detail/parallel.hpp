#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace hwm::detail {

/// Runs fn(i) for i in [0, count) over a static block partition. Each index is
/// processed by exactly one thread, so results written per index do not depend
/// on the schedule. If any call throws, the exception from the lowest index is
/// rethrown after all workers finish.
template <class Fn> void parallel_for(std::size_t count, Fn &&fn) {
  if (count == 0)
    return;
  std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, count);
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i)
      fn(i);
    return;
  }

  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  const std::size_t block = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      const std::size_t begin = w * block;
      const std::size_t end = std::min(count, begin + block);
      for (std::size_t i = begin; i < end; ++i) {
        try {
          fn(i);
        } catch (...) {
          errors[w] = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto &t : threads)
    t.join();
  for (std::size_t w = 0; w < workers; ++w)
    if (errors[w])
      std::rethrow_exception(errors[w]);
}

} // namespace hwm::detail
