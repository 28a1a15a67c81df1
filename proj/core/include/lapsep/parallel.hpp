#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <optional>
#include <thread>
#include <type_traits>
#include <vector>

namespace lapsep {

// Applies fn to 0..count-1 on contiguous index ranges, one per worker, and
// returns results in index order regardless of scheduling. The first
// exception thrown by any worker is rethrown after all workers join.
template <class Fn>
auto parallel_map(std::uint64_t count, unsigned workers, Fn fn) {
  using Result = std::invoke_result_t<Fn&, std::uint64_t>;
  std::vector<std::optional<Result>> slots(count);
  workers = std::max(1U, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::uint64_t>(count, 1))));

  std::vector<std::exception_ptr> errors(workers);
  auto run = [&](unsigned w) {
    const std::uint64_t begin = count * w / workers;
    const std::uint64_t end = count * (w + 1) / workers;
    try {
      for (std::uint64_t i = begin; i < end; ++i) slots[i].emplace(fn(i));
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };

  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::vector<Result> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace lapsep
