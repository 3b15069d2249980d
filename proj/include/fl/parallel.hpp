#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <type_traits>
#include <vector>

namespace fl {

/// Parallel-map capability handed to scans. Results are returned in index
/// order, so output never depends on the number of workers.
class Executor {
 public:
  /// jobs == 0 selects the number of logical cores.
  explicit Executor(unsigned jobs = 1)
      : jobs_(jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : jobs) {}

  unsigned jobs() const { return jobs_; }

  template <class Fn>
  auto map(std::size_t count, Fn&& fn) const -> std::vector<std::invoke_result_t<Fn&, std::size_t>> {
    using R = std::invoke_result_t<Fn&, std::size_t>;
    std::vector<std::optional<R>> slots(count);
    const auto workers = static_cast<std::size_t>(std::min<std::size_t>(jobs_, count));
    if (workers <= 1) {
      for (std::size_t i = 0; i < count; ++i) slots[i].emplace(fn(i));
    } else {
      std::atomic<std::size_t> next{0};
      std::exception_ptr failure;
      std::mutex failure_mutex;
      auto worker = [&] {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= count) return;
          try {
            slots[i].emplace(fn(i));
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next.store(count);
          }
        }
      };
      std::vector<std::jthread> pool;
      pool.reserve(workers);
      for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
      pool.clear();
      if (failure) std::rethrow_exception(failure);
    }
    std::vector<R> out;
    out.reserve(count);
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
  }

 private:
  unsigned jobs_;
};

}  // namespace fl
