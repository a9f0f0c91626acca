#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace vinotab {

/// Applies fn to every input on up to hardware_concurrency() threads and
/// returns the results in input order. The first exception thrown is rethrown.
template <typename In, typename Fn>
auto parallel_map(const std::vector<In>& inputs, Fn fn) {
  using Out = decltype(fn(inputs.front()));
  std::vector<std::optional<Out>> slots(inputs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < inputs.size(); i = next++) {
      try {
        slots[i].emplace(fn(inputs[i]));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = inputs.size();
      }
    }
  };
  const std::size_t n =
      std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), inputs.size());
  std::vector<std::thread> threads;
  for (std::size_t t = 1; t < n; ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
  std::vector<Out> out;
  out.reserve(inputs.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace vinotab
