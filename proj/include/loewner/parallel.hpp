#pragma once

#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace loewner {

// Worker cap: LOEWNER_THREADS env var if set, else hardware concurrency.
inline unsigned max_threads() {
  if (const char* env = std::getenv("LOEWNER_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Runs f(i) for i in [0, n) on up to max_threads() workers, strided so that
// triangular per-index costs stay balanced. Results must go to per-index
// slots; the decomposition never affects values. The first exception thrown
// by any worker is rethrown on the calling thread.
template <class F>
void parallel_for(std::size_t n, F&& f) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(max_threads(), n ? n : 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  auto body = [&](unsigned w) {
    try {
      for (std::size_t i = w; i < n; i += workers) f(i);
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  pool.reserve(workers - 1);
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(body, w);
  body(0);
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace loewner
