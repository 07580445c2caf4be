#include "cornerq/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

namespace cornerq {
namespace {

std::atomic<std::size_t> g_default_threads{0};

}  // namespace

std::size_t thread_count() {
  if (const char* env = std::getenv("CORNERQ_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (...) {
      // malformed override is ignored
    }
  }
  if (const auto n = g_default_threads.load(); n > 0) return n;
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

void set_default_thread_count(std::size_t n) { g_default_threads.store(n); }

std::vector<double> parallel_map(std::size_t n, const std::function<double(std::size_t)>& fn) {
  std::vector<double> out(n);
  const std::size_t workers = std::min(thread_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  constexpr std::size_t chunk = 8;

  auto work = [&] {
    for (;;) {
      const std::size_t begin = next.fetch_add(chunk);
      if (begin >= n) return;
      const std::size_t end = std::min(n, begin + chunk);
      try {
        for (std::size_t i = begin; i < end; ++i) out[i] = fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(n);
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 16) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace cornerq
