#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace cornerq {

/// Worker count: CORNERQ_THREADS if set and positive, else the configured
/// default, else hardware concurrency.
std::size_t thread_count();

/// Overrides the default worker count (0 restores hardware concurrency).
/// CORNERQ_THREADS still wins when set.
void set_default_thread_count(std::size_t n);

/// Evaluates fn(i) for i in [0, n) across workers. Output slot i always holds
/// fn(i), so results do not depend on the worker count.
std::vector<double> parallel_map(std::size_t n, const std::function<double(std::size_t)>& fn);

/// Pairwise (cascade) summation. The split points depend only on the length.
double pairwise_sum(std::span<const double> values);

}  // namespace cornerq
