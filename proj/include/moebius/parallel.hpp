#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace moebius {

/// Worker count used by the row-parallel loops. 1 is the deterministic
/// reference mode; results never depend on the count because every row is
/// reduced separately and combined in index order.
void set_threads(std::size_t n);
std::size_t threads();
/// Reads MOEBIUS_THREADS if set; returns the fallback otherwise.
std::size_t threads_from_env(std::size_t fallback);

void parallel_for(std::size_t begin, std::size_t end, const std::function<void(std::size_t)>& body);

/// Pairwise (tree) summation over a fixed index order.
double pairwise_sum(std::span<const double> v);

}  // namespace moebius
