#ifndef NSFAID_PARALLEL_HPP
#define NSFAID_PARALLEL_HPP

#include <algorithm>
#include <thread>
#include <vector>

namespace nsfaid {

/// Runs fn(first, last, chunk) on disjoint index ranges covering [0, n).
/// threads <= 1 runs inline. Results must be merged by the caller; keeping
/// per-chunk accumulators makes the merge order-independent.
template <class Fn>
void parallel_chunks(int n, int threads, Fn&& fn) {
    if (n <= 0)
        return;
    int width = std::clamp(threads, 1, n);
    if (width == 1) {
        fn(0, n, 0);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(width));
    int base = n / width, extra = n % width;
    int at = 0;
    for (int c = 0; c < width; ++c) {
        int len = base + (c < extra ? 1 : 0);
        pool.emplace_back(fn, at, at + len, c);
        at += len;
    }
    for (auto& t : pool)
        t.join();
}

} // namespace nsfaid

#endif
