/*
   Copyright 2026 The circnorm Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef CIRCNORM_PARALLEL_HPP
#define CIRCNORM_PARALLEL_HPP

#include <cstddef>
#include <algorithm>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace circnorm {

/// Worker count: `requested` if nonzero, else CIRCLE_NORMS_THREADS if set to a
/// positive integer, else hardware concurrency (at least 1).
unsigned resolve_threads(unsigned requested = 0);

/// Calls fn(i) for every i in [0, count), spread over `threads` workers with a
/// static interleaved assignment. Callers write per-index results and reduce
/// them in index order, which keeps output independent of the worker count.
/// The first exception thrown by any fn is rethrown on the calling thread.
template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
    const std::size_t workers = std::min<std::size_t>(count, threads == 0 ? 1 : threads);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i = w; i < count; i += workers) fn(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
}

/// Stateless counter-based generator: the value for (seed, counter) is a fixed
/// function of both, so any partition of the counter range sees the same
/// stream. SplitMix64 finalizer over a seed-keyed Weyl sequence.
class CounterRng {
   public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) noexcept
        : key_(mix(seed ^ mix(stream + 0x6a09e667f3bcc909ULL))) {}

    std::uint64_t bits(std::uint64_t counter) const noexcept {
        return mix(key_ + (counter + 1) * 0x9e3779b97f4a7c15ULL);
    }

    /// Uniform on [0, 1).
    double uniform(std::uint64_t counter) const noexcept {
        return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
    }

    /// Uniform on (0, 1].
    double uniform_open0(std::uint64_t counter) const noexcept {
        return static_cast<double>((bits(counter) >> 11) + 1) * 0x1.0p-53;
    }

    /// Standard normal from counters 2c and 2c + 1 (Box-Muller, cosine branch).
    double normal(std::uint64_t c) const noexcept;

   private:
    static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t key_;
};

}  // namespace circnorm

#endif
