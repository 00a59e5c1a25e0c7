// Copyright 2026 The bstghz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Exhaustive index sweeps used by every brute-force search in the library.
//
// Each search is a predicate over [0, n). The serial kernel is the reference
// implementation; the OpenMP kernel must return the identical count and the
// identical (ascending, lexicographically least) witness prefix regardless of
// thread count. Tests compare the two on every search.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <type_traits>
#include <vector>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace bst {

enum class Execution { Serial, Parallel };

inline constexpr std::size_t kAllWitnesses = std::numeric_limits<std::size_t>::max();

struct SweepResult {
    std::uint64_t total = 0;
    std::uint64_t count = 0;
    /// Smallest satisfying indices, ascending, at most the requested limit.
    std::vector<std::uint64_t> witnesses;

    bool operator==(const SweepResult &) const = default;
};

template <typename Pred>
SweepResult sweep_serial(std::uint64_t n, Pred &&pred, std::size_t witness_limit = kAllWitnesses) {
    SweepResult r;
    r.total = n;
    for (std::uint64_t i = 0; i < n; ++i) {
        if (pred(i)) {
            ++r.count;
            if (r.witnesses.size() < witness_limit) {
                r.witnesses.push_back(i);
            }
        }
    }
    return r;
}

template <typename Pred>
SweepResult sweep_parallel(std::uint64_t n, Pred &&pred, std::size_t witness_limit = kAllWitnesses) {
    SweepResult r;
    r.total = n;
    std::uint64_t count = 0;
    std::vector<std::uint64_t> merged;
    auto signed_n = static_cast<std::int64_t>(n);

#pragma omp parallel reduction(+ : count)
    {
        // schedule(static) hands each thread one contiguous ascending block,
        // so the first `witness_limit` hits of a thread are its smallest.
        std::vector<std::uint64_t> local;
#pragma omp for schedule(static) nowait
        for (std::int64_t s = 0; s < signed_n; ++s) {
            auto i = static_cast<std::uint64_t>(s);
            if (pred(i)) {
                ++count;
                if (local.size() < witness_limit) {
                    local.push_back(i);
                }
            }
        }
#pragma omp critical(bst_sweep_merge)
        merged.insert(merged.end(), local.begin(), local.end());
    }

    std::sort(merged.begin(), merged.end());
    if (merged.size() > witness_limit) {
        merged.resize(witness_limit);
    }
    r.count = count;
    r.witnesses = std::move(merged);
    return r;
}

template <typename Pred>
SweepResult sweep(std::uint64_t n, Pred &&pred, std::size_t witness_limit, Execution exec) {
    if (exec == Execution::Parallel) {
        return sweep_parallel(n, pred, witness_limit);
    }
    return sweep_serial(n, pred, witness_limit);
}

/// Evaluates fn(i) for every i in [0, n) and returns the results in index
/// order. Used where every item produces a value (grids, candidate scans).
template <typename T, typename Fn>
std::vector<T> map_indices(std::size_t n, Fn &&fn, Execution exec) {
    static_assert(!std::is_same_v<T, bool>, "vector<bool> elements cannot be written concurrently");
    std::vector<T> out(n);
    if (exec == Execution::Parallel) {
        auto signed_n = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 1)
        for (std::int64_t s = 0; s < signed_n; ++s) {
            out[static_cast<std::size_t>(s)] = fn(static_cast<std::size_t>(s));
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            out[i] = fn(i);
        }
    }
    return out;
}

}  // namespace bst
