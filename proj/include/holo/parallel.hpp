// SPDX-License-Identifier: Apache-2.0
//
// holo: near-field polarized XL-MIMO channel and capacity toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef HOLO_PARALLEL_HPP
#define HOLO_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace holo::par
{

inline int max_threads()
{
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

inline void set_num_threads(int n)
{
#ifdef _OPENMP
    omp_set_num_threads(std::max(1, n));
#else
    (void)n;
#endif
}

// Terms per leaf block. Fixed so that the summation tree, and therefore every
// rounding, is independent of the thread count.
inline constexpr std::size_t kBlockSize = 256;

// Exceptions must not cross an OpenMP region boundary: the first one thrown
// inside a loop body is parked here and rethrown after the region.
class ErrorSlot
{
  public:
    template <class F>
    void run(F&& f) noexcept
    {
        try
        {
            f();
        }
        catch (...)
        {
#pragma omp critical(holo_par_error_slot)
            if (!error_)
                error_ = std::current_exception();
        }
    }
    void rethrow() const
    {
        if (error_)
            std::rethrow_exception(error_);
    }

  private:
    std::exception_ptr error_;
};

/// Deterministic sum of term(i) for i in [0, n).
///
/// Each block of kBlockSize consecutive terms is accumulated left to right; the
/// block partials are then combined by pairwise (binary tree) reduction in index
/// order. Blocks are distributed across OpenMP threads, which does not change the
/// result bits.
// Fixed-size blocks reduced pairwise in a fixed order, so the result does not depend on
// the thread count. add(i, acc) adds term i into the block accumulator.
template <class T, class Add>
T blocked_accumulate(std::size_t n, const T& zero, Add&& add)
{
    if (n == 0)
        return zero;
    const std::size_t n_blocks = (n + kBlockSize - 1) / kBlockSize;
    std::vector<T> partial(n_blocks, zero);

    ErrorSlot slot;
    const auto nb = static_cast<std::int64_t>(n_blocks);
#pragma omp parallel for schedule(static)
    for (std::int64_t b = 0; b < nb; ++b)
    {
        slot.run([&] {
            const std::size_t lo = static_cast<std::size_t>(b) * kBlockSize;
            const std::size_t hi = std::min(n, lo + kBlockSize);
            T& acc = partial[static_cast<std::size_t>(b)];
            for (std::size_t i = lo; i < hi; ++i)
                add(i, acc);
        });
    }
    slot.rethrow();

    for (std::size_t step = 1; step < n_blocks; step *= 2)
        for (std::size_t i = 0; i + step < n_blocks; i += 2 * step)
            partial[i] += partial[i + step];
    return partial[0];
}

template <class T, class Term>
T blocked_sum(std::size_t n, const T& zero, Term&& term)
{
    return blocked_accumulate(n, zero, [&](std::size_t i, T& acc) { acc += term(i); });
}

template <class Value>
double parallel_max(std::size_t n, Value&& value, double init)
{
    double best = init;
    ErrorSlot slot;
    const auto nn = static_cast<std::int64_t>(n);
#pragma omp parallel for reduction(max : best) schedule(static)
    for (std::int64_t i = 0; i < nn; ++i)
    {
        double v = init;
        slot.run([&] { v = value(static_cast<std::size_t>(i)); });
        best = std::max(best, v);
    }
    slot.rethrow();
    return best;
}

/// Calls f(i) for every i in [0, n). f must only write to slot i of its output.
template <class F>
void for_each_index(std::size_t n, F&& f)
{
    ErrorSlot slot;
    const auto nn = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < nn; ++i)
        slot.run([&] { f(static_cast<std::size_t>(i)); });
    slot.rethrow();
}

} // namespace holo::par

#endif
