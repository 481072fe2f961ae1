#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <type_traits>
#include <vector>

namespace ahoop {

/// Evaluate f(0..count-1) on up to `threads` workers, each taking one
/// contiguous block. Results land in index order, so the output does not
/// depend on the worker count. The exception from the lowest failing index
/// is rethrown.
template <typename F>
auto parallel_map(std::size_t count, unsigned threads, F&& f)
    -> std::vector<std::invoke_result_t<F&, std::size_t>> {
    using R = std::invoke_result_t<F&, std::size_t>;
    std::vector<R> out(count);
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(threads, count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) out[i] = f(i);
        return out;
    }
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t lo = count * w / workers;
            const std::size_t hi = count * (w + 1) / workers;
            pool.emplace_back([&, w, lo, hi] {
                for (std::size_t i = lo; i < hi; ++i) {
                    try {
                        out[i] = f(i);
                    } catch (...) {
                        errors[w] = std::current_exception();
                        return;
                    }
                }
            });
        }
    }
    for (std::size_t w = 0; w < workers; ++w)
        if (errors[w]) std::rethrow_exception(errors[w]);
    return out;
}

} // namespace ahoop
