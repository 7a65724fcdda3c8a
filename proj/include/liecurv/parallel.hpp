#pragma once

#include <exception>
#include <utility>
#include <vector>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace liecurv {

/// Order-preserving batch map: out[i] = fn(i). Reference implementation the
/// parallel version must agree with element-for-element.
template <typename Result, typename Fn>
std::vector<Result> serial_map(int count, Fn&& fn) {
    std::vector<Result> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) out.push_back(fn(i));
    return out;
}

/// OpenMP variant. Each result lands in its own preallocated slot, so the
/// output is byte-identical to serial_map regardless of thread count or
/// schedule; reductions over the result stay deterministic as long as they
/// run over the returned vector in order. fn must be safe to call
/// concurrently on distinct indices.
template <typename Result, typename Fn>
std::vector<Result> parallel_map(int count, Fn&& fn) {
#if defined(_OPENMP)
    std::vector<Result> out(count);
    // Exceptions must not unwind out of the parallel region; stash them per
    // slot and rethrow the lowest-index one, which is what the serial loop
    // would have surfaced.
    std::vector<std::exception_ptr> errors(count);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < count; ++i) {
        try {
            out[i] = fn(i);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (int i = 0; i < count; ++i)
        if (errors[i]) std::rethrow_exception(errors[i]);
    return out;
#else
    return serial_map<Result>(count, std::forward<Fn>(fn));
#endif
}

} // namespace liecurv
