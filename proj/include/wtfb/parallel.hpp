#pragma once

#include <cstddef>
#include <cstdint>

namespace wtfb {

// Execution mode of the data-parallel kernels. Every kernel writes its result
// for index i into slot i and reductions run serially afterwards, so the two
// modes produce bit-identical output; `serial` is the reference the tests
// compare against.
enum class ExecMode { serial, openmp };

// Worker cap from WTFB_THREADS (speed knob only; never changes results).
int max_workers();

namespace detail {
void for_each_index_impl(std::size_t n, ExecMode mode, void* ctx, void (*fn)(void*, std::size_t));
}

template <class F>
void for_each_index(std::size_t n, ExecMode mode, F&& f) {
    detail::for_each_index_impl(n, mode, &f, [](void* ctx, std::size_t i) {
        (*static_cast<F*>(ctx))(i);
    });
}

} // namespace wtfb
