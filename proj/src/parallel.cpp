#include "wtfb/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wtfb {

int max_workers() {
#ifdef _OPENMP
    int n = omp_get_max_threads();
#else
    int n = 1;
#endif
    if (const char* env = std::getenv("WTFB_THREADS")) {
        try {
            int cap = std::stoi(env);
            if (cap >= 1 && cap < n) n = cap;
        } catch (...) {
            // ignore unparsable values
        }
    }
    return n;
}

namespace detail {

void for_each_index_impl(std::size_t n, ExecMode mode, void* ctx, void (*fn)(void*, std::size_t)) {
    if (mode == ExecMode::serial) {
        for (std::size_t i = 0; i < n; ++i) fn(ctx, i);
        return;
    }
#ifdef _OPENMP
    const int workers = max_workers();
#pragma omp parallel for schedule(static) num_threads(workers)
    for (long long i = 0; i < static_cast<long long>(n); ++i)
        fn(ctx, static_cast<std::size_t>(i));
#else
    for (std::size_t i = 0; i < n; ++i) fn(ctx, i);
#endif
}

} // namespace detail
} // namespace wtfb
