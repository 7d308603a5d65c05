#include "mono/parallel.hpp"

#include <exception>

namespace mono {

void parallel_for(int n, const std::function<void(int)>& fn, ExecMode mode) {
#ifdef MONO_HAVE_OPENMP
    if (mode == ExecMode::OpenMP) {
        std::exception_ptr first;
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < n; ++i) {
            try {
                fn(i);
            } catch (...) {
#pragma omp critical
                if (!first) first = std::current_exception();
            }
        }
        if (first) std::rethrow_exception(first);
        return;
    }
#endif
    (void)mode;
    for (int i = 0; i < n; ++i) fn(i);
}

} // namespace mono
