#include "hyperpart/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hyperpart {

bool parallel_available() {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

namespace detail {

void for_index_omp(std::int64_t n, const std::function<void(std::int64_t)>& fn) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < n; ++i) fn(i);
#else
    for (std::int64_t i = 0; i < n; ++i) fn(i);
#endif
}

} // namespace detail

} // namespace hyperpart
