#pragma once

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sievelab {

// 0 leaves the OpenMP default alone. Results never depend on the thread
// count; this only controls how much hardware the kernels use.
inline void set_thread_count(unsigned k) {
#ifdef _OPENMP
    if (k > 0) omp_set_num_threads(static_cast<int>(k));
#else
    (void)k;
#endif
}

inline unsigned thread_count() {
#ifdef _OPENMP
    return static_cast<unsigned>(omp_get_max_threads());
#else
    return 1;
#endif
}

} // namespace sievelab
