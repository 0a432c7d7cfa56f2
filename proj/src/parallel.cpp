#include "chd/parallel.hpp"

#include <atomic>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace chd {

namespace {

int env_cap() {
    const char* s = std::getenv("CLICK_HOMODYNE_THREADS");
    if (!s) return 0;
    int v = std::atoi(s);
    return v > 0 ? v : 0;
}

std::atomic<int> g_cap{-1};  // -1: unset; 0: no cap; >0: cap

}  // namespace

int thread_count() {
    int cap = g_cap.load(std::memory_order_relaxed);
    if (cap < 0) {
        cap = env_cap();
        g_cap.store(cap, std::memory_order_relaxed);
    }
#ifdef _OPENMP
    int n = omp_get_max_threads();
#else
    int n = 1;
#endif
    if (cap > 0 && cap < n) n = cap;
    return n > 0 ? n : 1;
}

void set_thread_cap(int cap) { g_cap.store(cap > 0 ? cap : -1, std::memory_order_relaxed); }

}  // namespace chd
