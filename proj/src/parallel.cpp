#include "hlp/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hlp {

namespace {

std::atomic<int> g_limit{0};

int env_limit() {
    const char* s = std::getenv("HANKEL_LP_THREADS");
    if (s == nullptr || *s == '\0') return 0;
    try {
        int n = std::stoi(s);
        return n > 0 ? n : 0;
    } catch (...) {
        return 0;
    }
}

}  // namespace

int thread_count() {
#ifdef _OPENMP
    int n = omp_get_max_threads();
#else
    int n = 1;
#endif
    int cap = g_limit.load();
    if (cap <= 0) cap = env_limit();
    if (cap > 0 && cap < n) n = cap;
    return n < 1 ? 1 : n;
}

void set_thread_limit(int n) { g_limit.store(n > 0 ? n : 0); }

}  // namespace hlp
