#include "jumpvex/threading.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace jumpvex {

int init_threads() {
    int n = omp_get_max_threads();
    if (const char* env = std::getenv("JUMPVEX_THREADS")) {
        try {
            const int cap = std::stoi(env);
            if (cap >= 1) n = cap;
        } catch (...) {
            // ignore malformed values; keep the default
        }
    }
    omp_set_num_threads(n);
    return n;
}

}  // namespace jumpvex
