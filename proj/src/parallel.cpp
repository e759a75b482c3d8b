#include "muskat/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace muskat {

namespace {
std::atomic<int> g_threads{0};
}

void set_threads(int n) { g_threads.store(n > 0 ? n : 0); }

int thread_count() {
    int n = g_threads.load();
    if (n > 0) return n;
    if (const char* env = std::getenv("MUSKAT_THREADS")) {
        const int from_env = std::atoi(env);
        if (from_env > 0) return from_env;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

}  // namespace muskat
