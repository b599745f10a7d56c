#include "padicfk/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace padicfk {

void parallel_for(long long count, int threads, const std::function<void(long long)>& fn) {
    if (count <= 0) return;
    if (threads <= 1 || count == 1) {
        for (long long i = 0; i < count; ++i) fn(i);
        return;
    }
    int workers = static_cast<int>(std::min<long long>(threads, count));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    long long chunk = (count + workers - 1) / workers;
    std::exception_ptr first_error = nullptr;
    std::mutex guard;
    for (int w = 0; w < workers; ++w) {
        long long lo = w * chunk;
        long long hi = std::min(count, lo + chunk);
        pool.emplace_back([&, lo, hi] {
            try {
                for (long long i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(guard);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("PADIC_FK_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v >= 1 && v <= 1024) return static_cast<int>(v);
        throw std::runtime_error("PADIC_FK_THREADS must be an integer in [1, 1024]");
    }
    return 1;
}

} // namespace padicfk
