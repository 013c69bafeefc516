#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace cmdegkit::detail {

inline int thread_budget() {
    const unsigned hw = std::thread::hardware_concurrency();
    long n = hw == 0 ? 1 : long(hw);
    if (const char* env = std::getenv("CMDEG_KIT_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1)
            n = std::min(v, 256L);
    }
    return int(std::max(1L, n));
}

// Runs fn(i) for i in [0, count). Work is pulled from a shared counter so
// uneven iterations balance out; the first exception wins and is rethrown
// on the calling thread.
inline void parallel_for(int count, const std::function<void(int)>& fn) {
    const int workers = std::min(count, thread_budget());
    if (workers <= 1) {
        for (int i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex err_mu;
    auto body = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= count)
                return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mu);
                if (!first_error)
                    first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (int w = 1; w < workers; ++w)
        pool.emplace_back(body);
    body();
    for (auto& th : pool)
        th.join();
    if (first_error)
        std::rethrow_exception(first_error);
}

} // namespace cmdegkit::detail
