#pragma once

// Parameter sweeps run independent solves concurrently; TVSC_THREADS caps
// the fan-out globally.

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <future>
#include <thread>
#include <vector>

namespace tvsc {

inline int thread_cap() {
    if (const char* env = std::getenv("TVSC_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

inline int effective_jobs(int requested) {
    return std::clamp(requested < 1 ? 1 : requested, 1, thread_cap());
}

// Runs fn(i) for i in [0, count) on up to `jobs` worker threads.
inline void parallel_for(int count, int jobs, const std::function<void(int)>& fn) {
    jobs = std::min(effective_jobs(jobs), count < 1 ? 1 : count);
    if (jobs <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> workers;
    workers.reserve(jobs);
    std::exception_ptr error;
    std::mutex error_mutex;
    for (int w = 0; w < jobs; ++w) {
        workers.emplace_back([&]() {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : workers) t.join();
    if (error) std::rethrow_exception(error);
}

} // namespace tvsc
