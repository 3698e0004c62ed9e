#include "randlink/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <mutex>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "randlink/errors.hpp"

namespace randlink {

namespace {
thread_local bool inside_parallel_region = false;
}

int thread_budget() {
    const char* env = std::getenv("RANDLINK_THREADS");
    if (env && *env) {
        int value = 0;
        auto [ptr, ec] = std::from_chars(env, env + std::strlen(env), value);
        if (ec != std::errc{} || *ptr != '\0' || value < 1)
            throw usage_error("RANDLINK_THREADS must be a positive integer, got '" + std::string(env) + "'");
        return value;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(int n, const std::function<void(int)>& body) {
    if (n <= 0) return;
    int budget = thread_budget();
    int workers = std::min(budget, n);
    if (workers <= 1 || inside_parallel_region) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }

    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto run = [&] {
        inside_parallel_region = true;
        for (;;) {
            int i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= n || failed.load(std::memory_order_relaxed)) break;
            try {
                body(i);
            } catch (...) {
                {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
                failed.store(true, std::memory_order_relaxed);
                break;
            }
        }
        inside_parallel_region = false;
    };

    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers) - 1);
    for (int w = 1; w < workers; ++w) pool.emplace_back(run);
    run();
    for (auto& t : pool) t.join();

    if (first_error) std::rethrow_exception(first_error);
}

} // namespace randlink
