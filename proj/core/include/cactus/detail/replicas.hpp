#pragma once

#include <algorithm>
#include <atomic>
#include <optional>
#include <thread>

namespace cactus {

template <class Result>
std::vector<Result> run_replicas(std::uint64_t seed, int count, int workers,
                                 const std::function<Result(int, Rng&)>& job) {
    std::vector<std::optional<Result>> slots(static_cast<std::size_t>(std::max(count, 0)));
    std::atomic<int> next{0};
    std::mutex failure_lock;
    int failed_index = count;
    std::exception_ptr failure;

    auto worker = [&] {
        for (int i = next++; i < count; i = next++) {
            try {
                Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
                slots[i].emplace(job(i, rng));
            } catch (...) {
                std::lock_guard<std::mutex> hold(failure_lock);
                if (i < failed_index) {
                    failed_index = i;
                    failure = std::current_exception();
                }
            }
        }
    };
    const int threads = std::clamp(workers, 1, std::max(count, 1));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
    std::vector<Result> out;
    out.reserve(slots.size());
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

}  // namespace cactus
