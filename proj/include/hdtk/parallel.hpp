#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace hdtk {

// Runs fn(i) for i in [0, n) on up to `jobs` threads. Each index is handled
// exactly once; if any call throws, the exception from the lowest index is
// rethrown after all threads finish, so failures do not depend on scheduling.
template <class Fn>
void parallel_for(std::size_t n, std::size_t jobs, Fn&& fn) {
    jobs = std::max<std::size_t>(1, std::min(jobs, n));
    std::vector<std::exception_ptr> errors(n);
    auto worker = [&](std::size_t start) {
        for (std::size_t i = start; i < n; i += jobs) {
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (jobs == 1) {
        worker(0);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(jobs);
        for (std::size_t t = 0; t < jobs; ++t) {
            threads.emplace_back(worker, t);
        }
        for (auto& t : threads) {
            t.join();
        }
    }
    for (auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

} // namespace hdtk
