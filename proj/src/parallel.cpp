#include "qmmc/parallel.hpp"

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace qmmc {

unsigned effective_threads(unsigned requested) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    return std::clamp(requested, 1u, hw);
}

void parallel_ranges(std::size_t count, unsigned threads,
                     const std::function<void(std::size_t, std::size_t, unsigned)>& fn) {
    if (count == 0) return;
    const unsigned workers =
        static_cast<unsigned>(std::min<std::size_t>(count, std::max(1u, threads)));
    if (workers == 1) {
        fn(0, count, 0);
        return;
    }

    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t first = count * w / workers;
        const std::size_t last = count * (w + 1) / workers;
        pool.emplace_back([&, w, first, last] {
            try {
                fn(first, last, w);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace qmmc
