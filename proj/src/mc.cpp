#include "copoly/mc.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>

namespace copoly {

int default_threads() {
    if (const char* s = std::getenv("COPOLY_THREADS")) {
        const int t = std::atoi(s);
        if (t >= 1) return t;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : (int)hc;
}

std::vector<double> mc_map(long n, const std::function<double(long)>& task, int threads) {
    if (n <= 0) return {};
    if (threads <= 0) threads = default_threads();
    std::vector<double> out(n);
    if (threads == 1 || n == 1) {
        for (long i = 0; i < n; ++i) out[i] = task(i);
        return out;
    }
    std::atomic<long> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    long failed_index = -1;
    auto worker = [&]() {
        for (;;) {
            const long i = next.fetch_add(1);
            if (i >= n) return;
            try {
                out[i] = task(i);
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mu);
                if (!err) {
                    err = std::current_exception();
                    failed_index = i;
                }
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const int nt = (int)std::min<long>(threads, n);
    pool.reserve(nt);
    for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (err) {
        try {
            std::rethrow_exception(err);
        } catch (const std::exception& e) {
            throw std::runtime_error("mc_map: task " + std::to_string(failed_index) +
                                     " failed: " + e.what());
        }
    }
    return out;
}

} // namespace copoly
