#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace zsep {

using i64 = std::int64_t;

/// Thrown when a search or enumeration exceeds its configured budget.
/// Budget exhaustion is always a hard failure, never silent truncation.
class budget_exceeded : public std::runtime_error {
public:
    explicit budget_exceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown on malformed user input (group specs, element literals, config files).
class parse_error : public std::invalid_argument {
public:
    explicit parse_error(const std::string& what) : std::invalid_argument(what) {}
};

/// Enumeration limits shared by the search engines. Exceeding any limit
/// throws budget_exceeded.
struct Budget {
    i64 max_atom_len = 64;
    i64 max_support_count = 1'000'000;
    i64 wall_clock_ms = 900'000;

    std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();

    void check_clock(const char* where) const {
        auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - started)
                           .count();
        if (elapsed > wall_clock_ms)
            throw budget_exceeded(std::string(where) + ": wall clock budget exhausted");
    }
};

/// Runs fn(i) for i in [0, n). With degree > 1 the index range is split into
/// contiguous blocks, one thread per block; fn must only write to slots owned
/// by its own index so results are identical for any degree.
inline void parallel_for(i64 n, int degree, const std::function<void(i64)>& fn) {
    if (n <= 0) return;
    if (degree <= 1 || n == 1) {
        for (i64 i = 0; i < n; ++i) fn(i);
        return;
    }
    int workers = static_cast<int>(std::min<i64>(degree, n));
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(workers);
    i64 chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        threads.emplace_back([&, w] {
            try {
                i64 lo = w * chunk;
                i64 hi = std::min(n, lo + chunk);
                for (i64 i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

/// Visits all k-subsets of [0, n) in lexicographic order.
/// Returns false early if fn returns false.
inline bool for_each_combination(i64 n, i64 k,
                                 const std::function<bool(const std::vector<i64>&)>& fn) {
    if (k < 0 || k > n) return true;
    std::vector<i64> idx(static_cast<size_t>(k));
    for (i64 i = 0; i < k; ++i) idx[static_cast<size_t>(i)] = i;
    while (true) {
        if (!fn(idx)) return false;
        i64 i = k - 1;
        while (i >= 0 && idx[static_cast<size_t>(i)] == n - k + i) --i;
        if (i < 0) return true;
        ++idx[static_cast<size_t>(i)];
        for (i64 j = i + 1; j < k; ++j)
            idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
    }
}

inline i64 gcd_i64(i64 a, i64 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        i64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline i64 lcm_i64(i64 a, i64 b) {
    if (a == 0 || b == 0) return 0;
    return a / gcd_i64(a, b) * b;
}

}  // namespace zsep
