#pragma once

#include <limits>
#include <map>
#include <memory>
#include <mutex>

#include "zsep/sequence.hpp"

namespace zsep {

inline constexpr i64 kUnreachable = std::numeric_limits<i64>::max();

/// BFS distances from 0 in the directed Cayley graph x -> x + a over a step
/// set. dist is indexed by the mixed-radix element encoding; kUnreachable
/// marks elements outside the submonoid (= subgroup) generated by the steps.
struct WalkTable {
    AbelianGroup group;
    std::vector<GroupElement> steps;
    std::vector<i64> dist;

    i64 dist_of(const GroupElement& g) const {
        return dist[static_cast<size_t>(group.index_of(g))];
    }
    bool generates() const {
        for (i64 d : dist)
            if (d == kUnreachable) return false;
        return true;
    }
    i64 max_dist() const {
        i64 m = 0;
        for (i64 d : dist) m = std::max(m, d);
        return m;
    }
};

namespace detail {

inline WalkTable build_walk_table(const AbelianGroup& g,
                                  const std::vector<GroupElement>& steps) {
    for (const auto& s : steps) g.require(s);
    WalkTable t{g, steps, std::vector<i64>(static_cast<size_t>(g.order()), kUnreachable)};
    std::vector<i64> step_idx;
    for (const auto& s : steps) step_idx.push_back(g.index_of(s));
    std::sort(step_idx.begin(), step_idx.end());
    step_idx.erase(std::unique(step_idx.begin(), step_idx.end()), step_idx.end());

    std::vector<i64> frontier{g.index_of(g.zero())};
    t.dist[static_cast<size_t>(frontier[0])] = 0;
    i64 level = 0;
    while (!frontier.empty()) {
        ++level;
        std::vector<i64> next;
        for (i64 x : frontier)
            for (i64 s : step_idx) {
                i64 y = g.index_of(g.add(g.element_at(x), g.element_at(s)));
                if (t.dist[static_cast<size_t>(y)] == kUnreachable) {
                    t.dist[static_cast<size_t>(y)] = level;
                    next.push_back(y);
                }
            }
        frontier = std::move(next);
    }
    return t;
}

// Memoized walk tables: distances depend only on the group and the step SET,
// and surrogate queries repeat the same sets many times. Inserts are
// idempotent, so duplicated computation between threads is harmless.
inline std::shared_ptr<const WalkTable> walk_table(const AbelianGroup& g,
                                                   const std::vector<GroupElement>& steps) {
    using Key = std::pair<std::vector<i64>, std::vector<i64>>;
    static std::map<Key, std::shared_ptr<const WalkTable>> cache;
    static std::mutex mu;

    std::vector<i64> idx;
    for (const auto& s : steps) {
        g.require(s);
        idx.push_back(g.index_of(s));
    }
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    Key key{g.factors(), idx};
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto table = std::make_shared<const WalkTable>(build_walk_table(g, steps));
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(key, table).first->second;
}

}  // namespace detail

/// Minimal number of terms from `steps` summing to g; kUnreachable if g is
/// outside the subgroup they generate.
inline i64 positive_length(const AbelianGroup& g, const std::vector<GroupElement>& steps,
                           const GroupElement& target) {
    g.require(target);
    return detail::walk_table(g, steps)->dist_of(target);
}

/// max over g in G of the positive length. The steps must generate G.
inline i64 positive_diameter(const AbelianGroup& g,
                             const std::vector<GroupElement>& steps) {
    auto t = detail::walk_table(g, steps);
    if (!t->generates())
        throw std::invalid_argument("positive_diameter: steps do not generate the group");
    return t->max_dist();
}

/// max of positive_diameter over all generating subsets of G. Subsets are
/// scanned in increasing size; 0 never changes a positive length, so only
/// subsets of nonzero elements are visited, and non-generating subsets are
/// recognized by the BFS reach count.
inline i64 absolute_positive_diameter(const AbelianGroup& g,
                                      const Budget& budget = Budget{}) {
    if (g.is_trivial()) return 0;
    i64 order = g.order();
    i64 n = order - 1;
    if (n >= 62 || (i64{1} << n) > budget.max_support_count)
        throw budget_exceeded("absolute_positive_diameter: subset count exceeds budget");

    // index-level addition table shared by all subset scans
    std::vector<i64> add(static_cast<size_t>(order * order));
    for (i64 x = 0; x < order; ++x)
        for (i64 y = 0; y < order; ++y)
            add[static_cast<size_t>(x * order + y)] =
                g.index_of(g.add(g.element_at(x), g.element_at(y)));

    std::vector<i64> dist(static_cast<size_t>(order));
    std::vector<i64> frontier, next;
    std::vector<i64> steps;
    i64 best = 0;
    i64 count = 0;
    for (i64 size = 1; size <= n; ++size) {
        for_each_combination(n, size, [&](const std::vector<i64>& idx) {
            if ((++count & 0x3ff) == 0) budget.check_clock("absolute_positive_diameter");
            steps.clear();
            for (i64 i : idx) steps.push_back(i + 1);  // nonzero element indices
            std::fill(dist.begin(), dist.end(), kUnreachable);
            dist[0] = 0;
            frontier.assign(1, 0);
            i64 reached = 1, level = 0, maxd = 0;
            while (!frontier.empty()) {
                ++level;
                next.clear();
                for (i64 x : frontier)
                    for (i64 s : steps) {
                        i64 y = add[static_cast<size_t>(x * order + s)];
                        if (dist[static_cast<size_t>(y)] == kUnreachable) {
                            dist[static_cast<size_t>(y)] = level;
                            maxd = level;
                            next.push_back(y);
                            ++reached;
                        }
                    }
                frontier.swap(next);
            }
            if (reached == order) best = std::max(best, maxd);
            return true;
        });
    }
    return best;
}

/// True iff |S| equals the positive length of sigma(S) with respect to the
/// full support of S.
inline bool is_geodesic(const SeqVec& s) {
    return s.length() == positive_length(s.support.group, s.support.elems, sigma(s));
}

/// A coefficient vector u with sum u_i = positive length of the target and
/// sum u_i * steps_i = target. Steps may repeat and may include 0. Among all
/// minimal representations the one whose sorted step word is smallest is
/// returned, i.e. coefficients are packed greedily onto the earliest steps.
inline std::vector<i64> min_positive_representation(const AbelianGroup& g,
                                                    const std::vector<GroupElement>& steps,
                                                    const GroupElement& target) {
    g.require(target);
    i64 k = static_cast<i64>(steps.size());
    // suffix[i] = distances using steps[i..k)
    std::vector<std::shared_ptr<const WalkTable>> suffix(static_cast<size_t>(k) + 1);
    for (i64 i = 0; i <= k; ++i)
        suffix[static_cast<size_t>(i)] = detail::walk_table(
            g, std::vector<GroupElement>(steps.begin() + static_cast<std::ptrdiff_t>(i),
                                         steps.end()));
    i64 total = suffix[0]->dist_of(target);
    if (total == kUnreachable)
        throw std::invalid_argument("min_positive_representation: target unreachable");

    std::vector<i64> u(static_cast<size_t>(k), 0);
    GroupElement rest = target;
    i64 remaining = total;
    for (i64 i = 0; i < k; ++i) {
        // Largest c so that the suffix can still finish in exactly
        // remaining - c terms. Any smaller suffix distance would contradict
        // the minimality of `remaining`, so the test is an equality.
        GroupElement probe = rest;
        i64 chosen = 0;
        GroupElement chosen_rest = rest;
        for (i64 c = 0; c <= remaining; ++c) {
            i64 d = suffix[static_cast<size_t>(i) + 1]->dist_of(probe);
            if (d != kUnreachable && d == remaining - c) {
                chosen = c;
                chosen_rest = probe;
            }
            probe = g.sub(probe, steps[static_cast<size_t>(i)]);
        }
        u[static_cast<size_t>(i)] = chosen;
        rest = chosen_rest;
        remaining -= chosen;
    }
    if (remaining != 0 || !rest.is_zero())
        throw std::logic_error("min_positive_representation: reconstruction failed");
    return u;
}

}  // namespace zsep
