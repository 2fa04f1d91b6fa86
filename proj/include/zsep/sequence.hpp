#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "zsep/group.hpp"

namespace zsep {

/// An ordered set of distinct group elements: the ground set a sequence
/// draws its terms from. Elements are kept in canonical (lexicographic)
/// order; 0 is excluded unless explicitly permitted.
struct Support {
    AbelianGroup group;
    std::vector<GroupElement> elems;

    i64 size() const { return static_cast<i64>(elems.size()); }

    auto operator<=>(const Support&) const = default;
};

inline Support make_support(const AbelianGroup& g, std::vector<GroupElement> elems,
                            bool include_zero = false) {
    for (const auto& e : elems) {
        g.require(e);
        if (!include_zero && e.is_zero())
            throw std::invalid_argument("support may not contain 0");
    }
    std::sort(elems.begin(), elems.end());
    if (std::adjacent_find(elems.begin(), elems.end()) != elems.end())
        throw std::invalid_argument("support elements must be distinct");
    return Support{g, std::move(elems)};
}

/// A sequence over a support, stored as the vector of multiplicities.
struct SeqVec {
    Support support;
    std::vector<i64> mult;

    i64 length() const {
        i64 n = 0;
        for (i64 m : mult) n += m;
        return n;
    }

    /// Number of distinct elements actually present.
    i64 supp_size() const {
        i64 n = 0;
        for (i64 m : mult) n += (m > 0);
        return n;
    }

    bool empty() const { return length() == 0; }

    auto operator<=>(const SeqVec&) const = default;

    std::string str() const {
        if (empty()) return "(empty)";
        std::string s;
        for (size_t i = 0; i < mult.size(); ++i) {
            if (mult[i] == 0) continue;
            if (!s.empty()) s += "*";
            s += support.elems[i].str();
            if (mult[i] > 1) s += "^" + std::to_string(mult[i]);
        }
        return s;
    }
};

inline SeqVec make_seq(Support support, std::vector<i64> mult) {
    if (mult.size() != support.elems.size())
        throw std::invalid_argument("multiplicity vector length mismatch");
    for (i64 m : mult)
        if (m < 0) throw std::invalid_argument("multiplicities must be nonnegative");
    return SeqVec{std::move(support), std::move(mult)};
}

inline GroupElement sigma(const SeqVec& s) {
    GroupElement acc = s.support.group.zero();
    for (size_t i = 0; i < s.mult.size(); ++i)
        acc = s.support.group.add(acc,
                                  s.support.group.scalar_mul(s.mult[i], s.support.elems[i]));
    return acc;
}

namespace detail {

// Bitset over the mixed-radix element encoding; one bit per group element.
struct SumSet {
    i64 n = 0;
    std::vector<std::uint64_t> bits;

    explicit SumSet(i64 order) : n(order), bits(static_cast<size_t>((order + 63) / 64), 0) {}
    bool test(i64 i) const { return (bits[static_cast<size_t>(i >> 6)] >> (i & 63)) & 1; }
    void set(i64 i) { bits[static_cast<size_t>(i >> 6)] |= std::uint64_t{1} << (i & 63); }
};

// Precomputed tables for one support: element indices, orders, and the
// translation permutation x -> x + g_j for each support element.
struct SupportCtx {
    const AbelianGroup* g;
    i64 order;
    std::vector<i64> elem_idx;
    std::vector<i64> elem_ord;
    std::vector<std::vector<i64>> add_perm;
    std::vector<i64> pos_of_idx;  // group index -> support position, -1 if absent
    std::vector<i64> neg_of;      // group index -> index of the negative

    explicit SupportCtx(const Support& s) : g(&s.group), order(s.group.order()) {
        i64 k = s.size();
        elem_idx.resize(static_cast<size_t>(k));
        elem_ord.resize(static_cast<size_t>(k));
        add_perm.resize(static_cast<size_t>(k));
        pos_of_idx.assign(static_cast<size_t>(order), -1);
        neg_of.resize(static_cast<size_t>(order));
        for (i64 x = 0; x < order; ++x)
            neg_of[static_cast<size_t>(x)] = g->index_of(g->neg(g->element_at(x)));
        for (i64 j = 0; j < k; ++j) {
            const GroupElement& e = s.elems[static_cast<size_t>(j)];
            elem_idx[static_cast<size_t>(j)] = g->index_of(e);
            elem_ord[static_cast<size_t>(j)] = g->order_of(e);
            pos_of_idx[static_cast<size_t>(elem_idx[static_cast<size_t>(j)])] = j;
            auto& perm = add_perm[static_cast<size_t>(j)];
            perm.resize(static_cast<size_t>(order));
            for (i64 x = 0; x < order; ++x)
                perm[static_cast<size_t>(x)] = g->index_of(g->add(g->element_at(x), e));
        }
    }

    // sums' = sums + (sums + g_j) + {g_j}
    void add_copy(SumSet& sums, i64 j) const {
        const auto& perm = add_perm[static_cast<size_t>(j)];
        SumSet shifted(order);
        for (i64 w = 0; w < static_cast<i64>(sums.bits.size()); ++w) {
            std::uint64_t word = sums.bits[static_cast<size_t>(w)];
            while (word) {
                int b = __builtin_ctzll(word);
                word &= word - 1;
                shifted.set(perm[static_cast<size_t>((w << 6) + b)]);
            }
        }
        for (size_t w = 0; w < sums.bits.size(); ++w) sums.bits[w] |= shifted.bits[w];
        sums.set(elem_idx[static_cast<size_t>(j)]);
    }

    // Rebuilds the subsequence-sum set of the multiset `mult`; returns false
    // early (leaving `sums` partial) if 0 ever becomes reachable.
    bool zero_sum_free(const std::vector<i64>& mult, SumSet& sums) const {
        sums = SumSet(order);
        for (size_t j = 0; j < mult.size(); ++j)
            for (i64 c = 0; c < mult[j]; ++c) {
                add_copy(sums, static_cast<i64>(j));
                if (sums.test(0)) return false;
            }
        return true;
    }
};

}  // namespace detail

/// The set of sums of nonempty subsequences, in canonical element order.
/// Incremental dynamic programming: at most |G| reachable states.
inline std::vector<GroupElement> subsequence_sums(const SeqVec& s,
                                                  const Budget& budget = Budget{}) {
    if (s.length() > budget.max_atom_len)
        throw budget_exceeded("subsequence_sums: sequence length exceeds budget");
    detail::SupportCtx ctx(s.support);
    detail::SumSet sums(ctx.order);
    for (size_t j = 0; j < s.mult.size(); ++j)
        for (i64 c = 0; c < s.mult[j]; ++c) ctx.add_copy(sums, static_cast<i64>(j));
    std::vector<GroupElement> out;
    for (i64 x = 0; x < ctx.order; ++x)
        if (sums.test(x)) out.push_back(s.support.group.element_at(x));
    return out;
}

inline bool is_zero_sum(const SeqVec& s) { return sigma(s).is_zero(); }

inline bool is_zero_sum_free(const SeqVec& s, const Budget& budget = Budget{}) {
    if (s.length() > budget.max_atom_len)
        throw budget_exceeded("is_zero_sum_free: sequence length exceeds budget");
    detail::SupportCtx ctx(s.support);
    detail::SumSet sums(ctx.order);
    return ctx.zero_sum_free(s.mult, sums);
}

/// An atom is a nonempty zero-sum sequence none of whose single-element
/// deletions reaches 0 again; deleting one copy suffices because any proper
/// zero-sum subsequence misses at least one term.
inline bool is_atom(const SeqVec& s, const Budget& budget = Budget{}) {
    if (s.empty() || !is_zero_sum(s)) return false;
    detail::SupportCtx ctx(s.support);
    detail::SumSet scratch(ctx.order);
    std::vector<i64> m = s.mult;
    for (size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        --m[i];
        bool ok = ctx.zero_sum_free(m, scratch);
        ++m[i];
        if (!ok) return false;
    }
    (void)budget;
    return true;
}

/// All atoms over the support of length at most max_len, each exactly once,
/// sorted by (length, multiplicity vector). Multiplicities of a multi-element
/// atom never reach the element order, so the DFS over zero-sum-free prefixes
/// plus one closing term is exhaustive; singleton atoms g^{ord(g)} are added
/// separately.
inline std::vector<SeqVec> enumerate_atoms(const Support& support, i64 max_len,
                                           const Budget& budget = Budget{}) {
    if (max_len > budget.max_atom_len)
        throw budget_exceeded("enumerate_atoms: max_len exceeds budget");
    std::vector<SeqVec> out;
    i64 k = support.size();
    if (k == 0 || max_len <= 0) return out;
    detail::SupportCtx ctx(support);

    for (i64 j = 0; j < k; ++j)
        if (ctx.elem_ord[static_cast<size_t>(j)] <= max_len) {
            std::vector<i64> m(static_cast<size_t>(k), 0);
            m[static_cast<size_t>(j)] = ctx.elem_ord[static_cast<size_t>(j)];
            out.push_back(SeqVec{support, std::move(m)});
        }

    std::vector<i64> mult(static_cast<size_t>(k), 0);
    std::vector<i64> caps(static_cast<size_t>(k));
    for (i64 j = 0; j < k; ++j)
        caps[static_cast<size_t>(j)] = ctx.elem_ord[static_cast<size_t>(j)] - 1;

    detail::SumSet scratch(ctx.order);
    i64 nodes = 0;

    // P is the current zero-sum-free prefix; `last` its highest used index.
    // An atom closes P with one copy of -sigma(P) at an index >= last, which
    // makes each atom reachable exactly once (P = atom minus its top term).
    std::function<void(i64, i64, i64, i64, const detail::SumSet&)> dfs =
        [&](i64 last, i64 len, i64 sigma_idx, i64 distinct, const detail::SumSet& sums) {
            if (((++nodes) & 0xfff) == 0) budget.check_clock("enumerate_atoms");
            // closing step
            i64 neg_idx = ctx.neg_of[static_cast<size_t>(sigma_idx)];
            i64 j = ctx.pos_of_idx[static_cast<size_t>(neg_idx)];
            if (len >= 1 && j >= last && j >= 0 &&
                mult[static_cast<size_t>(j)] + 1 <= caps[static_cast<size_t>(j)] &&
                len + 1 <= max_len &&
                !(distinct == 1 && mult[static_cast<size_t>(j)] > 0)) {
                ++mult[static_cast<size_t>(j)];
                bool atom = true;
                for (i64 i = 0; i < k && atom; ++i) {
                    if (i == j || mult[static_cast<size_t>(i)] == 0) continue;
                    --mult[static_cast<size_t>(i)];
                    atom = ctx.zero_sum_free(mult, scratch);
                    ++mult[static_cast<size_t>(i)];
                }
                if (atom) out.push_back(SeqVec{support, mult});
                --mult[static_cast<size_t>(j)];
            }
            // extensions
            if (len + 2 > max_len) return;
            for (i64 i = std::max<i64>(last, 0); i < k; ++i) {
                if (mult[static_cast<size_t>(i)] + 1 > caps[static_cast<size_t>(i)]) continue;
                i64 neg_gi = ctx.neg_of[static_cast<size_t>(ctx.elem_idx[static_cast<size_t>(i)])];
                if (sums.test(neg_gi)) continue;  // would create a zero-sum inside P
                detail::SumSet next = sums;
                ctx.add_copy(next, i);
                i64 d2 = distinct + (mult[static_cast<size_t>(i)] == 0 ? 1 : 0);
                ++mult[static_cast<size_t>(i)];
                dfs(i, len + 1, ctx.add_perm[static_cast<size_t>(i)][static_cast<size_t>(sigma_idx)],
                    d2, next);
                --mult[static_cast<size_t>(i)];
            }
        };
    dfs(-1, 0, ctx.g->index_of(ctx.g->zero()), 0, detail::SumSet(ctx.order));

    std::sort(out.begin(), out.end(), [](const SeqVec& a, const SeqVec& b) {
        i64 la = a.length(), lb = b.length();
        if (la != lb) return la < lb;
        return a.mult < b.mult;
    });
    return out;
}

struct DavenportResult {
    i64 value = 1;
    std::optional<SeqVec> witness;  // an atom of maximal length; empty for C1
};

/// Brute-force Davenport constant: one plus the length of the longest
/// zero-sum-free sequence over the nonzero elements. The witness atom is the
/// first maximal zero-sum-free sequence in canonical DFS order, closed by the
/// negative of its sum.
inline DavenportResult davenport_brute(const AbelianGroup& g,
                                       const Budget& budget = Budget{}) {
    DavenportResult res;
    if (g.is_trivial()) return res;
    if (g.order() > budget.max_support_count)
        throw budget_exceeded("davenport_brute: group order exceeds budget");

    std::vector<GroupElement> elems;
    for (const auto& e : g.enumerate_elements(budget))
        if (!e.is_zero()) elems.push_back(e);
    Support support = make_support(g, elems);
    detail::SupportCtx ctx(support);
    i64 k = support.size();

    std::vector<i64> mult(static_cast<size_t>(k), 0);
    i64 best_len = -1;
    std::vector<i64> best_mult;
    i64 best_sigma_idx = 0;
    i64 nodes = 0;

    std::function<void(i64, i64, i64, const detail::SumSet&)> dfs =
        [&](i64 last, i64 len, i64 sigma_idx, const detail::SumSet& sums) {
            if (((++nodes) & 0xfff) == 0) budget.check_clock("davenport_brute");
            if (len > best_len) {
                best_len = len;
                best_mult = mult;
                best_sigma_idx = sigma_idx;
            }
            if (len + 1 > budget.max_atom_len)
                throw budget_exceeded("davenport_brute: sequence length exceeds budget");
            for (i64 i = std::max<i64>(last, 0); i < k; ++i) {
                i64 neg_gi = ctx.neg_of[static_cast<size_t>(ctx.elem_idx[static_cast<size_t>(i)])];
                if (sums.test(neg_gi)) continue;
                detail::SumSet next = sums;
                ctx.add_copy(next, i);
                ++mult[static_cast<size_t>(i)];
                dfs(i, len + 1,
                    ctx.add_perm[static_cast<size_t>(i)][static_cast<size_t>(sigma_idx)], next);
                --mult[static_cast<size_t>(i)];
            }
        };
    dfs(-1, 0, ctx.g->index_of(ctx.g->zero()), detail::SumSet(ctx.order));

    res.value = best_len + 1;
    if (best_len >= 0) {
        // close the longest zero-sum-free sequence with the negative of its sum
        i64 close_idx = ctx.neg_of[static_cast<size_t>(best_sigma_idx)];
        i64 j = ctx.pos_of_idx[static_cast<size_t>(close_idx)];
        std::vector<i64> m = best_mult;
        if (best_len == 0) {
            // empty zero-sum-free sequence only happens for |G| = 1, handled above
            throw std::logic_error("davenport_brute: empty maximal sequence");
        }
        ++m[static_cast<size_t>(j)];
        res.witness = SeqVec{support, std::move(m)};
    }
    return res;
}

}  // namespace zsep
