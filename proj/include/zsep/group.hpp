#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <string>
#include <vector>

#include "zsep/common.hpp"

namespace zsep {

/// An element of a finite abelian group, stored as the tuple of residues
/// against the owning group's invariant factors. Elements order and compare
/// lexicographically; that order is the canonical tie-breaker everywhere.
struct GroupElement {
    std::vector<i64> res;

    auto operator<=>(const GroupElement&) const = default;

    bool is_zero() const {
        return std::all_of(res.begin(), res.end(), [](i64 x) { return x == 0; });
    }

    std::string str() const {
        std::string s = "(";
        for (size_t i = 0; i < res.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(res[i]);
        }
        return s + ")";
    }
};

/// A finite abelian group in invariant-factor form: a chain
/// n_1 | n_2 | ... | n_r with every n_i >= 2. The empty chain is the
/// trivial group. Values are immutable after construction and all
/// operations are pure, so instances are freely shared across threads.
class AbelianGroup {
public:
    AbelianGroup() = default;  // trivial group

    /// Builds the canonical chain for the direct sum of cyclic groups of the
    /// given orders (orders of 1 are dropped). Canonicalization regroups the
    /// prime-power components: the largest invariant factor collects the
    /// largest power of each prime, and so on down.
    static AbelianGroup from_orders(const std::vector<i64>& orders) {
        std::map<i64, std::vector<i64>> prime_powers;  // prime -> exponents, descending
        for (i64 n : orders) {
            if (n < 1) throw parse_error("cyclic order must be >= 1");
            i64 rest = n;
            for (i64 p = 2; p * p <= rest; ++p) {
                if (rest % p != 0) continue;
                i64 e = 0;
                while (rest % p == 0) {
                    rest /= p;
                    ++e;
                }
                prime_powers[p].push_back(e);
            }
            if (rest > 1) prime_powers[rest].push_back(1);
        }
        size_t rank = 0;
        for (auto& [p, exps] : prime_powers) {
            std::sort(exps.begin(), exps.end(), std::greater<>());
            rank = std::max(rank, exps.size());
        }
        std::vector<i64> chain(rank, 1);
        for (auto& [p, exps] : prime_powers) {
            for (size_t t = 0; t < exps.size(); ++t) {
                i64 pw = 1;
                for (i64 e = 0; e < exps[t]; ++e) pw *= p;
                chain[t] *= pw;  // chain[0] = largest factor for now
            }
        }
        std::reverse(chain.begin(), chain.end());
        AbelianGroup g;
        g.factors_ = std::move(chain);
        return g;
    }

    const std::vector<i64>& factors() const { return factors_; }
    i64 rank() const { return static_cast<i64>(factors_.size()); }
    bool is_trivial() const { return factors_.empty(); }

    i64 order() const {
        i64 o = 1;
        for (i64 f : factors_) o *= f;
        return o;
    }

    i64 exponent() const { return factors_.empty() ? 1 : factors_.back(); }

    /// D*(G) = 1 + sum(n_i - 1); equals 1 for the trivial group.
    i64 dstar() const {
        i64 d = 1;
        for (i64 f : factors_) d += f - 1;
        return d;
    }

    /// Helly dimension rank(G) + 1; the support-size cutoff of the search.
    i64 helly_dimension() const { return rank() + 1; }

    /// One-based index s = floor((r+1)/2); 0 for the trivial group.
    i64 middle_index() const { return (rank() + 1) / 2; }

    i64 n_s() const {
        if (is_trivial()) throw std::invalid_argument("n_s undefined for the trivial group");
        return factors_[static_cast<size_t>(middle_index() - 1)];
    }

    /// Sum of the invariant factors strictly above the middle index.
    i64 tail_sum() const {
        i64 t = 0;
        for (i64 j = middle_index(); j < rank(); ++j) t += factors_[static_cast<size_t>(j)];
        return t;
    }

    /// Smallest prime divisor of n_1, found by trial division.
    i64 min_prime() const {
        if (is_trivial()) throw std::invalid_argument("p1 undefined for the trivial group");
        i64 n1 = factors_.front();
        for (i64 p = 2; p * p <= n1; ++p)
            if (n1 % p == 0) return p;
        return n1;
    }

    GroupElement zero() const {
        return GroupElement{std::vector<i64>(factors_.size(), 0)};
    }

    bool valid(const GroupElement& a) const {
        if (a.res.size() != factors_.size()) return false;
        for (size_t i = 0; i < factors_.size(); ++i)
            if (a.res[i] < 0 || a.res[i] >= factors_[i]) return false;
        return true;
    }

    void require(const GroupElement& a) const {
        if (!valid(a)) throw std::invalid_argument("element does not belong to this group");
    }

    GroupElement make(std::vector<i64> residues) const {
        if (residues.size() != factors_.size())
            throw std::invalid_argument("residue tuple has wrong length");
        for (size_t i = 0; i < residues.size(); ++i) {
            residues[i] %= factors_[i];
            if (residues[i] < 0) residues[i] += factors_[i];
        }
        return GroupElement{std::move(residues)};
    }

    GroupElement add(const GroupElement& a, const GroupElement& b) const {
        require(a);
        require(b);
        GroupElement c = a;
        for (size_t i = 0; i < factors_.size(); ++i) {
            c.res[i] += b.res[i];
            if (c.res[i] >= factors_[i]) c.res[i] -= factors_[i];
        }
        return c;
    }

    GroupElement neg(const GroupElement& a) const {
        require(a);
        GroupElement c = a;
        for (size_t i = 0; i < factors_.size(); ++i)
            if (c.res[i] != 0) c.res[i] = factors_[i] - c.res[i];
        return c;
    }

    GroupElement sub(const GroupElement& a, const GroupElement& b) const {
        return add(a, neg(b));
    }

    GroupElement scalar_mul(i64 c, const GroupElement& a) const {
        require(a);
        GroupElement out = a;
        for (size_t i = 0; i < factors_.size(); ++i) {
            i64 v = (c % factors_[i]) * a.res[i] % factors_[i];
            if (v < 0) v += factors_[i];
            out.res[i] = v;
        }
        return out;
    }

    /// Least q >= 1 with q*a = 0: lcm over coordinates of n_i / gcd(a_i, n_i).
    i64 order_of(const GroupElement& a) const {
        require(a);
        i64 o = 1;
        for (size_t i = 0; i < factors_.size(); ++i)
            o = lcm_i64(o, factors_[i] / gcd_i64(a.res[i], factors_[i]));
        return o;
    }

    /// Mixed-radix encoding consistent with lexicographic residue order.
    i64 index_of(const GroupElement& a) const {
        require(a);
        i64 idx = 0;
        for (size_t i = 0; i < factors_.size(); ++i) idx = idx * factors_[i] + a.res[i];
        return idx;
    }

    GroupElement element_at(i64 idx) const {
        GroupElement a{std::vector<i64>(factors_.size(), 0)};
        for (size_t i = factors_.size(); i-- > 0;) {
            a.res[i] = idx % factors_[i];
            idx /= factors_[i];
        }
        return a;
    }

    /// All |G| elements in lexicographic residue order.
    std::vector<GroupElement> enumerate_elements(const Budget& budget = Budget{}) const {
        if (order() > budget.max_support_count)
            throw budget_exceeded("enumerate_elements: group order exceeds budget");
        std::vector<GroupElement> out;
        out.reserve(static_cast<size_t>(order()));
        for (i64 i = 0; i < order(); ++i) out.push_back(element_at(i));
        return out;
    }

    std::string str() const {
        if (factors_.empty()) return "C1";
        std::string s;
        for (size_t i = 0; i < factors_.size(); ++i) {
            if (i) s += "x";
            s += "C" + std::to_string(factors_[i]);
        }
        return s;
    }

    bool operator==(const AbelianGroup& o) const = default;

private:
    std::vector<i64> factors_;
};

/// Parses "C2xC4", "c2 x c4", "2,4", "1", or "" into the canonical group.
inline AbelianGroup parse_group(const std::string& spec) {
    std::string cleaned;
    for (char c : spec)
        if (!std::isspace(static_cast<unsigned char>(c))) cleaned += c;
    if (cleaned.empty()) return AbelianGroup{};
    std::vector<i64> orders;
    std::string token;
    auto flush = [&] {
        if (token.empty()) throw parse_error("empty token in group spec '" + spec + "'");
        std::string digits = token;
        if (digits[0] == 'C' || digits[0] == 'c') digits = digits.substr(1);
        if (digits.empty() ||
            !std::all_of(digits.begin(), digits.end(),
                         [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
            throw parse_error("malformed token '" + token + "' in group spec");
        i64 n = 0;
        for (char c : digits) {
            n = n * 10 + (c - '0');
            if (n > (i64{1} << 40)) throw parse_error("cyclic order out of range");
        }
        if (n < 1) throw parse_error("cyclic order must be >= 1");
        orders.push_back(n);
        token.clear();
    };
    for (char c : cleaned) {
        if (c == 'x' || c == 'X' || c == ',') {
            flush();
        } else {
            token += c;
        }
    }
    flush();
    return AbelianGroup::from_orders(orders);
}

/// Structure of the subgroup nG together with the embedding back into G.
/// Factor i of G contributes C_{n_i / gcd(n, n_i)}; trivial factors drop out.
struct MultipliedSubgroup {
    AbelianGroup sub;                  // canonical chain of nG
    std::vector<GroupElement> gens;    // generator of each surviving factor, inside G

    /// Maps a residue tuple of nG to the corresponding element of G.
    GroupElement embed(const AbelianGroup& parent, const GroupElement& y) const {
        sub.require(y);
        GroupElement out = parent.zero();
        for (size_t j = 0; j < gens.size(); ++j)
            out = parent.add(out, parent.scalar_mul(y.res[j], gens[j]));
        return out;
    }
};

inline MultipliedSubgroup multiplied_subgroup(const AbelianGroup& g, i64 n) {
    if (n < 1) throw std::invalid_argument("multiplied_subgroup: n must be >= 1");
    MultipliedSubgroup out;
    std::vector<i64> surviving;
    for (i64 i = 0; i < g.rank(); ++i) {
        i64 m = g.factors()[static_cast<size_t>(i)];
        i64 d = gcd_i64(n, m);
        if (m / d == 1) continue;
        surviving.push_back(m / d);
        GroupElement gen = g.zero();
        gen.res[static_cast<size_t>(i)] = d;  // d*e_i generates n*(Z/m) = d*(Z/m)
        out.gens.push_back(gen);
    }
    // The quotient chain inherits divisibility from G's chain, so the factors
    // are already canonical and sorted.
    out.sub = AbelianGroup::from_orders(surviving);
    return out;
}

/// Every isomorphism type of abelian group of order 1..max_order, in
/// increasing order and canonical chain form.
inline std::vector<AbelianGroup> all_abelian_groups_up_to(i64 max_order) {
    std::vector<AbelianGroup> out;
    // partitions of e, each part list descending
    std::function<std::vector<std::vector<i64>>(i64, i64)> partitions =
        [&](i64 e, i64 max_part) -> std::vector<std::vector<i64>> {
        if (e == 0) return {{}};
        std::vector<std::vector<i64>> res;
        for (i64 first = std::min(e, max_part); first >= 1; --first)
            for (auto& rest : partitions(e - first, first)) {
                std::vector<i64> p{first};
                p.insert(p.end(), rest.begin(), rest.end());
                res.push_back(std::move(p));
            }
        return res;
    };
    for (i64 m = 1; m <= max_order; ++m) {
        std::vector<std::pair<i64, i64>> fact;  // (prime, exponent)
        i64 rest = m;
        for (i64 p = 2; p * p <= rest; ++p)
            if (rest % p == 0) {
                i64 e = 0;
                while (rest % p == 0) {
                    rest /= p;
                    ++e;
                }
                fact.emplace_back(p, e);
            }
        if (rest > 1) fact.emplace_back(rest, 1);
        std::vector<std::vector<i64>> combos{{}};  // flat lists of prime powers
        for (auto [p, e] : fact) {
            std::vector<std::vector<i64>> next;
            for (const auto& part : partitions(e, e)) {
                for (const auto& base : combos) {
                    std::vector<i64> ext = base;
                    for (i64 a : part) {
                        i64 pw = 1;
                        for (i64 t = 0; t < a; ++t) pw *= p;
                        ext.push_back(pw);
                    }
                    next.push_back(std::move(ext));
                }
            }
            combos = std::move(next);
        }
        for (const auto& orders : combos) out.push_back(AbelianGroup::from_orders(orders));
    }
    return out;
}

}  // namespace zsep
