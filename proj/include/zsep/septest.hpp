#pragma once

#include <chrono>

#include "zsep/relations.hpp"
#include "zsep/sequence.hpp"

namespace zsep {

/// The sublattice of Z^k spanned by the exponent vectors of all atoms over
/// the support of length at most d. Atoms suffice as generators because any
/// zero-sum sequence of length at most d factors into atoms of length at
/// most d.
inline IntLattice zero_sum_lattice(const Support& support, i64 d,
                                   const Budget& budget = Budget{}) {
    if (d < 0) throw std::invalid_argument("zero_sum_lattice: d must be >= 0");
    std::vector<std::vector<i64>> gens;
    for (const auto& atom : enumerate_atoms(support, d, budget)) gens.push_back(atom.mult);
    return sublattice_from_generators(support.size(), gens);
}

/// A separating atom does not lie in the lattice of strictly shorter
/// zero-sum sequences.
inline bool is_separating_atom(const SeqVec& a, const Budget& budget = Budget{}) {
    if (!is_atom(a, budget)) return false;
    return !lattice_contains(zero_sum_lattice(a.support, a.length() - 1, budget), a.mult);
}

struct SupportScan {
    i64 best_len = 0;            // 0 when the support carries no separating atom
    std::vector<SeqVec> witnesses;
};

/// Maximal separating-atom length over one support, with every witness of
/// that length. Atoms are enumerated once, then tested per length from the
/// longest down, reusing the shorter atoms as lattice generators.
inline SupportScan max_separating_atom_length(const Support& support,
                                              const Budget& budget = Budget{}) {
    SupportScan scan;
    auto atoms = enumerate_atoms(support, budget.max_atom_len, budget);
    if (atoms.empty()) return scan;
    // atoms are sorted by length ascending
    std::vector<i64> lengths;
    for (const auto& a : atoms)
        if (lengths.empty() || lengths.back() != a.length()) lengths.push_back(a.length());

    for (auto lit = lengths.rbegin(); lit != lengths.rend(); ++lit) {
        i64 len = *lit;
        std::vector<std::vector<i64>> shorter;
        for (const auto& a : atoms) {
            if (a.length() >= len) break;
            shorter.push_back(a.mult);
        }
        IntLattice lat = sublattice_from_generators(support.size(), shorter);
        for (const auto& a : atoms) {
            if (a.length() != len) continue;
            if (!lattice_contains(lat, a.mult)) scan.witnesses.push_back(a);
        }
        if (!scan.witnesses.empty()) {
            scan.best_len = len;
            break;
        }
    }
    return scan;
}

struct BruteOptions {
    Budget budget{};
    bool include_zero = false;
    int parallelism = 1;
};

/// Result of the brute-force separating Noether number search.
struct SeparatingReport {
    AbelianGroup group;
    i64 beta_brute = 0;
    std::vector<SeqVec> witnesses;  // every extremal witness; support = searched G0
    std::chrono::milliseconds elapsed{0};
    i64 supports_scanned = 0;
};

/// Exhausts every support of size 1..rank+1 drawn from the nonzero elements
/// (all elements when include_zero is set) and maximizes the separating-atom
/// length. Supports are indexed in canonical order and scanned by a
/// deterministic parallel partition, so the report does not depend on the
/// schedule. The trivial group reports 1 by convention.
inline SeparatingReport beta_sep_brute(const AbelianGroup& g,
                                       const BruteOptions& opts = BruteOptions{}) {
    auto t0 = std::chrono::steady_clock::now();
    SeparatingReport report;
    report.group = g;
    if (g.is_trivial()) {
        report.beta_brute = 1;
        report.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::steady_clock::now() - t0);
        return report;
    }

    std::vector<GroupElement> pool;
    for (const auto& e : g.enumerate_elements(opts.budget))
        if (opts.include_zero || !e.is_zero()) pool.push_back(e);
    i64 n = static_cast<i64>(pool.size());
    i64 max_size = std::min<i64>(g.helly_dimension(), n);

    std::vector<std::vector<i64>> supports;
    for (i64 size = 1; size <= max_size; ++size)
        for_each_combination(n, size, [&](const std::vector<i64>& idx) {
            supports.push_back(idx);
            if (static_cast<i64>(supports.size()) > opts.budget.max_support_count)
                throw budget_exceeded("beta_sep_brute: support count exceeds budget");
            return true;
        });
    report.supports_scanned = static_cast<i64>(supports.size());

    std::vector<SupportScan> scans(supports.size());
    parallel_for(static_cast<i64>(supports.size()), opts.parallelism, [&](i64 i) {
        std::vector<GroupElement> elems;
        for (i64 j : supports[static_cast<size_t>(i)]) elems.push_back(pool[static_cast<size_t>(j)]);
        Support sup = make_support(g, elems, opts.include_zero);
        scans[static_cast<size_t>(i)] = max_separating_atom_length(sup, opts.budget);
    });

    for (const auto& s : scans) report.beta_brute = std::max(report.beta_brute, s.best_len);
    for (const auto& s : scans)
        if (s.best_len == report.beta_brute)
            for (const auto& w : s.witnesses) report.witnesses.push_back(w);

    report.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - t0);
    return report;
}

}  // namespace zsep
