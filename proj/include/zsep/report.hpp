#pragma once

#include <sstream>

#include <json.hpp>

#include "zsep/proofkit.hpp"
#include "zsep/theorems.hpp"

namespace zsep {

using ojson = nlohmann::ordered_json;

inline constexpr const char* kSchema = "zsum-sep/1";

/// Parses a semicolon-separated list of residue tuples, e.g. "1,0;0,1;1,1".
inline std::vector<GroupElement> parse_elements(const AbelianGroup& g,
                                                const std::string& text) {
    std::vector<GroupElement> out;
    std::stringstream tuples(text);
    std::string tuple;
    while (std::getline(tuples, tuple, ';')) {
        std::vector<i64> residues;
        std::stringstream coords(tuple);
        std::string coord;
        while (std::getline(coords, coord, ',')) {
            try {
                size_t pos = 0;
                residues.push_back(std::stoll(coord, &pos));
                if (pos != coord.size()) throw std::invalid_argument(coord);
            } catch (const std::exception&) {
                throw parse_error("malformed residue '" + coord + "' in element list");
            }
        }
        if (residues.size() != static_cast<size_t>(g.rank()))
            throw parse_error("element '" + tuple + "' has wrong number of residues for " +
                              g.str());
        out.push_back(g.make(std::move(residues)));
    }
    if (out.empty()) throw parse_error("empty element list");
    return out;
}

inline ojson seqvec_to_json(const SeqVec& s) {
    ojson support = ojson::array();
    for (const auto& e : s.support.elems) support.push_back(e.res);
    return ojson{{"support", support}, {"mult", s.mult}};
}

inline ojson matrix_to_json(const IntMatrix& m) {
    ojson rows = ojson::array();
    for (i64 i = 0; i < m.rows; ++i) rows.push_back(m.row(i));
    return rows;
}

inline ojson lattice_to_json(const IntLattice& l) {
    return ojson{{"ambient_dim", l.ambient}, {"basis", matrix_to_json(l.basis)}};
}

inline ojson separating_report_to_json(const SeparatingReport& r) {
    ojson witnesses = ojson::array();
    for (const auto& w : r.witnesses) witnesses.push_back(seqvec_to_json(w));
    return ojson{{"schema", kSchema},
                 {"group", r.group.str()},
                 {"beta_brute", r.beta_brute},
                 {"witnesses", witnesses},
                 {"supports_scanned", r.supports_scanned},
                 {"elapsed_ms", r.elapsed.count()}};
}

inline ojson formula_report_to_json(const FormulaReport& r) {
    ojson j{{"group", r.group.str()},
            {"rank", r.rank},
            {"s", r.s},
            {"n_s", r.n_s},
            {"p1", r.p1},
            {"T", r.tail},
            {"beta_formula", r.beta_formula},
            {"lower_bound", r.lower}};
    j["half_bound"] = r.half_bound ? ojson(r.half_bound->str()) : ojson(nullptr);
    j["beta_brute"] = r.beta_brute ? ojson(*r.beta_brute) : ojson(nullptr);
    j["match"] = r.match;
    j["corollary_ok"] = r.corollary_ok ? ojson(*r.corollary_ok) : ojson(nullptr);
    j["witness_count"] = r.witness_count;
    return j;
}

inline ojson lemma_verdict_to_json(const LemmaVerdict& v) {
    return ojson{{"lemma", v.lemma},
                 {"group", v.group},
                 {"instances", v.instances},
                 {"failures", v.failures}};
}

inline std::string formula_table_csv(const std::vector<FormulaReport>& rows) {
    std::ostringstream out;
    out << "group,rank,s,n_s,p1,T,beta_formula,lower_bound,half_bound,beta_brute,match,"
           "corollary_ok,witness_count\n";
    for (const auto& r : rows) {
        out << r.group.str() << "," << r.rank << "," << r.s << "," << r.n_s << "," << r.p1
            << "," << r.tail << "," << r.beta_formula << "," << r.lower << ",";
        out << (r.half_bound ? r.half_bound->str() : "");
        out << ",";
        if (r.beta_brute) out << *r.beta_brute;
        out << "," << (r.match ? "true" : "false") << ",";
        if (r.corollary_ok) out << (*r.corollary_ok ? "true" : "false");
        out << "," << r.witness_count << "\n";
    }
    return out.str();
}

inline std::string formula_table_text(const std::vector<FormulaReport>& rows) {
    std::ostringstream out;
    for (const auto& r : rows) {
        out << r.group.str() << ": beta_formula=" << r.beta_formula;
        if (r.beta_brute) out << " beta_brute=" << *r.beta_brute;
        out << " match=" << (r.match ? "yes" : "NO");
        if (r.corollary_ok)
            out << " corollary=" << (*r.corollary_ok ? "ok" : "VIOLATED");
        out << "\n";
    }
    return out.str();
}

inline ojson group_info_json(const AbelianGroup& g) {
    FormulaReport r = formula_report(g);
    ojson j{{"schema", kSchema},
            {"group", g.str()},
            {"factors", g.factors()},
            {"rank", g.rank()},
            {"order", g.order()},
            {"exponent", g.exponent()},
            {"dstar", g.dstar()},
            {"helly_dimension", g.helly_dimension()},
            {"s", r.s},
            {"n_s", r.n_s},
            {"p1", r.p1},
            {"T", r.tail},
            {"beta_formula", r.beta_formula},
            {"lower_bound", r.lower}};
    j["half_bound"] = r.half_bound ? ojson(r.half_bound->str()) : ojson(nullptr);
    return j;
}

}  // namespace zsep
