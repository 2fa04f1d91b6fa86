// Command-line front end: every engine operation behind one binary with
// machine-readable output. Exit codes: 0 success, 1 usage or parse error,
// 2 verification failure, 3 budget exhaustion.

#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "zsep/config.hpp"
#include "zsep/report.hpp"

namespace {

using namespace zsep;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerifyFailed = 2;
constexpr int kExitBudget = 3;

std::vector<std::string> resolve_catalog(const std::string& name) {
    if (name == "default") return default_catalog();
    std::ifstream in(name);
    if (!in) throw parse_error("cannot open catalog file '" + name + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw parse_error("catalog: " + std::string(e.what()));
    }
    if (!j.is_object() || !j.contains("groups") || !j["groups"].is_array())
        throw parse_error("catalog file must be {\"groups\": [\"C2\", ...]}");
    std::vector<std::string> out;
    for (const auto& s : j["groups"]) out.push_back(s.get<std::string>());
    if (out.empty()) throw parse_error("catalog is empty");
    return out;
}

void emit(const ojson& j) { std::cout << j.dump(2) << "\n"; }

int cmd_group_info(const std::string& spec, const Config& cfg) {
    AbelianGroup g = parse_group(spec);
    if (cfg.format == OutputFormat::json) {
        emit(group_info_json(g));
    } else {
        FormulaReport r = formula_report(g);
        std::cout << g.str() << ": rank=" << g.rank() << " order=" << g.order()
                  << " dstar=" << g.dstar() << " beta_sep=" << r.beta_formula << "\n";
    }
    return kExitOk;
}

int cmd_betasep(const std::string& spec, bool brute, const Config& cfg) {
    AbelianGroup g = parse_group(spec);
    if (!brute) {
        emit(ojson{{"schema", kSchema},
                   {"group", g.str()},
                   {"beta_formula", beta_sep_formula(g)}});
        return kExitOk;
    }
    BruteOptions opts{cfg.budget, cfg.include_zero, cfg.parallelism};
    SeparatingReport report = beta_sep_brute(g, opts);
    emit(separating_report_to_json(report));
    return kExitOk;
}

int cmd_davenport(const std::string& spec, const Config& cfg) {
    AbelianGroup g = parse_group(spec);
    DavenportResult d = davenport_brute(g, cfg.budget);
    ojson j{{"schema", kSchema},
            {"group", g.str()},
            {"davenport_brute", d.value},
            {"dstar", g.dstar()}};
    j["witness"] = d.witness ? seqvec_to_json(*d.witness) : ojson(nullptr);
    emit(j);
    return kExitOk;
}

int cmd_diameter(const std::string& spec, const std::string& steps_text, bool exhaustive,
                 const Config& cfg) {
    AbelianGroup g = parse_group(spec);
    ojson j{{"schema", kSchema}, {"group", g.str()}};
    if (exhaustive) {
        i64 d = absolute_positive_diameter(g, cfg.budget);
        j["absolute_positive_diameter"] = d;
        j["dstar_minus_one"] = g.dstar() - 1;
    } else {
        if (steps_text.empty())
            throw parse_error("diameter: pass --steps or --exhaustive");
        auto steps = parse_elements(g, steps_text);
        j["positive_diameter"] = positive_diameter(g, steps);
    }
    emit(j);
    return kExitOk;
}

int cmd_atoms(const std::string& spec, const std::string& support_text, i64 max_len,
              const Config& cfg) {
    AbelianGroup g = parse_group(spec);
    Support support = make_support(g, parse_elements(g, support_text), cfg.include_zero);
    auto atoms = enumerate_atoms(support, max_len, cfg.budget);
    ojson list = ojson::array();
    for (const auto& a : atoms) list.push_back(seqvec_to_json(a));
    emit(ojson{{"schema", kSchema},
               {"group", g.str()},
               {"max_len", max_len},
               {"count", atoms.size()},
               {"atoms", list}});
    return kExitOk;
}

int cmd_septest(const std::string& spec, const std::string& support_text,
                const std::string& mult_text, const Config& cfg) {
    AbelianGroup g = parse_group(spec);
    Support support = make_support(g, parse_elements(g, support_text), cfg.include_zero);
    std::vector<i64> mult;
    std::stringstream ss(mult_text);
    std::string tok;
    while (std::getline(ss, tok, ','))
        try {
            mult.push_back(std::stoll(tok));
        } catch (const std::exception&) {
            throw parse_error("malformed multiplicity '" + tok + "'");
        }
    SeqVec s = make_seq(support, std::move(mult));
    bool atom = is_atom(s, cfg.budget);
    bool separating = atom && is_separating_atom(s, cfg.budget);
    ojson j{{"schema", kSchema},
            {"group", g.str()},
            {"sequence", seqvec_to_json(s)},
            {"length", s.length()},
            {"is_atom", atom},
            {"is_separating_atom", separating}};
    // the lattice the membership test ran against, for inspection
    if (s.length() > 0)
        j["shorter_zero_sum_lattice"] =
            lattice_to_json(zero_sum_lattice(support, s.length() - 1, cfg.budget));
    emit(j);
    return kExitOk;
}

// Deterministic element tuples for the short-generation rows; the stream
// depends only on the group, never on thread timing.
std::vector<std::vector<GroupElement>> short_generation_tuples(const AbelianGroup& g,
                                                               int count) {
    std::mt19937_64 rng(0x5eed0000ull + static_cast<unsigned long long>(g.order()));
    std::vector<std::vector<GroupElement>> out;
    for (int t = 0; t < count; ++t) {
        i64 k = 1 + static_cast<i64>(rng() % 5);
        std::vector<GroupElement> elems;
        for (i64 i = 0; i < k; ++i)
            elems.push_back(g.element_at(static_cast<i64>(rng() % static_cast<unsigned long long>(g.order()))));
        out.push_back(std::move(elems));
    }
    return out;
}

int cmd_verify(const std::string& what, const Config& cfg) {
    auto specs = resolve_catalog(cfg.catalog);
    std::vector<AbelianGroup> groups;
    for (const auto& s : specs) groups.push_back(parse_group(s));

    bool failed = false;
    if (what == "theorem" || what == "corollary") {
        std::vector<FormulaReport> rows(groups.size());
        BruteOptions opts{cfg.budget, cfg.include_zero, 1};
        parallel_for(static_cast<i64>(groups.size()), cfg.parallelism, [&](i64 i) {
            const AbelianGroup& g = groups[static_cast<size_t>(i)];
            rows[static_cast<size_t>(i)] =
                (what == "theorem") ? verify_theorem(g, opts) : verify_corollary(g, opts);
        });
        for (const auto& r : rows) {
            if (!r.match) failed = true;
            if (r.corollary_ok && !*r.corollary_ok) failed = true;
        }
        if (cfg.format == OutputFormat::json) {
            ojson list = ojson::array();
            for (const auto& r : rows) list.push_back(formula_report_to_json(r));
            emit(ojson{{"schema", kSchema}, {"mode", what}, {"rows", list}});
        } else if (cfg.format == OutputFormat::csv) {
            std::cout << formula_table_csv(rows);
        } else {
            std::cout << formula_table_text(rows);
        }
    } else if (what == "lemmas") {
        std::vector<std::vector<LemmaVerdict>> per_group(groups.size());
        parallel_for(static_cast<i64>(groups.size()), cfg.parallelism, [&](i64 i) {
            const AbelianGroup& g = groups[static_cast<size_t>(i)];
            BruteOptions opts{cfg.budget, cfg.include_zero, 1};
            LemmaHarnessOptions hopts;
            hopts.budget = cfg.budget;
            auto rows = run_lemma_harness(beta_sep_brute(g, opts), hopts);
            LemmaVerdict sg{"uniform-short-generation", g.str(), 0, 0};
            i64 beta_h = beta_sep_formula(g);
            for (const auto& tuple : short_generation_tuples(g, 25)) {
                ++sg.instances;
                if (!short_generation_check(g, tuple, beta_h, cfg.budget)) ++sg.failures;
            }
            rows.push_back(sg);
            per_group[static_cast<size_t>(i)] = std::move(rows);
        });
        ojson list = ojson::array();
        for (const auto& rows : per_group)
            for (const auto& v : rows) {
                if (v.failures > 0) failed = true;
                list.push_back(lemma_verdict_to_json(v));
            }
        if (cfg.format == OutputFormat::json) {
            emit(ojson{{"schema", kSchema}, {"mode", "lemmas"}, {"rows", list}});
        } else {
            for (const auto& rows : per_group)
                for (const auto& v : rows)
                    std::cout << v.group << " " << v.lemma << ": " << (v.instances - v.failures)
                              << "/" << v.instances << "\n";
        }
    } else {
        throw parse_error("verify: expected theorem, corollary, or lemmas");
    }
    return failed ? kExitVerifyFailed : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"separating Noether numbers of finite abelian groups: exact formulas, "
                 "brute-force search, and lemma verification"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    std::string config_path;
    std::string format_flag;
    int parallelism_flag = 0;
    bool include_zero_flag = false;
    i64 max_atom_len_flag = 0, max_support_count_flag = 0, wall_clock_flag = 0;
    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--format", format_flag, "output format: json|csv|text");
    app.add_option("--parallelism", parallelism_flag, "worker thread count");
    app.add_flag("--include-zero", include_zero_flag, "allow 0 in supports");
    app.add_option("--max-atom-len", max_atom_len_flag, "budget: maximal sequence length");
    app.add_option("--max-support-count", max_support_count_flag,
                   "budget: maximal number of supports scanned");
    app.add_option("--wall-clock-ms", wall_clock_flag, "budget: wall clock in ms");

    auto* group_cmd = app.add_subcommand("group", "group structure commands");
    auto* info_cmd = group_cmd->add_subcommand("info", "structural constants of a group");
    std::string info_spec;
    info_cmd->add_option("spec", info_spec, "group spec, e.g. C2xC4 or 2,4")->required();

    auto* betasep_cmd = app.add_subcommand("betasep", "separating Noether number");
    std::string betasep_spec;
    bool betasep_brute = false, betasep_formula = false;
    betasep_cmd->add_option("spec", betasep_spec)->required();
    auto* bflag = betasep_cmd->add_flag("--brute", betasep_brute, "exhaustive search");
    auto* fflag = betasep_cmd->add_flag("--formula", betasep_formula, "closed form");
    bflag->excludes(fflag);

    auto* davenport_cmd = app.add_subcommand("davenport", "brute-force Davenport constant");
    std::string davenport_spec;
    davenport_cmd->add_option("spec", davenport_spec)->required();

    auto* diameter_cmd = app.add_subcommand("diameter", "positive Cayley diameter");
    std::string diameter_spec, diameter_steps;
    bool diameter_exhaustive = false;
    diameter_cmd->add_option("spec", diameter_spec)->required();
    diameter_cmd->add_option("--steps", diameter_steps,
                             "step set as residue tuples, e.g. \"1;3\" or \"1,0;0,1\"");
    diameter_cmd->add_flag("--exhaustive", diameter_exhaustive,
                           "maximize over all generating subsets");

    auto* atoms_cmd = app.add_subcommand("atoms", "enumerate atoms over a support");
    std::string atoms_spec, atoms_support;
    i64 atoms_max_len = 0;
    atoms_cmd->add_option("spec", atoms_spec)->required();
    atoms_cmd->add_option("--support", atoms_support, "support elements")->required();
    atoms_cmd->add_option("--max-len", atoms_max_len, "length cutoff")->required();

    auto* septest_cmd = app.add_subcommand("septest", "separating-atom test for one sequence");
    std::string septest_spec, septest_support, septest_mult;
    septest_cmd->add_option("spec", septest_spec)->required();
    septest_cmd->add_option("--support", septest_support, "support elements")->required();
    septest_cmd->add_option("--mult", septest_mult, "multiplicities, e.g. 1,1,1")->required();

    auto* verify_cmd = app.add_subcommand("verify", "verification harness over a catalog");
    std::string verify_what, verify_catalog;
    verify_cmd->add_option("what", verify_what, "theorem|corollary|lemmas")->required();
    verify_cmd->add_option("--catalog", verify_catalog, "catalog file or 'default'");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        Config cfg;
        if (!config_path.empty()) cfg = load_config(config_path);
        if (!format_flag.empty()) cfg.format = parse_format(format_flag);
        if (parallelism_flag > 0) cfg.parallelism = parallelism_flag;
        if (include_zero_flag) cfg.include_zero = true;
        if (max_atom_len_flag > 0) cfg.budget.max_atom_len = max_atom_len_flag;
        if (max_support_count_flag > 0) cfg.budget.max_support_count = max_support_count_flag;
        if (wall_clock_flag > 0) cfg.budget.wall_clock_ms = wall_clock_flag;
        if (!verify_catalog.empty()) cfg.catalog = verify_catalog;
        cfg.validate();
        cfg.budget.started = std::chrono::steady_clock::now();

        if (*info_cmd) return cmd_group_info(info_spec, cfg);
        if (*betasep_cmd) {
            if (!betasep_brute && !betasep_formula)
                throw parse_error("betasep: pass --brute or --formula");
            return cmd_betasep(betasep_spec, betasep_brute, cfg);
        }
        if (*davenport_cmd) return cmd_davenport(davenport_spec, cfg);
        if (*diameter_cmd)
            return cmd_diameter(diameter_spec, diameter_steps, diameter_exhaustive, cfg);
        if (*atoms_cmd) return cmd_atoms(atoms_spec, atoms_support, atoms_max_len, cfg);
        if (*septest_cmd) return cmd_septest(septest_spec, septest_support, septest_mult, cfg);
        if (*verify_cmd) return cmd_verify(verify_what, cfg);
        throw parse_error("no subcommand given");
    } catch (const budget_exceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kExitBudget;
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
