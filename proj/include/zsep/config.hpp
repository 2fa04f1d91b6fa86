#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "zsep/common.hpp"

namespace zsep {

enum class OutputFormat { json, csv, text };

inline OutputFormat parse_format(const std::string& s) {
    if (s == "json") return OutputFormat::json;
    if (s == "csv") return OutputFormat::csv;
    if (s == "text") return OutputFormat::text;
    throw parse_error("unknown output format '" + s + "'");
}

/// Run-wide settings. Unknown keys in a config file are rejected outright;
/// budgets must be positive.
struct Config {
    Budget budget{};
    int parallelism = 1;
    OutputFormat format = OutputFormat::json;
    bool include_zero = false;
    std::string catalog = "default";

    void validate() const {
        if (budget.max_atom_len <= 0 || budget.max_support_count <= 0 ||
            budget.wall_clock_ms <= 0)
            throw parse_error("config: all budgets must be positive");
        if (parallelism <= 0) throw parse_error("config: parallelism must be positive");
    }
};

inline Config config_from_json(const nlohmann::json& j) {
    Config c;
    for (const auto& [key, value] : j.items()) {
        if (key == "budgets") {
            for (const auto& [bk, bv] : value.items()) {
                if (bk == "max_atom_len")
                    c.budget.max_atom_len = bv.get<i64>();
                else if (bk == "max_support_count")
                    c.budget.max_support_count = bv.get<i64>();
                else if (bk == "wall_clock_ms")
                    c.budget.wall_clock_ms = bv.get<i64>();
                else
                    throw parse_error("config: unknown budget key '" + bk + "'");
            }
        } else if (key == "parallelism") {
            c.parallelism = value.get<int>();
        } else if (key == "format") {
            c.format = parse_format(value.get<std::string>());
        } else if (key == "include_zero") {
            c.include_zero = value.get<bool>();
        } else if (key == "catalog") {
            c.catalog = value.get<std::string>();
        } else {
            throw parse_error("config: unknown key '" + key + "'");
        }
    }
    c.validate();
    return c;
}

inline Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open config file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw parse_error("config: " + std::string(e.what()));
    }
    return config_from_json(j);
}

}  // namespace zsep
