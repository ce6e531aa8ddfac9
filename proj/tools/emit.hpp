#pragma once

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "regen/rational.hpp"

namespace regen::cli {

using Json = nlohmann::ordered_json;

inline std::string fmt12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

// One output cell: text, exact rational (emitted as decimal + exact p/q),
// double, integer, or empty (CSV: blank field, JSON: null).
struct Cell {
    std::variant<std::monostate, std::string, Rational, double, long long> v;
    Cell() : v(std::monostate{}) {}
    Cell(const char* s) : v(std::string(s)) {}
    Cell(std::string s) : v(std::move(s)) {}
    Cell(Rational r) : v(std::move(r)) {}
    Cell(double d) : v(d) {}
    Cell(long long i) : v(i) {}
    Cell(long i) : v(static_cast<long long>(i)) {}
    Cell(int i) : v(static_cast<long long>(i)) {}
};

// Tabular emitter. CSV: one column per scalar, rationals expand into a
// decimal column plus an exact "_exact" column. JSON: a "series" array of
// objects under a fixed {"inputs", "series", "meta"} envelope.
class Table {
public:
    explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    void row(std::vector<Cell> cells) { rows_.push_back(std::move(cells)); }
    std::size_t size() const { return rows_.size(); }

    std::string to_csv() const {
        // A column carries an extra _exact field when any row holds a
        // rational there; other rows pad so every line has the same arity.
        std::vector<bool> exact_col(columns_.size(), false);
        for (const auto& r : rows_) {
            for (std::size_t c = 0; c < r.size(); ++c) {
                if (std::holds_alternative<Rational>(r[c].v)) exact_col[c] = true;
            }
        }
        std::string out;
        for (std::size_t c = 0; c < columns_.size(); ++c) {
            if (c) out += ',';
            out += columns_[c];
            if (exact_col[c]) out += ',' + columns_[c] + "_exact";
        }
        out += '\n';
        for (const auto& r : rows_) {
            for (std::size_t c = 0; c < r.size(); ++c) {
                if (c) out += ',';
                if (std::holds_alternative<std::monostate>(r[c].v)) {
                    if (exact_col[c]) out += ',';
                } else if (const auto* s = std::get_if<std::string>(&r[c].v)) {
                    out += csv_escape(*s);
                    if (exact_col[c]) out += ',' + csv_escape(*s);
                } else if (const auto* q = std::get_if<Rational>(&r[c].v)) {
                    out += fmt12(q->to_double()) + ',' + q->to_string();
                } else if (const auto* d = std::get_if<double>(&r[c].v)) {
                    out += fmt12(*d);
                    if (exact_col[c]) out += ',';
                } else {
                    out += std::to_string(std::get<long long>(r[c].v));
                    if (exact_col[c]) out += ',';
                }
            }
            out += '\n';
        }
        return out;
    }

    Json to_json() const {
        Json series = Json::array();
        for (const auto& r : rows_) {
            Json obj = Json::object();
            for (std::size_t c = 0; c < r.size(); ++c) {
                if (std::holds_alternative<std::monostate>(r[c].v)) {
                    obj[columns_[c]] = nullptr;
                } else if (const auto* s = std::get_if<std::string>(&r[c].v)) {
                    obj[columns_[c]] = *s;
                } else if (const auto* q = std::get_if<Rational>(&r[c].v)) {
                    obj[columns_[c]] = q->to_double();
                    obj[columns_[c] + "_exact"] = q->to_string();
                } else if (const auto* d = std::get_if<double>(&r[c].v)) {
                    obj[columns_[c]] = *d;
                } else {
                    obj[columns_[c]] = std::get<long long>(r[c].v);
                }
            }
            series.push_back(std::move(obj));
        }
        return series;
    }

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<Cell>> rows_;
};

// Writes the table (or a pre-built JSON payload) to path or stdout.
inline int write_output(const Table& table, const Json& inputs, const std::string& format,
                        const std::string& out_path, std::uint64_t seed = 0, bool has_seed = false,
                        const char* series_key = "series") {
    std::string payload;
    if (format == "json") {
        Json root;
        root["inputs"] = inputs;
        root[series_key] = table.to_json();
        Json meta;
        meta["version"] = "1.0.0";
        if (has_seed) meta["seed"] = seed;
        root["meta"] = std::move(meta);
        payload = root.dump(2) + "\n";
    } else {
        payload = table.to_csv();
    }
    if (out_path.empty()) {
        std::cout << payload;
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) {
            std::cerr << "error: cannot open output file '" << out_path << "'\n";
            return 1;
        }
        f << payload;
    }
    return 0;
}

}  // namespace regen::cli
