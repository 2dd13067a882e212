// Config-file schema and table output for the command-line driver: JSON
// parsing of network/reward/sim/sweep blocks, locale-independent CSV with
// 12 significant digits, and JSON result emission.
#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "pouw/markov.hpp"
#include "pouw/params.hpp"
#include "pouw/reward.hpp"
#include "pouw/sim.hpp"

namespace pouw {

using Json = nlohmann::json;

/// Raised for malformed or out-of-range configuration; the CLI maps it to
/// exit code 2 before any output file is opened.
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

namespace io_detail {

inline const Json& require(const Json& j, const std::string& key, const std::string& ctx) {
    auto it = j.find(key);
    if (it == j.end()) throw ConfigError(ctx + ": missing field '" + key + "'");
    return *it;
}

inline double number(const Json& j, const std::string& key, const std::string& ctx) {
    const Json& v = require(j, key, ctx);
    if (!v.is_number()) throw ConfigError(ctx + "." + key + ": expected a number");
    return v.get<double>();
}

inline double number_or(const Json& j, const std::string& key, double fallback) {
    auto it = j.find(key);
    return it == j.end() ? fallback : it->get<double>();
}

}  // namespace io_detail

inline RewardFunction reward_from_json(const Json& j, const std::string& ctx = "reward") {
    using io_detail::number;
    using io_detail::number_or;
    if (!j.is_object()) throw ConfigError(ctx + ": expected an object");
    const std::string kind = io_detail::require(j, "kind", ctx).get<std::string>();
    try {
        if (kind == "constant") return RewardFunction::constant(number(j, "b", ctx), number(j, "s_m", ctx));
        if (kind == "linear")
            return RewardFunction::linear(number(j, "k", ctx), number(j, "b", ctx), number(j, "s_m", ctx));
        if (kind == "power")
            return RewardFunction::power(number(j, "c", ctx), number_or(j, "e", 0.5),
                                         number(j, "b", ctx), number(j, "s_m", ctx));
        if (kind == "custom_table") {
            std::vector<std::pair<double, double>> pts;
            for (const auto& p : io_detail::require(j, "points", ctx))
                pts.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
            return RewardFunction::custom(std::move(pts));
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(ctx + ": " + e.what());
    }
    throw ConfigError(ctx + ".kind: unknown reward kind '" + kind + "'");
}

inline Json reward_to_json(const RewardFunction& r) {
    Json j;
    switch (r.kind) {
        case RewardKind::Constant: j["kind"] = "constant"; break;
        case RewardKind::Linear:
            j["kind"] = "linear";
            j["k"] = r.k;
            break;
        case RewardKind::Power:
            j["kind"] = "power";
            j["c"] = r.c;
            j["e"] = r.e;
            break;
        case RewardKind::CustomTable: {
            j["kind"] = "custom_table";
            Json pts = Json::array();
            for (const auto& p : r.table) pts.push_back({p.first, p.second});
            j["points"] = pts;
            break;
        }
    }
    j["b"] = r.b;
    j["s_m"] = r.s_m;
    return j;
}

inline StrategyProfile profile_from_string(const std::string& s) {
    if (s == "honest" || s == "honest_honest") return StrategyProfile::HonestHonest;
    if (s == "fork_steal") return StrategyProfile::ForkSteal;
    if (s == "ignore_fork") return StrategyProfile::IgnoreFork;
    throw ConfigError("unknown strategy profile '" + s +
                      "' (expected honest, fork_steal or ignore_fork)");
}

inline std::string profile_to_string(StrategyProfile p) {
    switch (p) {
        case StrategyProfile::HonestHonest: return "honest";
        case StrategyProfile::ForkSteal: return "fork_steal";
        case StrategyProfile::IgnoreFork: return "ignore_fork";
    }
    return "?";
}

inline TieRule tie_rule_from_string(const std::string& s) {
    if (s == "coin") return TieRule::Coin;
    if (s == "party1") return TieRule::Party1;
    if (s == "party2") return TieRule::Party2;
    throw ConfigError("unknown tie rule '" + s + "' (expected coin, party1 or party2)");
}

inline EtaBudget eta_budget_from_json(const Json& j, const std::string& ctx) {
    EtaBudget b;
    if (j.is_null()) return b;
    const std::string mode = io_detail::require(j, "mode", ctx).get<std::string>();
    if (mode == "fix_sum")
        b.mode = EtaBudget::Mode::FixSum;
    else if (mode == "fix_q0")
        b.mode = EtaBudget::Mode::FixQ0;
    else
        throw ConfigError(ctx + ".mode: expected fix_sum or fix_q0, got '" + mode + "'");
    b.value = io_detail::number(j, "value", ctx);
    if (!(b.value > 0.0)) throw ConfigError(ctx + ".value must be positive");
    return b;
}

/// Sweep axis: either an inclusive arithmetic range {from, to, step} or an
/// explicit {values: [...]} list.
inline std::vector<double> axis_from_json(const Json& j, const std::string& ctx) {
    if (j.contains("values")) {
        std::vector<double> g;
        for (const auto& v : j["values"]) {
            if (!v.is_number()) throw ConfigError(ctx + ".values: expected numbers");
            g.push_back(v.get<double>());
        }
        if (g.empty()) throw ConfigError(ctx + ".values must not be empty");
        return g;
    }
    const double from = io_detail::number(j, "from", ctx);
    const double to = io_detail::number(j, "to", ctx);
    const double step = io_detail::number(j, "step", ctx);
    if (!(step > 0.0)) throw ConfigError(ctx + ".step must be positive");
    if (to < from) throw ConfigError(ctx + ": 'to' must be >= 'from'");
    std::vector<double> g;
    for (int i = 0;; ++i) {
        const double v = from + i * step;
        if (v > to + step * 1e-9) break;
        g.push_back(v);
    }
    return g;
}

inline Json load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const Json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config root must be a JSON object");
    return j;
}

/// Locale-independent decimal formatting, 12 significant digits.
inline std::string format_number(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
    if (ec != std::errc{}) return "nan";
    return std::string(buf, ptr);
}

/// One value of a result table cell.
struct Cell {
    enum class Kind { Number, Integer, Text, Flag } kind = Kind::Number;
    double num = 0;
    std::int64_t integer = 0;
    std::string text;

    static Cell number(double v) { return Cell{Kind::Number, v, 0, {}}; }
    static Cell integer_of(std::int64_t v) { return Cell{Kind::Integer, 0, v, {}}; }
    static Cell text_of(std::string s) { return Cell{Kind::Text, 0, 0, std::move(s)}; }
    static Cell flag(bool b) { return Cell{Kind::Flag, 0, b ? 1 : 0, {}}; }
};

/// Column-ordered table with a header row; serializes to CSV or a JSON
/// array of row objects. Ordering is fixed by construction so repeated runs
/// with the same config are byte-identical.
class ResultTable {
  public:
    explicit ResultTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    void add_row(std::vector<Cell> row) {
        if (row.size() != columns_.size())
            throw std::logic_error("row width does not match table header");
        rows_.push_back(std::move(row));
    }

    void write_csv(std::ostream& os) const {
        for (std::size_t c = 0; c < columns_.size(); ++c)
            os << (c ? "," : "") << columns_[c];
        os << "\n";
        for (const auto& row : rows_) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                if (c) os << ",";
                write_cell_csv(os, row[c]);
            }
            os << "\n";
        }
    }

    void write_json(std::ostream& os) const {
        Json arr = Json::array();
        for (const auto& row : rows_) {
            Json obj = Json::object();
            for (std::size_t c = 0; c < row.size(); ++c) obj[columns_[c]] = cell_json(row[c]);
            arr.push_back(obj);
        }
        os << arr.dump(2) << "\n";
    }

    const std::vector<std::string>& columns() const { return columns_; }
    std::size_t row_count() const { return rows_.size(); }

  private:
    static void write_cell_csv(std::ostream& os, const Cell& cell) {
        switch (cell.kind) {
            case Cell::Kind::Number: os << format_number(cell.num); break;
            case Cell::Kind::Integer: os << cell.integer; break;
            case Cell::Kind::Text: os << cell.text; break;
            case Cell::Kind::Flag: os << cell.integer; break;
        }
    }

    static Json cell_json(const Cell& cell) {
        switch (cell.kind) {
            case Cell::Kind::Number:
                if (std::isnan(cell.num)) return nullptr;
                return cell.num;
            case Cell::Kind::Integer: return cell.integer;
            case Cell::Kind::Text: return cell.text;
            case Cell::Kind::Flag: return cell.integer != 0;
        }
        return nullptr;
    }

    std::vector<std::string> columns_;
    std::vector<std::vector<Cell>> rows_;
};

}  // namespace pouw
