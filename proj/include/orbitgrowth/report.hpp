#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "orbitgrowth/beta.hpp"
#include "orbitgrowth/critical.hpp"
#include "orbitgrowth/errors.hpp"
#include "orbitgrowth/growth.hpp"
#include "orbitgrowth/int_types.hpp"
#include "orbitgrowth/orbit.hpp"
#include "orbitgrowth/p1_map.hpp"
#include "orbitgrowth/p1_point.hpp"
#include "orbitgrowth/semigroup.hpp"
#include "orbitgrowth/version.hpp"

namespace orbitgrowth {

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

/// Parsed run configuration.  Flat key = value text; `#` starts a comment,
/// lists are bracketed and separated by commas and/or whitespace:
///
///     mode        = orbit-census
///     map.1.num   = [1, 0, 0]        # X^2
///     map.1.den   = [1]
///     map.2.num   = [1, 0, 0, 0]     # X^3
///     map.2.den   = [1]
///     point       = [2, 1]
///     X_grid      = [6.9314718, 69.314718]
///
/// Map coefficient lists are highest-degree-first; `map.k.num` / `map.k.den`
/// indices must be contiguous starting at 1.  Unknown keys and duplicate keys
/// are rejected with a line/field diagnostic.
struct SystemConfig {
    std::vector<std::pair<std::vector<BigInt>, std::vector<BigInt>>> maps;
    std::optional<std::pair<BigInt, BigInt>> point;
    std::optional<WeightVector> degrees;
    std::optional<double> X;
    std::vector<double> X_grid;
    std::optional<double> s;
    std::optional<std::int64_t> N;
    std::optional<std::int64_t> L;
    std::optional<std::int64_t> n_max;
    std::optional<std::int64_t> budget;
    std::optional<double> tol;
    std::optional<std::string> mode;

    bool operator==(const SystemConfig&) const = default;

    /// Canonical text form.  Parsing the result reproduces this object
    /// field-for-field (reals are printed with 17 significant digits, enough
    /// to round-trip an IEEE double exactly).
    std::string canonical() const;
};

/// Names accepted for `mode` and as CLI subcommands, in display order.
inline const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = {
        "rho",       "count-words", "constants", "classify", "crit-check",
        "preperiodic", "orbit-census", "beta",     "predict",  "theta"};
    return names;
}

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

[[noreturn]] inline void bad_field(std::size_t line, const std::string& field,
                                   const std::string& what) {
    throw parse_error(line, field, what);
}

inline BigInt parse_bigint(std::size_t line, const std::string& field,
                           const std::string& tok) {
    if (tok.empty()) bad_field(line, field, "empty integer token");
    std::size_t i = (tok[0] == '-' || tok[0] == '+') ? 1 : 0;
    if (i == tok.size()) bad_field(line, field, "sign without digits: '" + tok + "'");
    for (; i < tok.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(tok[i])))
            bad_field(line, field, "not an integer: '" + tok + "'");
    return BigInt(tok);
}

inline std::int64_t parse_i64(std::size_t line, const std::string& field,
                              const std::string& tok) {
    errno = 0;
    char* end = nullptr;
    const long long v = std::strtoll(tok.c_str(), &end, 10);
    if (errno != 0 || end == tok.c_str() || *end != '\0')
        bad_field(line, field, "not an integer: '" + tok + "'");
    return static_cast<std::int64_t>(v);
}

inline double parse_real(std::size_t line, const std::string& field,
                         const std::string& tok) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (errno != 0 || end == tok.c_str() || *end != '\0' || !std::isfinite(v))
        bad_field(line, field, "not a finite real: '" + tok + "'");
    return v;
}

/// Splits a bracketed list "[a, b c]" into raw tokens.  Commas and whitespace
/// both separate items.
inline std::vector<std::string> split_list(std::size_t line, const std::string& field,
                                           const std::string& value) {
    if (value.size() < 2 || value.front() != '[' || value.back() != ']')
        bad_field(line, field, "expected a bracketed list, got '" + value + "'");
    std::string inner = value.substr(1, value.size() - 2);
    for (char& c : inner)
        if (c == ',') c = ' ';
    std::istringstream iss(inner);
    std::vector<std::string> toks;
    std::string t;
    while (iss >> t) toks.push_back(t);
    return toks;
}

inline std::string fmt_real17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string fmt_real12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

template <typename T>
std::string fmt_list(const std::vector<T>& xs) {
    std::ostringstream oss;
    oss << "[";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) oss << ", ";
        oss << xs[i];
    }
    oss << "]";
    return oss.str();
}

inline std::string fmt_real_list(const std::vector<double>& xs) {
    std::ostringstream oss;
    oss << "[";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) oss << ", ";
        oss << fmt_real17(xs[i]);
    }
    oss << "]";
    return oss.str();
}

}  // namespace detail

/// Parses configuration text.  Throws parse_error with a 1-based line number
/// and the offending field name.
inline SystemConfig parse_config(const std::string& text) {
    SystemConfig cfg;
    // map index -> (num coeffs, den coeffs); either side may arrive first.
    std::map<std::size_t,
             std::pair<std::optional<std::vector<BigInt>>, std::optional<std::vector<BigInt>>>>
        map_parts;
    std::set<std::string> seen;

    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = detail::trim(raw);
        if (line.empty()) continue;

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            detail::bad_field(lineno, line, "expected 'key = value'");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        if (key.empty()) detail::bad_field(lineno, "", "missing key before '='");
        if (value.empty()) detail::bad_field(lineno, key, "missing value");
        if (!seen.insert(key).second)
            detail::bad_field(lineno, key, "duplicate key");

        if (key.rfind("map.", 0) == 0) {
            // map.<k>.num or map.<k>.den
            const std::size_t dot = key.find('.', 4);
            if (dot == std::string::npos)
                detail::bad_field(lineno, key, "expected map.<k>.num or map.<k>.den");
            const std::string idx_s = key.substr(4, dot - 4);
            const std::string part = key.substr(dot + 1);
            std::int64_t idx = detail::parse_i64(lineno, key, idx_s);
            if (idx < 1) detail::bad_field(lineno, key, "map index must be >= 1");
            if (part != "num" && part != "den")
                detail::bad_field(lineno, key, "expected map.<k>.num or map.<k>.den");
            std::vector<BigInt> coeffs;
            for (const std::string& t : detail::split_list(lineno, key, value))
                coeffs.push_back(detail::parse_bigint(lineno, key, t));
            if (coeffs.empty()) detail::bad_field(lineno, key, "empty coefficient list");
            auto& slot = map_parts[static_cast<std::size_t>(idx)];
            (part == "num" ? slot.first : slot.second) = std::move(coeffs);
            continue;
        }

        if (key == "point") {
            const auto toks = detail::split_list(lineno, key, value);
            if (toks.size() != 2)
                detail::bad_field(lineno, key, "point needs exactly two integers [x, y]");
            cfg.point = {detail::parse_bigint(lineno, key, toks[0]),
                         detail::parse_bigint(lineno, key, toks[1])};
        } else if (key == "degrees") {
            WeightVector d;
            for (const std::string& t : detail::split_list(lineno, key, value)) {
                const std::int64_t v = detail::parse_i64(lineno, key, t);
                if (v < 2) detail::bad_field(lineno, key, "degrees must be >= 2");
                d.push_back(static_cast<std::uint64_t>(v));
            }
            if (d.empty()) detail::bad_field(lineno, key, "empty degree list");
            cfg.degrees = std::move(d);
        } else if (key == "X") {
            cfg.X = detail::parse_real(lineno, key, value);
        } else if (key == "X_grid") {
            for (const std::string& t : detail::split_list(lineno, key, value))
                cfg.X_grid.push_back(detail::parse_real(lineno, key, t));
            if (cfg.X_grid.empty()) detail::bad_field(lineno, key, "empty grid");
        } else if (key == "s") {
            cfg.s = detail::parse_real(lineno, key, value);
        } else if (key == "tol") {
            cfg.tol = detail::parse_real(lineno, key, value);
        } else if (key == "N") {
            cfg.N = detail::parse_i64(lineno, key, value);
        } else if (key == "L") {
            cfg.L = detail::parse_i64(lineno, key, value);
        } else if (key == "n_max") {
            cfg.n_max = detail::parse_i64(lineno, key, value);
        } else if (key == "budget") {
            cfg.budget = detail::parse_i64(lineno, key, value);
        } else if (key == "mode") {
            const auto& names = command_names();
            if (std::find(names.begin(), names.end(), value) == names.end())
                detail::bad_field(lineno, key, "unknown mode '" + value + "'");
            cfg.mode = value;
        } else {
            detail::bad_field(lineno, key, "unknown key");
        }
    }

    if (!map_parts.empty()) {
        std::size_t expect = 1;
        for (auto& [idx, parts] : map_parts) {
            if (idx != expect)
                detail::bad_field(0, "map." + std::to_string(expect),
                                  "map indices must be contiguous from 1");
            if (!parts.first)
                detail::bad_field(0, "map." + std::to_string(idx) + ".num", "missing");
            if (!parts.second)
                detail::bad_field(0, "map." + std::to_string(idx) + ".den", "missing");
            cfg.maps.emplace_back(std::move(*parts.first), std::move(*parts.second));
            ++expect;
        }
    }
    if (cfg.X && !cfg.X_grid.empty())
        detail::bad_field(0, "X", "give either X or X_grid, not both");
    return cfg;
}

inline std::string SystemConfig::canonical() const {
    std::ostringstream oss;
    if (mode) oss << "mode = " << *mode << "\n";
    if (degrees) oss << "degrees = " << detail::fmt_list(*degrees) << "\n";
    for (std::size_t k = 0; k < maps.size(); ++k) {
        oss << "map." << (k + 1) << ".num = " << detail::fmt_list(maps[k].first) << "\n";
        oss << "map." << (k + 1) << ".den = " << detail::fmt_list(maps[k].second) << "\n";
    }
    if (point) oss << "point = [" << point->first << ", " << point->second << "]\n";
    if (X) oss << "X = " << detail::fmt_real17(*X) << "\n";
    if (!X_grid.empty()) oss << "X_grid = " << detail::fmt_real_list(X_grid) << "\n";
    if (s) oss << "s = " << detail::fmt_real17(*s) << "\n";
    if (N) oss << "N = " << *N << "\n";
    if (L) oss << "L = " << *L << "\n";
    if (n_max) oss << "n_max = " << *n_max << "\n";
    if (budget) oss << "budget = " << *budget << "\n";
    if (tol) oss << "tol = " << detail::fmt_real17(*tol) << "\n";
    return oss.str();
}

// ---------------------------------------------------------------------------
// Report structure and emission
// ---------------------------------------------------------------------------

/// One table cell.  `text` is the final rendered form (reals already at 12
/// significant digits), `kind` controls quoting in JSON lines.
struct Cell {
    enum Kind { Int, Real, Text, Bool, Empty } kind = Empty;
    std::string text;

    static Cell integer(const std::string& v) { return {Int, v}; }
    static Cell integer(std::int64_t v) { return {Int, std::to_string(v)}; }
    static Cell integer(const BigInt& v) { return {Int, v.str()}; }
    static Cell real(double v) {
        if (!std::isfinite(v)) return {Empty, ""};
        return {Real, detail::fmt_real12(v)};
    }
    static Cell str(std::string v) { return {Text, std::move(v)}; }
    static Cell boolean(bool v) { return {Bool, v ? "true" : "false"}; }
    static Cell empty() { return {Empty, ""}; }

    bool operator==(const Cell&) const = default;
};

/// Result of one pipeline run: a fixed-schema table plus structured warnings.
/// `budget_exhausted` marks partial results (the CLI maps it to exit code 3).
struct Report {
    std::string command;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::pair<std::string, std::string>> warnings;  // (code, detail)
    std::string config_echo;
    bool budget_exhausted = false;
};

namespace detail {

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

inline std::string json_escape(const std::string& s) {
    std::string out = "\"";
    for (unsigned char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\b': out += "\\b"; break;
            case '\f': out += "\\f"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (c < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += static_cast<char>(c);
                }
        }
    }
    out += "\"";
    return out;
}

inline std::string json_value(const Cell& c) {
    switch (c.kind) {
        case Cell::Int:
        case Cell::Real:
        case Cell::Bool: return c.text;
        case Cell::Text: return json_escape(c.text);
        case Cell::Empty: return "null";
    }
    return "null";
}

inline std::vector<std::string> config_lines(const std::string& echo) {
    std::vector<std::string> lines;
    std::istringstream iss(echo);
    std::string l;
    while (std::getline(iss, l))
        if (!l.empty()) lines.push_back(l);
    return lines;
}

}  // namespace detail

/// CSV emission.  Header row is always present; every data line carries a
/// `record` discriminator (`row` or `warning`) so warnings are structured,
/// not prose.  Output is byte-identical across runs for identical input.
inline void emit_csv(const Report& r, std::ostream& out) {
    out << "# orbitgrowth " << ORBITGROWTH_VERSION << "\n";
    out << "# command: " << r.command << "\n";
    for (const std::string& line : detail::config_lines(r.config_echo))
        out << "# config: " << line << "\n";
    out << "record";
    for (const std::string& c : r.columns) out << "," << detail::csv_escape(c);
    out << ",code,detail\n";
    for (const auto& row : r.rows) {
        out << "row";
        for (const Cell& c : row) out << "," << detail::csv_escape(c.text);
        out << ",,\n";
    }
    for (const auto& [code, det] : r.warnings) {
        out << "warning";
        for (std::size_t i = 0; i < r.columns.size(); ++i) out << ",";
        out << "," << detail::csv_escape(code) << "," << detail::csv_escape(det) << "\n";
    }
}

/// JSON-lines emission: a `meta` record first, then one object per table row
/// and per warning.  Keys are sorted within each object; reals carry 12
/// significant digits.  Byte-identical across runs for identical input.
inline void emit_jsonl(const Report& r, std::ostream& out) {
    // Meta record: keys already in sorted order.
    out << "{\"command\":" << detail::json_escape(r.command)
        << ",\"config\":" << detail::json_escape(r.config_echo)
        << ",\"record\":\"meta\""
        << ",\"version\":" << detail::json_escape(ORBITGROWTH_VERSION) << "}\n";
    for (const auto& row : r.rows) {
        std::map<std::string, std::string> obj;
        for (std::size_t i = 0; i < r.columns.size() && i < row.size(); ++i)
            obj[r.columns[i]] = detail::json_value(row[i]);
        obj["record"] = "\"row\"";
        out << "{";
        bool first = true;
        for (const auto& [k, v] : obj) {
            if (!first) out << ",";
            first = false;
            out << detail::json_escape(k) << ":" << v;
        }
        out << "}\n";
    }
    for (const auto& [code, det] : r.warnings) {
        out << "{\"code\":" << detail::json_escape(code)
            << ",\"detail\":" << detail::json_escape(det)
            << ",\"record\":\"warning\"}\n";
    }
}

// ---------------------------------------------------------------------------
// Pipelines
// ---------------------------------------------------------------------------

namespace detail {

inline SemigroupSystem build_system(const SystemConfig& cfg) {
    if (cfg.maps.empty())
        bad_field(0, "map.1.num", "this command needs at least one map");
    std::vector<RationalMapQ> maps;
    maps.reserve(cfg.maps.size());
    for (std::size_t k = 0; k < cfg.maps.size(); ++k) {
        try {
            maps.push_back(RationalMapQ::from_coeff_lists(cfg.maps[k].first,
                                                          cfg.maps[k].second));
        } catch (const invalid_input_error& e) {
            bad_field(0, "map." + std::to_string(k + 1), e.what());
        }
    }
    try {
        return SemigroupSystem(std::move(maps));
    } catch (const invalid_input_error& e) {
        bad_field(0, "map.1", e.what());
    }
}

inline ProjPointQ build_point(const SystemConfig& cfg) {
    if (!cfg.point) bad_field(0, "point", "this command needs a base point");
    try {
        return ProjPointQ(cfg.point->first, cfg.point->second);
    } catch (const invalid_input_error& e) {
        bad_field(0, "point", e.what());
    }
}

inline WeightVector effective_degrees(const SystemConfig& cfg) {
    if (cfg.degrees) return *cfg.degrees;
    if (!cfg.maps.empty()) return build_system(cfg).degrees();
    bad_field(0, "degrees", "this command needs degrees (or maps to take them from)");
}

inline std::vector<double> effective_grid(const SystemConfig& cfg) {
    if (!cfg.X_grid.empty()) return cfg.X_grid;
    if (cfg.X) return {*cfg.X};
    bad_field(0, "X", "this command needs X or X_grid");
}

inline CensusOptions census_options(const SystemConfig& cfg) {
    CensusOptions opts;
    if (cfg.budget && *cfg.budget > 0)
        opts.node_budget = static_cast<std::size_t>(*cfg.budget);
    return opts;
}

inline std::size_t beta_budget(const SystemConfig& cfg) {
    if (cfg.budget && *cfg.budget > 0) return static_cast<std::size_t>(*cfg.budget);
    return 2000000;
}

inline std::int64_t integral_cutoff(double x) {
    const double r = std::nearbyint(x);
    require(std::isfinite(x) && std::abs(x - r) < 1e-9,
            "count-words: X must be an integer cutoff");
    return static_cast<std::int64_t>(r);
}

// --- individual pipelines --------------------------------------------------

inline Report run_rho(const SystemConfig& cfg) {
    Report r;
    r.columns = {"degrees", "rho", "residual"};
    const WeightVector d = effective_degrees(cfg);
    const GrowthExponent g = solve_rho(d, cfg.tol.value_or(1e-12));
    r.rows.push_back({Cell::str(fmt_list(d)), Cell::real(g.rho), Cell::real(g.residual)});
    return r;
}

inline Report run_count_words(const SystemConfig& cfg) {
    Report r;
    r.columns = {"X", "count"};
    const WeightVector d = effective_degrees(cfg);
    for (const double x : effective_grid(cfg)) {
        const std::int64_t cutoff = integral_cutoff(x);
        try {
            const BigInt n = count_exact(d, cutoff);
            r.rows.push_back({Cell::integer(cutoff), Cell::integer(n)});
        } catch (const resource_limit_error& e) {
            r.warnings.emplace_back("budget-exhausted", e.what());
            r.budget_exhausted = true;
            break;
        }
    }
    return r;
}

inline Report run_constants(const SystemConfig& cfg) {
    Report r;
    r.columns = {"degrees", "classification", "rho", "constant", "theta", "base"};
    const WeightVector d = effective_degrees(cfg);
    const CyclicClassification cls = classify(d);
    if (cls.cyclic && d.size() >= 2) {
        const CyclicGrowth cg = cyclic_growth(d);
        r.rows.push_back({Cell::str(fmt_list(d)), Cell::str("cyclic"),
                          Cell::real(cg.rho), Cell::real(cg.C), Cell::real(cg.theta),
                          Cell::integer(static_cast<std::int64_t>(cls.base))});
    } else if (cls.cyclic) {
        r.rows.push_back({Cell::str(fmt_list(d)), Cell::str("cyclic"), Cell::empty(),
                          Cell::empty(), Cell::empty(),
                          Cell::integer(static_cast<std::int64_t>(cls.base))});
        r.warnings.emplace_back("rho-needs-two-generators",
                                "growth is linear for a single generator; no "
                                "exponential constant exists");
    } else {
        const GrowthExponent g = solve_rho(d, cfg.tol.value_or(1e-12));
        r.rows.push_back({Cell::str(fmt_list(d)), Cell::str("acyclic"),
                          Cell::real(g.rho), Cell::real(acyclic_constant(d, g)),
                          Cell::empty(), Cell::empty()});
    }
    return r;
}

inline Report run_classify(const SystemConfig& cfg) {
    Report r;
    r.columns = {"degrees", "cyclic", "base", "exponents"};
    const WeightVector d = effective_degrees(cfg);
    const CyclicClassification cls = classify(d);
    if (cls.cyclic) {
        std::vector<std::uint64_t> exps(cls.exponents.begin(), cls.exponents.end());
        r.rows.push_back({Cell::str(fmt_list(d)), Cell::boolean(true),
                          Cell::integer(static_cast<std::int64_t>(cls.base)),
                          Cell::str(fmt_list(exps))});
    } else {
        r.rows.push_back({Cell::str(fmt_list(d)), Cell::boolean(false), Cell::empty(),
                          Cell::empty()});
    }
    return r;
}

inline Report run_crit_check(const SystemConfig& cfg) {
    Report r;
    r.columns = {"kind", "subject", "degree", "simple", "separate", "degree_ok",
                 "generic"};
    const SemigroupSystem S = build_system(cfg);
    const std::size_t n = S.maps().size();
    std::vector<CriticalData> data;
    data.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        data.push_back(critical_values(S.maps()[k]));
        r.rows.push_back({Cell::str("map"), Cell::str(std::to_string(k + 1)),
                          Cell::integer(static_cast<std::int64_t>(S.maps()[k].degree())),
                          Cell::boolean(data.back().simple), Cell::empty(),
                          Cell::boolean(S.maps()[k].degree() >= 4), Cell::empty()});
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            r.rows.push_back(
                {Cell::str("pair"),
                 Cell::str(std::to_string(i + 1) + "." + std::to_string(j + 1)),
                 Cell::empty(), Cell::empty(),
                 Cell::boolean(are_critically_separate(S.maps()[i], S.maps()[j])),
                 Cell::empty(), Cell::empty()});
    if (n >= 2) {
        const GenericSetReport gs = check_generic_set(S.maps());
        r.rows.push_back({Cell::str("set"), Cell::str("all"), Cell::empty(),
                          Cell::empty(), Cell::empty(), Cell::empty(),
                          Cell::boolean(gs.generic)});
    } else {
        r.warnings.emplace_back("generic-set-needs-two",
                                "the generic-set test applies to systems of at "
                                "least two maps");
    }
    return r;
}

inline Report run_preperiodic(const SystemConfig& cfg) {
    Report r;
    r.columns = {"preperiodic", "witness_f", "witness_g"};
    const SemigroupSystem S = build_system(cfg);
    const ProjPointQ P = build_point(cfg);
    const std::size_t budget =
        cfg.budget && *cfg.budget > 0 ? static_cast<std::size_t>(*cfg.budget) : 1000000;
    const PreperiodicityReport pr = is_preperiodic(S, P, budget);
    if (pr.preperiodic)
        r.rows.push_back({Cell::boolean(true), Cell::str(pr.witness->first.str()),
                          Cell::str(pr.witness->second.str())});
    else
        r.rows.push_back({Cell::boolean(false), Cell::empty(), Cell::empty()});
    return r;
}

inline Report run_orbit_census(const SystemConfig& cfg) {
    Report r;
    r.columns = {"X", "n_funcs", "n_points", "predicted", "theta"};
    const SemigroupSystem S = build_system(cfg);
    const ProjPointQ P = build_point(cfg);
    const std::vector<double> grid = effective_grid(cfg);
    const double x_max = *std::max_element(grid.begin(), grid.end());
    const OrbitCensus census = orbit_census(S, P, x_max, census_options(cfg));

    if (census.preperiodic) {
        std::string det = "the base point is preperiodic; the function count is "
                          "infinite for X >= 0";
        if (census.cycle_witness)
            det += " (witness: f = " + census.cycle_witness->first.str() +
                   ", g = " + census.cycle_witness->second.str() + ")";
        r.warnings.emplace_back("preperiodic", det);
        return r;
    }
    if (census.budget_exhausted) {
        r.warnings.emplace_back("budget-exhausted",
                                "node budget reached; counts below cover the "
                                "explored prefix only");
        r.budget_exhausted = true;
    }

    const WeightVector& d = S.degrees();
    const bool have_rho = d.size() >= 2;
    double rho = 0.0;
    if (have_rho) rho = solve_rho(d, cfg.tol.value_or(1e-12)).rho;
    else
        r.warnings.emplace_back("rho-needs-two-generators",
                                "growth exponent and predictions need at least "
                                "two maps");

    bool have_beta = false;
    BetaEstimate est;
    if (have_rho && !census.budget_exhausted) {
        if (classify(d).cyclic) {
            r.warnings.emplace_back("cyclic-degrees-no-constant",
                                    "degree vector is cyclic; the smooth "
                                    "predicted count does not apply");
        } else {
            const std::int64_t n_max = cfg.n_max.value_or(8);
            try {
                est = estimate_beta(S, P, solve_rho(d, cfg.tol.value_or(1e-12)),
                                    static_cast<std::size_t>(n_max), beta_budget(cfg));
                have_beta = true;
            } catch (const resource_limit_error& e) {
                r.warnings.emplace_back("budget-exhausted",
                                        std::string("prediction skipped: ") + e.what());
            }
        }
    }

    for (const double x : grid) {
        Cell predicted = Cell::empty();
        if (have_beta) predicted = Cell::real(predict_function_count(S, P, x, est));
        Cell theta = Cell::empty();
        if (have_rho) {
            const std::size_t nf = census.n_funcs(x);
            theta = Cell::real(static_cast<double>(nf) / std::pow(x, rho));
        }
        r.rows.push_back({Cell::real(x),
                          Cell::integer(static_cast<std::int64_t>(census.n_funcs(x))),
                          Cell::integer(static_cast<std::int64_t>(census.n_points(x))),
                          predicted, theta});
    }
    return r;
}

inline Report run_beta(const SystemConfig& cfg) {
    Report r;
    r.columns = {"n", "beta_n", "tail_bound", "K", "C_prime", "shift_N"};
    const SemigroupSystem S = build_system(cfg);
    const ProjPointQ P = build_point(cfg);
    const WeightVector& d = S.degrees();
    require(d.size() >= 2, "beta: need at least two maps");
    const GrowthExponent g = solve_rho(d, cfg.tol.value_or(1e-12));
    const std::int64_t n_max = cfg.n_max.value_or(10);
    require(n_max >= 1, "beta: n_max must be >= 1");
    BetaEstimate est;
    try {
        est = estimate_beta(S, P, g, static_cast<std::size_t>(n_max), beta_budget(cfg));
    } catch (const resource_limit_error& e) {
        r.warnings.emplace_back("budget-exhausted", e.what());
        r.budget_exhausted = true;
        return r;
    }
    for (std::size_t i = 0; i < est.beta_sequence.size(); ++i) {
        const std::int64_t n = static_cast<std::int64_t>(i) + 1;  // beta_sequence[0] = beta_1
        Cell tail = Cell::empty();
        if (est.shift_N >= 0 && n >= est.shift_N)
            tail = Cell::real(est.k_shifted *
                              std::pow(est.C_prime, static_cast<double>(n) + 1.0) /
                              (1.0 - est.C_prime));
        r.rows.push_back({Cell::integer(n), Cell::real(est.beta_sequence[i]), tail,
                          Cell::real(est.K), Cell::real(est.C_prime),
                          Cell::integer(est.shift_N)});
    }
    return r;
}

inline Report run_predict(const SystemConfig& cfg) {
    Report r;
    r.columns = {"X", "predicted", "beta", "rho"};
    const SemigroupSystem S = build_system(cfg);
    const ProjPointQ P = build_point(cfg);
    const WeightVector& d = S.degrees();
    require(d.size() >= 2, "predict: need at least two maps");
    const GrowthExponent g = solve_rho(d, cfg.tol.value_or(1e-12));
    const std::int64_t n_max = cfg.n_max.value_or(10);
    require(n_max >= 1, "predict: n_max must be >= 1");
    BetaEstimate est;
    try {
        est = estimate_beta(S, P, g, static_cast<std::size_t>(n_max), beta_budget(cfg));
    } catch (const resource_limit_error& e) {
        r.warnings.emplace_back("budget-exhausted", e.what());
        r.budget_exhausted = true;
        return r;
    }
    for (const double x : effective_grid(cfg))
        r.rows.push_back({Cell::real(x), Cell::real(predict_function_count(S, P, x, est)),
                          Cell::real(est.beta()), Cell::real(g.rho)});
    return r;
}

inline Report run_theta(const SystemConfig& cfg) {
    Report r;
    r.columns = {"X", "theta"};
    const SemigroupSystem S = build_system(cfg);
    const ProjPointQ P = build_point(cfg);
    const std::vector<double> grid = effective_grid(cfg);
    try {
        const std::vector<std::pair<double, double>> pts =
            theta_ratio(S, P, grid, census_options(cfg));
        for (const auto& [x, th] : pts)
            r.rows.push_back({Cell::real(x), Cell::real(th)});
    } catch (const resource_limit_error& e) {
        r.warnings.emplace_back("budget-exhausted", e.what());
        r.budget_exhausted = true;
    }
    return r;
}

}  // namespace detail

/// Runs the pipeline for `command` against `cfg` and returns the finished
/// report.  Throws parse_error for configs missing required fields and
/// invalid_input_error for domain violations; budget exhaustion is reported
/// in-band via warnings plus Report::budget_exhausted.
inline Report run_command(const std::string& command, const SystemConfig& cfg) {
    Report r;
    if (command == "rho") r = detail::run_rho(cfg);
    else if (command == "count-words") r = detail::run_count_words(cfg);
    else if (command == "constants") r = detail::run_constants(cfg);
    else if (command == "classify") r = detail::run_classify(cfg);
    else if (command == "crit-check") r = detail::run_crit_check(cfg);
    else if (command == "preperiodic") r = detail::run_preperiodic(cfg);
    else if (command == "orbit-census") r = detail::run_orbit_census(cfg);
    else if (command == "beta") r = detail::run_beta(cfg);
    else if (command == "predict") r = detail::run_predict(cfg);
    else if (command == "theta") r = detail::run_theta(cfg);
    else detail::bad_field(0, "mode", "unknown command '" + command + "'");
    r.command = command;
    r.config_echo = cfg.canonical();
    return r;
}

}  // namespace orbitgrowth
