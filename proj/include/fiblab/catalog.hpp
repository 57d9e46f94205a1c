#ifndef FIBLAB_CATALOG_HPP
#define FIBLAB_CATALOG_HPP

#include <chrono>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fiblab/classifier.hpp"
#include "fiblab/eval.hpp"
#include "fiblab/parser.hpp"
#include "fiblab/prover.hpp"

namespace fiblab {

struct CatalogError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CatalogEntry {
    Identity identity;  // meta carries id/year/authors/claimed_class/rediscovered
    std::string eq_text;
    std::string cond_text;
};

struct Catalog {
    std::vector<CatalogEntry> entries;
    int format_version = 1;

    const CatalogEntry* find(const std::string& id) const {
        for (auto& e : entries)
            if (e.identity.meta.id == id) return &e;
        return nullptr;
    }
    const CatalogEntry& at(const std::string& id) const {
        const CatalogEntry* e = find(id);
        if (!e) throw CatalogError("no catalog entry with id '" + id + "'");
        return *e;
    }
};

namespace detail {

// Values are either "quoted strings" or bare tokens/integers.
inline std::string unquote(const std::string& v, int line) {
    if (!v.empty() && v.front() == '"') {
        if (v.size() < 2 || v.back() != '"')
            throw CatalogError("unterminated string at line " + std::to_string(line));
        return v.substr(1, v.size() - 2);
    }
    return v;
}

inline std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

// "k:1..5, m:1..2" -> ParamRange map
inline std::map<std::string, ParamRange> parse_params(const std::string& text, int line) {
    std::map<std::string, ParamRange> out;
    std::stringstream ss(text);
    std::string piece;
    while (std::getline(ss, piece, ',')) {
        piece = trim(piece);
        if (piece.empty()) continue;
        size_t colon = piece.find(':');
        size_t dots = piece.find("..");
        if (colon == std::string::npos || dots == std::string::npos || dots < colon)
            throw CatalogError("malformed params '" + piece + "' at line " +
                               std::to_string(line));
        ParamRange r;
        r.lo = std::stoll(piece.substr(colon + 1, dots - colon - 1));
        r.hi = std::stoll(piece.substr(dots + 2));
        if (r.lo > r.hi)
            throw CatalogError("empty param range '" + piece + "' at line " +
                               std::to_string(line));
        out[trim(piece.substr(0, colon))] = r;
    }
    return out;
}

}  // namespace detail

inline Catalog load_catalog(std::istream& in) {
    Catalog cat;
    std::map<std::string, std::string> fields;
    std::map<std::string, int> field_lines;
    bool in_record = false;
    int line_no = 0, record_line = 0;
    std::string line;

    auto flush = [&]() {
        if (!in_record) return;
        auto get = [&](const std::string& k) -> std::string {
            auto it = fields.find(k);
            return it == fields.end() ? "" : it->second;
        };
        std::string id = get("id");
        if (id.empty())
            throw CatalogError("entry at line " + std::to_string(record_line) + " has no id");
        if (cat.find(id))
            throw CatalogError("duplicate catalog id '" + id + "' at line " +
                               std::to_string(record_line));
        CatalogEntry e;
        e.eq_text = get("eq");
        e.cond_text = get("cond");
        if (e.eq_text.empty())
            throw CatalogError("entry '" + id + "' has no eq field");
        std::string text = e.eq_text;
        if (!e.cond_text.empty()) text += " ; " + e.cond_text;
        try {
            e.identity = parse(text);
        } catch (const ParseError& pe) {
            throw CatalogError("entry '" + id + "' (line " + std::to_string(record_line) +
                               "): " + pe.what());
        }
        if (fields.count("params"))
            e.identity.params = detail::parse_params(fields["params"], field_lines["params"]);
        // every free variable must be a conditioned index or a declared param
        for (auto& v : free_vars(e.identity))
            if (!e.identity.conditions.count(v) && !e.identity.params.count(v))
                throw CatalogError("entry '" + id + "': free variable '" + v +
                                   "' is neither conditioned nor a declared parameter");
        e.identity.meta.id = id;
        e.identity.meta.source_tag = id;
        if (fields.count("year")) e.identity.meta.year = std::stoi(fields["year"]);
        e.identity.meta.authors = get("authors");
        e.identity.meta.claimed_class = get("class");
        e.identity.meta.rediscovered = get("rediscovered");
        cat.entries.push_back(std::move(e));
        fields.clear();
        field_lines.clear();
        in_record = false;
    };

    while (std::getline(in, line)) {
        ++line_no;
        std::string t = detail::trim(line);
        if (t.empty()) {
            flush();
            continue;
        }
        if (t[0] == '#') continue;
        if (t == "[identity]") {
            flush();
            in_record = true;
            record_line = line_no;
            continue;
        }
        size_t eq = t.find('=');
        if (!in_record || eq == std::string::npos)
            throw CatalogError("malformed catalog line " + std::to_string(line_no) + ": " + t);
        std::string key = detail::trim(t.substr(0, eq));
        std::string val = detail::unquote(detail::trim(t.substr(eq + 1)), line_no);
        fields[key] = val;
        field_lines[key] = line_no;
    }
    flush();
    return cat;
}

inline Catalog load_catalog_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CatalogError("cannot open catalog file: " + path);
    return load_catalog(in);
}

// ---------------------------------------------------------------------------
// Batch verification
// ---------------------------------------------------------------------------
enum class VerifyMode { Numeric, Symbolic, Both };

struct EntryReport {
    std::string id;
    std::optional<CheckReport> numeric;
    std::vector<ProofOutcome> symbolic;
    std::optional<ProofStatus> symbolic_status;  // aggregate across instances/pairs
    double wall_seconds = 0.0;

    bool ok() const {
        if (numeric && !numeric->all_equal) return false;
        if (symbolic_status && *symbolic_status == ProofStatus::Falsified) return false;
        return true;
    }
};

// For parameterized families the numeric sweep instantiates the declared grid
// and sweeps each instance's free indices from the condition bounds.
inline CheckReport check_entry(const Identity& id, long long count = 300) {
    if (id.params.empty()) return check_identity(id, default_sweep(id, count));
    CheckReport agg;
    agg.identity_id = id.meta.id;
    std::vector<std::string> names;
    for (auto& [p, r] : id.params) names.push_back(p);
    std::map<std::string, long long> binding;
    std::function<void(size_t)> walk = [&](size_t i) {
        if (!agg.all_equal) return;
        if (i == names.size()) {
            Identity inst = substitute(id, binding);
            CheckReport r = check_identity(inst, default_sweep(inst, count));
            agg.assignments += r.assignments;
            agg.ranges = r.ranges;
            if (!r.all_equal) {
                agg.all_equal = false;
                agg.counterexample = r.counterexample;
                if (agg.counterexample)
                    for (auto& [p, v] : binding) agg.counterexample->assignment[p] = v;
            }
            return;
        }
        const ParamRange& r = id.params.at(names[i]);
        for (long long v = r.lo; v <= r.hi && agg.all_equal; ++v) {
            binding[names[i]] = v;
            walk(i + 1);
        }
    };
    walk(0);
    return agg;
}

inline std::vector<EntryReport> verify_all(const Catalog& cat, VerifyMode mode,
                                           long long numeric_count = 300) {
    std::vector<EntryReport> out;
    for (auto& e : cat.entries) {
        EntryReport r;
        r.id = e.identity.meta.id;
        auto t0 = std::chrono::steady_clock::now();
        if (mode == VerifyMode::Numeric || mode == VerifyMode::Both)
            r.numeric = check_entry(e.identity, numeric_count);
        if (mode == VerifyMode::Symbolic || mode == VerifyMode::Both) {
            r.symbolic = prove(e.identity);
            r.symbolic_status = aggregate_status(r.symbolic);
        }
        r.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.push_back(std::move(r));
    }
    return out;
}

// Entries whose computed classification disagrees with the claimed table
// placement. Warmup entries make no table claim and are skipped.
inline std::vector<std::string> class_mismatches(const Catalog& cat) {
    std::vector<std::string> out;
    for (auto& e : cat.entries) {
        const std::string& claimed = e.identity.meta.claimed_class;
        if (claimed != "homogeneous-cubic" && claimed != "nonhomogeneous-cubic" &&
            claimed != "general")
            continue;
        if (class_label(classify(e.identity)) != claimed) out.push_back(e.identity.meta.id);
    }
    return out;
}

}  // namespace fiblab

#endif
