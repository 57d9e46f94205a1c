// fiblab — command-line front end for the identity laboratory.
//
// Subcommands: check, prove, classify, catalog verify, search, spiral,
// umbral. Exit codes: 0 success, 1 entry-level failures, 2 usage errors.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fiblab/catalog.hpp"
#include "fiblab/classifier.hpp"
#include "fiblab/discovery.hpp"
#include "fiblab/tiling.hpp"
#include "fiblab/umbral.hpp"

#ifndef FIBLAB_DATA_DIR
#define FIBLAB_DATA_DIR "data"
#endif

using namespace fiblab;
using nlohmann::json;

namespace {

struct Output {
    std::string path;      // empty = stdout
    bool structured = false;
    std::ostringstream buf;

    void line(const std::string& text, const json& record) {
        if (structured)
            buf << record.dump() << "\n";
        else
            buf << text << "\n";
    }
    void raw(const std::string& text) { buf << text; }
    int flush(int code) {
        if (path.empty()) {
            std::cout << buf.str();
        } else {
            std::ofstream out(path);
            if (!out) {
                std::cerr << "fiblab: cannot write " << path << "\n";
                return 2;
            }
            out << buf.str();
        }
        return code;
    }
};

int validated_threads() {
    const char* env = std::getenv("FIBLAB_THREADS");
    if (!env) return 0;
    try {
        int v = std::stoi(env);
        if (v < 1) throw std::invalid_argument("non-positive");
        return v;
    } catch (...) {
        throw CLI::ValidationError("FIBLAB_THREADS must be a positive integer");
    }
}

Catalog load_input(const std::string& path) {
    return load_catalog_file(path);
}

json outcome_record(const std::string& id, const ProofOutcome& o) {
    json r;
    r["id"] = id;
    r["status"] = to_string(o.status);
    r["method"] = to_string(o.method);
    if (!o.instance.empty()) {
        json inst;
        for (auto& [k, v] : o.instance) inst[k] = v;
        r["instance"] = inst;
    }
    if (!o.verified_range.empty()) {
        json vr;
        for (auto& [k, v] : o.verified_range) vr[k] = {v.first, v.second};
        r["verified_range"] = vr;
    }
    if (o.counterexample) {
        json cx;
        for (auto& [k, v] : o.counterexample->assignment) cx[k] = v;
        r["counterexample"] = cx;
    }
    if (!o.note.empty()) r["note"] = o.note;
    return r;
}

std::string outcome_text(const std::string& id, const ProofOutcome& o) {
    std::string s = id;
    if (!o.instance.empty()) {
        s += " [";
        bool first = true;
        for (auto& [k, v] : o.instance) {
            if (!first) s += ",";
            s += k + "=" + std::to_string(v);
            first = false;
        }
        s += "]";
    }
    s += ": " + to_string(o.status) + " (" + to_string(o.method) + ")";
    for (auto& [k, v] : o.verified_range)
        s += " " + k + "=" + std::to_string(v.first) + ".." + std::to_string(v.second);
    return s;
}

int cmd_check(const std::string& file, long long range, Output& out) {
    Catalog cat = load_input(file);
    bool all_ok = true;
    for (auto& e : cat.entries) {
        CheckReport rep = check_entry(e.identity, range);
        all_ok = all_ok && rep.all_equal;
        json r;
        r["id"] = e.identity.meta.id;
        r["all_equal"] = rep.all_equal;
        r["assignments"] = rep.assignments;
        std::string t = e.identity.meta.id + ": " +
                        (rep.all_equal ? "ok" : "FALSIFIED") + " (" +
                        std::to_string(rep.assignments) + " assignments)";
        if (!rep.all_equal && rep.counterexample) {
            json cx;
            std::string ct;
            for (auto& [k, v] : rep.counterexample->assignment) {
                cx[k] = v;
                ct += " " + k + "=" + std::to_string(v);
            }
            r["counterexample"] = cx;
            t += " at" + ct;
        }
        out.line(t, r);
    }
    return out.flush(all_ok ? 0 : 1);
}

int cmd_prove(const std::string& file, Output& out) {
    Catalog cat = load_input(file);
    bool any_falsified = false;
    for (auto& e : cat.entries) {
        std::vector<ProofOutcome> res = prove(e.identity);
        ProofStatus agg = aggregate_status(res);
        if (agg == ProofStatus::Falsified) any_falsified = true;
        for (auto& o : res)
            out.line(outcome_text(e.identity.meta.id, o), outcome_record(e.identity.meta.id, o));
    }
    return out.flush(any_falsified ? 1 : 0);
}

int cmd_classify(const std::string& file, Output& out) {
    Catalog cat = load_input(file);
    for (auto& e : cat.entries) {
        Classification c = classify(e.identity);
        json r;
        r["id"] = e.identity.meta.id;
        r["class"] = class_label(c);
        std::string t = e.identity.meta.id + ": " + class_label(c);
        if (!e.identity.meta.claimed_class.empty()) {
            r["claimed"] = e.identity.meta.claimed_class;
            bool match = class_label(c) == e.identity.meta.claimed_class;
            r["matches_claim"] = match;
            if (!match) t += " (claimed " + e.identity.meta.claimed_class + ")";
        }
        out.line(t, r);
    }
    std::vector<std::string> mism = class_mismatches(cat);
    json m;
    m["mismatches"] = mism;
    std::string t = "mismatches:";
    for (auto& id : mism) t += " " + id;
    out.line(t, m);
    return out.flush(0);
}

int cmd_catalog_verify(const std::string& mode_name, long long range, Output& out) {
    VerifyMode mode = VerifyMode::Both;
    if (mode_name == "numeric") mode = VerifyMode::Numeric;
    else if (mode_name == "symbolic") mode = VerifyMode::Symbolic;
    Catalog cat = load_catalog_file(std::string(FIBLAB_DATA_DIR) + "/corpus.fib");
    std::vector<EntryReport> reports = verify_all(cat, mode, range);
    bool all_ok = true;
    for (auto& r : reports) {
        all_ok = all_ok && r.ok();
        json rec;
        rec["id"] = r.id;
        rec["ok"] = r.ok();
        rec["wall_seconds"] = r.wall_seconds;
        std::string t = r.id + ": " + (r.ok() ? "ok" : "FAIL");
        if (r.numeric) {
            rec["numeric_all_equal"] = r.numeric->all_equal;
            rec["numeric_assignments"] = r.numeric->assignments;
            t += " numeric=" + std::string(r.numeric->all_equal ? "pass" : "fail");
        }
        if (r.symbolic_status) {
            rec["symbolic_status"] = to_string(*r.symbolic_status);
            t += " symbolic=" + to_string(*r.symbolic_status);
        }
        out.line(t, rec);
    }
    return out.flush(all_ok ? 0 : 1);
}

int cmd_search(const std::string& window, const std::string& targets, long long samples,
               int max_support, Output& out) {
    size_t dots = window.find("..");
    if (dots == std::string::npos)
        throw CLI::ValidationError("--window must look like A..B");
    long long lo = std::stoll(window.substr(0, dots));
    long long hi = std::stoll(window.substr(dots + 2));
    std::vector<ExprPtr> target_exprs;
    std::stringstream ss(targets);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        size_t a = tok.find_first_not_of(" \t");
        if (a == std::string::npos) continue;
        size_t b = tok.find_last_not_of(" \t");
        target_exprs.push_back(parse_expr_text(tok.substr(a, b - a + 1)));
    }
    Basis basis(lo, hi, target_exprs);
    std::vector<long long> sample_points;
    long long count = samples > 0 ? samples
                                  : static_cast<long long>(basis.size()) + 8;
    if (count < static_cast<long long>(basis.size()) + 5)
        count = static_cast<long long>(basis.size()) + 5;
    for (long long n = 10; n < 10 + count; ++n) sample_points.push_back(n);
    auto cands = search(basis, sample_points, static_cast<size_t>(max_support));
    auto found = confirm(basis, cands);
    out.raw("# discovered relations, window " + std::to_string(lo) + ".." +
            std::to_string(hi) + ", " + std::to_string(found.size()) + " proven\n\n");
    int idx = 0;
    for (auto& [id, outcome] : found) {
        ++idx;
        if (out.structured) {
            json r;
            r["id"] = "disc" + std::to_string(idx);
            r["eq"] = render(id.sides[0]) + " = " + render(id.sides[1]);
            r["status"] = to_string(outcome.status);
            out.raw(r.dump() + "\n");
        } else {
            out.raw("[identity]\n");
            out.raw("id = disc" + std::to_string(idx) + "\n");
            out.raw("eq = \"" + render(id.sides[0]) + " = " + render(id.sides[1]) + "\"\n");
            out.raw("cond = \"n >= 0\"\n\n");
        }
    }
    return out.flush(0);
}

int cmd_spiral(int map_id, long long n, const std::string& format, bool check, Output& out) {
    std::vector<Cuboid> boxes = generate(map_id, n);
    out.raw(export_boxes(boxes, format));
    int code = 0;
    if (check) {
        PackingReport rep = analyze(boxes, map_id);
        bool sides_ok = true;
        for (auto& [step, side] : rep.sides) sides_ok = sides_ok && side == Rat(seq::fib(step));
        json r;
        r["sides_exact"] = sides_ok;
        r["cubes"] = rep.sides_are_cubes;
        r["coplanar"] = rep.coplanar;
        r["disjoint"] = rep.disjoint;
        if (rep.offending_pair) r["offending_pair"] = {rep.offending_pair->first,
                                                       rep.offending_pair->second};
        if (!rep.two_step_ratios.empty()) r["last_two_step_ratio"] = rep.two_step_ratios.back();
        if (out.structured) {
            out.raw(r.dump() + "\n");
        } else {
            std::string t = std::string("# check: sides_exact=") + (sides_ok ? "true" : "false") +
                            " cubes=" + (rep.sides_are_cubes ? "true" : "false") +
                            " coplanar=" + (rep.coplanar ? "true" : "false") +
                            " disjoint=" + (rep.disjoint ? "true" : "false");
            if (!rep.two_step_ratios.empty())
                t += " last_two_step_ratio=" + std::to_string(rep.two_step_ratios.back());
            out.raw(t + "\n");
        }
        if (!sides_ok || !rep.disjoint || (map_id == 1 && !rep.coplanar)) code = 1;
    }
    return out.flush(code);
}

int cmd_umbral(long long p, const std::string& variant_name, Output& out) {
    UmbralVariant v = variant_name == "minus" ? UmbralVariant::Minus : UmbralVariant::Plus;
    Identity id = expand_umbral(p, v);
    std::vector<ProofOutcome> res = prove(id);
    ProofStatus agg = aggregate_status(res);
    json r;
    r["id"] = id.meta.id;
    r["eq"] = render(id.sides[0]) + " = " + render(id.sides[1]);
    r["status"] = to_string(agg);
    out.line(id.meta.id + ": " + render(id.sides[0]) + " = " + render(id.sides[1]) + " -> " +
                 to_string(agg),
             r);
    return out.flush(agg == ProofStatus::Proven ? 0 : 1);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fiblab: verification laboratory for Fibonacci identities"};
    app.require_subcommand(1);

    std::string out_path, out_format = "text";
    app.add_option("--out", out_path, "Write output to PATH instead of stdout");
    app.add_option("--format", out_format, "Output format")
        ->check(CLI::IsMember({"text", "structured"}));

    std::string check_file;
    long long check_range = 300;
    auto* c_check = app.add_subcommand("check", "Numeric falsification sweep over a catalog file");
    c_check->add_option("file", check_file, "Catalog-format input file")->required();
    c_check->add_option("--range", check_range, "Values per free index (default 300)");

    std::string prove_file;
    auto* c_prove = app.add_subcommand("prove", "Symbolic proofs over a catalog file");
    c_prove->add_option("file", prove_file, "Catalog-format input file")->required();

    std::string classify_file;
    auto* c_classify = app.add_subcommand("classify", "Classify catalog entries");
    c_classify->add_option("file", classify_file, "Catalog-format input file")->required();

    auto* c_catalog = app.add_subcommand("catalog", "Operations on the shipped corpus");
    std::string verify_mode = "both";
    long long verify_range = 300;
    auto* c_verify = c_catalog->add_subcommand("verify", "Batch-verify the shipped corpus");
    c_verify->add_option("--mode", verify_mode, "numeric|symbolic|both")
        ->check(CLI::IsMember({"numeric", "symbolic", "both"}));
    c_verify->add_option("--range", verify_range, "Values per free index (default 300)");
    c_catalog->require_subcommand(1);

    std::string search_window, search_targets;
    long long search_samples = 0;
    int search_support = 4;
    auto* c_search = app.add_subcommand("search", "Integer-relation discovery");
    c_search->add_option("--window", search_window, "Offset window A..B")->required();
    c_search->add_option("--targets", search_targets, "Comma-separated extra basis expressions");
    c_search->add_option("--samples", search_samples, "Sample count (default |basis|+8)");
    c_search->add_option("--max-support", search_support, "Largest relation support (1..4)")
        ->check(CLI::Range(1, 4));

    int spiral_map = 1;
    long long spiral_n = 15;
    std::string spiral_format = "json";
    bool spiral_check = false;
    auto* c_spiral = app.add_subcommand("spiral", "Generate cuboid spiral geometry");
    c_spiral->add_option("--map", spiral_map, "Map id 1..3")->check(CLI::Range(1, 3));
    c_spiral->add_option("--n", spiral_n, "Number of cuboids");
    c_spiral->add_option("--format", spiral_format, "json|obj")
        ->check(CLI::IsMember({"json", "obj"}));
    c_spiral->add_flag("--check", spiral_check, "Append a PackingReport");

    long long umbral_p = 1;
    std::string umbral_variant = "plus";
    auto* c_umbral = app.add_subcommand("umbral", "Generate and prove a shift identity");
    c_umbral->add_option("--p", umbral_p, "Shift order p >= 1");
    c_umbral->add_option("--variant", umbral_variant, "plus|minus")
        ->check(CLI::IsMember({"plus", "minus"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
            return app.exit(e);
        app.exit(e);
        return 2;
    }

    Output out;
    out.path = out_path;
    out.structured = (out_format == "structured");

    try {
        validated_threads();  // accept and validate FIBLAB_THREADS
        if (*c_check) return cmd_check(check_file, check_range, out);
        if (*c_prove) return cmd_prove(prove_file, out);
        if (*c_classify) return cmd_classify(classify_file, out);
        if (*c_verify) return cmd_catalog_verify(verify_mode, verify_range, out);
        if (*c_search)
            return cmd_search(search_window, search_targets, search_samples, search_support, out);
        if (*c_spiral) return cmd_spiral(spiral_map, spiral_n, spiral_format, spiral_check, out);
        if (*c_umbral) return cmd_umbral(umbral_p, umbral_variant, out);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "fiblab: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "fiblab: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
