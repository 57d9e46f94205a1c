// Acceptance gate: prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fiblab/catalog.hpp"
#include "fiblab/discovery.hpp"
#include "fiblab/tiling.hpp"
#include "fiblab/umbral.hpp"

using namespace fiblab;

namespace {

double now_minus(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Catalog& corpus() {
    static Catalog cat = load_catalog_file(std::string(FIBLAB_DATA_DIR) + "/corpus.fib");
    return cat;
}

// ---- criterion 1: numeric 300-value sweep, < 60 s --------------------------
bool criterion1(std::string& detail) {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<EntryReport> reps = verify_all(corpus(), VerifyMode::Numeric, 300);
    double secs = now_minus(t0);
    size_t fails = 0;
    for (auto& r : reps)
        if (!r.ok()) ++fails;
    detail = std::to_string(reps.size()) + " entries, " + std::to_string(fails) +
             " failures, " + std::to_string(secs) + " s";
    return fails == 0 && secs < 60.0 && reps.size() >= 41;
}

// ---- criterion 2: symbolic proof suite -------------------------------------
bool criterion2(std::string& detail) {
    static const std::set<std::string> closed = {
        "eq2a", "eq2b", "eq2c", "eq3",  "eq4",  "eq5",  "eq6a", "eq6b", "eq6c",
        "eq6d", "eq9b", "eq10", "eq13", "eq14", "eq15", "eq26", "eq27", "eq28",
        "eq32", "eq33", "eq34", "eq35", "eq36", "eq37", "eq40", "eq41", "eq42",
        "eq43", "eq44", "eq46", "eq48", "eq49", "eq50", "eq54", "eq56", "eq57",
        "eq58", "eq59", "eq60", "eq61", "eq62", "eq63", "eq65"};
    static const std::set<std::string> sums = {
        "eq6e", "eq6f", "eq11", "eq12", "eq16", "eq17", "eq18", "eq19",
        "eq20", "eq21", "eq22", "eq23", "eq24", "eq25", "eq29", "eq30",
        "eq31", "eq38", "eq39", "eq52", "eq53"};
    std::vector<std::string> problems;
    for (auto& e : corpus().entries) {
        const std::string& id = e.identity.meta.id;
        std::vector<ProofOutcome> res = prove(e.identity);
        ProofStatus agg = aggregate_status(res);
        if (agg == ProofStatus::Falsified) problems.push_back(id + ":Falsified");
        if (id == "eq45") {
            // BoundedOnly over the q/p grid: VerifiedUpTo with n swept to 30
            if (agg != ProofStatus::VerifiedUpTo) problems.push_back(id + ":not-bounded");
            if (res.size() != 16) problems.push_back(id + ":grid-size");
            for (auto& o : res) {
                if (o.method != ProofMethod::BoundedOnly) problems.push_back(id + ":method");
                if (!o.verified_range.count("n") || o.verified_range.at("n").second != 30)
                    problems.push_back(id + ":range");
            }
            continue;
        }
        if (agg != ProofStatus::Proven) problems.push_back(id + ":" + to_string(agg));
        if (closed.count(id))
            for (auto& o : res)
                if (o.method != ProofMethod::ClosedBinet) problems.push_back(id + ":method");
        if (sums.count(id))
            for (auto& o : res)
                if (o.method != ProofMethod::SumInduction) problems.push_back(id + ":method");
    }
    detail = problems.empty() ? "all statuses and methods as pinned" : "";
    for (auto& p : problems) detail += " " + p;
    return problems.empty();
}

// ---- criterion 3: instantiation fidelity -----------------------------------
bool cross_residual_zero(const Identity& a, const Identity& b) {
    // (A_L - A_R) - (B_L - B_R) = 0, proven as A_L + B_R = A_R + B_L
    Identity cross;
    cross.sides.push_back(canonicalize(make_add({a.sides.front(), b.sides.back()})));
    cross.sides.push_back(canonicalize(make_add({a.sides.back(), b.sides.front()})));
    for (auto& [v, bound] : a.conditions) cross.conditions[v] = bound;
    for (auto& [v, bound] : b.conditions)
        if (!cross.conditions.count(v) || cross.conditions[v] < bound)
            cross.conditions[v] = bound;
    ProofOutcome o = prove_closed(cross);
    return o.proven();
}

bool criterion3(std::string& detail) {
    Catalog& cat = corpus();
    bool a = cross_residual_zero(
        substitute(cat.at("eq8a").identity, {{"k", 2}, {"r", 1}, {"m", 1}}),
        cat.at("eq8b").identity);
    bool b = cross_residual_zero(substitute(cat.at("eq64").identity, {{"k", 3}, {"m", 3}}),
                                 cat.at("eq65").identity);
    bool c = cross_residual_zero(cat.at("eq51-k1").identity, cat.at("eq27").identity);
    detail = std::string("eq8a@(2,1,1)=eq8b:") + (a ? "ok" : "FAIL") +
             " eq64@(3,3)=eq65:" + (b ? "ok" : "FAIL") +
             " eq51@k=1=eq27:" + (c ? "ok" : "FAIL");
    return a && b && c;
}

// ---- criterion 4: classifier agreement -------------------------------------
bool criterion4(std::string& detail) {
    std::vector<std::string> mism = class_mismatches(corpus());
    detail = "mismatches:";
    for (auto& m : mism) detail += " " + m;
    return mism.size() == 1 && mism[0] == "eq25";
}

// ---- criterion 5: discovery regressions ------------------------------------
ExprPtr fib_shift(long long mult, long long add) {
    LinForm l = LinForm::var("n", mult);
    l.constant = add;
    return make_fib(l);
}

ExprPtr sign_fib(long long add) {
    LinForm l = LinForm::var("n");
    l.constant = add;
    return make_mul({make_sign(LinForm::var("n")), make_fib(l)});
}

bool relation_present(const Basis& basis, const std::vector<RelationCandidate>& cands,
                      const std::string& text) {
    Identity want = parse(text);
    std::map<std::string, Int> coeffs;
    std::function<void(const ExprPtr&, Int)> collect = [&](const ExprPtr& e, Int sgn) {
        ExprPtr c = canonicalize(e);
        if (c->kind == Kind::Neg) return collect(c->kids[0], -sgn);
        if (c->kind == Kind::Add) {
            for (auto& k : c->kids) collect(k, sgn);
            return;
        }
        Int coef = sgn;
        ExprPtr core = c;
        if (c->kind == Kind::Mul && c->kids[0]->kind == Kind::Const) {
            coef = sgn * c->kids[0]->value.get_num();
            std::vector<ExprPtr> rest(c->kids.begin() + 1, c->kids.end());
            core = canonicalize(rest.size() == 1 ? rest[0] : make_mul(std::move(rest)));
        }
        auto fold_sign = [&](ExprPtr f) {
            if (f->kind == Kind::Sign && f->lin.constant != 0) {
                if (f->lin.constant % 2 != 0) coef = -coef;
                LinForm l = f->lin;
                l.constant = 0;
                return make_sign(l);
            }
            return f;
        };
        if (core->kind == Kind::Sign) core = fold_sign(core);
        else if (core->kind == Kind::Mul) {
            std::vector<ExprPtr> ks;
            for (auto& k : core->kids) ks.push_back(fold_sign(k));
            core = make_mul(std::move(ks));
        }
        coeffs[render(core)] += coef;
    };
    collect(make_add({want.sides[0], make_neg(want.sides[1])}), Int(1));
    std::vector<Int> want_vec(basis.size(), Int(0));
    for (size_t j = 0; j < basis.size(); ++j) {
        auto it = coeffs.find(basis.names[j]);
        if (it != coeffs.end()) {
            want_vec[j] = it->second;
            coeffs.erase(it);
        }
    }
    for (auto& [k, v] : coeffs)
        if (v != 0) return false;
    for (auto& c : cands) {
        bool eq = true, eqneg = true;
        for (size_t j = 0; j < basis.size(); ++j) {
            if (c.coeffs[j] != want_vec[j]) eq = false;
            if (c.coeffs[j] != -want_vec[j]) eqneg = false;
        }
        if (eq || eqneg) return true;
    }
    return false;
}

bool criterion5(std::string& detail) {
    auto t0 = std::chrono::steady_clock::now();
    Basis small(-1, 1, {fib_shift(3, 0)});
    auto small_cands = search(small, default_samples(small));
    auto small_found = confirm(small, small_cands);
    double small_secs = now_minus(t0);
    bool got9b =
        relation_present(small, small_cands, "F[n+1]^3 + F[n]^3 - F[n-1]^3 = F[3n] ; n >= 1");

    std::vector<ExprPtr> t06, t33;
    for (long long c = 0; c <= 6; ++c) t06.push_back(sign_fib(c));
    for (long long c = -3; c <= 3; ++c) t33.push_back(sign_fib(c));
    Basis b06(0, 6, t06), b33(-3, 3, t33);
    auto c06 = search(b06, default_samples(b06), 3);
    auto c33 = search(b33, default_samples(b33), 3);
    bool got40 = relation_present(b06, c06,
                                  "F[n+1]*F[n+2]*F[n+6] - F[n+3]^3 = (-1)^(n)*F[n] ; n >= 0");
    bool got41 = relation_present(b06, c06,
                                  "F[n]*F[n+4]*F[n+5] - F[n+3]^3 = (-1)^(n+1)*F[n+6] ; n >= 0");
    bool got48 = relation_present(b33, c33,
                                  "F[n-3]*F[n+1]^2 - F[n-2]^2*F[n+3] = 4*(-1)^(n)*F[n] ; n >= 3");
    // every emitted discovery re-proves independently
    bool all_proven = true;
    for (auto& [id, outcome] : small_found) {
        std::vector<ProofOutcome> again = prove(id);
        all_proven = all_proven && aggregate_status(again) == ProofStatus::Proven;
    }
    detail = "9b:" + std::string(got9b ? "ok" : "FAIL") + " (" + std::to_string(small_secs) +
             " s) 40:" + (got40 ? "ok" : "FAIL") + " 41:" + (got41 ? "ok" : "FAIL") +
             " 48:" + (got48 ? "ok" : "FAIL") + " proven:" + (all_proven ? "ok" : "FAIL");
    return got9b && small_secs < 10.0 && got40 && got41 && got48 && all_proven;
}

// ---- criterion 6: tiling exactness -----------------------------------------
bool criterion6(std::string& detail) {
    bool ok = true;
    for (int i = 1; i <= 3; ++i) {
        auto boxes = generate(i, 15);
        for (auto& b : boxes) ok = ok && (b.hi[0] - b.lo[0] == Rat(seq::fib(b.n)));
        PackingReport rep = analyze(boxes, i);
        ok = ok && rep.disjoint && rep.sides_are_cubes;
        if (i == 1) ok = ok && rep.coplanar;
        PackingReport rep60 = analyze(generate(i, 60), i);
        ok = ok && !rep60.two_step_ratios.empty() &&
             std::fabs(rep60.two_step_ratios.back() - 2.6180339887) < 1e-4;
    }
    auto three = generate(1, 3);
    auto box_is = [&](const Cuboid& b, long xlo, long xhi, long ylo, long yhi, long zlo,
                      long zhi) {
        return b.lo[0] == xlo && b.hi[0] == xhi && b.lo[1] == ylo && b.hi[1] == yhi &&
               b.lo[2] == zlo && b.hi[2] == zhi;
    };
    ok = ok && three.size() == 3 && box_is(three[0], 0, 1, 0, 1, 0, 1) &&
         box_is(three[1], 0, 1, 0, 1, -1, 0) && box_is(three[2], 1, 3, 1, 3, -3, -1);
    detail = "maps 1-3, N=15 exact; N=60 ratio; generate(1,3) prefix";
    return ok;
}

// ---- criterion 7: sequence anchors -----------------------------------------
bool criterion7(std::string& detail) {
    bool ok = seq::fib(14) == 377;
    long expect[] = {1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233, 377};
    for (long long n = 2; n <= 14; ++n) ok = ok && seq::fib(n) == expect[n - 2];
    detail = "fib(14)=377, list fib(2..14)";
    return ok;
}

// ---- criterion 8: property suites ------------------------------------------
ExprPtr random_expr(std::mt19937& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, depth > 0 ? 6 : 3);
    std::uniform_int_distribution<long long> coeff(1, 2), shift(-3, 3), small(2, 3);
    auto lin = [&]() {
        LinForm l = LinForm::var("n", coeff(rng));
        l.constant = shift(rng);
        return l;
    };
    switch (pick(rng)) {
        case 0: return make_fib(lin());
        case 1: return make_lucas(lin());
        case 2: return make_sign(LinForm::var("n"));
        case 3: return make_const(mkrat(shift(rng) == 0 ? 1 : shift(rng), small(rng)));
        case 4: {
            std::vector<ExprPtr> kids;
            for (int i = 0; i < 2; ++i) kids.push_back(random_expr(rng, depth - 1));
            return make_add(std::move(kids));
        }
        case 5: {
            std::vector<ExprPtr> kids;
            for (int i = 0; i < 2; ++i) kids.push_back(random_expr(rng, depth - 1));
            return make_mul(std::move(kids));
        }
        default: return make_pow(make_fib(lin()), LinForm(small(rng)));
    }
}

bool criterion8(std::string& detail) {
    // Cassini over -50..200
    bool cassini = true;
    for (long long n = -50; n <= 200; ++n) {
        Int lhs = seq::fib(n - 1) * seq::fib(n + 1) - seq::fib(n) * seq::fib(n);
        cassini = cassini && lhs == ((n % 2 == 0) ? 1 : -1);
    }
    // prover-vs-evaluator agreement on 50 random sub-expressions: the Binet
    // normal form evaluated at t = phi^n must reproduce the exact value
    bool oracle = true;
    std::mt19937 rng(20260823);
    // n >= 3 keeps every Lucas index nonnegative for the numeric evaluator
    std::uniform_int_distribution<long long> pickn(3, 12);
    for (int trial = 0; trial < 50; ++trial) {
        ExprPtr e = random_expr(rng, 3);
        long long n0 = pickn(rng);
        ParityCase pc;
        pc.vars = {"n"};
        pc.sigma = {(n0 % 2 == 0) ? 1 : -1};
        pc.k = 1;
        LaurentPoly p = binet_normalize(e, pc);
        QuadRat symbolic = p.eval_at_powers(field_alpha(1), {n0});
        Rat numeric = eval_expr(e, {{"n", n0}});
        oracle = oracle && (symbolic - QuadRat(numeric)).is_zero();
    }
    // parse/render round-trip over the corpus
    bool roundtrip = true;
    for (auto& e : corpus().entries) {
        Identity again = parse(render(e.identity));
        roundtrip = roundtrip && again.sides.size() == e.identity.sides.size();
        for (size_t i = 0; i < again.sides.size() && roundtrip; ++i)
            roundtrip = roundtrip && expr_equal(again.sides[i], e.identity.sides[i]);
        roundtrip = roundtrip && again.conditions == e.identity.conditions;
    }
    // umbral identities proven for p <= 8, both variants
    bool umbral = true;
    for (long long p = 1; p <= 8; ++p)
        for (UmbralVariant v : {UmbralVariant::Plus, UmbralVariant::Minus}) {
            std::vector<ProofOutcome> res = prove(expand_umbral(p, v));
            umbral = umbral && aggregate_status(res) == ProofStatus::Proven;
        }
    detail = std::string("cassini:") + (cassini ? "ok" : "FAIL") +
             " oracle:" + (oracle ? "ok" : "FAIL") +
             " roundtrip:" + (roundtrip ? "ok" : "FAIL") +
             " umbral:" + (umbral ? "ok" : "FAIL");
    return cassini && oracle && roundtrip && umbral;
}

}  // namespace

int main() {
    using Criterion = std::function<bool(std::string&)>;
    std::vector<Criterion> criteria = {criterion1, criterion2, criterion3, criterion4,
                                       criterion5, criterion6, criterion7, criterion8};
    int failures = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        std::string detail;
        bool ok = false;
        try {
            ok = criteria[i](detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        if (!ok) ++failures;
        std::cout << "ACCEPTANCE " << (i + 1) << ": " << (ok ? "PASS" : "FAIL");
        if (!detail.empty()) std::cout << " — " << detail;
        std::cout << "\n";
    }
    return failures == 0 ? 0 : 1;
}
