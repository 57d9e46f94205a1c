#ifndef FIBLAB_EVAL_HPP
#define FIBLAB_EVAL_HPP

#include <chrono>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "fiblab/expr.hpp"
#include "fiblab/sequences.hpp"

namespace fiblab {

using Env = std::map<std::string, long long>;

// Exact rational evaluation of an expression under a full index binding.
inline Rat eval_expr(const ExprPtr& e, const Env& env) {
    switch (e->kind) {
        case Kind::Fib:
            return Rat(seq::fib(e->lin.eval(env)));
        case Kind::Lucas:
            return Rat(seq::lucas(e->lin.eval(env)));
        case Kind::KFib:
            return Rat(seq::k_fib(e->kparam, e->lin.eval(env)));
        case Kind::GenFib:
            return Rat(seq::gen_fib(e->h0, e->h1, e->lin.eval(env)));
        case Kind::Sign: {
            long long x = e->lin.eval(env);
            return Rat((x % 2 == 0) ? 1 : -1);
        }
        case Kind::Binom:
            return Rat(binomial(e->lin.eval(env), e->lin2.eval(env)));
        case Kind::Const:
            return e->value;
        case Kind::Pow: {
            long long x = e->lin.eval(env);
            return rat_pow(eval_expr(e->kids[0], env), x);
        }
        case Kind::Neg:
            return -eval_expr(e->kids[0], env);
        case Kind::Add: {
            Rat r(0);
            for (auto& k : e->kids) r += eval_expr(k, env);
            return r;
        }
        case Kind::Mul: {
            Rat r(1);
            for (auto& k : e->kids) {
                r *= eval_expr(k, env);
                if (r == 0) return r;
            }
            return r;
        }
        case Kind::Sum: {
            long long lo = e->lin.eval(env), hi = e->lin2.eval(env);
            Rat r(0);  // empty range sums to 0
            Env inner = env;
            for (long long j = lo; j <= hi; ++j) {
                inner[e->var] = j;
                r += eval_expr(e->kids[0], inner);
            }
            return r;
        }
    }
    throw std::logic_error("eval_expr: unreachable");
}

// ---------------------------------------------------------------------------
// Falsification sweeps
// ---------------------------------------------------------------------------
struct Counterexample {
    Env assignment;
    Rat left, right;
    size_t side_pair = 0;  // index of the left side in the failing adjacent pair
};

struct CheckReport {
    std::string identity_id;
    std::map<std::string, std::pair<long long, long long>> ranges;  // var -> [lo, hi]
    bool all_equal = true;
    std::optional<Counterexample> counterexample;
    double wall_seconds = 0.0;
    long long assignments = 0;
};

// Per-index sweep ranges: `count` consecutive values from each condition
// bound, shrunk proportionally so the Cartesian product stays under `cap`.
inline std::map<std::string, std::pair<long long, long long>> default_sweep(
    const Identity& id, long long count = 300, long long cap = 1000000) {
    std::set<std::string> idx = free_indices(id);
    std::map<std::string, std::pair<long long, long long>> ranges;
    if (idx.empty()) return ranges;
    long long per = count;
    double total = std::pow(static_cast<double>(count), static_cast<double>(idx.size()));
    if (total > static_cast<double>(cap))
        per = static_cast<long long>(std::floor(std::pow(static_cast<double>(cap),
                                                         1.0 / static_cast<double>(idx.size()))));
    if (per < 1) per = 1;
    for (auto& v : idx) {
        long long lo = 0;
        auto it = id.conditions.find(v);
        if (it != id.conditions.end()) lo = it->second;
        ranges[v] = {lo, lo + per - 1};
    }
    return ranges;
}

// Evaluates all adjacent side pairs at every assignment of the sweep, in
// lexicographic order; exact comparison, first counterexample reported.
inline CheckReport check_identity(
    const Identity& id, std::map<std::string, std::pair<long long, long long>> sweep = {}) {
    auto t0 = std::chrono::steady_clock::now();
    if (sweep.empty()) sweep = default_sweep(id);
    CheckReport rep;
    rep.identity_id = id.meta.id;
    rep.ranges = sweep;

    std::vector<std::string> vars;
    for (auto& [v, r] : sweep) vars.push_back(v);

    Env env;
    std::vector<long long> cur;
    for (auto& v : vars) cur.push_back(sweep[v].first);

    bool done = false;
    while (!done) {
        for (size_t i = 0; i < vars.size(); ++i) env[vars[i]] = cur[i];
        ++rep.assignments;
        Rat prev = eval_expr(id.sides[0], env);
        for (size_t s = 1; s < id.sides.size(); ++s) {
            Rat v = eval_expr(id.sides[s], env);
            if (v != prev) {
                rep.all_equal = false;
                rep.counterexample = Counterexample{env, prev, v, s - 1};
                rep.wall_seconds =
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                return rep;
            }
            prev = v;
        }
        if (vars.empty()) break;
        // advance lexicographically (last variable fastest)
        size_t i = vars.size();
        while (i > 0) {
            --i;
            if (++cur[i] <= sweep[vars[i]].second) break;
            cur[i] = sweep[vars[i]].first;
            if (i == 0) done = true;
        }
    }
    rep.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace fiblab

#endif
