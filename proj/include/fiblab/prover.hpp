#ifndef FIBLAB_PROVER_HPP
#define FIBLAB_PROVER_HPP

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fiblab/eval.hpp"
#include "fiblab/expr.hpp"
#include "fiblab/laurent.hpp"

namespace fiblab {

struct NormalizeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SumShapeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Binet normalization. Under a parity assumption sigma_i = (-1)^{n_i} per free
// index, beta^{n_i} = sigma_i * t_i^{-1} (beta = -1/alpha), so every closed
// Fibonacci/Lucas expression becomes a Laurent polynomial in t_i = alpha^{n_i}
// with coefficients in Q(sqrt(D)).
// ---------------------------------------------------------------------------
struct ParityCase {
    std::vector<std::string> vars;  // sorted free index names
    std::vector<int> sigma;         // +1 / -1 per var
    long long k = 1;                // recurrence parameter; D = k^2 + 4
};

namespace detail {

inline Rat sgnpow(int s, long long a) { return Rat((a % 2 == 0) ? 1 : s); }

// Splits a linear index form into per-variable coefficients + constant.
inline void split_lin(const LinForm& f, const ParityCase& pc, std::vector<int>& coeffs,
                      long long& c) {
    if (!f.is_linear())
        throw NormalizeError("nonlinear index form: " + f.str());
    coeffs.assign(pc.vars.size(), 0);
    c = f.constant;
    for (auto& [vars, a] : f.terms) {
        auto it = std::find(pc.vars.begin(), pc.vars.end(), vars[0]);
        if (it == pc.vars.end())
            throw NormalizeError("unexpected variable in index form: " + vars[0]);
        coeffs[static_cast<size_t>(it - pc.vars.begin())] = static_cast<int>(a);
    }
}

// (alpha^c * prod t_i^{a_i}  -+  beta^c * prod sigma_i^{a_i} t_i^{-a_i})
inline LaurentPoly binet_pair(const LinForm& f, const ParityCase& pc, long long k, bool lucas) {
    std::vector<int> coeffs;
    long long c;
    split_lin(f, pc, coeffs, c);
    long long D = k * k + 4;
    QuadRat alpha = field_alpha(k), beta = field_beta(k);

    LaurentPoly p(pc.vars.size());
    p.add_term(coeffs, alpha.pow(c));

    Rat sgn(1);
    for (size_t i = 0; i < coeffs.size(); ++i) sgn *= sgnpow(pc.sigma[i], coeffs[i]);
    std::vector<int> neg(coeffs.size());
    for (size_t i = 0; i < coeffs.size(); ++i) neg[i] = -coeffs[i];
    QuadRat psi_part = beta.pow(c) * QuadRat(sgn, Rat(0), D);
    p.add_term(neg, lucas ? psi_part : -psi_part);
    if (!lucas) p = p.scaled(inv_sqrt(D));
    return p;
}

}  // namespace detail

inline LaurentPoly binet_normalize(const ExprPtr& e, const ParityCase& pc) {
    size_t nv = pc.vars.size();
    switch (e->kind) {
        case Kind::Fib:
            if (pc.k != 1) throw NormalizeError("Fibonacci atom in a k-Fibonacci field");
            return detail::binet_pair(e->lin, pc, 1, false);
        case Kind::Lucas:
            if (pc.k != 1) throw NormalizeError("Lucas atom in a k-Fibonacci field");
            return detail::binet_pair(e->lin, pc, 1, true);
        case Kind::KFib:
            if (e->kparam != pc.k && !(e->kparam == 1 && pc.k == 1))
                throw NormalizeError("mixed k-Fibonacci parameters");
            return detail::binet_pair(e->lin, pc, pc.k, false);
        case Kind::GenFib: {
            if (pc.k != 1) throw NormalizeError("H atom in a k-Fibonacci field");
            // H_n = h0*F_{n-1} + h1*F_n
            LinForm shifted = e->lin;
            shifted.constant -= 1;
            LaurentPoly p = detail::binet_pair(shifted, pc, 1, false)
                                .scaled(QuadRat(mkrat(e->h0)));
            return p + detail::binet_pair(e->lin, pc, 1, false).scaled(QuadRat(mkrat(e->h1)));
        }
        case Kind::Sign: {
            std::vector<int> coeffs;
            long long c;
            detail::split_lin(e->lin, pc, coeffs, c);
            Rat sgn((c % 2 == 0) ? 1 : -1);
            for (size_t i = 0; i < coeffs.size(); ++i)
                sgn *= detail::sgnpow(pc.sigma[i], coeffs[i]);
            return LaurentPoly::constant(QuadRat(sgn), nv);
        }
        case Kind::Binom:
            if (e->lin.is_constant() && e->lin2.is_constant())
                return LaurentPoly::constant(
                    QuadRat(Rat(binomial(e->lin.constant, e->lin2.constant))), nv);
            throw NormalizeError("binomial with symbolic arguments");
        case Kind::Const:
            return LaurentPoly::constant(QuadRat(e->value), nv);
        case Kind::Pow: {
            if (!e->lin.is_constant())
                throw NormalizeError("symbolic exponent");
            long long x = e->lin.constant;
            if (x < 0) throw NormalizeError("negative exponent");
            return binet_normalize(e->kids[0], pc).pow(x);
        }
        case Kind::Neg:
            return LaurentPoly(nv) - binet_normalize(e->kids[0], pc);
        case Kind::Add: {
            LaurentPoly p(nv);
            for (auto& kid : e->kids) p = p + binet_normalize(kid, pc);
            return p;
        }
        case Kind::Mul: {
            LaurentPoly p = LaurentPoly::constant(QuadRat(Rat(1)), nv);
            for (auto& kid : e->kids) p = p * binet_normalize(kid, pc);
            return p;
        }
        case Kind::Sum:
            throw NormalizeError("sum node is not sum-free");
    }
    throw std::logic_error("binet_normalize: unreachable");
}

// ---------------------------------------------------------------------------
// Proof outcomes
// ---------------------------------------------------------------------------
enum class ProofStatus { Proven, VerifiedUpTo, Falsified };
enum class ProofMethod { ClosedBinet, SumInduction, BoundedOnly };

struct ParityTrace {
    std::vector<int> sigma;
    size_t residual_terms = 0;  // 0 iff this case's residuals all vanished
};

struct ProofOutcome {
    ProofStatus status = ProofStatus::VerifiedUpTo;
    ProofMethod method = ProofMethod::ClosedBinet;
    std::vector<ParityTrace> trace;  // 2^{#indices} entries for Binet proofs
    std::optional<Counterexample> counterexample;
    std::map<std::string, std::pair<long long, long long>> verified_range;
    std::map<std::string, long long> instance;  // parameter bindings, if any
    bool diagnostic_inconsistency = false;  // nonzero residual but no counterexample found
    std::string note;

    bool proven() const { return status == ProofStatus::Proven; }
};

inline std::string to_string(ProofStatus s) {
    switch (s) {
        case ProofStatus::Proven: return "Proven";
        case ProofStatus::VerifiedUpTo: return "VerifiedUpTo";
        case ProofStatus::Falsified: return "Falsified";
    }
    return "?";
}
inline std::string to_string(ProofMethod m) {
    switch (m) {
        case ProofMethod::ClosedBinet: return "ClosedBinet";
        case ProofMethod::SumInduction: return "SumInduction";
        case ProofMethod::BoundedOnly: return "BoundedOnly";
    }
    return "?";
}

namespace detail {

// The field parameter for an identity: plain F/L/H live in Q(sqrt5); a
// uniform k-Fibonacci identity lives in Q(sqrt(k^2+4)).
inline void scan_k(const ExprPtr& e, long long& k, bool& plain) {
    switch (e->kind) {
        case Kind::Fib:
        case Kind::Lucas:
        case Kind::GenFib:
            plain = true;
            break;
        case Kind::KFib:
            if (e->kparam > 1) {
                if (k > 1 && k != e->kparam) throw NormalizeError("mixed k parameters");
                k = e->kparam;
            } else {
                plain = true;
            }
            break;
        default:
            for (auto& kid : e->kids) scan_k(kid, k, plain);
            break;
    }
}

inline long long field_k(const Identity& id) {
    long long k = 1;
    bool plain = false;
    for (auto& s : id.sides) scan_k(s, k, plain);
    if (k > 1 && plain) throw NormalizeError("mixed sequence families");
    return k;
}

inline CheckReport bounded_check(const Identity& id, long long count) {
    return check_identity(id, default_sweep(id, count));
}

}  // namespace detail

// Closed-form proof: parity case split + Laurent residuals, every adjacent
// side pair. A nonzero residual is resolved by a falsification sweep.
inline ProofOutcome prove_closed(const Identity& id, long long sweep_count = 120) {
    ProofOutcome out;
    out.method = ProofMethod::ClosedBinet;

    ParityCase pc;
    for (auto& v : free_indices(id)) pc.vars.push_back(v);
    pc.k = detail::field_k(id);
    size_t m = pc.vars.size();
    if (m > 20) throw NormalizeError("too many free indices");

    bool all_zero = true;
    for (size_t mask = 0; mask < (size_t(1) << m); ++mask) {
        pc.sigma.assign(m, 1);
        for (size_t i = 0; i < m; ++i)
            if (mask & (size_t(1) << i)) pc.sigma[i] = -1;
        ParityTrace tr;
        tr.sigma = pc.sigma;
        for (size_t s = 0; s + 1 < id.sides.size(); ++s) {
            LaurentPoly res =
                binet_normalize(id.sides[s], pc) - binet_normalize(id.sides[s + 1], pc);
            tr.residual_terms += res.term_count();
        }
        if (tr.residual_terms > 0) all_zero = false;
        out.trace.push_back(std::move(tr));
    }

    if (all_zero) {
        out.status = ProofStatus::Proven;
        return out;
    }
    CheckReport rep = detail::bounded_check(id, sweep_count);
    out.verified_range = rep.ranges;
    if (rep.counterexample) {
        out.status = ProofStatus::Falsified;
        out.counterexample = rep.counterexample;
    } else {
        // nonzero residual but numerically clean: internal inconsistency
        out.status = ProofStatus::VerifiedUpTo;
        out.diagnostic_inconsistency = true;
        out.note = "internal error: nonzero Binet residual with no counterexample";
    }
    return out;
}

namespace detail {

struct SumTerm {
    Rat coeff;
    const Expr* sum;  // borrowed from the canonical side
};

struct SideDecomp {
    std::vector<SumTerm> sums;
    std::vector<ExprPtr> closed;
};

inline SideDecomp decompose_side(const ExprPtr& side) {
    SideDecomp d;
    std::vector<ExprPtr> terms;
    if (side->kind == Kind::Add)
        terms = side->kids;
    else
        terms = {side};
    for (auto& t : terms) {
        if (t->kind == Kind::Sum) {
            d.sums.push_back({Rat(1), t.get()});
        } else if (t->kind == Kind::Mul) {
            Rat c(1);
            const Expr* sum = nullptr;
            bool plain = true;
            for (auto& f : t->kids) {
                if (f->kind == Kind::Const) {
                    c *= f->value;
                } else if (f->kind == Kind::Sum && !sum) {
                    sum = f.get();
                } else {
                    plain = false;
                }
            }
            if (sum) {
                if (!plain) throw SumShapeError("sum multiplied by a non-constant factor");
                d.sums.push_back({c, sum});
            } else {
                d.closed.push_back(t);
            }
        } else {
            d.closed.push_back(t);
        }
    }
    return d;
}

// Difference of one side between n and n-1, as a closed expression.
inline ExprPtr side_difference(const SideDecomp& d, const std::string& n) {
    std::vector<ExprPtr> terms;
    for (auto& st : d.sums) {
        const Expr* s = st.sum;
        if (!s->lin.is_constant()) throw SumShapeError("sum lower limit not constant");
        if (s->lin2.coeff_of(n) != 1 || s->lin2.variables() != std::set<std::string>{n} ||
            !s->lin2.is_linear())
            throw SumShapeError("sum upper limit is not n + const");
        std::set<std::string> body_free = free_vars(s->kids[0]);
        body_free.erase(s->var);
        if (body_free.count(n))
            throw SumShapeError("sum body mentions the limit index directly");
        // Sum(k, a, n+c, body)(n) - same(n-1) = body[k := n+c]
        ExprPtr step = subst_var(s->kids[0], s->var, s->lin2);
        terms.push_back(canonicalize(make_mul({make_const(st.coeff), step})));
    }
    if (!d.closed.empty()) {
        ExprPtr closed = d.closed.size() == 1 ? d.closed[0] : make_add(d.closed);
        LinForm nm1 = LinForm::var(n);
        nm1.constant -= 1;
        terms.push_back(closed);
        terms.push_back(make_neg(subst_var(closed, n, nm1)));
    }
    if (terms.empty()) return make_const(Rat(0));
    return canonicalize(make_add(std::move(terms)));
}

}  // namespace detail

// Summation proof: base case at the condition bound plus a difference step
// proved closed-form (the parity split then includes the limit index).
inline ProofOutcome prove_sum(const Identity& id) {
    std::set<std::string> idx = free_indices(id);
    if (idx.size() != 1) throw SumShapeError("summation identity must have one free index");
    std::string n = *idx.begin();

    ProofOutcome out;
    out.method = ProofMethod::SumInduction;

    // difference-step identity per adjacent side pair
    for (size_t s = 0; s + 1 < id.sides.size(); ++s) {
        detail::SideDecomp dl = detail::decompose_side(id.sides[s]);
        detail::SideDecomp dr = detail::decompose_side(id.sides[s + 1]);
        Identity diff;
        diff.sides = {detail::side_difference(dl, n), detail::side_difference(dr, n)};
        ProofOutcome step = prove_closed(diff);
        if (!step.proven()) {
            if (step.status == ProofStatus::Falsified) {
                // the step can fail where the sum identity itself is false;
                // fall back to sweeping the original identity for a witness
                CheckReport rep = detail::bounded_check(id, 120);
                out.status = ProofStatus::Falsified;
                out.counterexample =
                    rep.counterexample ? rep.counterexample : step.counterexample;
                out.trace = step.trace;
                return out;
            }
            return step;
        }
        for (auto& tr : step.trace) out.trace.push_back(tr);
    }

    // base case, exactly at the condition bound
    long long lo = 0;
    auto it = id.conditions.find(n);
    if (it != id.conditions.end()) lo = it->second;
    Env env{{n, lo}};
    Rat prev = eval_expr(id.sides[0], env);
    for (size_t s = 1; s < id.sides.size(); ++s) {
        Rat v = eval_expr(id.sides[s], env);
        if (v != prev) {
            out.status = ProofStatus::Falsified;
            out.counterexample = Counterexample{env, prev, v, s - 1};
            return out;
        }
        prev = v;
    }
    out.status = ProofStatus::Proven;
    return out;
}

namespace detail {

inline bool contains_sum(const ExprPtr& e) {
    if (e->kind == Kind::Sum) return true;
    for (auto& k : e->kids)
        if (contains_sum(k)) return true;
    return false;
}

inline ProofOutcome prove_instance(const Identity& inst, long long bounded_count) {
    Identity id = inst;
    for (auto& s : id.sides) s = canonicalize(resolve(s));
    bool has_sum = false;
    for (auto& s : id.sides) has_sum = has_sum || contains_sum(s);
    try {
        if (has_sum) return prove_sum(id);
        return prove_closed(id);
    } catch (const SumShapeError&) {
    } catch (const NormalizeError&) {
    }
    // bounded verification only
    ProofOutcome out;
    out.method = ProofMethod::BoundedOnly;
    CheckReport rep = check_identity(id, default_sweep(id, bounded_count));
    out.verified_range = rep.ranges;
    if (rep.counterexample) {
        out.status = ProofStatus::Falsified;
        out.counterexample = rep.counterexample;
    } else {
        out.status = ProofStatus::VerifiedUpTo;
    }
    return out;
}

}  // namespace detail

// Dispatcher: parameterized identities are instantiated over their declared
// grids; parameter-free ones are proved closed-form or by sum induction, with
// a bounded sweep as the fallback for shapes outside the normal forms.
inline std::vector<ProofOutcome> prove(const Identity& id, long long bounded_count = 30) {
    if (id.params.empty()) return {detail::prove_instance(id, bounded_count)};

    std::vector<std::string> names;
    for (auto& [p, r] : id.params) names.push_back(p);
    std::vector<ProofOutcome> outs;
    std::map<std::string, long long> binding;
    std::function<void(size_t)> walk = [&](size_t i) {
        if (i == names.size()) {
            Identity inst = substitute(id, binding);
            ProofOutcome o = detail::prove_instance(inst, bounded_count);
            o.instance = binding;
            outs.push_back(std::move(o));
            return;
        }
        const ParamRange& r = id.params.at(names[i]);
        for (long long v = r.lo; v <= r.hi; ++v) {
            binding[names[i]] = v;
            walk(i + 1);
        }
    };
    walk(0);
    return outs;
}

// Worst status across a batch (chains and grids report their weakest link).
inline ProofStatus aggregate_status(const std::vector<ProofOutcome>& outs) {
    ProofStatus st = ProofStatus::Proven;
    for (auto& o : outs) {
        if (o.status == ProofStatus::Falsified) return ProofStatus::Falsified;
        if (o.status == ProofStatus::VerifiedUpTo) st = ProofStatus::VerifiedUpTo;
    }
    return st;
}

}  // namespace fiblab

#endif
