#ifndef FIBLAB_EXPR_HPP
#define FIBLAB_EXPR_HPP

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fiblab/rational.hpp"

namespace fiblab {

// ---------------------------------------------------------------------------
// LinForm: integer-linear combination of variables plus a constant. Terms may
// carry a product of up to two variables (e.g. k*n) so that parameterized
// subscripts like F[k*n+m] become linear once the parameter is bound.
// ---------------------------------------------------------------------------
struct LinForm {
    // key: sorted list of 1 or 2 variable names; value: nonzero coefficient
    std::map<std::vector<std::string>, long long> terms;
    long long constant = 0;

    LinForm() = default;
    explicit LinForm(long long c) : constant(c) {}

    static LinForm var(const std::string& v, long long coeff = 1) {
        LinForm f;
        if (coeff != 0) f.terms[{v}] = coeff;
        return f;
    }

    bool is_constant() const { return terms.empty(); }

    bool is_linear() const {
        for (auto& [k, c] : terms)
            if (k.size() > 1) return false;
        return true;
    }

    void add_term(std::vector<std::string> vars, long long coeff) {
        std::sort(vars.begin(), vars.end());
        if (vars.size() > 2) throw std::runtime_error("LinForm: term with more than two variables");
        auto it = terms.find(vars);
        long long c = (it == terms.end() ? 0 : it->second) + coeff;
        if (c == 0) {
            if (it != terms.end()) terms.erase(it);
        } else {
            terms[vars] = c;
        }
    }

    LinForm& operator+=(const LinForm& o) {
        for (auto& [k, c] : o.terms) add_term(k, c);
        constant += o.constant;
        return *this;
    }

    LinForm operator+(const LinForm& o) const {
        LinForm r = *this;
        r += o;
        return r;
    }

    LinForm operator-(const LinForm& o) const {
        LinForm r = *this;
        for (auto& [k, c] : o.terms) r.add_term(k, -c);
        r.constant -= o.constant;
        return r;
    }

    LinForm scaled(long long s) const {
        LinForm r;
        r.constant = constant * s;
        if (s != 0)
            for (auto& [k, c] : terms) r.terms[k] = c * s;
        return r;
    }

    // Coefficient of a plain single-variable term.
    long long coeff_of(const std::string& v) const {
        auto it = terms.find(std::vector<std::string>{v});
        return it == terms.end() ? 0 : it->second;
    }

    std::set<std::string> variables() const {
        std::set<std::string> out;
        for (auto& [k, c] : terms) out.insert(k.begin(), k.end());
        return out;
    }

    bool mentions(const std::string& v) const {
        for (auto& [k, c] : terms)
            if (std::find(k.begin(), k.end(), v) != k.end()) return true;
        return false;
    }

    // Substitute variable v by the form r (used for parameter binding, sum
    // unrolling and the n -> n-1 difference step). If v occurs inside a
    // two-variable product, r must be constant.
    LinForm substituted(const std::string& v, const LinForm& r) const {
        LinForm out;
        out.constant = constant;
        for (auto& [vars, c] : terms) {
            size_t occ = static_cast<size_t>(std::count(vars.begin(), vars.end(), v));
            if (occ == 0) {
                out.add_term(vars, c);
            } else if (vars.size() == 1) {
                out += r.scaled(c);
            } else if (occ == 2) {
                if (!r.is_constant()) throw std::runtime_error("LinForm: nonlinear substitution");
                out.constant += c * r.constant * r.constant;
            } else {
                std::string other = (vars[0] == v) ? vars[1] : vars[0];
                if (r.is_constant()) {
                    out.add_term({other}, c * r.constant);
                } else {
                    // r linear: c*(r)*other
                    for (auto& [rv, rc] : r.terms) {
                        std::vector<std::string> nv = rv;
                        nv.push_back(other);
                        out.add_term(nv, c * rc);
                    }
                    if (r.constant != 0) out.add_term({other}, c * r.constant);
                }
            }
        }
        return out;
    }

    long long eval(const std::map<std::string, long long>& env) const {
        long long r = constant;
        for (auto& [vars, c] : terms) {
            long long p = c;
            for (auto& v : vars) {
                auto it = env.find(v);
                if (it == env.end()) throw std::runtime_error("unbound variable: " + v);
                p *= it->second;
            }
            r += p;
        }
        return r;
    }

    bool operator==(const LinForm& o) const { return constant == o.constant && terms == o.terms; }
    bool operator<(const LinForm& o) const {
        if (constant != o.constant) return constant < o.constant;
        return terms < o.terms;
    }

    std::string str() const {
        std::string s;
        bool first = true;
        for (auto& [vars, c] : terms) {
            long long a = c;
            if (first) {
                if (a < 0) {
                    s += "-";
                    a = -a;
                }
            } else {
                s += (a < 0) ? "-" : "+";
                if (a < 0) a = -a;
            }
            first = false;
            if (vars.size() == 1) {
                if (a != 1) s += std::to_string(a);
                s += vars[0];
            } else {
                if (a != 1) s += std::to_string(a) + "*";
                s += vars[0] + "*" + vars[1];
            }
        }
        if (first) {
            s = std::to_string(constant);
        } else if (constant != 0) {
            s += (constant < 0) ? "-" : "+";
            s += std::to_string(constant < 0 ? -constant : constant);
        }
        return s;
    }
};

// ---------------------------------------------------------------------------
// Expression AST
// ---------------------------------------------------------------------------
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class Kind { Fib, Lucas, KFib, GenFib, Sign, Binom, Const, Pow, Neg, Add, Mul, Sum };

struct Expr {
    Kind kind;
    LinForm lin;       // Fib/Lucas/KFib/GenFib index; Sign exponent; Pow exponent;
                       // Binom upper; Sum lower
    LinForm lin2;      // Binom lower; Sum upper
    long long kparam = 0;       // KFib k
    long long h0 = 0, h1 = 0;   // GenFib initial conditions
    Rat value;                  // Const
    std::string var;            // Sum bound variable
    std::vector<ExprPtr> kids;  // Pow/Neg: 1 child; Add/Mul: n; Sum: body

    explicit Expr(Kind k) : kind(k) {}
};

inline ExprPtr make_fib(LinForm l) {
    auto e = std::make_shared<Expr>(Kind::Fib);
    e->lin = std::move(l);
    return e;
}
inline ExprPtr make_lucas(LinForm l) {
    auto e = std::make_shared<Expr>(Kind::Lucas);
    e->lin = std::move(l);
    return e;
}
inline ExprPtr make_kfib(long long k, LinForm l) {
    auto e = std::make_shared<Expr>(Kind::KFib);
    e->kparam = k;
    e->lin = std::move(l);
    return e;
}
inline ExprPtr make_genfib(long long h0, long long h1, LinForm l) {
    auto e = std::make_shared<Expr>(Kind::GenFib);
    e->h0 = h0;
    e->h1 = h1;
    e->lin = std::move(l);
    return e;
}
inline ExprPtr make_sign(LinForm l) {
    auto e = std::make_shared<Expr>(Kind::Sign);
    e->lin = std::move(l);
    return e;
}
inline ExprPtr make_binom(LinForm upper, LinForm lower) {
    auto e = std::make_shared<Expr>(Kind::Binom);
    e->lin = std::move(upper);
    e->lin2 = std::move(lower);
    return e;
}
inline ExprPtr make_const(Rat v) {
    auto e = std::make_shared<Expr>(Kind::Const);
    e->value = std::move(v);
    return e;
}
inline ExprPtr make_pow(ExprPtr base, LinForm exp) {
    auto e = std::make_shared<Expr>(Kind::Pow);
    e->kids = {std::move(base)};
    e->lin = std::move(exp);
    return e;
}
inline ExprPtr make_neg(ExprPtr x) {
    auto e = std::make_shared<Expr>(Kind::Neg);
    e->kids = {std::move(x)};
    return e;
}
inline ExprPtr make_add(std::vector<ExprPtr> kids) {
    auto e = std::make_shared<Expr>(Kind::Add);
    e->kids = std::move(kids);
    return e;
}
inline ExprPtr make_mul(std::vector<ExprPtr> kids) {
    auto e = std::make_shared<Expr>(Kind::Mul);
    e->kids = std::move(kids);
    return e;
}
inline ExprPtr make_sum(std::string var, LinForm lower, LinForm upper, ExprPtr body) {
    auto e = std::make_shared<Expr>(Kind::Sum);
    e->var = std::move(var);
    e->lin = std::move(lower);
    e->lin2 = std::move(upper);
    e->kids = {std::move(body)};
    return e;
}

// ---------------------------------------------------------------------------
// Identity: an equality chain of >= 2 sides plus per-index lower bounds and
// declared symbolic parameters with instantiation ranges.
// ---------------------------------------------------------------------------
struct ParamRange {
    long long lo = 0, hi = 0;
};

struct IdentityMeta {
    std::string id;
    int year = 0;
    std::string authors;
    std::string source_tag;
    std::string claimed_class;
    std::string rediscovered;
};

struct Identity {
    std::vector<ExprPtr> sides;                  // equality chain
    std::map<std::string, long long> conditions; // index variable -> lower bound
    std::map<std::string, ParamRange> params;    // declared parameters
    IdentityMeta meta;
};

// ---------------------------------------------------------------------------
// Structural equality
// ---------------------------------------------------------------------------
inline bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case Kind::Fib:
        case Kind::Lucas:
        case Kind::Sign:
            return a->lin == b->lin;
        case Kind::KFib:
            return a->kparam == b->kparam && a->lin == b->lin;
        case Kind::GenFib:
            return a->h0 == b->h0 && a->h1 == b->h1 && a->lin == b->lin;
        case Kind::Binom:
            return a->lin == b->lin && a->lin2 == b->lin2;
        case Kind::Const:
            return a->value == b->value;
        case Kind::Pow:
            return a->lin == b->lin && expr_equal(a->kids[0], b->kids[0]);
        case Kind::Neg:
            return expr_equal(a->kids[0], b->kids[0]);
        case Kind::Add:
        case Kind::Mul: {
            if (a->kids.size() != b->kids.size()) return false;
            for (size_t i = 0; i < a->kids.size(); ++i)
                if (!expr_equal(a->kids[i], b->kids[i])) return false;
            return true;
        }
        case Kind::Sum:
            return a->var == b->var && a->lin == b->lin && a->lin2 == b->lin2 &&
                   expr_equal(a->kids[0], b->kids[0]);
    }
    return false;
}

// ---------------------------------------------------------------------------
// Free variables
// ---------------------------------------------------------------------------
inline void collect_free_vars(const ExprPtr& e, std::set<std::string>& bound,
                              std::set<std::string>& out) {
    auto take = [&](const LinForm& f) {
        for (auto& v : f.variables())
            if (!bound.count(v)) out.insert(v);
    };
    switch (e->kind) {
        case Kind::Fib:
        case Kind::Lucas:
        case Kind::KFib:
        case Kind::GenFib:
        case Kind::Sign:
            take(e->lin);
            break;
        case Kind::Binom:
            take(e->lin);
            take(e->lin2);
            break;
        case Kind::Const:
            break;
        case Kind::Pow:
            take(e->lin);
            collect_free_vars(e->kids[0], bound, out);
            break;
        case Kind::Neg:
            collect_free_vars(e->kids[0], bound, out);
            break;
        case Kind::Add:
        case Kind::Mul:
            for (auto& k : e->kids) collect_free_vars(k, bound, out);
            break;
        case Kind::Sum:
            take(e->lin);
            take(e->lin2);
            bound.insert(e->var);
            collect_free_vars(e->kids[0], bound, out);
            bound.erase(e->var);
            break;
    }
}

inline std::set<std::string> free_vars(const ExprPtr& e) {
    std::set<std::string> bound, out;
    collect_free_vars(e, bound, out);
    return out;
}

inline std::set<std::string> free_vars(const Identity& id) {
    std::set<std::string> out;
    for (auto& s : id.sides) {
        std::set<std::string> bound;
        collect_free_vars(s, bound, out);
    }
    return out;
}

// Free index variables = free variables that are not declared parameters.
inline std::set<std::string> free_indices(const Identity& id) {
    std::set<std::string> out = free_vars(id);
    for (auto& [p, r] : id.params) out.erase(p);
    return out;
}

// ---------------------------------------------------------------------------
// Substitution of a variable by a linear form, everywhere (indices, exponents,
// sum limits, binomial arguments). Sum bound variables shadow.
// ---------------------------------------------------------------------------
inline ExprPtr subst_var(const ExprPtr& e, const std::string& v, const LinForm& r) {
    auto sub = [&](const LinForm& f) { return f.substituted(v, r); };
    switch (e->kind) {
        case Kind::Fib:
            return make_fib(sub(e->lin));
        case Kind::Lucas:
            return make_lucas(sub(e->lin));
        case Kind::KFib:
            return make_kfib(e->kparam, sub(e->lin));
        case Kind::GenFib:
            return make_genfib(e->h0, e->h1, sub(e->lin));
        case Kind::Sign:
            return make_sign(sub(e->lin));
        case Kind::Binom:
            return make_binom(sub(e->lin), sub(e->lin2));
        case Kind::Const:
            return e;
        case Kind::Pow:
            return make_pow(subst_var(e->kids[0], v, r), sub(e->lin));
        case Kind::Neg:
            return make_neg(subst_var(e->kids[0], v, r));
        case Kind::Add:
        case Kind::Mul: {
            std::vector<ExprPtr> kids;
            kids.reserve(e->kids.size());
            for (auto& k : e->kids) kids.push_back(subst_var(k, v, r));
            return e->kind == Kind::Add ? make_add(std::move(kids)) : make_mul(std::move(kids));
        }
        case Kind::Sum: {
            if (e->var == v) return e;  // shadowed
            return make_sum(e->var, sub(e->lin), sub(e->lin2), subst_var(e->kids[0], v, r));
        }
    }
    throw std::logic_error("subst_var: unreachable");
}

// ---------------------------------------------------------------------------
// Canonicalization: flatten Add/Mul, fold constants, collect repeated factors
// into powers, drop units. Term order is preserved.
// ---------------------------------------------------------------------------
ExprPtr canonicalize(const ExprPtr& e);

namespace detail {

inline bool is_const(const ExprPtr& e) { return e->kind == Kind::Const; }

inline ExprPtr canon_mul(std::vector<ExprPtr> factors) {
    // flatten
    std::vector<ExprPtr> flat;
    Rat c(1);
    for (auto& f : factors) {
        if (f->kind == Kind::Mul) {
            for (auto& k : f->kids) {
                if (is_const(k))
                    c *= k->value;
                else
                    flat.push_back(k);
            }
        } else if (is_const(f)) {
            c *= f->value;
        } else {
            flat.push_back(f);
        }
    }
    if (c == 0) return make_const(Rat(0));
    // collect repeated bases into powers (ground exponents only)
    std::vector<std::pair<ExprPtr, LinForm>> collected;  // base, exponent
    for (auto& f : flat) {
        ExprPtr base = f;
        LinForm exp(1);
        if (f->kind == Kind::Pow) {
            base = f->kids[0];
            exp = f->lin;
        }
        bool merged = false;
        for (auto& [b, x] : collected) {
            if (expr_equal(b, base)) {
                x += exp;
                merged = true;
                break;
            }
        }
        if (!merged) collected.emplace_back(base, exp);
    }
    std::vector<ExprPtr> out;
    if (c != 1) out.push_back(make_const(c));
    for (auto& [b, x] : collected) {
        if (x.is_constant() && x.constant == 0) continue;
        if (x.is_constant() && x.constant == 1)
            out.push_back(b);
        else
            out.push_back(make_pow(b, x));
    }
    if (out.empty()) return make_const(c);
    if (out.size() == 1) return out[0];
    return make_mul(std::move(out));
}

inline ExprPtr canon_add(std::vector<ExprPtr> terms) {
    std::vector<ExprPtr> flat;
    Rat c(0);
    bool saw_const = false;
    for (auto& t : terms) {
        if (t->kind == Kind::Add) {
            for (auto& k : t->kids) {
                if (is_const(k)) {
                    c += k->value;
                    saw_const = true;
                } else {
                    flat.push_back(k);
                }
            }
        } else if (is_const(t)) {
            c += t->value;
            saw_const = true;
        } else {
            flat.push_back(t);
        }
    }
    if (saw_const && c != 0) flat.push_back(make_const(c));
    if (flat.empty()) return make_const(Rat(0));
    if (flat.size() == 1) return flat[0];
    return make_add(std::move(flat));
}

}  // namespace detail

inline ExprPtr canonicalize(const ExprPtr& e) {
    switch (e->kind) {
        case Kind::Fib:
        case Kind::Lucas:
        case Kind::KFib:
        case Kind::GenFib:
        case Kind::Binom:
            return e;
        case Kind::Sign:
            if (e->lin.is_constant())
                return make_const(Rat((e->lin.constant % 2 == 0) ? 1 : -1));
            return e;
        case Kind::Const:
            return e;
        case Kind::Pow: {
            ExprPtr base = canonicalize(e->kids[0]);
            if (e->lin.is_constant()) {
                if (e->lin.constant == 0) return make_const(Rat(1));
                if (e->lin.constant == 1) return base;
                if (base->kind == Kind::Const)
                    return make_const(rat_pow(base->value, e->lin.constant));
                if (base->kind == Kind::Pow && base->lin.is_constant())
                    return make_pow(base->kids[0], LinForm(base->lin.constant * e->lin.constant));
            }
            return make_pow(base, e->lin);
        }
        case Kind::Neg: {
            ExprPtr x = canonicalize(e->kids[0]);
            if (x->kind == Kind::Const) return make_const(-x->value);
            return detail::canon_mul({make_const(Rat(-1)), x});
        }
        case Kind::Add: {
            std::vector<ExprPtr> kids;
            for (auto& k : e->kids) kids.push_back(canonicalize(k));
            return detail::canon_add(std::move(kids));
        }
        case Kind::Mul: {
            std::vector<ExprPtr> kids;
            for (auto& k : e->kids) kids.push_back(canonicalize(k));
            return detail::canon_mul(std::move(kids));
        }
        case Kind::Sum:
            return make_sum(e->var, e->lin, e->lin2, canonicalize(e->kids[0]));
    }
    throw std::logic_error("canonicalize: unreachable");
}

inline Identity canonicalize(const Identity& id) {
    Identity out = id;
    for (auto& s : out.sides) s = canonicalize(s);
    return out;
}

// ---------------------------------------------------------------------------
// Resolve: after parameter binding, unroll sums with ground limits, fold
// ground binomials and sign factors, and simplify ground powers.
// ---------------------------------------------------------------------------
inline ExprPtr resolve(const ExprPtr& e) {
    switch (e->kind) {
        case Kind::Fib:
        case Kind::Lucas:
        case Kind::KFib:
        case Kind::GenFib:
        case Kind::Const:
            return e;
        case Kind::Sign:
            if (e->lin.is_constant())
                return make_const(Rat((e->lin.constant % 2 == 0) ? 1 : -1));
            return e;
        case Kind::Binom:
            if (e->lin.is_constant() && e->lin2.is_constant())
                return make_const(Rat(binomial(e->lin.constant, e->lin2.constant)));
            return e;
        case Kind::Pow:
            return make_pow(resolve(e->kids[0]), e->lin);
        case Kind::Neg:
            return make_neg(resolve(e->kids[0]));
        case Kind::Add:
        case Kind::Mul: {
            std::vector<ExprPtr> kids;
            for (auto& k : e->kids) kids.push_back(resolve(k));
            return e->kind == Kind::Add ? make_add(std::move(kids)) : make_mul(std::move(kids));
        }
        case Kind::Sum: {
            if (e->lin.is_constant() && e->lin2.is_constant()) {
                std::vector<ExprPtr> terms;
                for (long long j = e->lin.constant; j <= e->lin2.constant; ++j)
                    terms.push_back(resolve(subst_var(e->kids[0], e->var, LinForm(j))));
                if (terms.empty()) return make_const(Rat(0));
                return make_add(std::move(terms));
            }
            return make_sum(e->var, e->lin, e->lin2, resolve(e->kids[0]));
        }
    }
    throw std::logic_error("resolve: unreachable");
}

// ---------------------------------------------------------------------------
// substitute: bind declared parameters, then resolve + canonicalize. The
// result is a parameter-free identity with parameter-bounded sums unrolled.
// ---------------------------------------------------------------------------
inline Identity substitute(const Identity& id, const std::map<std::string, long long>& bindings) {
    for (auto& [p, range] : id.params) {
        auto it = bindings.find(p);
        if (it == bindings.end()) throw std::runtime_error("substitute: missing binding for " + p);
        if (it->second < range.lo || it->second > range.hi)
            throw std::runtime_error("substitute: binding for " + p + " out of declared range");
    }
    Identity out = id;
    out.params.clear();
    for (auto& s : out.sides) {
        ExprPtr x = s;
        for (auto& [p, val] : bindings)
            if (id.params.count(p)) x = subst_var(x, p, LinForm(val));
        s = canonicalize(resolve(x));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Rendering (canonical text; parse . render is the identity on canonical ASTs)
// ---------------------------------------------------------------------------
std::string render(const ExprPtr& e);

namespace detail {

inline bool is_negative_term(const ExprPtr& t) {
    if (t->kind == Kind::Const) return t->value < 0;
    if (t->kind == Kind::Mul && !t->kids.empty() && t->kids[0]->kind == Kind::Const)
        return t->kids[0]->value < 0;
    return false;
}

inline ExprPtr negated_term(const ExprPtr& t) {
    if (t->kind == Kind::Const) return make_const(-t->value);
    std::vector<ExprPtr> kids = t->kids;
    Rat c = -kids[0]->value;
    if (c == 1 && kids.size() > 1) {
        kids.erase(kids.begin());
        if (kids.size() == 1) return kids[0];
    } else {
        kids[0] = make_const(c);
    }
    return make_mul(std::move(kids));
}

inline std::string render_factor(const ExprPtr& e) {
    bool parens = (e->kind == Kind::Add || e->kind == Kind::Mul || e->kind == Kind::Neg ||
                   (e->kind == Kind::Const && e->value < 0));
    if (parens) return "(" + render(e) + ")";
    return render(e);
}

}  // namespace detail

inline std::string render(const ExprPtr& e) {
    switch (e->kind) {
        case Kind::Fib:
            return "F[" + e->lin.str() + "]";
        case Kind::Lucas:
            return "L[" + e->lin.str() + "]";
        case Kind::KFib:
            return "Fk{" + std::to_string(e->kparam) + "}[" + e->lin.str() + "]";
        case Kind::GenFib:
            return "H{" + std::to_string(e->h0) + "," + std::to_string(e->h1) + "}[" +
                   e->lin.str() + "]";
        case Kind::Sign:
            return "(-1)^(" + e->lin.str() + ")";
        case Kind::Binom:
            return "C(" + e->lin.str() + "," + e->lin2.str() + ")";
        case Kind::Const: {
            Rat v = e->value;
            std::string s = v.get_str();
            return s;
        }
        case Kind::Pow: {
            std::string b = detail::render_factor(e->kids[0]);
            if (e->lin.is_constant() && e->lin.constant >= 0)
                return b + "^" + std::to_string(e->lin.constant);
            return b + "^(" + e->lin.str() + ")";
        }
        case Kind::Neg:
            return "-" + detail::render_factor(e->kids[0]);
        case Kind::Add: {
            std::string s;
            for (size_t i = 0; i < e->kids.size(); ++i) {
                const ExprPtr& t = e->kids[i];
                if (i == 0) {
                    s += detail::is_negative_term(t) ? "-" + render(detail::negated_term(t))
                                                     : render(t);
                } else if (detail::is_negative_term(t)) {
                    s += " - " + render(detail::negated_term(t));
                } else {
                    s += " + " + render(t);
                }
            }
            return s;
        }
        case Kind::Mul: {
            std::string s;
            for (size_t i = 0; i < e->kids.size(); ++i) {
                if (i) s += "*";
                const ExprPtr& f = e->kids[i];
                bool parens = (f->kind == Kind::Add || f->kind == Kind::Neg ||
                               (f->kind == Kind::Const && f->value < 0));
                s += parens ? "(" + render(f) + ")" : render(f);
            }
            return s;
        }
        case Kind::Sum:
            return "Sum(" + e->var + "," + e->lin.str() + "," + e->lin2.str() + "," +
                   render(e->kids[0]) + ")";
    }
    throw std::logic_error("render: unreachable");
}

inline std::string render(const Identity& id) {
    std::string s;
    for (size_t i = 0; i < id.sides.size(); ++i) {
        if (i) s += " = ";
        s += render(id.sides[i]);
    }
    if (!id.conditions.empty()) {
        s += " ; ";
        bool first = true;
        for (auto& [v, b] : id.conditions) {
            if (!first) s += ", ";
            first = false;
            s += v + " >= " + std::to_string(b);
        }
    }
    return s;
}

}  // namespace fiblab

#endif
