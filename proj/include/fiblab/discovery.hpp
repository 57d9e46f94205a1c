#ifndef FIBLAB_DISCOVERY_HPP
#define FIBLAB_DISCOVERY_HPP

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "fiblab/eval.hpp"
#include "fiblab/expr.hpp"
#include "fiblab/prover.hpp"

namespace fiblab {

// ---------------------------------------------------------------------------
// Basis: degree-3 Fibonacci monomials F[n+a]F[n+b]F[n+c] over an offset
// window, plus optional target columns (e.g. F[3n+c], (-1)^n*F[n+c], the
// constant 1). All expressions are in the single index variable "n".
// ---------------------------------------------------------------------------
struct Basis {
    std::vector<ExprPtr> monomials;
    std::vector<std::string> names;  // canonical renders, pairwise distinct

    Basis(long long window_lo, long long window_hi, const std::vector<ExprPtr>& targets) {
        if (window_lo > window_hi) throw std::invalid_argument("Basis: empty window");
        for (long long a = window_lo; a <= window_hi; ++a)
            for (long long b = a; b <= window_hi; ++b)
                for (long long c = b; c <= window_hi; ++c) {
                    LinForm la = LinForm::var("n"), lb = LinForm::var("n"),
                            lc = LinForm::var("n");
                    la.constant = a;
                    lb.constant = b;
                    lc.constant = c;
                    add(canonicalize(make_mul({make_fib(la), make_fib(lb), make_fib(lc)})));
                }
        for (auto& t : targets) add(canonicalize(t));
        if (monomials.size() > 200) throw std::invalid_argument("Basis: more than 200 monomials");
    }

    size_t size() const { return monomials.size(); }

  private:
    void add(ExprPtr e) {
        std::string s = render(e);
        for (auto& n : names)
            if (n == s) throw std::invalid_argument("Basis: duplicate monomial " + s);
        names.push_back(std::move(s));
        monomials.push_back(std::move(e));
    }
};

struct RelationCandidate {
    std::vector<Int> coeffs;       // full basis length; primitive, first nonzero > 0
    std::vector<size_t> support;   // indices of nonzero coefficients

    Int one_norm() const {
        Int s(0);
        for (auto& c : coeffs) s += abs(c);
        return s;
    }
};

namespace discovery_detail {

constexpr std::uint64_t P = (std::uint64_t(1) << 61) - 1;  // Mersenne prime

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % P);
}
inline std::uint64_t submod(std::uint64_t a, std::uint64_t b) { return (a + P - b) % P; }
inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e) {
        if (e & 1) r = mulmod(r, a);
        a = mulmod(a, a);
        e >>= 1;
    }
    return r;
}
inline std::uint64_t invmod(std::uint64_t a) { return powmod(a, P - 2); }

inline std::uint64_t to_mod(const Int& v) {
    unsigned long r = mpz_fdiv_ui(v.get_mpz_t(), P);
    return static_cast<std::uint64_t>(r);
}

// Row-reduce (mod P) in place; returns rank. rows x cols, row-major.
inline size_t rref(std::vector<std::vector<std::uint64_t>>& m) {
    size_t rows = m.size(), cols = rows ? m[0].size() : 0, r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t piv = r;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[r]);
        std::uint64_t inv = invmod(m[r][c]);
        for (size_t j = c; j < cols; ++j) m[r][j] = mulmod(m[r][j], inv);
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            std::uint64_t f = m[i][c];
            for (size_t j = c; j < cols; ++j) m[i][j] = submod(m[i][j], mulmod(f, m[r][j]));
        }
        ++r;
    }
    return r;
}

// A set of s columns is a circuit (minimal dependent set) iff its rank is
// exactly s-1 and the resulting one-dimensional kernel has no zero
// coordinate: a zero coordinate would exhibit a smaller dependent subset.
// Tests that property mod P by eliminating on the transposed s x d system.
inline bool is_circuit_mod_p(std::vector<std::vector<std::uint64_t>> vecs) {
    size_t s = vecs.size(), d = vecs[0].size();
    // kernel tracking: augment each row with the identity
    std::vector<std::vector<std::uint64_t>> aug(s, std::vector<std::uint64_t>(s, 0));
    for (size_t i = 0; i < s; ++i) aug[i][i] = 1;
    size_t r = 0;
    for (size_t c = 0; c < d && r < s; ++c) {
        size_t piv = r;
        while (piv < s && vecs[piv][c] == 0) ++piv;
        if (piv == s) continue;
        std::swap(vecs[piv], vecs[r]);
        std::swap(aug[piv], aug[r]);
        std::uint64_t inv = invmod(vecs[r][c]);
        for (size_t j = c; j < d; ++j) vecs[r][j] = mulmod(vecs[r][j], inv);
        for (size_t j = 0; j < s; ++j) aug[r][j] = mulmod(aug[r][j], inv);
        for (size_t i = r + 1; i < s; ++i) {
            if (vecs[i][c] == 0) continue;
            std::uint64_t f = vecs[i][c];
            for (size_t j = c; j < d; ++j) vecs[i][j] = submod(vecs[i][j], mulmod(f, vecs[r][j]));
            for (size_t j = 0; j < s; ++j) aug[i][j] = submod(aug[i][j], mulmod(f, aug[r][j]));
        }
        ++r;
    }
    if (r != s - 1) return false;
    // rows r..s-1 of aug span the kernel; here exactly one row
    for (size_t j = 0; j < s; ++j)
        if (aug[s - 1][j] == 0) return false;
    return true;
}

// Exact 1-dimensional nullspace of the sample submatrix restricted to the
// given columns; empty result if the kernel is not exactly 1-dimensional.
inline std::vector<Int> exact_kernel(const std::vector<std::vector<Int>>& matrix,
                                     const std::vector<size_t>& cols) {
    size_t s = cols.size(), rows = matrix.size();
    // rational Gaussian elimination on rows x s
    std::vector<std::vector<Rat>> m(rows, std::vector<Rat>(s));
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < s; ++j) m[i][j] = Rat(matrix[i][cols[j]]);
    std::vector<long long> pivot_col;
    size_t r = 0;
    for (size_t c = 0; c < s && r < rows; ++c) {
        size_t piv = r;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[r]);
        Rat inv = Rat(1) / m[r][c];
        for (size_t j = c; j < s; ++j) m[r][j] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rat f = m[i][c];
            for (size_t j = c; j < s; ++j) m[i][j] -= f * m[r][j];
        }
        pivot_col.push_back(static_cast<long long>(c));
        ++r;
    }
    if (s - r != 1) return {};
    // the single free column determines the kernel vector
    std::vector<bool> is_pivot(s, false);
    for (long long c : pivot_col) is_pivot[static_cast<size_t>(c)] = true;
    size_t free_c = 0;
    while (free_c < s && is_pivot[free_c]) ++free_c;
    std::vector<Rat> v(s, Rat(0));
    v[free_c] = Rat(1);
    for (size_t i = 0; i < pivot_col.size(); ++i)
        v[static_cast<size_t>(pivot_col[i])] = -m[i][free_c];
    // scale to a primitive integer vector, first nonzero positive
    Int lcm(1);
    for (auto& x : v) {
        Int den = x.get_den();
        lcm = lcm / gcd(lcm, den) * den;
    }
    std::vector<Int> out(s);
    for (size_t j = 0; j < s; ++j) {
        Rat scaled = v[j] * Rat(lcm);
        out[j] = scaled.get_num();
    }
    Int g(0);
    for (auto& x : out) g = gcd(g, x);
    if (g != 0)
        for (auto& x : out) x /= g;
    for (auto& x : out) {
        if (x == 0) continue;
        if (x < 0)
            for (auto& y : out) y = -y;
        break;
    }
    return out;
}

}  // namespace discovery_detail

// ---------------------------------------------------------------------------
// search: exact integer-relation search. Minimal dependent column subsets
// (support <= 4) are enumerated mod a large prime, then confirmed by exact
// rational nullspace computation and re-evaluation on a disjoint index range.
// ---------------------------------------------------------------------------
inline std::vector<RelationCandidate> search(const Basis& basis,
                                             const std::vector<long long>& samples,
                                             size_t max_support = 4) {
    namespace dd = discovery_detail;
    if (max_support < 1 || max_support > 4)
        throw std::invalid_argument("search: max_support must be in 1..4");
    size_t mcols = basis.size();
    if (samples.size() < mcols + 5)
        throw std::invalid_argument("search: need at least |basis| + 5 samples");

    // exact sample matrix (all entries are integers)
    std::vector<std::vector<Int>> matrix(samples.size(), std::vector<Int>(mcols));
    for (size_t i = 0; i < samples.size(); ++i) {
        Env env{{"n", samples[i]}};
        for (size_t j = 0; j < mcols; ++j) {
            Rat v = eval_expr(basis.monomials[j], env);
            if (v.get_den() != 1)
                throw std::logic_error("search: non-integer monomial value");
            matrix[i][j] = v.get_num();
        }
    }

    // mod-p RREF; column coordinates live in the first `rank` rows
    std::vector<std::vector<std::uint64_t>> red(samples.size(),
                                                std::vector<std::uint64_t>(mcols));
    for (size_t i = 0; i < samples.size(); ++i)
        for (size_t j = 0; j < mcols; ++j) red[i][j] = dd::to_mod(matrix[i][j]);
    size_t rank = dd::rref(red);
    std::vector<std::vector<std::uint64_t>> coord(mcols,
                                                  std::vector<std::uint64_t>(rank));
    for (size_t j = 0; j < mcols; ++j)
        for (size_t i = 0; i < rank; ++i) coord[j][i] = red[i][j];

    // enumerate minimal dependent subsets (circuits) of size <= 4
    std::vector<std::vector<size_t>> circuits;
    auto is_zero = [&](size_t j) {
        for (auto& x : coord[j])
            if (x) return false;
        return true;
    };
    std::vector<size_t> nonzero;
    for (size_t j = 0; j < mcols; ++j) {
        if (is_zero(j))
            circuits.push_back({j});  // trivial: the column itself vanishes
        else
            nonzero.push_back(j);
    }
    for (size_t sz = 2; sz <= max_support && sz <= nonzero.size(); ++sz) {
        std::vector<size_t> idx(sz);
        for (size_t i = 0; i < sz; ++i) idx[i] = i;
        std::vector<std::vector<std::uint64_t>> sub(sz);
        while (true) {
            for (size_t i = 0; i < sz; ++i) sub[i] = coord[nonzero[idx[i]]];
            if (dd::is_circuit_mod_p(sub)) {
                std::vector<size_t> c(sz);
                for (size_t i = 0; i < sz; ++i) c[i] = nonzero[idx[i]];
                circuits.push_back(std::move(c));
            }
            size_t i = sz, done = 0;
            while (i > 0) {
                --i;
                if (++idx[i] <= nonzero.size() - sz + i) {
                    for (size_t j = i + 1; j < sz; ++j) idx[j] = idx[j - 1] + 1;
                    break;
                }
                if (i == 0) done = 1;
            }
            if (done) break;
        }
    }

    // confirm exactly, then on a disjoint index range
    long long conf_lo = *std::max_element(samples.begin(), samples.end()) + 7;
    std::vector<RelationCandidate> out;
    std::set<std::string> seen;
    for (auto& c : circuits) {
        if (c.size() == 1 && !is_zero(c[0])) continue;
        std::vector<Int> k = dd::exact_kernel(matrix, c);
        if (k.empty()) continue;  // mod-p artifact
        RelationCandidate cand;
        cand.coeffs.assign(mcols, Int(0));
        for (size_t i = 0; i < c.size(); ++i) cand.coeffs[c[i]] = k[i];
        bool holds = true;
        for (long long n = conf_lo; holds && n < conf_lo + 25; ++n) {
            Env env{{"n", n}};
            Rat acc(0);
            for (size_t i = 0; i < c.size(); ++i)
                acc += Rat(k[i]) * eval_expr(basis.monomials[c[i]], env);
            holds = (acc == 0);
        }
        if (!holds) continue;
        for (size_t j = 0; j < mcols; ++j)
            if (cand.coeffs[j] != 0) cand.support.push_back(j);
        std::string key;
        for (auto& x : cand.coeffs) key += x.get_str() + ",";
        if (seen.insert(key).second) out.push_back(std::move(cand));
    }
    std::sort(out.begin(), out.end(), [](const RelationCandidate& a, const RelationCandidate& b) {
        Int na = a.one_norm(), nb = b.one_norm();
        if (na != nb) return na < nb;
        return a.coeffs < b.coeffs;
    });
    return out;
}

// Rewrite a relation as an identity: positive-coefficient terms left,
// negated negative-coefficient terms right.
inline Identity relation_to_identity(const Basis& basis, const RelationCandidate& cand) {
    std::vector<ExprPtr> left, right;
    for (size_t j : cand.support) {
        const Int& c = cand.coeffs[j];
        Int mag = abs(c);
        ExprPtr term = (mag == 1)
                           ? basis.monomials[j]
                           : canonicalize(make_mul({make_const(Rat(mag)), basis.monomials[j]}));
        (c > 0 ? left : right).push_back(term);
    }
    Identity id;
    auto side = [](std::vector<ExprPtr> terms) -> ExprPtr {
        if (terms.empty()) return make_const(Rat(0));
        if (terms.size() == 1) return terms[0];
        return make_add(std::move(terms));
    };
    id.sides = {side(std::move(left)), side(std::move(right))};
    id.conditions["n"] = 0;
    return id;
}

// Prover-confirmed discoveries only.
inline std::vector<std::pair<Identity, ProofOutcome>> confirm(
    const Basis& basis, const std::vector<RelationCandidate>& cands) {
    std::vector<std::pair<Identity, ProofOutcome>> out;
    for (auto& c : cands) {
        Identity id = relation_to_identity(basis, c);
        std::vector<ProofOutcome> res = prove(id);
        if (res.size() == 1 && res[0].proven()) out.emplace_back(std::move(id), std::move(res[0]));
    }
    return out;
}

inline std::vector<long long> default_samples(const Basis& basis) {
    std::vector<long long> s;
    for (long long n = 10; n < 10 + static_cast<long long>(basis.size()) + 8; ++n)
        s.push_back(n);
    return s;
}

}  // namespace fiblab

#endif
