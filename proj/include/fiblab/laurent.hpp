#ifndef FIBLAB_LAURENT_HPP
#define FIBLAB_LAURENT_HPP

#include <map>
#include <string>
#include <vector>

#include "fiblab/quadrat.hpp"

namespace fiblab {

// Multivariate Laurent polynomial: exponent vector (one slot per free index,
// either sign) -> QuadRat coefficient. Zero coefficients are never stored.
struct LaurentPoly {
    std::map<std::vector<int>, QuadRat> terms;
    size_t nvars = 0;

    explicit LaurentPoly(size_t nvars_ = 0) : nvars(nvars_) {}

    static LaurentPoly monomial(std::vector<int> exps, QuadRat c) {
        LaurentPoly p(exps.size());
        if (!c.is_zero()) p.terms[std::move(exps)] = std::move(c);
        return p;
    }
    static LaurentPoly constant(QuadRat c, size_t nvars) {
        return monomial(std::vector<int>(nvars, 0), std::move(c));
    }

    bool is_zero() const { return terms.empty(); }
    size_t term_count() const { return terms.size(); }

    void add_term(const std::vector<int>& e, const QuadRat& c) {
        auto it = terms.find(e);
        if (it == terms.end()) {
            if (!c.is_zero()) terms[e] = c;
        } else {
            it->second = it->second + c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    LaurentPoly operator+(const LaurentPoly& o) const {
        LaurentPoly r = *this;
        for (auto& [e, c] : o.terms) r.add_term(e, c);
        return r;
    }
    LaurentPoly operator-(const LaurentPoly& o) const {
        LaurentPoly r = *this;
        for (auto& [e, c] : o.terms) r.add_term(e, -c);
        return r;
    }
    LaurentPoly operator*(const LaurentPoly& o) const {
        LaurentPoly r(nvars);
        for (auto& [e1, c1] : terms)
            for (auto& [e2, c2] : o.terms) {
                std::vector<int> e = e1;
                for (size_t i = 0; i < e.size(); ++i) e[i] += e2[i];
                r.add_term(e, c1 * c2);
            }
        return r;
    }
    LaurentPoly scaled(const QuadRat& c) const {
        LaurentPoly r(nvars);
        if (c.is_zero()) return r;
        for (auto& [e, q] : terms) r.terms[e] = q * c;
        return r;
    }
    LaurentPoly pow(long long n) const {
        LaurentPoly r = constant(QuadRat(Rat(1)), nvars);
        LaurentPoly base = *this;
        while (n > 0) {
            if (n & 1) r = r * base;
            base = base * base;
            n >>= 1;
        }
        return r;
    }

    // Exact evaluation with t_i = alpha^{e_i} (QuadRat exponentiation).
    QuadRat eval_at_powers(const QuadRat& alpha, const std::vector<long long>& exps) const {
        QuadRat r;
        for (auto& [e, c] : terms) {
            QuadRat m = c;
            for (size_t i = 0; i < e.size(); ++i) m = m * alpha.pow(e[i] * exps[i]);
            r = r + m;
        }
        return r;
    }

    std::string str(const std::vector<std::string>& names) const {
        if (terms.empty()) return "0";
        std::string s;
        for (auto& [e, c] : terms) {
            if (!s.empty()) s += " + ";
            s += "(" + c.str() + ")";
            for (size_t i = 0; i < e.size(); ++i)
                if (e[i] != 0) s += "*t_" + names[i] + "^" + std::to_string(e[i]);
        }
        return s;
    }
};

}  // namespace fiblab

#endif
