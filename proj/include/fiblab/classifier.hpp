#ifndef FIBLAB_CLASSIFIER_HPP
#define FIBLAB_CLASSIFIER_HPP

#include <algorithm>
#include <string>
#include <vector>

#include "fiblab/expr.hpp"

namespace fiblab {

// Degrees of the additive terms after full distribution of products over
// sums. Sequence atoms count 1 each (powers with multiplicity); sign factors,
// binomials and rational constants count 0. A sum contributes its body's
// degrees. Degree -1 marks a symbolic exponent (family entries only).
struct DegreeProfile {
    std::vector<long long> degrees;  // multiset, one per distributed term
    long long max_degree = 0;
    bool has_constant_term = false;  // some distributed term has degree 0
    bool has_parameters = false;
    bool symbolic_exponent = false;
};

namespace detail {

inline std::vector<long long> term_degrees(const ExprPtr& e) {
    switch (e->kind) {
        case Kind::Fib:
        case Kind::Lucas:
        case Kind::KFib:
        case Kind::GenFib:
            return {1};
        case Kind::Sign:
        case Kind::Binom:
        case Kind::Const:
            return {0};
        case Kind::Pow: {
            if (!e->lin.is_constant()) return {-1};
            std::vector<long long> base = term_degrees(e->kids[0]);
            long long x = e->lin.constant;
            if (base.size() == 1) return {base[0] < 0 ? -1 : base[0] * x};
            // distribute the power as x-fold product
            std::vector<long long> acc{0};
            for (long long i = 0; i < x; ++i) {
                std::vector<long long> next;
                for (long long a : acc)
                    for (long long b : base) next.push_back((a < 0 || b < 0) ? -1 : a + b);
                acc = std::move(next);
            }
            return acc;
        }
        case Kind::Neg:
        case Kind::Sum:
            return term_degrees(e->kids[0]);
        case Kind::Add: {
            std::vector<long long> out;
            for (auto& k : e->kids) {
                auto d = term_degrees(k);
                out.insert(out.end(), d.begin(), d.end());
            }
            return out;
        }
        case Kind::Mul: {
            std::vector<long long> acc{0};
            for (auto& k : e->kids) {
                std::vector<long long> d = term_degrees(k);
                std::vector<long long> next;
                for (long long a : acc)
                    for (long long b : d) next.push_back((a < 0 || b < 0) ? -1 : a + b);
                acc = std::move(next);
            }
            return acc;
        }
    }
    return {};
}

inline bool has_kfib(const ExprPtr& e) {
    if (e->kind == Kind::KFib) return true;
    for (auto& k : e->kids)
        if (has_kfib(k)) return true;
    return false;
}

}  // namespace detail

inline DegreeProfile degree_profile(const Identity& id) {
    DegreeProfile p;
    p.has_parameters = !id.params.empty();
    for (auto& s : id.sides) {
        auto d = detail::term_degrees(s);
        p.degrees.insert(p.degrees.end(), d.begin(), d.end());
    }
    for (long long d : p.degrees) {
        if (d < 0) p.symbolic_exponent = true;
        if (d == 0) p.has_constant_term = true;
        p.max_degree = std::max(p.max_degree, d);
    }
    return p;
}

enum class IdentityClass { HomogeneousCubic, NonHomogeneousCubic, GeneralFamily, Other };

struct Classification {
    IdentityClass cls = IdentityClass::Other;
    long long degree = 0;  // meaningful for Other
    DegreeProfile profile;
};

inline std::string to_string(const Classification& c) {
    switch (c.cls) {
        case IdentityClass::HomogeneousCubic: return "HomogeneousCubic";
        case IdentityClass::NonHomogeneousCubic: return "NonHomogeneousCubic";
        case IdentityClass::GeneralFamily: return "GeneralFamily";
        case IdentityClass::Other: return "Other(" + std::to_string(c.degree) + ")";
    }
    return "?";
}

// Families are the parameterized rows, the multi-index generalizations and
// the k-Fibonacci instances; everything else is placed by cubic degree
// analysis.
inline Classification classify(const Identity& id) {
    Classification c;
    bool kfib = false;
    for (auto& s : id.sides) kfib = kfib || detail::has_kfib(s);
    if (!id.params.empty() || free_indices(id).size() > 1 || kfib) {
        c.cls = IdentityClass::GeneralFamily;
        c.profile.has_parameters = !id.params.empty();
        return c;
    }
    c.profile = degree_profile(id);
    if (c.profile.max_degree == 3 && !c.profile.symbolic_exponent) {
        bool homogeneous = !c.profile.has_constant_term;
        for (long long d : c.profile.degrees)
            if (d != 3) homogeneous = false;
        c.cls = homogeneous ? IdentityClass::HomogeneousCubic : IdentityClass::NonHomogeneousCubic;
    } else {
        c.cls = IdentityClass::Other;
        c.degree = c.profile.max_degree;
    }
    return c;
}

// Catalog class labels used by the corpus file.
inline std::string class_label(const Classification& c) {
    switch (c.cls) {
        case IdentityClass::HomogeneousCubic: return "homogeneous-cubic";
        case IdentityClass::NonHomogeneousCubic: return "nonhomogeneous-cubic";
        case IdentityClass::GeneralFamily: return "general";
        case IdentityClass::Other: return "other";
    }
    return "?";
}

}  // namespace fiblab

#endif
