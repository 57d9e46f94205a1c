#ifndef FIBLAB_UMBRAL_HPP
#define FIBLAB_UMBRAL_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "fiblab/expr.hpp"

namespace fiblab {

enum class UmbralVariant { Plus, Minus };

// Symbolic generator of linear shift identities: expand U^n (U +- 1)^p
// binomially, then lower every power U^{n+j} to the subscript F[n+j].
//
//   plus:  F[n+2p] = sum_j C(p,j) F[n+j]
//   minus: F[n-p]  = sum_j C(p,j) (-1)^{p-j} F[n+j]
//
// p = 1 reproduces the defining recurrence and its rearrangement.
inline Identity expand_umbral(long long p, UmbralVariant variant) {
    if (p < 1) throw std::invalid_argument("expand_umbral: p must be >= 1");
    Identity id;
    LinForm left = LinForm::var("n");
    left.constant = (variant == UmbralVariant::Plus) ? 2 * p : -p;
    id.sides.push_back(make_fib(left));

    std::vector<ExprPtr> terms;
    for (long long j = p; j >= 0; --j) {
        Int c = binomial(p, j);
        if (variant == UmbralVariant::Minus && (p - j) % 2 != 0) c = -c;
        LinForm idx = LinForm::var("n");
        idx.constant = j;
        if (c == 1)
            terms.push_back(make_fib(idx));
        else
            terms.push_back(make_mul({make_const(Rat(c)), make_fib(idx)}));
    }
    id.sides.push_back(canonicalize(make_add(std::move(terms))));
    id.conditions["n"] = (variant == UmbralVariant::Plus) ? 0 : p;
    id.meta.id = std::string("umbral-") + (variant == UmbralVariant::Plus ? "plus" : "minus") +
                 "-p" + std::to_string(p);
    return id;
}

}  // namespace fiblab

#endif
