#ifndef FIBLAB_RATIONAL_HPP
#define FIBLAB_RATIONAL_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace fiblab {

using Int = mpz_class;
using Rat = mpq_class;

// mpz/mpq have no long long constructors; route through long (64-bit here).
inline Int mkint(long long v) { return Int(static_cast<long>(v)); }
inline Rat mkrat(long long num, long long den = 1) {
    Rat r(mkint(num), mkint(den));
    r.canonicalize();
    return r;
}

inline Int int_pow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

// base^e for integer e; negative exponents allowed for nonzero base.
inline Rat rat_pow(const Rat& base, long e) {
    if (e == 0) return Rat(1);
    if (e < 0) {
        if (base == 0) throw std::domain_error("rat_pow: 0 to negative power");
        return rat_pow(Rat(1) / base, -e);
    }
    Rat r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num().get_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den().get_mpz_t(), static_cast<unsigned long>(e));
    r.canonicalize();
    return r;
}

// Generalized binomial coefficient: C(a, b) = a(a-1)...(a-b+1)/b! for b >= 0, else 0.
inline Int binomial(long a, long b) {
    if (b < 0) return Int(0);
    Int num(1);
    for (long i = 0; i < b; ++i) num *= Int(a - i);
    Int den(1);
    mpz_fac_ui(den.get_mpz_t(), static_cast<unsigned long>(b));
    Int q = num / den;  // always exact
    return q;
}

inline std::string rat_to_string(const Rat& q) { return q.get_str(); }

}  // namespace fiblab

#endif
