#ifndef FIBLAB_QUADRAT_HPP
#define FIBLAB_QUADRAT_HPP

#include <stdexcept>
#include <string>

#include "fiblab/rational.hpp"

namespace fiblab {

// Element a + b*sqrt(D) of the real quadratic field Q(sqrt(D)), D a positive
// nonsquare integer. D = 5 hosts the golden ratio; D = k^2+4 hosts the
// k-Fibonacci root. Zero iff a = 0 and b = 0.
struct QuadRat {
    Rat a, b;
    long long D = 5;

    QuadRat() : a(0), b(0) {}
    explicit QuadRat(Rat a_, Rat b_ = Rat(0), long long d = 5)
        : a(std::move(a_)), b(std::move(b_)), D(d) {}

    static QuadRat rational(Rat r, long long d = 5) { return QuadRat(std::move(r), Rat(0), d); }

    bool is_zero() const { return a == 0 && b == 0; }
    bool is_rational() const { return b == 0; }

    void check(const QuadRat& o) const {
        if (D != o.D && !is_rational() && !o.is_rational())
            throw std::logic_error("QuadRat: mixed radicands");
    }

    QuadRat operator+(const QuadRat& o) const {
        check(o);
        return QuadRat(a + o.a, b + o.b, b == 0 ? o.D : D);
    }
    QuadRat operator-(const QuadRat& o) const {
        check(o);
        return QuadRat(a - o.a, b - o.b, b == 0 ? o.D : D);
    }
    QuadRat operator-() const { return QuadRat(-a, -b, D); }
    QuadRat operator*(const QuadRat& o) const {
        check(o);
        long long d = (b == 0 ? o.D : D);
        return QuadRat(a * o.a + mkrat(d) * b * o.b, a * o.b + b * o.a, d);
    }
    QuadRat inverse() const {
        Rat n = a * a - mkrat(D) * b * b;
        if (n == 0) throw std::domain_error("QuadRat: inverse of zero norm");
        return QuadRat(a / n, -b / n, D);
    }
    QuadRat pow(long long e) const {
        if (e < 0) return inverse().pow(-e);
        QuadRat r = rational(Rat(1), D);
        QuadRat base = *this;
        while (e > 0) {
            if (e & 1) r = r * base;
            base = base * base;
            e >>= 1;
        }
        return r;
    }

    bool operator==(const QuadRat& o) const {
        if (is_zero() && o.is_zero()) return true;
        return a == o.a && b == o.b && (b == 0 || D == o.D);
    }

    std::string str() const {
        if (b == 0) return a.get_str();
        return a.get_str() + "+" + b.get_str() + "*sqrt(" + std::to_string(D) + ")";
    }
};

// phi = (1+sqrt5)/2 generalizes to alpha_k = (k+sqrt(k^2+4))/2 with
// alpha*beta = -1, the relation the parity split relies on.
inline QuadRat field_alpha(long long k = 1) {
    long long D = k * k + 4;
    return QuadRat(mkrat(k, 2), Rat(1, 2), D);
}
inline QuadRat field_beta(long long k = 1) {
    long long D = k * k + 4;
    return QuadRat(mkrat(k, 2), Rat(-1, 2), D);
}
// 1/sqrt(D) = sqrt(D)/D
inline QuadRat inv_sqrt(long long D) { return QuadRat(Rat(0), mkrat(1, D), D); }

}  // namespace fiblab

#endif
