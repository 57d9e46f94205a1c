#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fiblab/sequences.hpp"

using namespace fiblab;

TEST_CASE("fibonacci base values and anchors") {
    CHECK(seq::fib(0) == 0);
    CHECK(seq::fib(1) == 1);
    CHECK(seq::fib(2) == 1);
    CHECK(seq::fib(10) == 55);
    CHECK(seq::fib(14) == 377);
    CHECK(seq::fib(100) == Int("354224848179261915075"));
}

TEST_CASE("fibonacci negative-index extension") {
    for (long long n = 1; n <= 30; ++n) {
        Int expect = seq::fib(n);
        if (n % 2 == 0) expect = -expect;
        CHECK(seq::fib(-n) == expect);
    }
    CHECK(seq::fib(-1) == 1);
    CHECK(seq::fib(-2) == -1);
}

TEST_CASE("lucas values and domain") {
    CHECK(seq::lucas(0) == 2);
    CHECK(seq::lucas(1) == 1);
    CHECK(seq::lucas(2) == 3);
    CHECK(seq::lucas(10) == 123);
    CHECK_THROWS_AS(seq::lucas(-1), std::domain_error);
    // L_n = F_{n-1} + F_{n+1}
    for (long long n = 1; n <= 40; ++n) CHECK(seq::lucas(n) == seq::fib(n - 1) + seq::fib(n + 1));
}

TEST_CASE("k-fibonacci: pell numbers at k=2") {
    long pell[] = {0, 1, 2, 5, 12, 29, 70, 169};
    for (long long n = 0; n < 8; ++n) CHECK(seq::k_fib(2, n) == pell[n]);
    // k=1 collapses to ordinary Fibonacci
    for (long long n = 0; n <= 25; ++n) CHECK(seq::k_fib(1, n) == seq::fib(n));
}

TEST_CASE("generalized fibonacci covers lucas") {
    for (long long n = 0; n <= 25; ++n) CHECK(seq::gen_fib(2, 1, n) == seq::lucas(n));
    for (long long n = 0; n <= 25; ++n) CHECK(seq::gen_fib(0, 1, n) == seq::fib(n));
}

TEST_CASE("cassini identity over a wide range") {
    for (long long n = -50; n <= 200; ++n) {
        Int lhs = seq::fib(n - 1) * seq::fib(n + 1) - seq::fib(n) * seq::fib(n);
        CHECK(lhs == ((n % 2 == 0) ? 1 : -1));
    }
}

TEST_CASE("recurrence holds for large indices") {
    for (long long n = 2; n <= 500; ++n)
        CHECK(seq::fib(n) == seq::fib(n - 1) + seq::fib(n - 2));
}
