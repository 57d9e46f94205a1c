#ifndef FIBLAB_SEQUENCES_HPP
#define FIBLAB_SEQUENCES_HPP

#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fiblab/rational.hpp"

namespace fiblab {
namespace seq {

namespace detail {

// Extends a two-term recurrence cache x[n+1] = c*x[n] + x[n-1] up to index n.
inline void extend(std::vector<Int>& cache, long long n, long long c = 1) {
    while (static_cast<long long>(cache.size()) <= n) {
        size_t s = cache.size();
        cache.push_back(mkint(c) * cache[s - 1] + cache[s - 2]);
    }
}

}  // namespace detail

/// F(0)=0, F(1)=1, F(n+1)=F(n)+F(n-1); negative n via F(-n) = (-1)^(n+1) F(n).
inline Int fib(long long n) {
    static std::vector<Int> cache{Int(0), Int(1)};
    static std::mutex mu;
    bool neg_flip = false;
    if (n < 0) {
        neg_flip = (n % 2 == 0);  // F(-m) = (-1)^(m+1) F(m)
        n = -n;
    }
    std::lock_guard<std::mutex> lock(mu);
    detail::extend(cache, n);
    return neg_flip ? Int(-cache[n]) : cache[n];
}

/// L(0)=2, L(1)=1, L(n+1)=L(n)+L(n-1). Negative indices are not needed by the corpus.
inline Int lucas(long long n) {
    if (n < 0) throw std::domain_error("lucas: negative index");
    static std::vector<Int> cache{Int(2), Int(1)};
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    detail::extend(cache, n);
    return cache[n];
}

/// k-Fibonacci: F(k,0)=0, F(k,1)=1, F(k,n+2) = k*F(k,n+1) + F(k,n).
inline Int k_fib(long long k, long long n) {
    if (k <= 0) throw std::domain_error("k_fib: k must be >= 1");
    if (n < 0) throw std::domain_error("k_fib: negative index");
    static std::map<long long, std::vector<Int>> caches;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto& cache = caches[k];
    if (cache.empty()) cache = {Int(0), Int(1)};
    detail::extend(cache, n, k);
    return cache[n];
}

/// Generalized Fibonacci with arbitrary initial conditions H(0)=h0, H(1)=h1.
inline Int gen_fib(long long h0, long long h1, long long n) {
    if (n < 0) throw std::domain_error("gen_fib: negative index");
    static std::map<std::pair<long long, long long>, std::vector<Int>> caches;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto& cache = caches[{h0, h1}];
    if (cache.empty()) cache = {mkint(h0), mkint(h1)};
    detail::extend(cache, n);
    return cache[n];
}

}  // namespace seq
}  // namespace fiblab

#endif
