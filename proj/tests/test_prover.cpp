#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fiblab/parser.hpp"
#include "fiblab/prover.hpp"

using namespace fiblab;

static ProofOutcome prove_one(const std::string& text) {
    std::vector<ProofOutcome> r = prove(parse(text));
    REQUIRE(r.size() == 1);
    return r[0];
}

TEST_CASE("closed-form identities are proven") {
    CHECK(prove_one("F[n-1]*F[n+1] - F[n]^2 = (-1)^(n) ; n >= 1").proven());
    CHECK(prove_one("F[n+1]^3 + F[n]^3 - F[n-1]^3 = F[3n] ; n >= 1").proven());
    CHECK(prove_one("L[n] = F[n-1] + F[n+1] ; n >= 1").proven());
    CHECK(prove_one("5*F[n]^3 = F[3n] - 3*(-1)^(n)*F[n] ; n >= 0").proven());
    CHECK(prove_one("F[m+n+1] = F[m+1]*F[n+1] + F[m]*F[n] ; m >= 0, n >= 0").proven());
}

TEST_CASE("parity trace has one entry per sign assignment") {
    ProofOutcome o = prove_one("F[m+n+1] = F[m+1]*F[n+1] + F[m]*F[n] ; m >= 0, n >= 0");
    CHECK(o.method == ProofMethod::ClosedBinet);
    CHECK(o.trace.size() == 4);  // 2^2 parity cases
    for (auto& t : o.trace) CHECK(t.residual_terms == 0);
}

TEST_CASE("false identities are falsified with a counterexample") {
    ProofOutcome o = prove_one("F[n]^2 = F[2n] ; n >= 0");
    CHECK(o.status == ProofStatus::Falsified);
    REQUIRE(o.counterexample.has_value());
}

TEST_CASE("summation identities via base case and difference step") {
    ProofOutcome o =
        prove_one("Sum(k,1,n,F[k]^3) = 1/10*(F[3n+2] + 6*(-1)^(n+1)*F[n-1] + 5) ; n >= 1");
    CHECK(o.proven());
    CHECK(o.method == ProofMethod::SumInduction);
    CHECK(prove_one("Sum(k,1,n,F[k]) = F[n+2] - 1 ; n >= 1").proven());
    CHECK(prove_one("Sum(k,1,n,F[k]^2) = F[n]*F[n+1] ; n >= 1").proven());
}

TEST_CASE("parameter grids prove each instance") {
    Identity id = parse("F[n+k]*F[n-k] - F[n]^2 = (-1)^(n+k+1)*F[k]^2 ; n >= 3");
    id.params["k"] = ParamRange{1, 3};
    std::vector<ProofOutcome> res = prove(id);
    CHECK(res.size() == 3);
    for (auto& o : res) {
        CHECK(o.proven());
        CHECK(o.instance.count("k") == 1);
    }
    CHECK(aggregate_status(res) == ProofStatus::Proven);
}

TEST_CASE("non-normalizable shapes fall back to bounded verification") {
    // binomial coefficients with symbolic bounds have no Binet normal form
    Identity id = parse("Sum(k,0,n,C(n,k)*F[k]) = F[2n] ; n >= 0");
    std::vector<ProofOutcome> res = prove(id);
    REQUIRE(res.size() == 1);
    CHECK(res[0].status == ProofStatus::VerifiedUpTo);
    CHECK(res[0].method == ProofMethod::BoundedOnly);
    auto range = res[0].verified_range.at("n");
    CHECK(range.first == 0);               // condition bound
    CHECK(range.second - range.first + 1 == 30);  // default bounded sweep width
}

TEST_CASE("aggregate status prefers the weakest result") {
    ProofOutcome a, b;
    a.status = ProofStatus::Proven;
    b.status = ProofStatus::VerifiedUpTo;
    CHECK(aggregate_status({a, b}) == ProofStatus::VerifiedUpTo);
    b.status = ProofStatus::Falsified;
    CHECK(aggregate_status({a, b}) == ProofStatus::Falsified);
    CHECK(aggregate_status({a, a}) == ProofStatus::Proven);
}
