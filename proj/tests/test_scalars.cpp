#include "doctest.h"

#include <random>

#include "ckm/scalars.hpp"

using namespace ckm;

namespace {

Laurent random_laurent(std::mt19937_64& rng) {
    Laurent x;
    int terms = static_cast<int>(rng() % 4);
    for (int i = 0; i < terms; ++i) {
        long e = static_cast<long>(rng() % 9) - 4;
        long num = static_cast<long>(rng() % 11) - 5;
        long den = 1 + static_cast<long>(rng() % 4);
        x += Laurent::v_pow(e).scaled(Rational(num, den));
    }
    return x;
}

// Independent Taylor oracle for exp(k*hbar/4): coefficients (k/4)^m / m!.
HSeries exp_oracle(long k, int order) {
    HSeries s(order, Rational(1));
    Rational fact(1), pw(1);
    for (int m = 1; m <= order; ++m) {
        fact *= m;
        pw *= Rational(k, 4);
        s += HSeries::hbar_pow(order, m).scaled(pw / fact);
    }
    return s;
}

} // namespace

TEST_CASE("laurent arithmetic basics") {
    CHECK(Laurent::q_pow(1) * Laurent::q_pow(-1) == Laurent::one());
    // q - q^{-1} written in v
    Laurent d = Laurent::q_minus_qinv();
    CHECK(d == Laurent::v_pow(2) - Laurent::v_pow(-2));
    // q^{theta-} with theta- = -1 is v^{-2}
    CHECK(Laurent::q_pow(-1) == Laurent::v_pow(-2));
    CHECK(Laurent::q_pow(3).str() == "q^3");
    CHECK((Laurent::q_pow(1) - Laurent::q_pow(1)).is_zero());
}

TEST_CASE("laurent monomial division") {
    Laurent x = Laurent::q_pow(2).scaled(Rational(3)) + Laurent::v_pow(1);
    Laurent m = Laurent::v_pow(1).scaled(Rational(3, 2));
    Laurent q = x.divided_by_monomial(m);
    CHECK(q * m == x);
    CHECK_THROWS_AS(x.divided_by_monomial(Laurent::q_minus_qinv()), DivisionByNonMonomial);
}

TEST_CASE("laurent exact division and gcd") {
    Laurent a = Laurent::q_minus_qinv();
    Laurent b = Laurent::v_pow(3) + Laurent::v_pow(-1);
    Laurent p = a * b;
    auto q = p.divided_exactly(a);
    REQUIRE(q.has_value());
    CHECK(*q == b);
    CHECK(!(p + Laurent::one()).divided_exactly(a).has_value());
    Laurent g = laurent_gcd(p, a);
    CHECK(p.divided_exactly(g).has_value());
    CHECK(a.divided_exactly(g).has_value());
}

TEST_CASE("laurent ring axioms on random values") {
    std::mt19937_64 rng(20260810);
    for (int it = 0; it < 200; ++it) {
        Laurent a = random_laurent(rng), b = random_laurent(rng), c = random_laurent(rng);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * Laurent::one() == a);
        CHECK(a + b == b + a);
    }
}

TEST_CASE("rational function field") {
    RatFunc d(Laurent::q_minus_qinv());
    CHECK(d / d == RatFunc::one());
    CHECK((d * d.inverse()) == RatFunc::one());
    // representation is canonical: common factors cancel
    RatFunc x(Laurent::q_pow(1) * Laurent::q_minus_qinv(), Laurent::q_minus_qinv() * Laurent::v_pow(3));
    CHECK(x == RatFunc(Laurent::q_pow(1), Laurent::v_pow(3)));
    CHECK(x.is_laurent());  // q/v^3 = v^{-1} is still Laurent
    std::mt19937_64 rng(7);
    for (int it = 0; it < 100; ++it) {
        Laurent a = random_laurent(rng), b = random_laurent(rng), c = random_laurent(rng);
        if (b.is_zero() || c.is_zero()) continue;
        CHECK(RatFunc(a, b) == RatFunc(a * c, b * c));
        CHECK(RatFunc(a, b) + RatFunc(a, b) == RatFunc(a * Laurent(2), b));
    }
}

TEST_CASE("expand_hbar matches the Taylor oracle") {
    // q = exp(hbar/2) -> 1 + h/2 + h^2/8 at order 2
    HSeries q2 = expand_hbar(Laurent::q_pow(1), 2);
    CHECK(q2 == exp_oracle(2, 2));
    CHECK(q2.coeff(0) == Rational(1));
    CHECK(q2.coeff(1) == Rational(1, 2));
    CHECK(q2.coeff(2) == Rational(1, 8));
    // q - q^{-1} -> h + h^3/24 at order 3
    HSeries d3 = expand_hbar(Laurent::q_minus_qinv(), 3);
    HSeries expect = exp_oracle(2, 3) - exp_oracle(-2, 3);
    CHECK(d3 == expect);
    CHECK(d3.coeff(0) == Rational(0));
    CHECK(d3.coeff(1) == Rational(1));
    CHECK(d3.coeff(2) == Rational(0));
    CHECK(d3.coeff(3) == Rational(1, 24));
    // unit preservation
    CHECK(expand_hbar(Laurent::one(), 4) == HSeries::one(4));
}

TEST_CASE("expand_hbar is a ring homomorphism at every order") {
    std::mt19937_64 rng(99);
    for (int order = 1; order <= 4; ++order)
        for (int it = 0; it < 40; ++it) {
            Laurent a = random_laurent(rng), b = random_laurent(rng);
            CHECK(expand_hbar(a * b, order) == expand_hbar(a, order) * expand_hbar(b, order));
            CHECK(expand_hbar(a + b, order) == expand_hbar(a, order) + expand_hbar(b, order));
        }
}

TEST_CASE("classical limit of group-like powers") {
    for (long n = -5; n <= 5; ++n) {
        HSeries s = expand_hbar(Laurent::q_pow(n), 2);
        CHECK(s.coeff(0) == Rational(1));  // q^n == 1 mod hbar
    }
}

TEST_CASE("hbar series division") {
    // (q - q^{-1}) / (q - q^{-1}) = 1 through the valuation shift
    HSeries d = expand_hbar(Laurent::q_minus_qinv(), 5);
    CHECK(d.valuation() == 1);
    CHECK(d.divided_by(d) == HSeries::one(5));
    HSeries q = expand_hbar(Laurent::q_pow(1), 5);
    // the quotient is exact one order below the operands
    CHECK((q * d).divided_by(d) == q.truncated(4));
    // fraction expansion: 1/(q-q^{-1}) has valuation -1
    RatFunc inv(Laurent::one(), Laurent::q_minus_qinv());
    HSeries s = expand_hbar(inv, 2);
    CHECK(s.valuation() == -1);
    CHECK(s * d == HSeries::one(2));
}
