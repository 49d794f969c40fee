#include "doctest.h"
#include "ell/qseries.hpp"
#include "ell/rational.hpp"

#include <numeric>
#include <random>

using ell::QSeries;
using ell::Rational;

namespace {

// plain 64-bit fraction arithmetic as an independent check on small inputs
std::pair<long, long> reduce(long n, long d) {
    long g = std::gcd(n, d);
    n /= g;
    d /= g;
    if (d < 0) n = -n, d = -d;
    return {n, d};
}

Rational random_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-50, 50), den(1, 40);
    return Rational(num(rng), den(rng));
}

}  // namespace

TEST_CASE("rational arithmetic examples") {
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK((Rational(-1, 9) * 0).str() == "0");
    CHECK((Rational(-1, 9) * 0).den() == 1);
    Rational q = Rational(41, 144) / Rational(6, 16);
    CHECK(q == Rational(41, 54));
    auto [n, d] = reduce(41 * 16, 144 * 6);
    CHECK(q.num() == n);
    CHECK(q.den() == d);
    CHECK_THROWS_AS(Rational(1) / Rational(0), ell::DivisionByZero);
    CHECK_THROWS_AS(Rational::parse("3/0"), ell::DivisionByZero);
}

TEST_CASE("canonical text and round trip") {
    CHECK(Rational(6, -4).str() == "-3/2");
    CHECK(Rational(8, 4).str() == "2");
    CHECK(Rational::parse(" -10/4 ") == Rational(-5, 2));
    CHECK_THROWS(Rational::parse("x/2"));
    std::mt19937_64 rng(7);
    for (int i = 0; i < 500; ++i) {
        Rational r = random_rational(rng) * random_rational(rng);
        CHECK(Rational::parse(r.str()) == r);
    }
    Rational big = Rational(3).pow(200) / Rational(7).pow(90);
    CHECK(Rational::parse(big.str()) == big);
}

TEST_CASE("ring axioms on random rationals") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 300; ++i) {
        Rational a = random_rational(rng), b = random_rational(rng), c = random_rational(rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * b == b * a);
        CHECK(a * (b + c) == a * b + a * c);
        if (!b.is_zero()) CHECK((a / b) * b == a);
    }
}

TEST_CASE("floor and fractional part") {
    CHECK(ell::floor(Rational(-1, 3)) == -1);
    CHECK(ell::frac(Rational(-1, 3)) == Rational(2, 3));
    CHECK(ell::frac(Rational(7, 3)) == Rational(1, 3));
}

TEST_CASE("series products") {
    QSeries a(2), b(2);
    a.set(0, 1);
    a.set(1, 1);
    b.set(0, 1);
    b.set(1, -1);
    QSeries p = a * b;
    CHECK(p.coeff(0) == 1);
    CHECK(p.coeff(1) == 0);
    CHECK(p.coeff(2) == -1);
    CHECK(p.terms().size() == 2);

    CHECK(a * QSeries::constant(1, 5) == a);

    QSeries m = QSeries::monomial(1, 1, 8) * QSeries::monomial(2, 5, 8);
    CHECK(m.coeff(6) == 2);
    CHECK(m.terms().size() == 1);

    QSeries lo = QSeries::monomial(1, 1, 3) * QSeries::monomial(1, 3, 8);
    CHECK(lo.order() == 3);
    CHECK(lo.terms().empty());
}

TEST_CASE("series ring axioms") {
    std::mt19937_64 rng(5);
    auto rnd = [&](unsigned order) {
        QSeries s(order);
        for (unsigned d = 0; d <= order; ++d)
            if (rng() % 2) s.set(d, random_rational(rng));
        return s;
    };
    for (int i = 0; i < 40; ++i) {
        QSeries a = rnd(6), b = rnd(5), c = rnd(7);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * b == b * a);
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a + b).order() == 5);
    }
}
