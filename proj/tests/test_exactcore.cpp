#include "doctest.h"

#include <random>

#include "k3lab/errors.hpp"
#include "k3lab/exactcore.hpp"

using namespace k3lab::exact;

namespace {

const std::vector<std::string> kVars{"u1", "v1", "u2", "v2", "l1", "l2"};

MultiPolynomial P(const char* s) { return parse_polynomial(s, kVars); }

BigRational random_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-50, 50), den(1, 17);
    BigRational q(num(rng), den(rng));
    q.canonicalize();
    return q;
}

MultiPolynomial random_poly(std::mt19937_64& rng, int terms = 6, unsigned maxdeg = 3) {
    std::uniform_int_distribution<unsigned> e(0, maxdeg);
    MultiPolynomial p(kVars);
    for (int k = 0; k < terms; ++k) {
        std::vector<unsigned> exps(kVars.size());
        for (auto& x : exps) x = e(rng);
        p += MultiPolynomial::term(kVars, exps, random_rational(rng));
    }
    return p;
}

Assignment random_point(std::mt19937_64& rng) {
    Assignment a;
    for (const auto& v : kVars) a[v] = random_rational(rng);
    return a;
}

} // namespace

TEST_CASE("rational parsing and canonical form") {
    CHECK(parse_rational("6/4") == BigRational(3, 2));
    CHECK(parse_rational("-0.25") == BigRational(-1, 4));
    CHECK(parse_rational("12") == 12);
    CHECK(parse_rational("0/7").get_den() == 1);
    BigRational q = parse_rational("-10/-4");
    CHECK(q == BigRational(5, 2));
    CHECK(q.get_den() > 0);
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
}

TEST_CASE("monomial packing") {
    std::vector<unsigned> a{1, 2, 0, 3}, b{4, 0, 1, 0};
    auto ma = Monomial::from_exponents(a), mb = Monomial::from_exponents(b);
    auto m = ma * mb;
    CHECK(m.exponent(0) == 5);
    CHECK(m.exponent(1) == 2);
    CHECK(m.exponent(2) == 1);
    CHECK(m.exponent(3) == 3);
    CHECK(m.total_degree() == 11);
    std::vector<unsigned> big{200}, big2{100};
    CHECK_THROWS_AS(Monomial::from_exponents(big) * Monomial::from_exponents(big2), std::overflow_error);
    std::vector<unsigned> nine(9, 0);
    CHECK_THROWS(Monomial::from_exponents(nine));
}

TEST_CASE("poly_is_zero") {
    CHECK(poly_is_zero(MultiPolynomial(kVars)));
    CHECK(poly_is_zero(P("(u1+v1)^2 - u1^2 - 2*u1*v1 - v1^2")));
    CHECK_FALSE(poly_is_zero(P("l1*l2 - l2*l1 + u1")));
}

TEST_CASE("poly_evaluate") {
    CHECK(poly_evaluate(P("u1*v1"), {{"u1", 2}, {"v1", 3}}) == 6);
    std::vector<std::string> lam{"l"};
    CHECK(poly_evaluate(parse_polynomial("l^2 - l + 1", lam), {{"l", -1}}) == 3);
    CHECK(poly_evaluate(parse_polynomial("l^2*(l-1)^2", lam), {{"l", BigRational(1, 4)}}) == BigRational(9, 256));
    // independent arithmetic: (1/4)^2 * (3/4)^2
    BigRational q(1, 4), r(-3, 4);
    CHECK(q * q * r * r == BigRational(9, 256));
    CHECK_THROWS_AS(poly_evaluate(P("u1*v1"), {{"u1", 2}}), k3lab::MissingAssignment);
    // unused variables need no value
    CHECK(poly_evaluate(P("u1 + 0*v1"), {{"u1", 5}}) == 5);
}

TEST_CASE("parser") {
    CHECK(P("3/2*u1 - u1/2") == P("u1"));
    CHECK(P("-(u1 - v1)^3") == P("v1^3 - 3*v1^2*u1 + 3*v1*u1^2 - u1^3"));
    CHECK(P("2^3") == MultiPolynomial::constant(kVars, 8));
    CHECK_THROWS_AS(P("u1/v1"), std::invalid_argument);
    CHECK_THROWS_AS(P("w + 1"), std::invalid_argument);
    CHECK_THROWS_AS(P("(u1"), std::invalid_argument);
    CHECK(P("u1*v1^2 - 3").to_string() == "u1*v1^2 - 3");
}

TEST_CASE("polynomial structure queries") {
    auto p = P("u1^2*v2 + u1*v1*u2 + l1^5");
    CHECK(p.total_degree() == 5);
    CHECK(p.degree_in("u1") == 2);
    std::vector<std::string> g1{"u1", "v1"};
    CHECK_FALSE(p.homogeneous_degree(g1).has_value());
    auto h = P("u1^2*v2 + u1*v1*u2*l1");
    CHECK(h.homogeneous_degree(g1) == 2u);
    CHECK(P("u1*v1 + u1^2").divisible_by_variable("u1"));
    CHECK_FALSE(P("u1*v1 + v1^2").divisible_by_variable("u1"));
    CHECK(P("u1 + v1").substitute("u1", P("v1 - 1")) == P("2*v1 - 1"));
    std::vector<std::string> small{"u1", "v1"};
    auto e = parse_polynomial("u1*v1", small).embed(kVars);
    CHECK(e == P("u1*v1"));
}

TEST_CASE("ratfunc_equal") {
    RationalFunction a(P("u1"), P("v1"));
    RationalFunction b(P("u1*u2"), P("v1*u2"));
    CHECK(ratfunc_equal(a, b));
    CHECK(ratfunc_equal(RationalFunction(P("u1^2 - v1^2"), P("u1 - v1")), RationalFunction(P("u1 + v1"))));
    CHECK_FALSE(ratfunc_equal(a, RationalFunction(P("v1"), P("u1"))));
    CHECK_THROWS_AS(RationalFunction(P("u1"), MultiPolynomial(kVars)), k3lab::DomainError);
}

TEST_CASE("rational function arithmetic") {
    RationalFunction a(P("u1"), P("v1"));
    RationalFunction b(P("v1"), P("u1"));
    CHECK(ratfunc_equal(a * b, RationalFunction(P("1"))));
    CHECK(ratfunc_equal(a / a, RationalFunction(P("1"))));
    CHECK(ratfunc_equal((a + b) - b, a));
    // normalization folds constants: 1/(2*v1) has the normalized factor v1
    RationalFunction h(P("1"), P("2*v1"));
    CHECK(h.denominator_factors().size() == 1);
    CHECK(h.denominator_factors()[0].first == P("v1"));
    CHECK(h.evaluate({{"v1", 3}}) == BigRational(1, 6));
    CHECK_THROWS_AS(h.evaluate({{"v1", 0}}), k3lab::DomainError);
    CHECK(ratfunc_equal(a.pow(3), RationalFunction(P("u1^3"), P("v1^3"))));
}

TEST_CASE("clear_denominators") {
    std::vector<RationalFunction> s1{RationalFunction(P("1"), P("u1")), RationalFunction(P("1"), P("v1"))};
    CHECK(clear_denominators(s1) == P("u1 + v1"));
    std::vector<RationalFunction> s2{RationalFunction(P("1"), P("u1")), RationalFunction(P("-1"), P("u1"))};
    CHECK(poly_is_zero(clear_denominators(s2)));
    std::vector<RationalFunction> s3{RationalFunction(P("u1"), P("v1")), RationalFunction(P("v1"), P("u1"))};
    CHECK(clear_denominators(s3) == P("u1^2 + v1^2"));
}

TEST_CASE("cubic_discriminant") {
    CHECK(cubic_discriminant(0, 0) == 0);
    CHECK(cubic_discriminant(-3, 2) == 0);
    CHECK(cubic_discriminant(-3, 0) == 108);
}

TEST_CASE("property: canonical form is order independent") {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 50; ++k) {
        auto p = random_poly(rng), q = random_poly(rng);
        CHECK((p + q).terms() == (q + p).terms());
        CHECK((p * q).terms() == (q * p).terms());
        CHECK(poly_is_zero(p - p));
    }
}

TEST_CASE("property: evaluation is a ring homomorphism") {
    std::mt19937_64 rng(12);
    auto p = random_poly(rng), q = random_poly(rng);
    for (int k = 0; k < 100; ++k) {
        auto pt = random_point(rng);
        CHECK(poly_evaluate(p * q, pt) == poly_evaluate(p, pt) * poly_evaluate(q, pt));
        CHECK(poly_evaluate(p + q, pt) == poly_evaluate(p, pt) + poly_evaluate(q, pt));
    }
}

TEST_CASE("property: ratfunc_equal is an equivalence relation") {
    std::mt19937_64 rng(13);
    for (int k = 0; k < 20; ++k) {
        auto n = random_poly(rng, 4, 2), d = random_poly(rng, 3, 2), c = random_poly(rng, 2, 1);
        if (d.is_zero() || c.is_zero()) continue;
        RationalFunction f(n, d), g(n * c, d * c), h(n * c * c, d * c * c);
        CHECK(ratfunc_equal(f, f));
        CHECK(ratfunc_equal(f, g) == ratfunc_equal(g, f));
        CHECK(ratfunc_equal(f, g));
        CHECK(ratfunc_equal(g, h));
        CHECK(ratfunc_equal(f, h));
        RationalFunction other(n + d, d);
        CHECK_FALSE(ratfunc_equal(f, other));
    }
}

TEST_CASE("property: discriminant vanishes iff cubic and derivative share a factor") {
    std::mt19937_64 rng(14);
    std::vector<std::pair<BigRational, BigRational>> cases{{-3, 2}, {-3, -2}, {0, 0}, {-12, 16}, {BigRational(-3, 4), BigRational(1, 4)}};
    for (int k = 0; k < 60; ++k) cases.emplace_back(random_rational(rng), random_rational(rng));
    for (const auto& [p, q] : cases) {
        UniPoly f(std::vector<BigRational>{q, p, 0, 1});
        UniPoly g = gcd(f, f.derivative());
        CHECK((cubic_discriminant(p, q) == 0) == (g.degree() > 0));
    }
}

TEST_CASE("univariate helpers") {
    UniPoly f(std::vector<BigRational>{2, -3, 0, 1}); // (x-1)^2 (x+2)
    auto sq = squarefree_decomposition(f);
    REQUIRE(sq.size() == 2);
    CHECK(sq[0].second == 1);
    CHECK(sq[0].first == UniPoly(std::vector<BigRational>{2, 1}));
    CHECK(sq[1].second == 2);
    CHECK(sq[1].first == UniPoly(std::vector<BigRational>{-1, 1}));
    auto [q, r] = divmod(f, UniPoly(std::vector<BigRational>{-1, 1}));
    CHECK(r.is_zero());
    CHECK(q.evaluate(1) == 0);
    CHECK(UniPoly::monomial(3).valuation() == 3u);
    CHECK(f.reversed(3) == UniPoly(std::vector<BigRational>{1, 0, -3, 2}));
    CHECK_THROWS_AS(divmod(f, UniPoly()), std::domain_error);
    CHECK(UniPoly::from_multi(P("u1^2 - 1"), "u1").degree() == 2);
    CHECK_THROWS_AS(UniPoly::from_multi(P("u1*v1"), "u1"), std::invalid_argument);
}

TEST_CASE("big floats and complex numbers") {
    BigFloat two(2L, 256);
    BigFloat r = sqrt(two);
    CHECK(abs(r * r - two).to_double() < 1e-70);
    CHECK_THROWS_AS(BigFloat(32), std::invalid_argument);
    // precision never silently drops
    BigFloat lo(1L, 64), hi(1L, 512);
    CHECK((lo + hi).precision() == 512);

    auto z = BigComplex::parse("-1.5+2i");
    CHECK(z.real().to_double() == doctest::Approx(-1.5));
    CHECK(z.imag().to_double() == doctest::Approx(2));
    CHECK(BigComplex::parse("i").imag().to_double() == 1);
    CHECK(BigComplex::parse("-i").imag().to_double() == -1);
    CHECK(BigComplex::parse("2i").real().is_zero());
    CHECK(BigComplex::parse("3").imag().is_zero());
    CHECK(BigComplex::parse("1e-3-2.5i").imag().to_double() == doctest::Approx(-2.5));

    auto w = BigComplex::parse("3+4i");
    CHECK(w.abs().to_double() == doctest::Approx(5));
    auto s = sqrt(BigComplex::parse("-4"));
    CHECK(s.real().to_double() == doctest::Approx(0).epsilon(1e-30));
    CHECK(s.imag().to_double() == doctest::Approx(2));
    auto c = cbrt(BigComplex(BigRational(1728), 256));
    CHECK(abs(c - BigComplex(BigRational(12), 256)).to_double() < 1e-60);
    auto e = exp(BigComplex(BigFloat(256), BigFloat::pi(256)));
    CHECK(abs(e + BigComplex(BigRational(1), 256)).to_double() < 1e-60);
    CHECK((w * w.conj()).real().to_double() == doctest::Approx(25));
    CHECK(abs(w / w - BigComplex(BigRational(1), 256)).to_double() < 1e-70);
}
