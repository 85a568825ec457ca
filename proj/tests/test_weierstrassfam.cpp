#include "doctest.h"

#include <random>

#include "k3lab/errors.hpp"
#include "k3lab/weierstrassfam.hpp"

using namespace k3lab::weierstrass;
using k3lab::exact::MultiPolynomial;
using k3lab::exact::RationalFunction;

namespace {

const std::vector<std::string> kVars{"t", "xi", "eta"};

MultiPolynomial var(const char* name) { return MultiPolynomial::variable(kVars, name); }
MultiPolynomial cst(const BigRational& c) { return MultiPolynomial::constant(kVars, c); }

MultiPolynomial lift(const UniPoly& p) {
    MultiPolynomial out(kVars);
    for (unsigned k = 0; k < p.coeffs().size(); ++k) out += cst(p.coeff(k)) * var("t").pow(k);
    return out;
}

// t^6 (t + 1/t + y^2 + x^3 + a x + b) at x = -xi/t^2, y = eta/t^3
RationalFunction resubstituted(const FamilyMember& m) {
    RationalFunction t(var("t"));
    RationalFunction one(cst(1));
    RationalFunction x = RationalFunction(-var("xi"), var("t").pow(2));
    RationalFunction y = RationalFunction(var("eta"), var("t").pow(3));
    RationalFunction e = t + one / t + y * y + x * x * x + RationalFunction(cst(m.a)) * x + RationalFunction(cst(m.b));
    return RationalFunction(var("t").pow(6)) * e;
}

RationalFunction weierstrass_form(const WeierstrassModel& w) {
    return RationalFunction(var("eta").pow(2) - var("xi").pow(3) - lift(w.A) * var("xi") - lift(w.B));
}

BigRational random_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-40, 40), den(1, 9);
    BigRational q(num(rng), den(rng));
    q.canonicalize();
    return q;
}

unsigned count_type(const FiberAnalysis& r, const std::string& type) {
    unsigned n = 0;
    for (const auto& f : r.fibers)
        if (f.type.to_string() == type) n += f.count;
    return n;
}

} // namespace

TEST_CASE("weierstrass model") {
    auto w = to_weierstrass({1, 0});
    CHECK(w.A == UniPoly::monomial(4));
    CHECK(w.B == -(UniPoly::monomial(5) + UniPoly::monomial(7)));
    auto w0 = to_weierstrass({0, 0});
    CHECK(w0.A.is_zero());
    CHECK(w0.B == w.B);

    std::mt19937_64 rng(7);
    for (int i = 0; i < 6; ++i) {
        FamilyMember m{random_rational(rng), random_rational(rng)};
        CHECK(k3lab::exact::ratfunc_equal(resubstituted(m), weierstrass_form(to_weierstrass(m))));
    }
    CHECK_FALSE(k3lab::exact::ratfunc_equal(resubstituted({1, 2}), weierstrass_form(to_weierstrass({1, 3}))));
}

TEST_CASE("palindrome symmetry") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 20; ++i) {
        auto w = to_weierstrass({random_rational(rng), random_rational(rng)});
        CHECK(is_palindromic(w));
        CHECK(w.discriminant().reversed(24) == w.discriminant());
    }
    CHECK_FALSE(is_palindromic(to_weierstrass({1, 1}, k3lab::constants::mutated("family.zinv_coeff"))));
}

TEST_CASE("fiberwise j is unchanged by the rewriting") {
    // j = 1728 * 4A^3 / (4A^3 + 27B^2) against 1728 * 4a^3 / (4a^3 + 27c^2) with c = b + t + 1/t
    FamilyMember m{BigRational(2, 3), BigRational(-5, 7)};
    auto w = to_weierstrass(m);
    for (long tv : {2L, -3L, 5L}) {
        BigRational t(tv);
        BigRational a3 = w.A.evaluate(t) * w.A.evaluate(t) * w.A.evaluate(t);
        BigRational b2 = w.B.evaluate(t) * w.B.evaluate(t);
        BigRational c = m.b + t + 1 / t;
        BigRational j1 = 1728 * 4 * a3 / (4 * a3 + 27 * b2);
        BigRational j2 = 1728 * 4 * m.a * m.a * m.a / (4 * m.a * m.a * m.a + 27 * c * c);
        CHECK(j1 == j2);
    }
}

TEST_CASE("kodaira table") {
    CHECK(kodaira_type(4, 5, 10).to_string() == "II*");
    CHECK(kodaira_type(2, 3, 6).to_string() == "I0*");
    CHECK(kodaira_type(0, 0, 1).to_string() == "I1");
    CHECK(kodaira_type(0, 0, 0).to_string() == "I0");
    CHECK(kodaira_type(1, 1, 2).to_string() == "II");
    CHECK(kodaira_type(kInfiniteOrder, 1, 2).to_string() == "II");
    CHECK(kodaira_type(1, 2, 3).to_string() == "III");
    CHECK(kodaira_type(2, 2, 4).to_string() == "IV");
    CHECK(kodaira_type(2, 3, 9).to_string() == "I3*");
    CHECK(kodaira_type(3, 3, 6).to_string() == "I0*");
    CHECK(kodaira_type(2, 4, 6).to_string() == "I0*");
    CHECK(kodaira_type(3, 4, 8).to_string() == "IV*");
    CHECK(kodaira_type(3, 5, 9).to_string() == "III*");
    CHECK(kodaira_type(kInfiniteOrder, 5, 10).to_string() == "II*");
    CHECK(kodaira_type(2, 3, 9).euler_number() == 9);
    CHECK(kodaira_type(4, 5, 10).euler_number() == 10);
    CHECK_THROWS_AS(kodaira_type(4, 6, 12), k3lab::DomainError);
    CHECK_THROWS_AS(kodaira_type(kInfiniteOrder, kInfiniteOrder, 0), k3lab::DomainError);
    CHECK_THROWS_AS(kodaira_type(4, 5, 9), std::invalid_argument);
    CHECK_THROWS_AS(kodaira_type(0, 1, 3), std::invalid_argument);
}

TEST_CASE("fiber analysis") {
    auto r = fiber_analysis({1, 1});
    REQUIRE(r.fibers.size() >= 2);
    CHECK(r.fibers[0].location == "t=0");
    CHECK(r.fibers[0].type.to_string() == "II*");
    CHECK(r.fibers[1].location == "t=inf");
    CHECK(r.fibers[1].type.to_string() == "II*");
    CHECK(count_type(r, "I1") == 4);
    CHECK(r.euler_total == 24);

    // x^3 - 3x + 2 = (x-1)^2 (x+2) and x^3 - 3x - 2 = (x+1)^2 (x-2): both
    // extra pairs of I1 fibers collide, at z = 1 and z = -1
    auto deg = fiber_analysis({-3, 0});
    CHECK(deg.euler_total == 24);
    CHECK(count_type(deg, "I2") == 2);
    CHECK(count_type(deg, "I1") == 0);
    // only one of the two cubics degenerates for a = -3, b = 4
    auto half = fiber_analysis({-3, 4});
    CHECK(count_type(half, "I2") == 1);
    CHECK(count_type(half, "I1") == 2);

    auto zero = fiber_analysis({0, 0});
    CHECK(count_type(zero, "II") == 2);
    CHECK(zero.euler_total == 24);
    for (const auto& f : zero.fibers)
        if (f.type.to_string() == "II") CHECK(f.locus == UniPoly({1, 0, 1}));
}

TEST_CASE("euler budget on random members") {
    std::mt19937_64 rng(2024);
    int tested = 0;
    while (tested < 50) {
        FamilyMember m{random_rational(rng), random_rational(rng)};
        if (m.a == 0 || is_degenerate(m)) continue;
        auto r = fiber_analysis(m);
        CHECK(r.fibers[0].type.to_string() == "II*");
        CHECK(r.fibers[1].type.to_string() == "II*");
        CHECK(count_type(r, "I1") == 4);
        CHECK(r.euler_total == 24);
        ++tested;
    }
}

TEST_CASE("degeneracy") {
    CHECK(is_degenerate(FamilyMember{-3, 0}));
    CHECK_FALSE(is_degenerate(FamilyMember{1, 1}));
    CHECK(is_degenerate(FamilyMember{0, 2}));
    CHECK(k3lab::exact::cubic_discriminant(1, 1 - 2) == -31);
    CHECK(k3lab::exact::cubic_discriminant(1, 1 + 2) == -247);

    // the (a^3, b^2) product agrees with the two discriminants
    std::mt19937_64 rng(5);
    for (int i = 0; i < 30; ++i) {
        FamilyMember m{random_rational(rng), random_rational(rng)};
        BigRational prod = k3lab::exact::cubic_discriminant(m.a, m.b - 2) * k3lab::exact::cubic_discriminant(m.a, m.b + 2);
        CHECK(degeneracy_product(m.a * m.a * m.a, m.b * m.b) == prod);
        CHECK(is_degenerate_powers(m.a * m.a * m.a, m.b * m.b) == is_degenerate(m));
    }
    CHECK(is_degenerate_powers(-27, 0));

    auto prec = k3lab::exact::kDefaultPrecision;
    CHECK(is_degenerate(BigComplex(BigRational(-3), prec), BigComplex(BigRational(0), prec)));
    CHECK_FALSE(is_degenerate(BigComplex(BigRational(1), prec), BigComplex(BigRational(1), prec)));
    CHECK_FALSE(is_degenerate(BigComplex(BigRational(-3), prec), BigComplex(BigRational(1, 1000000), prec)));
}

TEST_CASE("degenerate discriminant is rejected") {
    auto t = k3lab::constants::transcribed();
    t.z_coeff = 0;
    t.zinv_coeff = 0;
    CHECK_THROWS_AS(fiber_analysis({0, 0}, t), k3lab::DomainError);
}
