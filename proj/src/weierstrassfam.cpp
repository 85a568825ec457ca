#include "k3lab/weierstrassfam.hpp"

#include <stdexcept>

#include "k3lab/errors.hpp"

namespace k3lab::weierstrass {

using exact::BigFloat;

UniPoly WeierstrassModel::discriminant() const {
    return BigRational(-16) * (BigRational(4) * A.pow(3) + BigRational(27) * B.pow(2));
}

WeierstrassModel to_weierstrass(const FamilyMember& m, const constants::Transcription& t) {
    // y^2 = X^3 + aX - (b + c t + d/t), then X = xi/t^2, y = eta/t^3.
    WeierstrassModel w;
    w.A = UniPoly::monomial(4, m.a);
    w.B = -(UniPoly::monomial(5, t.zinv_coeff) + UniPoly::monomial(6, m.b) + UniPoly::monomial(7, t.z_coeff));
    return w;
}

WeierstrassModel at_infinity(const WeierstrassModel& w) {
    if (w.A.degree() > 8 || w.B.degree() > 12) throw std::invalid_argument("coefficient degrees exceed a K3 fibration");
    return {w.A.reversed(8), w.B.reversed(12)};
}

bool is_palindromic(const WeierstrassModel& w) {
    auto inf = at_infinity(w);
    return inf.A == w.A && inf.B == w.B;
}

unsigned KodairaType::euler_number() const {
    switch (symbol) {
    case KodairaSymbol::I0: return 0;
    case KodairaSymbol::In: return n;
    case KodairaSymbol::II: return 2;
    case KodairaSymbol::III: return 3;
    case KodairaSymbol::IV: return 4;
    case KodairaSymbol::I0star: return 6;
    case KodairaSymbol::Instar: return 6 + n;
    case KodairaSymbol::IVstar: return 8;
    case KodairaSymbol::IIIstar: return 9;
    case KodairaSymbol::IIstar: return 10;
    }
    return 0;
}

std::string KodairaType::to_string() const {
    switch (symbol) {
    case KodairaSymbol::I0: return "I0";
    case KodairaSymbol::In: return "I" + std::to_string(n);
    case KodairaSymbol::II: return "II";
    case KodairaSymbol::III: return "III";
    case KodairaSymbol::IV: return "IV";
    case KodairaSymbol::I0star: return "I0*";
    case KodairaSymbol::Instar: return "I" + std::to_string(n) + "*";
    case KodairaSymbol::IVstar: return "IV*";
    case KodairaSymbol::IIIstar: return "III*";
    case KodairaSymbol::IIstar: return "II*";
    }
    return "?";
}

namespace {

void expect_delta(unsigned ord_delta, unsigned want) {
    if (ord_delta != want)
        throw std::invalid_argument("discriminant order " + std::to_string(ord_delta) + " inconsistent with A, B orders");
}

} // namespace

KodairaType kodaira_type(unsigned a, unsigned b, unsigned d) {
    if (d == kInfiniteOrder) throw std::invalid_argument("discriminant vanishes identically");
    if (a >= 4 && b >= 6) throw DomainError("non-minimal Weierstrass model");
    if (d == 0) return {KodairaSymbol::I0, 0};
    if (a == 0) {
        if (b != 0) expect_delta(d, 0);
        return {KodairaSymbol::In, d};
    }
    if (b == 0) expect_delta(d, 0);
    if (b == 1) return expect_delta(d, 2), KodairaType{KodairaSymbol::II, 0};
    if (a == 1) return expect_delta(d, 3), KodairaType{KodairaSymbol::III, 0};
    if (b == 2) return expect_delta(d, 4), KodairaType{KodairaSymbol::IV, 0};
    // now a >= 2, b >= 3
    if (a == 2 && b == 3) {
        if (d < 6) expect_delta(d, 6);
        return d == 6 ? KodairaType{KodairaSymbol::I0star, 0} : KodairaType{KodairaSymbol::Instar, d - 6};
    }
    if (a == 2 || b == 3) return expect_delta(d, 6), KodairaType{KodairaSymbol::I0star, 0};
    if (b == 4) return expect_delta(d, 8), KodairaType{KodairaSymbol::IVstar, 0};
    if (a == 3) return expect_delta(d, 9), KodairaType{KodairaSymbol::IIIstar, 0};
    expect_delta(d, 10);
    return {KodairaSymbol::IIstar, 0};
}

namespace {

unsigned order_at_zero(const UniPoly& p) {
    auto v = p.valuation();
    return v ? *v : kInfiniteOrder;
}

// Split the squarefree g by the order of vanishing of p at its roots.
std::vector<std::pair<UniPoly, unsigned>> split_by_order(const UniPoly& g, const UniPoly& p) {
    if (p.is_zero()) return {{g, kInfiniteOrder}};
    std::vector<std::pair<UniPoly, unsigned>> out;
    UniPoly h = g;
    UniPoly deriv = p;
    for (unsigned k = 0; h.degree() > 0; ++k) {
        UniPoly next = gcd(h, deriv);
        UniPoly exact = next.degree() > 0 ? divmod(h, next).first : h;
        if (exact.degree() > 0) out.emplace_back(exact.monic(), k);
        h = next;
        deriv = deriv.derivative();
    }
    return out;
}

FiberEntry point_fiber(std::string where, const WeierstrassModel& w) {
    FiberEntry e;
    e.location = std::move(where);
    e.locus = UniPoly::monomial(1);
    e.type = kodaira_type(order_at_zero(w.A), order_at_zero(w.B), order_at_zero(w.discriminant()));
    return e;
}

} // namespace

FiberAnalysis fiber_analysis(const FamilyMember& m, const constants::Transcription& t) {
    auto w = to_weierstrass(m, t);
    UniPoly delta = w.discriminant();
    if (delta.is_zero()) throw DomainError("discriminant vanishes identically");

    FiberAnalysis r;
    r.fibers.push_back(point_fiber("t=0", w));
    r.fibers.push_back(point_fiber("t=inf", at_infinity(w)));

    // strip t = 0; zeros at infinity are covered by the second chart
    unsigned v0 = *delta.valuation();
    std::vector<BigRational> rest(delta.coeffs().begin() + v0, delta.coeffs().end());
    for (const auto& [g, mult] : squarefree_decomposition(UniPoly(std::move(rest)))) {
        for (const auto& [ga, oa] : split_by_order(g, w.A)) {
            for (const auto& [gb, ob] : split_by_order(ga, w.B)) {
                FiberEntry e;
                e.locus = gb;
                e.location = "roots of " + gb.to_string();
                e.type = kodaira_type(oa, ob, mult);
                e.count = static_cast<unsigned>(gb.degree());
                r.fibers.push_back(std::move(e));
            }
        }
    }
    for (const auto& f : r.fibers) r.euler_total += f.type.euler_number() * f.count;
    return r;
}

bool is_degenerate(const FamilyMember& m) {
    return exact::cubic_discriminant(m.a, m.b - 2) == 0 || exact::cubic_discriminant(m.a, m.b + 2) == 0;
}

BigRational degeneracy_product(const BigRational& a_cubed, const BigRational& b_squared) {
    BigRational s = BigRational(4) * a_cubed + BigRational(27) * b_squared + BigRational(108);
    return s * s - BigRational(11664) * b_squared;
}

bool is_degenerate_powers(const BigRational& a_cubed, const BigRational& b_squared) {
    return degeneracy_product(a_cubed, b_squared) == 0;
}

bool is_degenerate(const BigComplex& a, const BigComplex& b, double tol) {
    auto prec = a.precision();
    BigComplex four(BigRational(4), prec), tw7(BigRational(27), prec), two(BigRational(2), prec);
    auto disc = [&](const BigComplex& q) { return -(four * a * a * a + tw7 * q * q); };
    BigComplex prod = disc(b - two) * disc(b + two);
    BigFloat scale = BigFloat(4L, prec) * abs(a) * abs(a) * abs(a);
    BigFloat bb = abs(b) + BigFloat(2L, prec);
    scale = scale + BigFloat(27L, prec) * bb * bb + BigFloat(108L, prec);
    scale = scale * scale;
    return abs(prod) <= BigFloat(tol, prec) * scale;
}

} // namespace k3lab::weierstrass
