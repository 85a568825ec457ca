#include "k3lab/shiodainose.hpp"

#include <stdexcept>

#include "k3lab/errors.hpp"

namespace k3lab::shiodainose {

using exact::parse_polynomial;

const std::vector<std::string>& variables() {
    static const std::vector<std::string> v{"u1", "v1", "u2", "v2", "l1", "l2"};
    return v;
}

namespace {

MultiPolynomial poly(const std::string& text) { return parse_polynomial(text, variables()); }

MultiPolynomial var(const char* name) { return MultiPolynomial::variable(variables(), name); }

MultiPolynomial cst(const BigRational& c) { return MultiPolynomial::constant(variables(), c); }

std::string describe(const Assignment& p) {
    std::string s;
    for (const auto& [k, v] : p) s += (s.empty() ? "" : ",") + k + "=" + exact::to_string(v);
    return s;
}

// Sum of the terms at p; nullopt if a denominator vanishes there.
std::optional<BigRational> evaluate_sum(const std::vector<RationalFunction>& terms, const Assignment& p) {
    BigRational sum = 0;
    try {
        for (const auto& f : terms) sum += f.evaluate(p);
    } catch (const DomainError&) {
        return std::nullopt;
    }
    return sum;
}

// Spot checks followed by symbolic expansion of the cleared numerator.
IdentityResult check_identity(const std::vector<RationalFunction>& terms, unsigned spot_checks, std::uint64_t seed) {
    IdentityResult r;
    std::mt19937_64 rng(seed);
    for (unsigned done = 0, tries = 0; done < spot_checks && tries < 20 * spot_checks + 20; ++tries) {
        auto p = random_point(rng);
        auto v = evaluate_sum(terms, p);
        if (!v) continue;
        ++done;
        if (*v != 0) {
            r.witness = "nonzero value " + exact::to_string(*v) + " at " + describe(p);
            return r;
        }
    }
    MultiPolynomial n = exact::clear_denominators(terms);
    r.terms = n.size();
    r.holds = exact::poly_is_zero(n);
    r.witness = r.holds ? "zero polynomial" : "numerator has " + std::to_string(n.size()) + " terms";
    return r;
}

void require_lambda(const BigRational& l) {
    if (l == 0 || l == 1) throw DomainError("lambda must avoid 0 and 1, got " + exact::to_string(l));
}

BigRational eval_in_l(const std::string& text, const BigRational& l) {
    return parse_polynomial(text, {"l"}).evaluate({{"l", l}});
}

} // namespace

Assignment random_point(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-12, 12), den(1, 7);
    Assignment a;
    for (const auto& v : variables()) {
        BigRational q(num(rng), den(rng));
        q.canonicalize();
        a[v] = q;
    }
    return a;
}

HPolys build_h_polys(const Transcription& t) {
    HPolys h;
    h.h_inf = poly(t.h_inf);
    h.h_plus = var("u1") * poly(t.c1_poly) * poly(t.c2_poly);
    h.h_minus = var("v1") * poly(t.c3_poly) * poly(t.c4_poly);
    return h;
}

IdentityResult verify_h_sum(const Transcription& t, unsigned spot_checks, std::uint64_t seed) {
    auto h = build_h_polys(t);
    return check_identity({h.h_inf, h.h_plus, h.h_minus}, spot_checks, seed);
}

RationalFunction z_invariant(const Transcription& t) {
    auto h = build_h_polys(t);
    return RationalFunction(cst(2 * t.z_orientation) * (h.h_plus - h.h_minus), h.h_inf);
}

MasterIdentityData build_x1_y1(const BigRational& kappa, const Transcription& t) {
    if (kappa == 0) throw std::invalid_argument("kappa must be nonzero");
    auto h = build_h_polys(t);
    MasterIdentityData d;
    d.kappa = kappa;

    std::vector<RationalFunction::Factor> x_den;
    for (const auto& f : t.x1_denominator) x_den.emplace_back(poly(f), 1);
    d.x1 = RationalFunction(cst(t.x1_sign) * poly(t.x1_numerator), std::move(x_den));

    std::vector<RationalFunction::Factor> y_den;
    for (const auto& [f, m] : t.y1_denominator) y_den.emplace_back(poly(f), m);
    d.y1_squared = RationalFunction(cst(kappa) * poly(t.y1_extra_factor) * h.h_plus * h.h_minus, std::move(y_den));

    d.z_plus_zinv = z_invariant(t);
    return d;
}

std::vector<RationalFunction> master_identity_terms(const MasterIdentityData& d, const Transcription& t) {
    RationalFunction x2 = d.x1 * d.x1;
    return {x2 * d.x1,
            RationalFunction(poly(t.cubic_c2)) * x2,
            RationalFunction(poly(t.cubic_c1)) * d.x1,
            RationalFunction(poly(t.cubic_c0)),
            d.y1_squared,
            RationalFunction(poly(t.cubic_cz)) * d.z_plus_zinv};
}

BigRational fit_kappa(const Transcription& t, std::uint64_t seed) {
    auto terms = master_identity_terms(build_x1_y1(1, t), t);
    RationalFunction y = terms[4];
    terms.erase(terms.begin() + 4);
    std::mt19937_64 rng(seed);

    std::vector<BigRational> fitted;
    for (int tries = 0; fitted.size() < 2 && tries < 100; ++tries) {
        auto p = random_point(rng);
        auto rest = evaluate_sum(terms, p);
        auto yv = evaluate_sum({y}, p);
        if (!rest || !yv || *yv == 0) continue;
        fitted.push_back(-*rest / *yv);
    }
    if (fitted.size() < 2) throw DomainError("no generic point found for fitting kappa");
    if (fitted[0] != fitted[1])
        throw DomainError("no constant kappa satisfies the identity: " + exact::to_string(fitted[0]) + " vs " +
                          exact::to_string(fitted[1]));
    return fitted[0];
}

IdentityResult verify_master_identity(const BigRational& kappa, const Transcription& t, unsigned spot_checks,
                                      std::uint64_t seed) {
    return check_identity(master_identity_terms(build_x1_y1(kappa, t), t), spot_checks, seed);
}

bool square_root_relation(const Transcription& t) {
    auto h = build_h_polys(t);
    RationalFunction s = z_invariant(t);
    RationalFunction hp(h.h_plus), hm(h.h_minus), two(cst(2));
    std::vector<RationalFunction> terms{(s - two) * hp, (s + two) * hm};
    return exact::poly_is_zero(exact::clear_denominators(terms));
}

BigRational j_from_lambda(const BigRational& l, const Transcription& t) {
    require_lambda(l);
    BigRational den = eval_in_l(t.j_denominator, l);
    if (den == 0) throw DomainError("j denominator vanishes at lambda = " + exact::to_string(l));
    return eval_in_l(t.j_numerator, l) / den;
}

ABPowers ab_powers_from_lambda(const BigRational& l1, const BigRational& l2, const Transcription& t) {
    require_lambda(l1);
    require_lambda(l2);
    BigRational d = l1 * (l1 - 1) * l2 * (l2 - 1);
    d *= d;
    BigRational fa = eval_in_l(t.a_lambda_factor, l1) * eval_in_l(t.a_lambda_factor, l2);
    BigRational fb = eval_in_l(t.b_lambda_factor, l1) * eval_in_l(t.b_lambda_factor, l2);
    return {t.a_cubed_scale * fa * fa * fa / d, t.b_squared_scale * fb * fb / d};
}

ABPowers ab_powers_from_j(const BigRational& j1, const BigRational& j2, const Transcription& t) {
    BigRational ad(t.a_divisor), bd(t.b_divisor);
    return {-j1 * j2 / (ad * ad * ad), (j1 - t.j_1728) * (j2 - t.j_1728) / (bd * bd)};
}

std::pair<BigComplex, BigComplex> ab_numeric(const BigComplex& j1, const BigComplex& j2, const Transcription& t) {
    auto prec = std::max(j1.precision(), j2.precision());
    BigComplex shift(t.j_1728, prec);
    BigComplex a = -(exact::cbrt(j1) * exact::cbrt(j2)) / BigComplex(BigRational(t.a_divisor), prec);
    BigComplex b = -(exact::sqrt(j1 - shift) * exact::sqrt(j2 - shift)) / BigComplex(BigRational(t.b_divisor), prec);
    return {a, b};
}

bool j_minus_1728_factorization(const Transcription& t) {
    const std::vector<std::string> l{"l"};
    auto lhs = parse_polynomial(t.j_numerator, l) - MultiPolynomial::constant(l, t.j_1728) * parse_polynomial(t.j_denominator, l);
    return exact::poly_is_zero(lhs - parse_polynomial(t.j_minus_1728_numerator, l));
}

bool route_independence_symbolic(const Transcription& t) {
    const std::vector<std::string> vs{"l", "l1", "l2"};
    auto in = [&](const std::string& text, const char* which) {
        return parse_polynomial(text, vs).substitute("l", MultiPolynomial::variable(vs, which));
    };
    auto c = [&](const BigRational& q) { return MultiPolynomial::constant(vs, q); };
    auto l1 = MultiPolynomial::variable(vs, "l1"), l2 = MultiPolynomial::variable(vs, "l2");
    MultiPolynomial d = l1 * (l1 - c(1)) * l2 * (l2 - c(1));
    d = d * d;

    RationalFunction j1(in(t.j_numerator, "l1"), in(t.j_denominator, "l1"));
    RationalFunction j2(in(t.j_numerator, "l2"), in(t.j_denominator, "l2"));
    BigRational ad(t.a_divisor), bd(t.b_divisor);
    RationalFunction shift(c(t.j_1728));

    MultiPolynomial fa = in(t.a_lambda_factor, "l1") * in(t.a_lambda_factor, "l2");
    MultiPolynomial fb = in(t.b_lambda_factor, "l1") * in(t.b_lambda_factor, "l2");
    RationalFunction a3_lambda(c(t.a_cubed_scale) * fa.pow(3), d);
    RationalFunction b2_lambda(c(t.b_squared_scale) * fb.pow(2), d);
    RationalFunction a3_j = RationalFunction(c(-1 / (ad * ad * ad))) * j1 * j2;
    RationalFunction b2_j = RationalFunction(c(1 / (bd * bd))) * (j1 - shift) * (j2 - shift);
    return exact::ratfunc_equal(a3_lambda, a3_j) && exact::ratfunc_equal(b2_lambda, b2_j);
}

} // namespace k3lab::shiodainose
