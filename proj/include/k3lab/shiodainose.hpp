#pragma once

// The explicit Kummer-side computation: the bidegree (4,3) forms H_inf, H+,
// H-, the coordinates x1, y1^2, the master cubic identity and the exact
// lambda / j parameterizations of (a, b).

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "k3lab/exactcore.hpp"
#include "k3lab/transcription.hpp"

namespace k3lab::shiodainose {

using constants::Transcription;
using exact::Assignment;
using exact::BigComplex;
using exact::BigRational;
using exact::MultiPolynomial;
using exact::RationalFunction;

// u1 v1 u2 v2 l1 l2
const std::vector<std::string>& variables();

// Random point with small rational coordinates, canonical.
Assignment random_point(std::mt19937_64& rng);

struct HPolys {
    MultiPolynomial h_inf;
    MultiPolynomial h_plus;  // u1 * C1 * C2
    MultiPolynomial h_minus; // v1 * C3 * C4
};

HPolys build_h_polys(const Transcription& t = constants::transcribed());

struct IdentityResult {
    bool holds = false;
    std::size_t terms = 0; // size of the expanded numerator
    std::string witness;   // first failing point, or a summary
};

// Evaluates the sum at `spot_checks` random points, then expands it.
IdentityResult verify_h_sum(const Transcription& t = constants::transcribed(), unsigned spot_checks = 10,
                            std::uint64_t seed = 1);

// orientation * 2 (H+ - H-) / H_inf
RationalFunction z_invariant(const Transcription& t = constants::transcribed());

struct MasterIdentityData {
    RationalFunction x1;
    RationalFunction y1_squared;
    RationalFunction z_plus_zinv;
    BigRational kappa;
};

// Throws std::invalid_argument for kappa = 0.
MasterIdentityData build_x1_y1(const BigRational& kappa, const Transcription& t = constants::transcribed());

// The left side of the master cubic as a list of rational-function terms.
std::vector<RationalFunction> master_identity_terms(const MasterIdentityData& d, const Transcription& t);

// Solves for kappa at one random point and confirms it at a second one.
// Throws k3lab::DomainError when no constant works.
BigRational fit_kappa(const Transcription& t = constants::transcribed(), std::uint64_t seed = 3);

IdentityResult verify_master_identity(const BigRational& kappa, const Transcription& t = constants::transcribed(),
                                      unsigned spot_checks = 10, std::uint64_t seed = 2);

// ((z-1)/(z+1))^2 = -H-/H+, checked as (s-2) H+ + (s+2) H- = 0 with s = z + 1/z.
bool square_root_relation(const Transcription& t = constants::transcribed());

// j(l) from the transcribed formula; throws k3lab::DomainError for l in {0, 1}.
BigRational j_from_lambda(const BigRational& l, const Transcription& t = constants::transcribed());

struct ABPowers {
    BigRational a_cubed;
    BigRational b_squared;
    friend bool operator==(const ABPowers&, const ABPowers&) = default;
};

// Closed forms in the Legendre parameters. Throws k3lab::DomainError for a
// forbidden parameter.
ABPowers ab_powers_from_lambda(const BigRational& l1, const BigRational& l2, const Transcription& t = constants::transcribed());
// a^3 = -j1 j2 / 48^3, b^2 = (j1 - 1728)(j2 - 1728) / 864^2.
ABPowers ab_powers_from_j(const BigRational& j1, const BigRational& j2, const Transcription& t = constants::transcribed());

// a = -cbrt(j1) cbrt(j2) / 48, b = -sqrt(j1 - 1728) sqrt(j2 - 1728) / 864 with
// principal branches: one representative of the root orbit.
std::pair<BigComplex, BigComplex> ab_numeric(const BigComplex& j1, const BigComplex& j2,
                                             const Transcription& t = constants::transcribed());

// 256 (l^2-l+1)^3 - 1728 l^2 (l-1)^2 - 64 ((l+1)(l-2)(2l-1))^2 = 0
bool j_minus_1728_factorization(const Transcription& t = constants::transcribed());

// The two routes to (a^3, b^2) as rational functions of l1, l2.
bool route_independence_symbolic(const Transcription& t = constants::transcribed());

} // namespace k3lab::shiodainose
