#pragma once

// The family 0 = z + 1/z + y^2 + x^3 + a x + b as a Weierstrass fibration
// over P^1 in the chart t = z, with Kodaira fiber classification and the
// degeneration test for the extra singular fibers.

#include <limits>
#include <string>
#include <vector>

#include "k3lab/exactcore.hpp"
#include "k3lab/transcription.hpp"

namespace k3lab::weierstrass {

using exact::BigComplex;
using exact::BigRational;
using exact::UniPoly;

struct FamilyMember {
    BigRational a;
    BigRational b;
};

// eta^2 = xi^3 + A(t) xi + B(t).
struct WeierstrassModel {
    UniPoly A;
    UniPoly B;
    // -16 (4A^3 + 27B^2)
    UniPoly discriminant() const;
};

// With the z and 1/z coefficients c, d of the transcription:
// A = a t^4, B = -(d t^5 + b t^6 + c t^7).
WeierstrassModel to_weierstrass(const FamilyMember& m, const constants::Transcription& t = constants::transcribed());

// Model in the chart s = 1/t: A(1/s) s^8, B(1/s) s^12.
WeierstrassModel at_infinity(const WeierstrassModel& w);
bool is_palindromic(const WeierstrassModel& w);

enum class KodairaSymbol { I0, In, II, III, IV, I0star, Instar, IVstar, IIIstar, IIstar };

struct KodairaType {
    KodairaSymbol symbol = KodairaSymbol::I0;
    unsigned n = 0; // for I_n and I_n*

    unsigned euler_number() const;
    std::string to_string() const; // "I1", "II", "I0*", "II*", ...
    friend bool operator==(const KodairaType&, const KodairaType&) = default;
};

inline constexpr unsigned kInfiniteOrder = std::numeric_limits<unsigned>::max();

// Orders of vanishing of A, B and the discriminant at a point; pass
// kInfiniteOrder for an identically vanishing coefficient. Throws
// k3lab::DomainError on a non-minimal triple (ordA >= 4 and ordB >= 6) and
// std::invalid_argument when the triple cannot come from a model.
KodairaType kodaira_type(unsigned ord_a, unsigned ord_b, unsigned ord_delta);

struct FiberEntry {
    std::string location; // "t=0", "t=inf" or "roots of <poly>"
    UniPoly locus;        // monic polynomial whose roots carry these fibers
    KodairaType type;
    unsigned count = 1;   // number of fibers (roots of locus)
};

struct FiberAnalysis {
    std::vector<FiberEntry> fibers;
    unsigned euler_total = 0;
};

// Throws k3lab::DomainError when the discriminant vanishes identically.
FiberAnalysis fiber_analysis(const FamilyMember& m, const constants::Transcription& t = constants::transcribed());

// x^3 + a x + b - 2 or x^3 + a x + b + 2 has a repeated root.
bool is_degenerate(const FamilyMember& m);
// The same test from a^3 and b^2 alone:
// disc(a,b-2) disc(a,b+2) = (4a^3 + 27b^2 + 108)^2 - 11664 b^2.
bool is_degenerate_powers(const BigRational& a_cubed, const BigRational& b_squared);
BigRational degeneracy_product(const BigRational& a_cubed, const BigRational& b_squared);
// Numeric variant: |product| <= tol * (4|a|^3 + 27(|b|+2)^2 + 108)^2.
bool is_degenerate(const BigComplex& a, const BigComplex& b, double tol = 1e-30);

} // namespace k3lab::weierstrass
