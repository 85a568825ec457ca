#pragma once

// Divisor classes on the Kummer surface of E1 x E2 written as (a,b);A:
// a F1 + b F2 + sum A_ij G_ij, with the polarized intersection form
// 2(ab' + a'b) - 2 sum A_ij A'_ij.

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "k3lab/exactcore.hpp"
#include "k3lab/latticecore.hpp"
#include "k3lab/transcription.hpp"

namespace k3lab::kummer {

using exact::BigRational;
using constants::Transcription;

struct KummerClass {
    BigRational a = 0; // F1
    BigRational b = 0; // F2
    std::array<std::array<BigRational, 4>, 4> g{};

    KummerClass& operator+=(const KummerClass& o);
    KummerClass& operator-=(const KummerClass& o);
    friend KummerClass operator+(KummerClass x, const KummerClass& y) { return x += y; }
    friend KummerClass operator-(KummerClass x, const KummerClass& y) { return x -= y; }
    friend KummerClass operator*(const BigRational& c, KummerClass x);
    friend bool operator==(const KummerClass& x, const KummerClass& y) = default;

    bool is_zero() const { return *this == KummerClass{}; }
    std::string to_string() const; // "(a,b;[[..],..])"
};

BigRational pair(const KummerClass& x, const KummerClass& y);

// F1, F2, F11..F14 (F_{1,i}), F21..F24 (F_{2,j}), G11..G44.
const std::map<std::string, KummerClass>& standard_generators();
// Ordered list of the 24 curve generators (F1i, F2j, Gij).
std::vector<std::string> curve_generator_labels();

// Parses "3F1+4F2-G11-2G34" over the standard generators plus any extra
// named classes. Throws std::invalid_argument on unknown labels.
KummerClass parse_class(std::string_view text, const std::map<std::string, KummerClass>& extra = {});

// F1 + F2 - G_{i1 j1} - G_{i2 j2} - G_{i3 j3}; rows and columns 1-based and
// pairwise distinct, std::invalid_argument otherwise.
KummerClass morecurves_class(const std::array<std::pair<int, int>, 3>& cells);

KummerClass big_d(const Transcription& t = constants::transcribed());

// Generators plus D, C1, C2, C3, C4.
std::map<std::string, KummerClass> named_classes(const Transcription& t = constants::transcribed());

struct E8FiberReport {
    bool sum_equals_d = false;
    bool components_orthogonal = false;
    std::vector<std::pair<std::string, BigRational>> component_pairings; // with D
    bool ok() const { return sum_equals_d && components_orthogonal; }
};
E8FiberReport iistar_fiber_report(const Transcription& t = constants::transcribed());
bool iistar_fiber_check(const Transcription& t = constants::transcribed());

struct FiberComponent {
    std::string label;
    KummerClass cls;
    int multiplicity;
};
using Fiber = std::vector<FiberComponent>;
std::pair<Fiber, Fiber> i0star_fibers(const Transcription& t = constants::transcribed());
KummerClass fiber_sum(const Fiber& f);

struct LabeledGraphReport {
    std::vector<std::string> labels;
    std::vector<std::vector<BigRational>> pairing;
    std::vector<std::string> mismatches; // "X-Y: expected e, got g"
    std::size_t rank = 0;
    bool matches() const { return mismatches.empty(); }
    BigRational adjacency(std::string_view x, std::string_view y) const;
};
LabeledGraphReport labeled_graph_check(const Transcription& t = constants::transcribed());

std::vector<KummerClass> branch_octet(const Transcription& t = constants::transcribed());

struct FrickeNumbers {
    BigRational ry_f1, ry_f2, proj_square, rx_square, generator_square;
};
// Throws std::invalid_argument for n < 1.
FrickeNumbers fricke_numbers(long n, const Transcription& t = constants::transcribed());

// Self-pairings of the l3 and 2*l4 weight vectors on the 19-curve lattice.
std::pair<exact::BigInt, exact::BigInt> l3_l4_squares(const Transcription& t = constants::transcribed());

// Labels of named classes that pair non-integrally with some curve generator.
std::vector<std::string> non_integral_classes(const Transcription& t = constants::transcribed());

} // namespace k3lab::kummer
