#pragma once

// Every constant of the construction lives here, in one struct, so that a
// single audited site feeds all modules. Polynomials and divisor classes are
// stored as text and parsed by the consuming module.

#include <array>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "k3lab/exactcore.hpp"

namespace k3lab::constants {

using Vec3 = std::array<long, 3>;
using Edge = std::pair<std::string, std::string>;

struct Transcription {
    // -- explicit formulas (variables u1 v1 u2 v2 l1 l2) ----------------------
    std::string h_inf;
    std::string c1_poly; // C1, first factor of H+ (without the u1)
    std::string c2_poly; // C2, second factor of H+
    std::string c3_poly; // C3, first factor of H- (without the v1)
    std::string c4_poly; // C4, second factor of H-

    // Numerator of x1. The printed ratio drops l1(l1-1)v1^2v2^2; with that
    // term restored the numerator is C2 itself.
    std::string x1_numerator;
    std::string x1_numerator_printed;
    std::vector<std::string> x1_denominator;
    int x1_sign;       // x1 = sign * numerator / denominator
    int z_orientation; // z + 1/z = orientation * 2 (H+ - H-) / H_inf

    std::string y1_extra_factor; // (u2 - l2 v2)
    std::vector<std::pair<std::string, unsigned>> y1_denominator;
    exact::BigRational kappa;

    // Master cubic, coefficients in l1, l2:
    // x1^3 + c2 x1^2 + c1 x1 + c0 + y1^2 + cz (z + 1/z) = 0
    std::string cubic_c2, cubic_c1, cubic_c0, cubic_cz;

    // j in the Legendre parameter l, and the factorization of j - 1728.
    std::string j_numerator;
    std::string j_denominator;
    std::string j_minus_1728_numerator;
    exact::BigRational j_1728;

    // Closed forms: a^3 = s_a * prod(l^2-l+1)^3 / (prod l(l-1))^2 and
    // b^2 = s_b * prod((l+1)(l-2)(2l-1))^2 / (prod l(l-1))^2.
    std::string a_lambda_factor; // l^2 - l + 1
    std::string b_lambda_factor; // (l+1)(l-2)(2l-1)
    exact::BigRational a_cubed_scale;
    exact::BigRational b_squared_scale;
    // a = -(j1 j2)^(1/3) / a_divisor, b = -((j1-1728)(j2-1728))^(1/2) / b_divisor.
    exact::BigInt a_divisor;
    exact::BigInt b_divisor;

    // -- Kummer divisor calculus ---------------------------------------------
    std::string big_d;    // "3F1+4F2-G11-..."
    std::string e8_fiber; // the II* decomposition of D
    std::array<std::pair<int, int>, 3> c1_cells;
    std::array<std::pair<int, int>, 3> c3_cells;
    std::string c4_class;
    // I0* fibers: (label, multiplicity); C2 is D minus the rest of fiber one.
    std::vector<std::pair<std::string, int>> i0star_one;
    std::vector<std::pair<std::string, int>> i0star_two;
    std::vector<std::string> labeled_nodes;
    std::vector<Edge> labeled_edges;
    std::vector<std::string> branch_octet;
    std::string section;
    // R_Y . F1 = ry_f1 * n, R_Y . F2 = ry_f2, R_X^2 = pullback * (R_Y - nF2 - F1)^2.
    long ry_f1;
    long ry_f2;
    long pullback_degree;

    // -- toric side ----------------------------------------------------------
    std::array<Vec3, 4> delta_vertices;
    std::array<long, 4> delta_weights; // sum w_i v_i = 0
    std::array<Vec3, 4> dual_vertices;
    std::vector<std::pair<std::string, Vec3>> support_monomials; // x, y, z
    Vec3 support_shift;
    std::vector<long> dual_edge_lengths; // sorted descending
    std::vector<long> facet_genera;      // sorted ascending

    // 19-curve graph: node names and edges, plus weighted diagrams.
    std::vector<std::string> graph_nodes;
    std::vector<Edge> graph_edges;
    std::vector<std::string> e8_top_side;
    std::vector<std::string> e8_bottom_side;
    std::vector<long> weight_section;
    std::vector<long> weight_fiber;
    std::vector<long> weight_fiber_top;
    std::vector<long> weight_l3;
    std::vector<long> weight_l4;
    long l3_square;
    long two_l4_square;

    // -- family and modular side ---------------------------------------------
    // 0 = z_coeff z + zinv_coeff / z + y^2 + x^3 + a x + b
    exact::BigRational z_coeff;
    exact::BigRational zinv_coeff;
    exact::BigRational j_at_i;
    exact::BigRational j_at_2i;
};

// The transcribed constants, with the documented corrections.
const Transcription& transcribed();

struct Mutation {
    std::string id;
    std::string description;
    std::function<void(Transcription&)> apply;
};

// Single-constant perturbations used to show that every check is live.
const std::vector<Mutation>& mutations();
// Throws std::invalid_argument for an unknown id.
Transcription mutated(std::string_view id);

} // namespace k3lab::constants
