#include "k3lab/transcription.hpp"

#include <stdexcept>

namespace k3lab::constants {

using exact::BigInt;
using exact::BigRational;

namespace {

Transcription build_transcription() {
    Transcription t;

    // E8 fiber at infinity.
    t.h_inf = "(l2-1)*(u1-l1*v1)^3*(u1-v1)*u2*v2^2";
    // H+ = u1 * C1 * C2.
    t.c1_poly = "(l1-1)*v1*u2 - u1*v2 + v1*v2";
    t.c2_poly = "l1*(l1-1)*v1^2*v2^2 + l1*(l1*l2-2*l1+1)*v1^2*u2*v2 - l1*(l1-1)*u1*v1*v2^2"
                " + (2*l1^2-2*l1*l2-l1+1)*u1*v1*u2*v2 - (l1-1)^2*u1*v1*u2^2 + (l2-1)*u1^2*u2*v2";
    // H- = v1 * C3 * C4.
    t.c3_poly = "(l1-1)*u1*u2 - l1*u1*v2 + l1*v1*v2";
    t.c4_poly = "-l1^2*(l2-1)*v1^2*u2*v2 + (1-l1)*u1*v1*v2^2 + (-l1^2+2*l1*l2+l1-2)*u1*v1*u2*v2"
                " + (l1-1)^2*u1*v1*u2^2 + (l1-1)*u1^2*v2^2 + (-l1-l2+2)*u1^2*u2*v2";

    t.x1_numerator = "l1*(l1-1)*v1^2*v2^2 + (l1^2*l2-2*l1^2+l1)*v1^2*u2*v2 + (2*l1-l1^2-1)*u1*v1*u2^2"
                     " + (2*l1^2-2*l1*l2-l1+1)*u1*v1*u2*v2 + (l1-l1^2)*u1*v1*v2^2 + (l2-1)*u1^2*u2*v2";
    t.x1_numerator_printed = "(l1^2*l2-2*l1^2+l1)*v1^2*u2*v2 + (2*l1-l1^2-1)*u1*v1*u2^2"
                             " + (2*l1^2-2*l1*l2-l1+1)*u1*v1*u2*v2 + (l1-l1^2)*u1*v1*v2^2 + (l2-1)*u1^2*u2*v2";
    t.x1_denominator = {"u1-v1", "u1-l1*v1", "u2-v2", "v2"};
    t.x1_sign = -1;
    t.z_orientation = -1;

    t.y1_extra_factor = "u2-l2*v2";
    t.y1_denominator = {{"u1", 1}, {"v1", 1}, {"u2-v2", 3}, {"u1-v1", 3}, {"v2", 3}, {"u1-l1*v1", 3}, {"u2", 1}};
    t.kappa = 1;

    t.cubic_c2 = "l1*l2 - 2*l1 + l2 + 1";
    t.cubic_c1 = "-(l1*l2 - l1 + 1)*(l1 - l2)";
    t.cubic_c0 = "-1/2*(l1-1)*(l2-1)*l1*l2";
    t.cubic_cz = "-1/4*l1*(l1-1)*l2*(l2-1)";

    t.j_numerator = "256*(l^2-l+1)^3";
    t.j_denominator = "l^2*(l-1)^2";
    t.j_minus_1728_numerator = "64*((l+1)*(l-2)*(2*l-1))^2";
    t.j_1728 = 1728;

    t.a_lambda_factor = "l^2-l+1";
    t.b_lambda_factor = "(l+1)*(l-2)*(2*l-1)";
    t.a_cubed_scale = BigRational(-16, 27);
    t.b_squared_scale = BigRational(4, 729);
    t.a_divisor = 48;
    t.b_divisor = 864;

    t.big_d = "3F1+4F2-G11-G12-2G13-2G21-2G22-3G34-G43";
    t.e8_fiber = "2F11+4G14+3G44+6F24+5G24+4F12+3G23+2F23+G33";
    t.c1_cells = {{{1, 3}, {2, 2}, {3, 4}}};
    t.c3_cells = {{{1, 3}, {2, 1}, {3, 4}}};
    t.c4_class = "2F1+2F2-G11-G13-G22-G21-G43-2G34";
    t.i0star_one = {{"C1", 1}, {"C2", 1}, {"G31", 1}, {"G41", 1}, {"F21", 2}};
    t.i0star_two = {{"C3", 1}, {"C4", 1}, {"G32", 1}, {"G42", 1}, {"F22", 2}};
    t.labeled_nodes = {"C1",  "C2",  "F21", "G41", "G31", "F13", "G33", "F23", "G23", "F12",
                       "G24", "F24", "G14", "F11", "G44", "G32", "C4",  "F22", "G42", "C3"};
    t.labeled_edges = {{"C1", "F21"},  {"C2", "F21"},  {"F21", "G41"}, {"F21", "G31"}, {"G31", "F13"},
                       {"F13", "G33"}, {"G33", "F23"}, {"F23", "G23"}, {"G23", "F12"}, {"F12", "G24"},
                       {"G24", "F24"}, {"F24", "G14"}, {"G14", "F11"}, {"F24", "G44"}, {"F13", "G32"},
                       {"G32", "F22"}, {"C4", "F22"},  {"F22", "G42"}, {"F22", "C3"}};
    t.branch_octet = {"C1", "C2", "C3", "C4", "G31", "G32", "G41", "G42"};
    t.section = "F13";
    t.ry_f1 = 2;
    t.ry_f2 = 2;
    t.pullback_degree = 2;

    t.delta_vertices = {{{-1, -4, -6}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    t.delta_weights = {1, 1, 4, 6};
    t.dual_vertices = {{{-1, -1, -1}, {11, -1, -1}, {-1, 2, -1}, {-1, -1, 1}}};
    t.support_monomials = {{"x", {0, 1, 1}}, {"y", {0, 1, 2}}, {"z", {-1, -2, -3}}};
    t.support_shift = {0, -2, -3};
    t.dual_edge_lengths = {12, 3, 3, 2, 2, 1};
    t.facet_genera = {0, 0, 1, 2};

    t.graph_nodes = {"t1", "t2", "t3", "t4", "t5", "t6", "t7", "t8", "tb", "S",
                     "s1", "s2", "s3", "s4", "s5", "s6", "s7", "s8", "sb"};
    for (int i = 1; i < 8; ++i) t.graph_edges.emplace_back("t" + std::to_string(i), "t" + std::to_string(i + 1));
    t.graph_edges.emplace_back("t6", "tb");
    t.graph_edges.emplace_back("t1", "S");
    t.graph_edges.emplace_back("S", "s1");
    for (int i = 1; i < 8; ++i) t.graph_edges.emplace_back("s" + std::to_string(i), "s" + std::to_string(i + 1));
    t.graph_edges.emplace_back("s6", "sb");
    t.e8_top_side = {"t2", "t3", "t4", "t5", "t6", "t7", "t8", "tb"};
    t.e8_bottom_side = {"s2", "s3", "s4", "s5", "s6", "s7", "s8", "sb"};
    //                    t1..t8                    tb S  s1..s8                    sb
    t.weight_section =   {0, 0, 0, 0, 0, 0, 0, 0,   0, 1, 0, 0, 0, 0, 0, 0, 0, 0,   0};
    t.weight_fiber =     {0, 0, 0, 0, 0, 0, 0, 0,   0, 0, 1, 2, 3, 4, 5, 6, 4, 2,   3};
    t.weight_fiber_top = {1, 2, 3, 4, 5, 6, 4, 2,   3, 0, 0, 0, 0, 0, 0, 0, 0, 0,   0};
    t.weight_l3 =        {2, 2, 2, 2, 2, 2, 1, 0,   1, 2, 2, 2, 2, 2, 2, 2, 1, 0,   1};
    t.weight_l4 =        {3, 3, 3, 3, 3, 3, 2, 1,   1, 3, 3, 3, 3, 3, 3, 3, 2, 1,   1};
    t.l3_square = 0;
    t.two_l4_square = 8;

    t.z_coeff = 1;
    t.zinv_coeff = 1;
    t.j_at_i = 1728;
    t.j_at_2i = 287496;
    return t;
}

void replace_once(std::string& s, std::string_view from, std::string_view to) {
    auto pos = s.find(from);
    if (pos == std::string::npos) throw std::logic_error("mutation target not found: " + std::string(from));
    s.replace(pos, from.size(), to);
}

std::vector<Mutation> build_mutations() {
    std::vector<Mutation> m;
    auto add = [&](std::string id, std::string desc, std::function<void(Transcription&)> f) {
        m.push_back({std::move(id), std::move(desc), std::move(f)});
    };
    add("h_inf.factor", "H_inf factor (l2-1) -> (l2-2)", [](Transcription& t) { replace_once(t.h_inf, "(l2-1)", "(l2-2)"); });
    add("c1.coefficient", "C1 term -u1*v2 -> -2*u1*v2", [](Transcription& t) { replace_once(t.c1_poly, "- u1*v2", "- 2*u1*v2"); });
    add("c2.coefficient", "C2 term (l2-1)*u1^2*u2*v2 -> (l2-2)*...",
        [](Transcription& t) { replace_once(t.c2_poly, "(l2-1)*u1^2", "(l2-2)*u1^2"); });
    add("c3.coefficient", "C3 term l1*v1*v2 -> 2*l1*v1*v2",
        [](Transcription& t) { replace_once(t.c3_poly, "+ l1*v1*v2", "+ 2*l1*v1*v2"); });
    add("c4.coefficient", "C4 term (l1-1)*u1^2*v2^2 -> l1*u1^2*v2^2",
        [](Transcription& t) { replace_once(t.c4_poly, "(l1-1)*u1^2*v2^2", "l1*u1^2*v2^2"); });
    add("x1.numerator", "x1 numerator (l2-1)*u1^2*u2*v2 -> (l2+1)*...",
        [](Transcription& t) { replace_once(t.x1_numerator, "(l2-1)*u1^2", "(l2+1)*u1^2"); });
    add("x1.denominator", "x1 denominator factor u1-l1*v1 -> u1-l2*v1",
        [](Transcription& t) { t.x1_denominator[1] = "u1-l2*v1"; });
    add("x1.sign", "x1 sign -1 -> +1", [](Transcription& t) { t.x1_sign = 1; });
    add("z.orientation", "z+1/z orientation -1 -> +1", [](Transcription& t) { t.z_orientation = 1; });
    add("y1.factor", "y1^2 factor (u2-l2*v2) -> (u2-l1*v2)", [](Transcription& t) { t.y1_extra_factor = "u2-l1*v2"; });
    add("y1.denominator", "y1^2 denominator (u2-v2)^3 -> (u2-v2)^2", [](Transcription& t) { t.y1_denominator[2].second = 2; });
    add("kappa", "kappa 1 -> 2", [](Transcription& t) { t.kappa = 2; });
    add("cubic.c2", "x1^2 coefficient ...+l2+1 -> ...+l2+2", [](Transcription& t) { replace_once(t.cubic_c2, "+ 1", "+ 2"); });
    add("cubic.c1", "x1 coefficient (l1*l2-l1+1) -> (l1*l2-l1+2)",
        [](Transcription& t) { replace_once(t.cubic_c1, "- l1 + 1", "- l1 + 2"); });
    add("cubic.c0", "constant term -1/2 -> -1/3", [](Transcription& t) { replace_once(t.cubic_c0, "-1/2", "-1/3"); });
    add("cubic.cz", "z+1/z coefficient -1/4 -> -1/2", [](Transcription& t) { replace_once(t.cubic_cz, "-1/4", "-1/2"); });
    add("j.numerator", "j numerator 256 -> 255", [](Transcription& t) { replace_once(t.j_numerator, "256", "255"); });
    add("j.denominator", "j denominator (l-1)^2 -> (l-1)^3", [](Transcription& t) { replace_once(t.j_denominator, "(l-1)^2", "(l-1)^3"); });
    add("j1728.factor", "j-1728 factor 64 -> 63", [](Transcription& t) { replace_once(t.j_minus_1728_numerator, "64", "63"); });
    add("j1728.shift", "1728 -> 1727", [](Transcription& t) { t.j_1728 = 1727; });
    add("a_lambda.factor", "a^3 factor l^2-l+1 -> l^2-l+2", [](Transcription& t) { replace_once(t.a_lambda_factor, "+1", "+2"); });
    add("b_lambda.factor", "b^2 factor (2l-1) -> (2l+1)", [](Transcription& t) { replace_once(t.b_lambda_factor, "(2*l-1)", "(2*l+1)"); });
    add("a_cubed.scale", "a^3 scale -16/27 -> -16/9", [](Transcription& t) { t.a_cubed_scale = BigRational(-16, 9); });
    add("b_squared.scale", "b^2 scale 4/729 -> 4/243", [](Transcription& t) { t.b_squared_scale = BigRational(4, 243); });
    add("a.divisor", "a divisor 48 -> 47", [](Transcription& t) { t.a_divisor = 47; });
    add("b.divisor", "b divisor 864 -> 863", [](Transcription& t) { t.b_divisor = 863; });

    add("kummer.big_d", "D coefficient -3G34 -> -2G34", [](Transcription& t) { replace_once(t.big_d, "-3G34", "-2G34"); });
    add("kummer.e8_fiber", "II* weight 6F24 -> 5F24", [](Transcription& t) { replace_once(t.e8_fiber, "6F24", "5F24"); });
    add("kummer.c1_cells", "C1 cell (2,2) -> (2,1)", [](Transcription& t) { t.c1_cells[1] = {2, 1}; });
    add("kummer.c3_cells", "C3 cell (3,4) -> (4,4)", [](Transcription& t) { t.c3_cells[2] = {4, 4}; });
    add("kummer.c4_class", "C4 coefficient -2G34 -> -G34", [](Transcription& t) { replace_once(t.c4_class, "-2G34", "-G34"); });
    add("kummer.i0star_one", "fiber one multiplicity F21 2 -> 1", [](Transcription& t) { t.i0star_one[4].second = 1; });
    add("kummer.i0star_two", "fiber two component G42 -> G44", [](Transcription& t) { t.i0star_two[3].first = "G44"; });
    add("kummer.labeled_edge", "edge F24-G44 -> F24-G32", [](Transcription& t) { t.labeled_edges[13].second = "G32"; });
    add("kummer.labeled_node", "node G33 -> G34", [](Transcription& t) {
        t.labeled_nodes[6] = "G34";
        t.labeled_edges[5].second = "G34";
        t.labeled_edges[6].first = "G34";
    });
    add("kummer.branch_octet", "octet member G41 -> G44", [](Transcription& t) { t.branch_octet[6] = "G44"; });
    add("kummer.section", "section F13 -> F14", [](Transcription& t) { t.section = "F14"; });
    add("fricke.ry_f1", "R_Y.F1 = 2n -> 3n", [](Transcription& t) { t.ry_f1 = 3; });
    add("fricke.ry_f2", "R_Y.F2 = 2 -> 1", [](Transcription& t) { t.ry_f2 = 1; });
    add("fricke.pullback", "pullback degree 2 -> 3", [](Transcription& t) { t.pullback_degree = 3; });

    add("toric.delta_vertex", "v1 (-1,-4,-6) -> (-1,-4,-5)", [](Transcription& t) { t.delta_vertices[0][2] = -5; });
    add("toric.delta_weights", "weight 6 -> 5", [](Transcription& t) { t.delta_weights[3] = 5; });
    add("toric.dual_vertex", "dual vertex (11,-1,-1) -> (10,-1,-1)", [](Transcription& t) { t.dual_vertices[1][0] = 10; });
    add("toric.support_monomial", "y (0,1,2) -> (0,1,3)", [](Transcription& t) { t.support_monomials[1].second[2] = 3; });
    add("toric.shift", "shift (0,-2,-3) -> (0,-2,-2)", [](Transcription& t) { t.support_shift[2] = -2; });
    add("toric.edge_profile", "A11 edge length 12 -> 11", [](Transcription& t) { t.dual_edge_lengths[0] = 11; });
    add("toric.genera", "genus 2 -> 3", [](Transcription& t) { t.facet_genera[3] = 3; });

    add("graph.edge", "branch edge t6-tb -> t5-tb", [](Transcription& t) { t.graph_edges[7].first = "t5"; });
    add("graph.e8_side", "top E8 side t2 -> t1", [](Transcription& t) { t.e8_top_side[0] = "t1"; });
    add("graph.weight_section", "S weight on s1 0 -> 1", [](Transcription& t) { t.weight_section[10] = 1; });
    add("graph.weight_fiber", "F weight 6 -> 5", [](Transcription& t) { t.weight_fiber[15] = 5; });
    add("graph.weight_fiber_top", "F_top weight on tb 3 -> 2", [](Transcription& t) { t.weight_fiber_top[8] = 2; });
    add("graph.weight_l3", "l3 weight on t7 1 -> 2", [](Transcription& t) { t.weight_l3[6] = 2; });
    add("graph.weight_l4", "l4 weight on t8 1 -> 0", [](Transcription& t) { t.weight_l4[7] = 0; });

    add("family.zinv_coeff", "z^-1 coefficient 1 -> 2", [](Transcription& t) { t.zinv_coeff = 2; });
    add("modular.j_at_i", "j(i) 1728 -> 1729", [](Transcription& t) { t.j_at_i = 1729; });
    add("modular.j_at_2i", "j(2i) 287496 -> 287495", [](Transcription& t) { t.j_at_2i = 287495; });
    return m;
}

} // namespace

const Transcription& transcribed() {
    static const Transcription t = build_transcription();
    return t;
}

const std::vector<Mutation>& mutations() {
    static const std::vector<Mutation> m = build_mutations();
    return m;
}

Transcription mutated(std::string_view id) {
    for (const auto& mu : mutations()) {
        if (mu.id == id) {
            Transcription t = transcribed();
            mu.apply(t);
            return t;
        }
    }
    throw std::invalid_argument("unknown mutation '" + std::string(id) + "'");
}

} // namespace k3lab::constants
