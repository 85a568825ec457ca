#include "doctest.h"

#include <random>

#include "k3lab/latticecore.hpp"
#include "k3lab/transcription.hpp"

using namespace k3lab::lattice;

namespace {

CurveGraph nineteen() {
    const auto& t = k3lab::constants::transcribed();
    CurveGraph g;
    g.nodes = t.graph_nodes;
    g.edges = t.graph_edges;
    return g;
}

IntVector ints(const std::vector<long>& v) { return IntVector(v.begin(), v.end()); }

CurveGraph chain(int n) {
    CurveGraph g;
    for (int i = 0; i < n; ++i) g.nodes.push_back("a" + std::to_string(i));
    for (int i = 0; i + 1 < n; ++i) g.edges.emplace_back(g.nodes[i], g.nodes[i + 1]);
    return g;
}

CurveGraph e8_graph() {
    CurveGraph g = chain(7);
    g.nodes.push_back("b");
    g.edges.emplace_back("a4", "b");
    return g;
}

} // namespace

TEST_CASE("standard lattices") {
    auto u = lattice_invariants(standard_lattice("U"));
    CHECK(u.rank == 2);
    CHECK(u.positive == 1);
    CHECK(u.negative == 1);
    CHECK(u.determinant == -1);
    CHECK(u.is_even);

    auto e8 = lattice_invariants(standard_lattice("E8(-1)"));
    CHECK(e8.rank == 8);
    CHECK(e8.is_even);
    CHECK(e8.determinant == 1);
    CHECK(e8.positive == 0);
    CHECK(e8.negative == 8);
    CHECK(lattice_invariants(standard_lattice("E8")).positive == 8);

    auto r = standard_lattice("rank1(-4)");
    CHECK(r.gram() == IntMatrix{{-4}});
    auto r6 = lattice_invariants(rank1(-6));
    CHECK(r6.rank == 1);
    CHECK(r6.negative == 1);
    CHECK(r6.determinant == -6);
    CHECK(r6.is_even);
    CHECK_FALSE(lattice_invariants(rank1(3)).is_even);

    CHECK_THROWS_AS(standard_lattice("D4"), std::invalid_argument);
    CHECK_THROWS_AS(standard_lattice("rank1(0)"), std::invalid_argument);
    CHECK_THROWS_AS(standard_lattice("rank1(x)"), std::invalid_argument);
    CHECK_THROWS_AS(GramLattice({"a", "b"}, {{0, 1}, {2, 0}}), std::invalid_argument);
}

TEST_CASE("direct sums") {
    auto uu = lattice_invariants(direct_sum(standard_lattice("U"), standard_lattice("U")));
    CHECK(uu.rank == 4);
    CHECK(uu.positive == 2);
    CHECK(uu.negative == 2);
    CHECK(uu.determinant == 1);

    auto big = direct_sum(direct_sum(standard_lattice("E8(-1)"), standard_lattice("E8(-1)")), standard_lattice("U"));
    auto inv = lattice_invariants(big);
    CHECK(inv.rank == 18);
    CHECK(inv.positive == 1);
    CHECK(inv.negative == 17);
    CHECK(inv.determinant == -1);
    CHECK(big.labels()[8] == "a1'");

    auto u = standard_lattice("U");
    auto same = direct_sum(u, GramLattice());
    CHECK(same.gram() == u.gram());
    CHECK(same.labels() == u.labels());
}

TEST_CASE("graph_to_gram") {
    auto a2 = graph_to_gram(chain(2));
    CHECK(a2.gram() == IntMatrix{{-2, 1}, {1, -2}});
    CHECK(lattice_invariants(a2).determinant == 3);

    auto e8 = lattice_invariants(graph_to_gram(e8_graph()));
    CHECK(e8.determinant == 1);
    CHECK(e8.negative == 8);

    auto full = graph_to_gram(nineteen());
    CHECK(full.dimension() == 19);
    CHECK(lattice_invariants(full).rank == 18);
    CHECK(kernel_basis(full).size() == 1);

    CurveGraph bad = chain(2);
    bad.edges.emplace_back("a0", "a0");
    CHECK_THROWS_AS(graph_to_gram(bad), std::invalid_argument);
    bad = chain(2);
    bad.edges.emplace_back("a0", "zz");
    CHECK_THROWS_AS(graph_to_gram(bad), std::invalid_argument);

    CurveGraph sc = chain(1);
    sc.self_intersection["a0"] = -1;
    CHECK(graph_to_gram(sc).gram() == IntMatrix{{-1}});
}

TEST_CASE("19-curve graph invariants") {
    auto lat = graph_to_gram(nineteen());
    auto inv = lattice_invariants(lat);
    CHECK(inv.rank == 18);
    CHECK(inv.positive == 1);
    CHECK(inv.negative == 17);
    CHECK(abs(inv.determinant) == 1);
    CHECK(inv.determinant_on_integral_basis);
    CHECK(inv.is_even);
}

TEST_CASE("kernel_basis") {
    CHECK(kernel_basis(standard_lattice("U")).empty());

    // affine E8: the E8 diagram plus the node attached at the end of the long arm
    CurveGraph aff = e8_graph();
    aff.nodes.insert(aff.nodes.begin(), "z");
    aff.edges.emplace_back("z", "a0");
    auto lat = graph_to_gram(aff);
    auto ker = kernel_basis(lat);
    REQUIRE(ker.size() == 1);
    // order z, a0..a6, b ; long arm z-a0-a1-a2-a3-a4 then a5-a6 and b
    CHECK(ker[0] == ints({1, 2, 3, 4, 5, 6, 4, 2, 3}));

    const auto& t = k3lab::constants::transcribed();
    auto full = graph_to_gram(nineteen());
    auto k19 = kernel_basis(full);
    REQUIRE(k19.size() == 1);
    IntVector diff(19);
    for (int i = 0; i < 19; ++i) diff[i] = t.weight_fiber[i] - t.weight_fiber_top[i];
    IntVector neg = diff;
    for (auto& x : neg) x = -x;
    CHECK((k19[0] == diff || k19[0] == neg));

    // property: kernel vectors pair to zero with every node
    for (std::size_t i = 0; i < 19; ++i) {
        IntVector e(19, 0);
        e[i] = 1;
        CHECK(full.pair(k19[0], e) == 0);
    }
}

TEST_CASE("kernel_basis on random degenerate forms") {
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<long> d(-3, 3);
    for (int trial = 0; trial < 20; ++trial) {
        // rank <= 4 form G = M^T diag(-1,1,-1,1) M on Z^6
        IntMatrix m(4, IntVector(6));
        for (auto& row : m)
            for (auto& x : row) x = d(rng);
        IntMatrix g(6, IntVector(6, 0));
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j)
                for (int k = 0; k < 4; ++k) g[i][j] += m[k][i] * m[k][j] * (k % 2 ? 1 : -1);
        GramLattice lat({"a", "b", "c", "d", "e", "f"}, g);
        auto ker = kernel_basis(lat);
        auto inv = lattice_invariants(lat);
        CHECK(ker.size() + inv.rank == 6);
        CHECK(inv.positive + inv.negative == inv.rank);
        for (const auto& v : ker) {
            for (int i = 0; i < 6; ++i) {
                BigInt s = 0;
                for (int j = 0; j < 6; ++j) s += g[i][j] * v[j];
                CHECK(s == 0);
            }
            BigInt gg = 0;
            for (const auto& x : v) gg = gcd(gg, x);
            CHECK(gg == 1);
        }
    }
}

TEST_CASE("induced_gram") {
    auto u = standard_lattice("U");
    auto g = induced_gram(u, {{1, 0}, {0, 1}});
    CHECK(g == RatMatrix{{0, 1}, {1, 0}});
    CHECK_THROWS_AS(induced_gram(u, {{1, 0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(induced_integral_gram(u, {{BigRational(1, 2), BigRational(1, 2)}}), std::domain_error);
    CHECK(induced_integral_gram(u, {{2, 3}}).gram() == IntMatrix{{12}});
}

TEST_CASE("is_e8_dynkin") {
    const auto& t = k3lab::constants::transcribed();
    auto g = nineteen();
    CHECK(is_e8_dynkin(g.induced(t.e8_top_side)));
    CHECK(is_e8_dynkin(g.induced(t.e8_bottom_side)));
    CHECK(is_e8_dynkin(e8_graph()));
    CHECK_FALSE(is_e8_dynkin(chain(8)));
    CurveGraph broken = e8_graph();
    broken.edges.pop_back();
    CHECK_FALSE(is_e8_dynkin(broken));
    // D8-like: branch at the second node
    CurveGraph d8 = chain(7);
    d8.nodes.push_back("b");
    d8.edges.emplace_back("a1", "b");
    CHECK_FALSE(is_e8_dynkin(d8));
    // E7 with an extra node closing a cycle
    CurveGraph e7 = chain(6);
    e7.nodes.push_back("b");
    e7.edges.emplace_back("a2", "b");
    e7.nodes.push_back("c");
    e7.edges.emplace_back("a5", "a0");
    CHECK_FALSE(is_e8_dynkin(e7));
}

TEST_CASE("the two sides are E8(-1) lattices") {
    const auto& t = k3lab::constants::transcribed();
    auto full = graph_to_gram(nineteen());
    for (const auto& side : {t.e8_top_side, t.e8_bottom_side}) {
        auto inv = lattice_invariants(full.restrict_to(side));
        auto ref = lattice_invariants(standard_lattice("E8(-1)"));
        CHECK(inv.rank == ref.rank);
        CHECK(inv.determinant == ref.determinant);
        CHECK(inv.negative == ref.negative);
        CHECK(inv.is_even == ref.is_even);
    }
}

TEST_CASE("section and fiber classes on the 19-curve graph") {
    const auto& t = k3lab::constants::transcribed();
    auto full = graph_to_gram(nineteen());
    auto s = ints(t.weight_section), f = ints(t.weight_fiber), ft = ints(t.weight_fiber_top);
    CHECK(full.pair(s, s) == -2);
    CHECK(full.pair(f, f) == 0);
    CHECK(full.pair(s, f) == 1);
    CHECK(full.pair(ft, s) == 1);
    CHECK(full.pair(ft, ft) == 0);
    CHECK(full.pair(ft, f) == 0);
    // S and F are orthogonal to both E8 sides
    for (const auto& side : {t.e8_top_side, t.e8_bottom_side}) {
        for (const auto& name : side) {
            IntVector e(19, 0);
            e[*full.index_of(name)] = 1;
            CHECK(full.pair(e, f) == 0);
            CHECK(full.pair(e, s) == 0);
        }
    }
}
