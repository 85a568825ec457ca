#include "k3lab/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <random>
#include <set>
#include <sstream>

#include <gmp.h>
#include <mpfr.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "k3lab/errors.hpp"
#include "k3lab/kummercalc.hpp"
#include "k3lab/latticecore.hpp"
#include "k3lab/modularcurve.hpp"
#include "k3lab/shiodainose.hpp"
#include "k3lab/toricmirror.hpp"
#include "k3lab/weierstrassfam.hpp"

namespace k3lab::cli {

using constants::Transcription;
using exact::BigComplex;
using exact::BigRational;

namespace {

constexpr const char* kVersion = "1.0.0";

struct Outcome {
    bool passed;
    std::string witness;
};

struct Check {
    std::string id;
    std::string description;
    std::function<Outcome()> run;
};

std::string q(const BigRational& x) { return exact::to_string(x); }

std::string sci(double x) {
    std::ostringstream s;
    s << std::scientific << std::setprecision(3) << x;
    return s.str();
}

template <class T>
std::string join(const std::vector<T>& v) {
    std::ostringstream s;
    for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
    return s.str();
}

BigRational random_lambda(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-30, 30), den(1, 11);
    for (;;) {
        BigRational l(num(rng), den(rng));
        l.canonicalize();
        if (l != 0 && l != 1) return l;
    }
}

// ---------------------------------------------------------------- identities

std::vector<Check> identity_checks(const Transcription& t) {
    namespace sn = shiodainose;
    std::vector<Check> c;
    c.push_back({"identities.h_sum", "H_inf + H+ + H- expands to the zero polynomial", [&t] {
                     auto r = sn::verify_h_sum(t);
                     return Outcome{r.holds, r.witness};
                 }});
    c.push_back({"identities.kappa_fit", "fitted kappa equals the transcribed constant", [&t] {
                     auto k = sn::fit_kappa(t);
                     return Outcome{k == t.kappa, "fitted " + q(k) + ", transcribed " + q(t.kappa)};
                 }});
    c.push_back({"identities.master", "master cubic identity holds exactly", [&t] {
                     auto r = sn::verify_master_identity(t.kappa, t);
                     return Outcome{r.holds, r.witness};
                 }});
    c.push_back({"identities.square_root", "((z-1)/(z+1))^2 = -H-/H+", [&t] {
                     bool ok = sn::square_root_relation(t);
                     return Outcome{ok, ok ? "identity holds" : "identity fails"};
                 }});
    c.push_back({"identities.j1728_factorization", "j - 1728 equals the 64-factor form", [&t] {
                     bool ok = sn::j_minus_1728_factorization(t);
                     return Outcome{ok, ok ? "identity holds" : "identity fails"};
                 }});
    c.push_back({"identities.j_values", "j(1/4) = 35152/9, j(1/4) - 1728 = 19600/9, j(-1) = 1728", [&t] {
                     BigRational j = sn::j_from_lambda(BigRational(1, 4), t), jm = sn::j_from_lambda(-1, t);
                     bool ok = j == BigRational(35152, 9) && j - t.j_1728 == BigRational(19600, 9) && jm == 1728 &&
                               jm == t.j_1728;
                     return Outcome{ok, "j(1/4)=" + q(j) + " j(-1)=" + q(jm) + " shift=" + q(t.j_1728)};
                 }});
    c.push_back({"identities.route_exact", "lambda and j routes agree on 50 random pairs", [&t] {
                     std::mt19937_64 rng(31);
                     for (int i = 0; i < 50; ++i) {
                         auto l1 = random_lambda(rng), l2 = random_lambda(rng);
                         auto a = sn::ab_powers_from_lambda(l1, l2, t);
                         auto b = sn::ab_powers_from_j(sn::j_from_lambda(l1, t), sn::j_from_lambda(l2, t), t);
                         if (!(a == b))
                             return Outcome{false, "routes differ at lambda=(" + q(l1) + "," + q(l2) + "): a^3 " +
                                                       q(a.a_cubed) + " vs " + q(b.a_cubed)};
                     }
                     return Outcome{true, "50 pairs agree"};
                 }});
    c.push_back({"identities.route_symbolic", "a^3 = -j1 j2/110592 and b^2 = (j1-1728)(j2-1728)/746496 symbolically",
                 [&t] {
                     bool ok = sn::route_independence_symbolic(t);
                     BigRational ad(t.a_divisor), bd(t.b_divisor);
                     bool scales = ad * ad * ad == 110592 && bd * bd == 746496;
                     return Outcome{ok && scales, std::string(ok ? "routes equal" : "routes differ") +
                                                      ", divisors " + q(ad) + "," + q(bd)};
                 }});
    return c;
}

// ------------------------------------------------------------------- lattice

lattice::CurveGraph curve_graph(const Transcription& t) {
    lattice::CurveGraph g;
    g.nodes = t.graph_nodes;
    g.edges = t.graph_edges;
    return g;
}

lattice::IntVector ints(const std::vector<long>& v) { return lattice::IntVector(v.begin(), v.end()); }

std::vector<Check> lattice_checks(const Transcription& t) {
    std::vector<Check> c;
    c.push_back({"lattice.invariants", "19-curve lattice: even, rank 18, signature (1,17), |det| 1", [&t] {
                     auto inv = lattice::lattice_invariants(lattice::graph_to_gram(curve_graph(t)));
                     bool ok = inv.rank == 18 && inv.positive == 1 && inv.negative == 17 && inv.is_even &&
                               abs(inv.determinant) == 1 && inv.determinant_on_integral_basis;
                     std::ostringstream w;
                     w << "rank " << inv.rank << ", signature (" << inv.positive << "," << inv.negative << "), det "
                       << inv.determinant.get_str() << (inv.is_even ? ", even" : ", odd");
                     return Outcome{ok, w.str()};
                 }});
    c.push_back({"lattice.e8_sides", "both 8-node sides are E8 Dynkin diagrams", [&t] {
                     auto g = curve_graph(t);
                     bool top = lattice::is_e8_dynkin(g.induced(t.e8_top_side));
                     bool bottom = lattice::is_e8_dynkin(g.induced(t.e8_bottom_side));
                     return Outcome{top && bottom, std::string("top ") + (top ? "E8" : "not E8") + ", bottom " +
                                                       (bottom ? "E8" : "not E8")};
                 }});
    c.push_back({"lattice.section_fiber", "S^2 = -2, F^2 = 0, S.F = 1, both orthogonal to the E8 sides", [&t] {
                     auto full = lattice::graph_to_gram(curve_graph(t));
                     auto s = ints(t.weight_section), f = ints(t.weight_fiber), ft = ints(t.weight_fiber_top);
                     auto ss = full.pair(s, s), ff = full.pair(f, f), sf = full.pair(s, f);
                     auto tt = full.pair(ft, ft), st = full.pair(s, ft);
                     bool ok = ss == -2 && ff == 0 && sf == 1 && tt == 0 && st == 1;
                     std::string w = "S^2=" + ss.get_str() + " F^2=" + ff.get_str() + " S.F=" + sf.get_str() +
                                     " Ftop^2=" + tt.get_str() + " S.Ftop=" + st.get_str();
                     for (const auto& side : {t.e8_top_side, t.e8_bottom_side})
                         for (const auto& name : side) {
                             auto idx = full.index_of(name);
                             if (!idx) return Outcome{false, "unknown node " + name};
                             lattice::IntVector e(s.size(), 0);
                             e[*idx] = 1;
                             if (full.pair(e, s) != 0 || full.pair(e, f) != 0) {
                                 ok = false;
                                 w += ", " + name + " meets S or F";
                             }
                         }
                     return Outcome{ok, w};
                 }});
    c.push_back({"lattice.kernel", "kernel is spanned by F - F_top", [&t] {
                     auto ker = lattice::kernel_basis(lattice::graph_to_gram(curve_graph(t)));
                     if (ker.size() != 1) return Outcome{false, "kernel rank " + std::to_string(ker.size())};
                     lattice::IntVector diff(t.weight_fiber.size()), neg(diff.size());
                     for (std::size_t i = 0; i < diff.size(); ++i) {
                         diff[i] = t.weight_fiber[i] - t.weight_fiber_top[i];
                         neg[i] = -diff[i];
                     }
                     bool ok = ker[0] == diff || ker[0] == neg;
                     std::vector<std::string> k;
                     for (const auto& x : ker[0]) k.push_back(x.get_str());
                     return Outcome{ok, "kernel (" + join(k) + ")"};
                 }});
    c.push_back({"lattice.l3_l4", "l3 and 2 l4 self-pairings match", [&t] {
                     auto [l3, l4] = kummer::l3_l4_squares(t);
                     bool ok = l3 == t.l3_square && l4 == t.two_l4_square;
                     return Outcome{ok, "l3^2=" + l3.get_str() + " (2l4)^2=" + l4.get_str()};
                 }});
    return c;
}

// -------------------------------------------------------------------- kummer

std::vector<Check> kummer_checks(const Transcription& t) {
    std::vector<Check> c;
    c.push_back({"kummer.d_square", "D^2 = 0", [&t] {
                     auto d = kummer::big_d(t);
                     auto p = kummer::pair(d, d);
                     return Outcome{p == 0, "D^2=" + q(p)};
                 }});
    c.push_back({"kummer.e8_fiber", "II* decomposition sums to D with orthogonal components", [&t] {
                     auto r = kummer::iistar_fiber_report(t);
                     return Outcome{r.ok(), std::string(r.sum_equals_d ? "sum is D" : "sum differs from D") +
                                                (r.components_orthogonal ? ", orthogonal" : ", not orthogonal")};
                 }});
    c.push_back({"kummer.i0star", "both I0* fibers sum to D", [&t] {
                     auto d = kummer::big_d(t);
                     auto [one, two] = kummer::i0star_fibers(t);
                     bool a = kummer::fiber_sum(one) == d, b = kummer::fiber_sum(two) == d;
                     return Outcome{a && b, std::string("fiber one ") + (a ? "ok" : "differs") + ", fiber two " +
                                                (b ? "ok" : "differs")};
                 }});
    c.push_back({"kummer.labeled_graph", "20-label adjacency matrix matches the drawn graph", [&t] {
                     auto r = kummer::labeled_graph_check(t);
                     if (r.matches()) return Outcome{true, std::to_string(r.labels.size()) + " labels match"};
                     return Outcome{false, std::to_string(r.mismatches.size()) + " mismatches, first " + r.mismatches[0]};
                 }});
    c.push_back({"kummer.rank", "the 20 labeled classes span rank 18", [&t] {
                     auto r = kummer::labeled_graph_check(t);
                     return Outcome{r.rank == 18, "rank " + std::to_string(r.rank)};
                 }});
    c.push_back({"kummer.branch_octet", "branch octet: disjoint (-2)-classes forming an even eight", [&t] {
                     auto oct = kummer::branch_octet(t);
                     if (oct.size() != 8) return Outcome{false, "size " + std::to_string(oct.size())};
                     for (std::size_t i = 0; i < 8; ++i)
                         for (std::size_t j = i; j < 8; ++j) {
                             auto p = kummer::pair(oct[i], oct[j]);
                             if (p != (i == j ? -2 : 0))
                                 return Outcome{false, t.branch_octet[i] + "." + t.branch_octet[j] + "=" + q(p)};
                         }
                     // an even eight: half the sum pairs integrally with every curve
                     kummer::KummerClass half;
                     for (const auto& x : oct) half += x;
                     half = BigRational(1, 2) * half;
                     auto named = kummer::named_classes(t);
                     for (const auto& [label, cls] : named) {
                         auto p = kummer::pair(half, cls);
                         if (p.get_den() != 1) return Outcome{false, "half-sum." + label + "=" + q(p)};
                     }
                     return Outcome{true, "8 disjoint (-2)-classes with integral half-sum"};
                 }});
    c.push_back({"kummer.fricke", "(R_Y - nF2 - F1)^2 = -4n and R_X^2 = -8n for n in 1,2,3,5", [&t] {
                     for (long n : {1L, 2L, 3L, 5L}) {
                         auto f = kummer::fricke_numbers(n, t);
                         if (f.proj_square != -4 * n || f.rx_square != -8 * n)
                             return Outcome{false, "n=" + std::to_string(n) + ": " + q(f.proj_square) + ", " +
                                                       q(f.rx_square)};
                     }
                     return Outcome{true, "n=1,2,3,5"};
                 }});
    c.push_back({"kummer.section", "section meets D once and only its drawn neighbours", [&t] {
                     auto r = kummer::labeled_graph_check(t);
                     if (std::find(r.labels.begin(), r.labels.end(), t.section) == r.labels.end())
                         return Outcome{false, t.section + " is not a labeled node"};
                     auto p = kummer::pair(kummer::big_d(t), kummer::standard_generators().at(t.section));
                     if (p != 1) return Outcome{false, "D." + t.section + "=" + q(p)};
                     std::set<std::string> adj;
                     for (const auto& [x, y] : t.labeled_edges) {
                         if (x == t.section) adj.insert(y);
                         if (y == t.section) adj.insert(x);
                     }
                     for (const auto& l : r.labels) {
                         if (l == t.section) continue;
                         auto a = r.adjacency(t.section, l);
                         if (a != (adj.count(l) ? 1 : 0)) return Outcome{false, t.section + "." + l + "=" + q(a)};
                     }
                     return Outcome{true, t.section + " with " + std::to_string(adj.size()) + " neighbours"};
                 }});
    c.push_back({"kummer.integrality", "named classes pair integrally with every curve", [&t] {
                     auto bad = kummer::non_integral_classes(t);
                     return Outcome{bad.empty(), bad.empty() ? "all integral" : "non-integral: " + join(bad)};
                 }});
    return c;
}

// --------------------------------------------------------------------- toric

std::vector<Check> toric_checks(const Transcription& t) {
    std::vector<Check> c;
    c.push_back({"toric.dual_vertices", "dual of Delta has the listed vertices", [&t] {
                     auto dd = toric::dual_polytope(toric::delta(t));
                     toric::LatticePolytope expected(std::vector<toric::Vec3>(t.dual_vertices.begin(), t.dual_vertices.end()));
                     std::vector<std::string> vs;
                     for (const auto& v : dd.vertices()) vs.push_back(toric::to_string(v));
                     return Outcome{dd.same_as(expected), "vertices " + join(vs)};
                 }});
    c.push_back({"toric.weights", "vertex weights give sum w_i v_i = 0 on Delta and its dual", [&t] {
                     toric::Vec3 a{0, 0, 0}, b{0, 0, 0};
                     for (int i = 0; i < 4; ++i)
                         for (int k = 0; k < 3; ++k) {
                             a[k] += t.delta_weights[i] * t.delta_vertices[i][k];
                             b[k] += t.delta_weights[i] * t.dual_vertices[i][k];
                         }
                     bool ok = a == toric::Vec3{0, 0, 0} && b == toric::Vec3{0, 0, 0};
                     return Outcome{ok, "sums " + toric::to_string(a) + " " + toric::to_string(b)};
                 }});
    c.push_back({"toric.edge_profile", "dual edge singularities A11, A2, A2, A1, A1, smooth", [&t] {
                     std::vector<long> lengths;
                     std::vector<std::string> names;
                     for (const auto& e : toric::edge_reports(toric::dual_polytope(toric::delta(t))))
                         lengths.push_back(e.lattice_length);
                     std::sort(lengths.rbegin(), lengths.rend());
                     for (long l : lengths) names.push_back(l == 1 ? "smooth" : "A" + std::to_string(l - 1));
                     return Outcome{lengths == t.dual_edge_lengths, join(names)};
                 }});
    c.push_back({"toric.genera", "facet genera 0, 0, 1, 2", [&t] {
                     auto d = toric::delta(t);
                     std::vector<long> g;
                     for (int skip = 0; skip < 4; ++skip) {
                         std::array<toric::Vec3, 3> f;
                         int k = 0;
                         for (int i = 0; i < 4; ++i)
                             if (i != skip) f[k++] = t.delta_vertices[i];
                         g.push_back(toric::facet_genus(d, f));
                     }
                     std::sort(g.begin(), g.end());
                     return Outcome{g == t.facet_genera, "genera " + join(g)};
                 }});
    c.push_back({"toric.support_shift", "unique shift sends z, 1/z, x^3, y^2 to the vertices", [&t] {
                     auto r = toric::support_shift_report(t);
                     bool ok = r.feasible_shifts == 1 && r.shift == t.support_shift && r.vertex_correspondence;
                     return Outcome{ok, "shift " + toric::to_string(r.shift) + ", " +
                                            std::to_string(r.feasible_shifts) + " feasible"};
                 }});
    c.push_back({"toric.lattice_points", "39 points in the dual (weighted degree 12), 9 in Delta", [&t] {
                     long oracle = 0;
                     for (int a = 0; a <= 12; ++a)
                         for (int b = 0; a + b <= 12; ++b)
                             for (int cc = 0; a + b + 4 * cc <= 12; ++cc)
                                 if ((12 - a - b - 4 * cc) % 6 == 0) ++oracle;
                     auto d = toric::delta(t);
                     auto dual = toric::lattice_points(toric::dual_polytope(d)).size();
                     auto own = toric::lattice_points(d).size();
                     auto support = toric::support_shift_report(t).shifted.size();
                     bool ok = oracle == 39 && dual == 39 && own == 9 && support == 9;
                     return Outcome{ok, "dual " + std::to_string(dual) + ", monomials " + std::to_string(oracle) +
                                            ", Delta " + std::to_string(own) + ", support " + std::to_string(support)};
                 }});
    c.push_back({"toric.curve_count", "17 exceptional curves plus section and fiber give 19", [&t] {
                     long curves = 0;
                     for (const auto& e : toric::edge_reports(toric::dual_polytope(toric::delta(t))))
                         curves += e.lattice_length - 1;
                     auto nodes = toric::nineteen_curve_graph(t).nodes.size();
                     bool ok = curves == 17 && nodes == 19;
                     return Outcome{ok, std::to_string(curves) + " edge curves, " + std::to_string(nodes) + " nodes"};
                 }});
    return c;
}

// --------------------------------------------------------------- weierstrass

std::vector<Check> weierstrass_checks(const Transcription& t) {
    namespace ws = weierstrass;
    std::vector<Check> c;
    c.push_back({"weierstrass.palindrome", "Weierstrass model is symmetric under t -> 1/t", [&t] {
                     for (const auto& m : {ws::FamilyMember{1, 1}, ws::FamilyMember{BigRational(-2, 3), 5}}) {
                         if (!ws::is_palindromic(ws::to_weierstrass(m, t)))
                             return Outcome{false, "not palindromic at a=" + q(m.a) + " b=" + q(m.b)};
                     }
                     return Outcome{true, "palindromic"};
                 }});
    c.push_back({"weierstrass.fibers", "II* at 0 and infinity, Euler budget 24 on 50 random members", [&t] {
                     std::mt19937_64 rng(2024);
                     std::uniform_int_distribution<long> num(-40, 40), den(1, 9);
                     auto rnd = [&] {
                         BigRational x(num(rng), den(rng));
                         x.canonicalize();
                         return x;
                     };
                     for (int tested = 0; tested < 50;) {
                         ws::FamilyMember m{rnd(), rnd()};
                         if (m.a == 0 || ws::is_degenerate(m)) continue;
                         auto r = ws::fiber_analysis(m, t);
                         bool ok = r.fibers.size() >= 2 && r.fibers[0].type.to_string() == "II*" &&
                                   r.fibers[1].type.to_string() == "II*" && r.euler_total == 24;
                         if (!ok)
                             return Outcome{false, "a=" + q(m.a) + " b=" + q(m.b) + ": " + r.fibers[0].type.to_string() +
                                                       "/" + r.fibers[1].type.to_string() + ", euler " +
                                                       std::to_string(r.euler_total)};
                         ++tested;
                     }
                     return Outcome{true, "50 members: II* + II* + 4 I1"};
                 }});
    c.push_back({"weierstrass.degeneracy", "degeneracy flag equals j1 = j2 on 20 matched and 20 unmatched pairs", [&t] {
                     std::mt19937_64 rng(41);
                     int matched = 0, unmatched = 0;
                     while (matched < 20 || unmatched < 20) {
                         auto l1 = random_lambda(rng);
                         bool want = matched < 20 && (unmatched >= 20 || rng() % 2 == 0);
                         BigRational l2 = want ? (rng() % 2 ? BigRational(1 - l1) : BigRational(1 / l1)) : random_lambda(rng);
                         auto j1 = shiodainose::j_from_lambda(l1, t), j2 = shiodainose::j_from_lambda(l2, t);
                         if (!want && j1 == j2) continue;
                         auto p = shiodainose::ab_powers_from_lambda(l1, l2, t);
                         if (ws::is_degenerate_powers(p.a_cubed, p.b_squared) != (j1 == j2))
                             return Outcome{false, "flag wrong at lambda=(" + q(l1) + "," + q(l2) + ")"};
                         (want ? matched : unmatched)++;
                     }
                     return Outcome{true, "20 matched, 20 unmatched"};
                 }});
    return c;
}

// ------------------------------------------------------------------- modular

std::vector<Check> modular_checks(const Transcription& t, const SuiteOptions& o) {
    namespace md = modular;
    using exact::kDefaultPrecision;
    auto phis = std::make_shared<std::map<int, md::ModularPolynomial>>();
    auto audits = std::make_shared<std::map<int, md::BuildInfo>>();
    auto phi = [phis, audits, dir = o.cache_dir](int n) -> const md::ModularPolynomial& {
        auto it = phis->find(n);
        if (it == phis->end()) {
            md::BuildInfo info;
            it = phis->emplace(n, md::build_modular_polynomial(n, dir, &info)).first;
            (*audits)[n] = info;
        }
        return it->second;
    };
    auto dist = [](const BigComplex& x, const BigRational& y) {
        return abs(x - BigComplex(y, kDefaultPrecision)).to_double();
    };

    std::vector<Check> c;
    c.push_back({"modular.j_at_i", "|j(i) - 1728| < 1e-15", [&t, dist] {
                     double d = dist(md::j_numeric(BigComplex::i()), t.j_at_i);
                     return Outcome{d < 1e-15, "deviation " + sci(d)};
                 }});
    c.push_back({"modular.j_at_2i", "|j(2i) - 287496| < 1e-10", [&t, dist] {
                     double d = dist(md::j_numeric(BigComplex::parse("2i")), t.j_at_2i);
                     return Outcome{d < 1e-10, "deviation " + sci(d)};
                 }});
    for (int n : {2, 3}) {
        std::string id = "modular.phi" + std::to_string(n);
        c.push_back({id, "Phi_" + std::to_string(n) + " is integral, symmetric, monic of degree " +
                             std::to_string(n + 1) + " with residue < 1e-6",
                     [n, phi, audits] {
                         const auto& p = phi(n);
                         const auto& info = (*audits)[n];
                         unsigned deg = n + 1;
                         bool ok = p.is_symmetric() && p.degree_x() == deg && p.coefficient(deg, 0) == 1;
                         std::string w = std::to_string(p.coefficients.size()) + " monomials";
                         if (info.from_cache) {
                             w += ", from cache";
                         } else if (info.audit) {
                             ok = ok && info.audit->max_rounding_residue < 1e-6;
                             w += ", rounding residue " + sci(info.audit->max_rounding_residue);
                         }
                         return Outcome{ok, w};
                     }});
    }
    c.push_back({"modular.vanishing", "|Phi_n(j(tau), j(-1/(n tau)))| / scale < 1e-4 on 10 random tau, n = 2, 3", [phi] {
                     std::mt19937_64 rng(12);
                     std::uniform_real_distribution<double> re(-0.5, 0.5), im(0.9, 1.6);
                     double worst = 0;
                     for (int k = 0; k < 10; ++k) {
                         BigComplex tau(exact::BigFloat(re(rng), kDefaultPrecision), exact::BigFloat(im(rng), kDefaultPrecision));
                         for (int n : {2, 3}) {
                             auto [a, b] = md::fricke_pair(tau, n);
                             const auto& p = phi(n);
                             worst = std::max(worst, (abs(md::eval_modpoly(p, a, b)) / md::modpoly_scale(p, a, b)).to_double());
                         }
                     }
                     return Outcome{worst < 1e-4, "worst residue " + sci(worst)};
                 }});
    c.push_back({"modular.family_at_i", "tau = i, n = 1 gives the degenerate member a = -3, b = 0", [&t] {
                     auto [a, b] = md::family_coefficients(BigComplex::i(), 1, t);
                     double da = abs(a - BigComplex(BigRational(-3), kDefaultPrecision)).to_double();
                     bool deg = weierstrass::is_degenerate(a, b, 1e-15);
                     return Outcome{da < 1e-15 && deg, "a deviation " + sci(da) + (deg ? ", degenerate" : ", not degenerate")};
                 }});
    return c;
}

std::vector<Check> suite_checks(std::string_view suite, const Transcription& t, const SuiteOptions& o) {
    std::vector<Check> out;
    auto add = [&](std::vector<Check> v) { std::move(v.begin(), v.end(), std::back_inserter(out)); };
    bool all = suite == "all";
    if (all || suite == "identities") add(identity_checks(t));
    if (all || suite == "lattice") add(lattice_checks(t));
    if (all || suite == "kummer") add(kummer_checks(t));
    if (all || suite == "toric") add(toric_checks(t));
    if (all || suite == "weierstrass") add(weierstrass_checks(t));
    if (all || suite == "modular") add(modular_checks(t, o));
    return out;
}

std::map<std::string, std::string> versions() {
    return {{"k3lab", kVersion}, {"gmp", gmp_version}, {"mpfr", mpfr_get_version()}};
}

} // namespace

bool VerificationReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.passed; });
}

std::vector<std::string> VerificationReport::failing() const {
    std::vector<std::string> ids;
    for (const auto& c : checks)
        if (!c.passed) ids.push_back(c.id);
    return ids;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"all", "identities", "lattice", "kummer", "toric", "weierstrass", "modular"};
    return names;
}

VerificationReport run_suite(std::string_view suite, const Transcription& t, const SuiteOptions& options) {
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), suite) == names.end())
        throw std::invalid_argument("unknown suite '" + std::string(suite) + "'");
    auto start = std::chrono::steady_clock::now();
    VerificationReport r;
    r.suite = std::string(suite);
    r.mutation = options.mutation;
    r.versions = versions();
    for (auto& check : suite_checks(suite, t, options)) {
        CheckRecord rec{check.id, check.description, false, ""};
        try {
            auto o = check.run();
            rec.passed = o.passed;
            rec.witness = std::move(o.witness);
        } catch (const std::exception& e) {
            rec.witness = std::string("exception: ") + e.what();
        }
        r.checks.push_back(std::move(rec));
    }
    std::sort(r.checks.begin(), r.checks.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    r.elapsed_ms = std::round(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count() * 1000) / 1000;
    return r;
}

std::string to_json(const VerificationReport& r) {
    nlohmann::ordered_json j;
    j["suite"] = r.suite;
    j["status"] = r.passed() ? "pass" : "fail";
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : r.checks) {
        nlohmann::ordered_json e;
        e["id"] = c.id;
        e["description"] = c.description;
        e["status"] = c.passed ? "pass" : "fail";
        e["witness"] = c.witness;
        j["checks"].push_back(std::move(e));
    }
    j["elapsed_ms"] = r.elapsed_ms;
    j["versions"] = r.versions;
    if (r.mutation) j["mutation"] = *r.mutation;
    return j.dump(2) + "\n";
}

std::string to_text(const VerificationReport& r) {
    std::size_t id_w = 2, desc_w = 11;
    for (const auto& c : r.checks) {
        id_w = std::max(id_w, c.id.size());
        desc_w = std::max(desc_w, c.description.size());
    }
    std::ostringstream s;
    s << std::left << std::setw(id_w) << "id" << "  " << std::setw(6) << "status" << "  " << std::setw(desc_w)
      << "description" << "  witness\n";
    s << std::string(id_w + desc_w + 25, '-') << "\n";
    for (const auto& c : r.checks)
        s << std::setw(id_w) << c.id << "  " << std::setw(6) << (c.passed ? "pass" : "fail") << "  " << std::setw(desc_w)
          << c.description << "  " << c.witness << "\n";
    s << "suite " << r.suite;
    if (r.mutation) s << " (mutation " << *r.mutation << ")";
    s << ": " << (r.passed() ? "pass" : "fail") << ", " << r.checks.size() << " checks, " << r.failing().size()
      << " failing, " << std::fixed << std::setprecision(3) << r.elapsed_ms << " ms\n";
    return s.str();
}

// ------------------------------------------------------------------- command

namespace {

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

std::optional<std::filesystem::path> resolve_cache(const std::string& flag) {
    if (!flag.empty()) return std::filesystem::path(flag);
    return modular::cache_dir_from_env();
}

Transcription pick_transcription(const std::string& mutation) {
    if (mutation.empty()) return constants::transcribed();
    try {
        return constants::mutated(mutation);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

void check_format(const std::string& f) {
    if (f != "json" && f != "text") throw UsageError("format must be json or text, got '" + f + "'");
}

BigRational rational_arg(const std::string& name, const std::string& text) {
    try {
        return exact::parse_rational(text);
    } catch (const std::invalid_argument&) {
        throw UsageError("--" + name + " expects p/q, got '" + text + "'");
    }
}

// adding +0 clears negative zeros from the printed parts
std::string cx(const BigComplex& z) { return (z + BigComplex(BigRational(0), z.precision())).to_string(30); }

struct FamilyArgs {
    std::string j1, j2, l1, l2, tau;
    long n = 0;
    bool has_n = false;
    std::string format = "text";
};

nlohmann::ordered_json family_result(const FamilyArgs& a) {
    namespace sn = shiodainose;
    bool jg = !a.j1.empty() || !a.j2.empty();
    bool lg = !a.l1.empty() || !a.l2.empty();
    bool tg = !a.tau.empty() || a.has_n;
    int groups = int(jg) + int(lg) + int(tg);
    if (groups != 1) throw UsageError("give exactly one of --j1/--j2, --lambda1/--lambda2, --tau/--n");
    if ((jg && (a.j1.empty() || a.j2.empty())) || (lg && (a.l1.empty() || a.l2.empty())) ||
        (tg && (a.tau.empty() || !a.has_n)))
        throw UsageError("incomplete argument group");

    nlohmann::ordered_json out;
    auto prec = exact::kDefaultPrecision;
    auto exact_part = [&](const BigRational& j1, const BigRational& j2) {
        auto p = sn::ab_powers_from_j(j1, j2);
        out["j1"] = q(j1);
        out["j2"] = q(j2);
        out["a_cubed"] = q(p.a_cubed);
        out["b_squared"] = q(p.b_squared);
        auto [a, b] = sn::ab_numeric(BigComplex(j1, prec), BigComplex(j2, prec));
        out["a"] = cx(a);
        out["b"] = cx(b);
        out["degenerate"] = weierstrass::is_degenerate_powers(p.a_cubed, p.b_squared);
        return p;
    };
    if (jg) {
        out["route"] = "j";
        exact_part(rational_arg("j1", a.j1), rational_arg("j2", a.j2));
    } else if (lg) {
        auto l1 = rational_arg("lambda1", a.l1), l2 = rational_arg("lambda2", a.l2);
        out["route"] = "lambda";
        out["lambda1"] = q(l1);
        out["lambda2"] = q(l2);
        auto via_lambda = sn::ab_powers_from_lambda(l1, l2);
        auto via_j = exact_part(sn::j_from_lambda(l1), sn::j_from_lambda(l2));
        out["a_cubed_lambda_route"] = q(via_lambda.a_cubed);
        out["b_squared_lambda_route"] = q(via_lambda.b_squared);
        out["routes_agree"] = via_lambda == via_j;
    } else {
        BigComplex tau;
        try {
            tau = BigComplex::parse(a.tau, prec);
        } catch (const std::exception&) {
            throw UsageError("--tau expects re+imi, got '" + a.tau + "'");
        }
        if (a.n < 1) throw UsageError("--n must be at least 1");
        out["route"] = "tau";
        out["tau"] = cx(tau);
        out["n"] = a.n;
        auto [j1, j2] = modular::fricke_pair(tau, a.n);
        out["j1"] = cx(j1);
        out["j2"] = cx(j2);
        auto [fa, fb] = modular::family_coefficients(tau, a.n);
        out["a"] = cx(fa);
        out["b"] = cx(fb);
        out["degenerate"] = weierstrass::is_degenerate(fa, fb, 1e-20);
    }
    return out;
}

std::string family_text(const nlohmann::ordered_json& j) {
    std::ostringstream s;
    for (const auto& [k, v] : j.items()) s << k << "=" << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    return s.str();
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"k3lab: checks for a K3 family with Shioda-Inose structure"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    std::string suite = "all", mutation, format, cache;
    bool list_mutations = false;
    auto* verify = app.add_subcommand("verify", "run a verification suite; exit 0 iff every check passes");
    verify->add_option("--suite", suite, "all, identities, lattice, kummer, toric, weierstrass or modular");
    verify->add_option("--mutate", mutation, "perturb one transcribed constant before checking");
    verify->add_option("--format", format, "text (default) or json");
    verify->add_option("--cache-dir", cache, "modular polynomial cache directory");
    verify->add_flag("--list-mutations", list_mutations, "print the mutation ids and exit");

    auto* report = app.add_subcommand("report", "print the report of a suite (default all)");
    report->add_option("--suite", suite, "suite name");
    report->add_option("--mutate", mutation, "perturb one transcribed constant before checking");
    report->add_option("--format", format, "json (default) or text");
    report->add_option("--cache-dir", cache, "modular polynomial cache directory");

    FamilyArgs fa;
    auto* family = app.add_subcommand("family", "coefficients a, b of the family member for a j, lambda or tau pair");
    family->add_option("--j1", fa.j1, "rational j1");
    family->add_option("--j2", fa.j2, "rational j2");
    family->add_option("--lambda1", fa.l1, "rational Legendre parameter of E1");
    family->add_option("--lambda2", fa.l2, "rational Legendre parameter of E2");
    family->add_option("--tau", fa.tau, "point of the upper half-plane, re+imi");
    auto* n_opt = family->add_option("--n", fa.n, "Fricke level");
    family->add_option("--format", fa.format, "text (default) or json");

    int mp_n = 0;
    auto* modpoly = app.add_subcommand("modpoly", "print the classical modular polynomial Phi_n, n <= 3");
    modpoly->add_option("--n", mp_n, "level 1, 2 or 3")->required();
    modpoly->add_option("--cache-dir", cache, "cache directory (default $K3LAB_CACHE_DIR)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kPass : kUsage;
    }

    try {
        if (*verify || *report) {
            bool is_report = report->parsed();
            if (format.empty()) format = is_report ? "json" : "text";
            check_format(format);
            if (list_mutations) {
                for (const auto& m : constants::mutations()) out << m.id << "  " << m.description << "\n";
                return kPass;
            }
            const auto& names = suite_names();
            if (std::find(names.begin(), names.end(), suite) == names.end())
                throw UsageError("unknown suite '" + suite + "'");
            SuiteOptions opts;
            opts.cache_dir = resolve_cache(cache);
            if (!mutation.empty()) opts.mutation = mutation;
            auto r = run_suite(suite, pick_transcription(mutation), opts);
            out << (format == "json" ? to_json(r) : to_text(r));
            if (is_report) return kPass;
            if (!r.passed()) err << "failing checks: " << join(r.failing()) << "\n";
            return r.passed() ? kPass : kFail;
        }
        if (*family) {
            fa.has_n = n_opt->count() > 0;
            check_format(fa.format);
            auto j = family_result(fa);
            out << (fa.format == "json" ? j.dump(2) + "\n" : family_text(j));
            return kPass;
        }
        if (*modpoly) {
            if (mp_n < 1 || mp_n > 3) throw UsageError("--n must be 1, 2 or 3");
            modular::BuildInfo info;
            auto phi = modular::build_modular_polynomial(mp_n, resolve_cache(cache), &info);
            out << modular::serialize(phi);
            err << (info.from_cache ? "read from cache" : "reconstructed") << "\n";
            return kPass;
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << "\n";
        return kDomain;
    } catch (const PrecisionError& e) {
        err << "precision error: " << e.what() << "\n";
        return kFail;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kFail;
    }
    return kUsage;
}

} // namespace k3lab::cli
