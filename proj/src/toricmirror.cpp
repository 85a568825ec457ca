#include "k3lab/toricmirror.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "k3lab/errors.hpp"

namespace k3lab::toric {

namespace {

Vec3 sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Vec3 add(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
Vec3 scale(long k, const Vec3& a) { return {k * a[0], k * a[1], k * a[2]}; }
Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
long dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
bool is_zero(const Vec3& a) { return a[0] == 0 && a[1] == 0 && a[2] == 0; }

Vec3 primitive(Vec3 v) {
    long g = std::gcd(std::gcd(std::labs(v[0]), std::labs(v[1])), std::labs(v[2]));
    if (g > 1)
        for (auto& x : v) x /= g;
    return v;
}

// Facets of the hull of pts by brute force over triples.
std::vector<std::pair<Vec3, long>> hull_planes(const std::vector<Vec3>& pts) {
    std::set<std::pair<Vec3, long>> planes;
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                Vec3 nrm = cross(sub(pts[j], pts[i]), sub(pts[k], pts[i]));
                if (is_zero(nrm)) continue;
                nrm = primitive(nrm);
                long c = dot(nrm, pts[i]);
                bool pos = false, neg = false;
                for (const auto& p : pts) {
                    long s = dot(nrm, p) - c;
                    if (s > 0) pos = true;
                    if (s < 0) neg = true;
                }
                if (pos && neg) continue;
                if (!pos && !neg) continue; // flat point set
                if (neg) {
                    nrm = scale(-1, nrm);
                    c = -c;
                }
                planes.insert({nrm, c});
            }
    return {planes.begin(), planes.end()};
}

long rank_of(const std::vector<Vec3>& vs) {
    // rank of up to many integer 3-vectors
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            for (std::size_t k = j + 1; k < vs.size(); ++k)
                if (dot(cross(vs[i], vs[j]), vs[k]) != 0) return 3;
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            if (!is_zero(cross(vs[i], vs[j]))) return 2;
    for (const auto& v : vs)
        if (!is_zero(v)) return 1;
    return 0;
}

} // namespace

std::string to_string(const Vec3& v) {
    return "(" + std::to_string(v[0]) + "," + std::to_string(v[1]) + "," + std::to_string(v[2]) + ")";
}

LatticePolytope::LatticePolytope(const std::vector<Vec3>& points) {
    std::vector<Vec3> pts;
    for (const auto& p : points)
        if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
    auto planes = hull_planes(pts);
    if (planes.size() < 4) throw std::invalid_argument("points do not span a 3-dimensional polytope");
    for (const auto& p : pts) {
        std::vector<Vec3> normals;
        for (const auto& [nrm, c] : planes)
            if (dot(nrm, p) == c) normals.push_back(nrm);
        if (rank_of(normals) == 3) vertices_.push_back(p);
    }
    for (const auto& [nrm, c] : planes) {
        Facet f{nrm, c, {}};
        for (std::size_t i = 0; i < vertices_.size(); ++i)
            if (dot(nrm, vertices_[i]) == c) f.vertices.push_back(i);
        facets_.push_back(std::move(f));
    }
}

bool LatticePolytope::contains(const Vec3& x) const {
    return std::all_of(facets_.begin(), facets_.end(), [&](const Facet& f) { return dot(f.normal, x) >= f.offset; });
}

bool LatticePolytope::in_interior(const Vec3& x) const {
    return std::all_of(facets_.begin(), facets_.end(), [&](const Facet& f) { return dot(f.normal, x) > f.offset; });
}

bool LatticePolytope::same_as(const LatticePolytope& other) const {
    std::set<Vec3> a(vertices_.begin(), vertices_.end()), b(other.vertices_.begin(), other.vertices_.end());
    return a == b;
}

LatticePolytope delta(const Transcription& t) {
    LatticePolytope p(std::vector<Vec3>(t.delta_vertices.begin(), t.delta_vertices.end()));
    return p;
}

LatticePolytope dual_polytope(const LatticePolytope& p) {
    if (!p.in_interior({0, 0, 0})) throw DomainError("origin is not an interior point");
    std::vector<Vec3> verts;
    for (const auto& f : p.facets()) {
        // <n,x> >= c with c < 0 gives the dual vertex n / (-c).
        long d = -f.offset;
        for (long x : f.normal)
            if (x % d != 0) throw DomainError("dual polytope has a non-integral vertex");
        verts.push_back({f.normal[0] / d, f.normal[1] / d, f.normal[2] / d});
    }
    return LatticePolytope(verts);
}

std::vector<Vec3> lattice_points(const LatticePolytope& p) {
    Vec3 lo = p.vertices()[0], hi = lo;
    for (const auto& v : p.vertices())
        for (int k = 0; k < 3; ++k) {
            lo[k] = std::min(lo[k], v[k]);
            hi[k] = std::max(hi[k], v[k]);
        }
    std::vector<Vec3> out;
    for (long x = lo[0]; x <= hi[0]; ++x)
        for (long y = lo[1]; y <= hi[1]; ++y)
            for (long z = lo[2]; z <= hi[2]; ++z)
                if (p.contains({x, y, z})) out.push_back({x, y, z});
    return out;
}

std::vector<EdgeReport> edge_reports(const LatticePolytope& p) {
    std::vector<EdgeReport> out;
    const auto& vs = p.vertices();
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j) {
            int shared = 0;
            for (const auto& f : p.facets()) {
                bool hi = std::find(f.vertices.begin(), f.vertices.end(), i) != f.vertices.end();
                bool hj = std::find(f.vertices.begin(), f.vertices.end(), j) != f.vertices.end();
                if (hi && hj) ++shared;
            }
            if (shared < 2) continue;
            Vec3 d = sub(vs[j], vs[i]);
            long len = std::gcd(std::gcd(std::labs(d[0]), std::labs(d[1])), std::labs(d[2]));
            out.push_back({vs[i], vs[j], len, len == 1 ? "smooth" : "A" + std::to_string(len - 1)});
        }
    return out;
}

long facet_genus(const LatticePolytope& p, const std::array<Vec3, 3>& facet) {
    Vec3 nrm = cross(sub(facet[1], facet[0]), sub(facet[2], facet[0]));
    if (is_zero(nrm)) throw std::invalid_argument("facet vertices are collinear");
    nrm = primitive(nrm);
    const Facet* hit = nullptr;
    for (const auto& f : p.facets()) {
        if ((f.normal == nrm || f.normal == scale(-1, nrm)) && dot(f.normal, facet[0]) == f.offset) hit = &f;
    }
    if (!hit) throw std::invalid_argument("vertex triple does not span a facet");
    for (const auto& v : facet)
        if (std::find(p.vertices().begin(), p.vertices().end(), v) == p.vertices().end())
            throw std::invalid_argument("facet corner is not a vertex");
    long count = 0;
    for (const auto& x : lattice_points(p)) {
        if (dot(hit->normal, x) != hit->offset) continue;
        bool on_other = false;
        for (const auto& f : p.facets())
            if (&f != hit && dot(f.normal, x) == f.offset) on_other = true;
        if (!on_other) ++count;
    }
    return count;
}

SupportShiftReport support_shift_report(const Transcription& t) {
    Vec3 x{}, y{}, z{};
    for (const auto& [name, v] : t.support_monomials) {
        if (name == "x") x = v;
        if (name == "y") y = v;
        if (name == "z") z = v;
    }
    std::vector<std::pair<std::string, Vec3>> nine{
        {"z", z},          {"1/z", scale(-1, z)}, {"1", {0, 0, 0}},   {"x", x},  {"x^2", scale(2, x)},
        {"x^3", scale(3, x)}, {"y", y},           {"y^2", scale(2, y)}, {"xy", add(x, y)}};
    auto poly = delta(t);
    SupportShiftReport r;
    std::vector<Vec3> feasible;
    const long box = 12;
    for (long a = -box; a <= box; ++a)
        for (long b = -box; b <= box; ++b)
            for (long c = -box; c <= box; ++c) {
                Vec3 s{a, b, c};
                bool ok = std::all_of(nine.begin(), nine.end(), [&](const auto& m) { return poly.contains(add(m.second, s)); });
                if (ok) feasible.push_back(s);
            }
    r.feasible_shifts = feasible.size();
    if (feasible.empty()) throw std::domain_error("no shift places the support inside Delta");
    r.shift = feasible.front();
    for (const auto& [name, v] : nine) {
        Vec3 p = add(v, r.shift);
        r.shifted.emplace_back(name, p);
        if (poly.in_interior(p)) r.interior.push_back(name);
    }
    const auto& dv = t.delta_vertices;
    r.vertex_correspondence = add(z, r.shift) == dv[0] && add(scale(-1, z), r.shift) == dv[1] &&
                              add(scale(3, x), r.shift) == dv[2] && add(scale(2, y), r.shift) == dv[3];
    return r;
}

Vec3 support_shift(const Transcription& t) {
    auto r = support_shift_report(t);
    if (r.feasible_shifts != 1) throw std::domain_error("support shift is not unique");
    return r.shift;
}

lattice::CurveGraph nineteen_curve_graph(const Transcription& t) {
    lattice::CurveGraph g;
    g.nodes = t.graph_nodes;
    g.edges = t.graph_edges;
    return g;
}

} // namespace k3lab::toric
