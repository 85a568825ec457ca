#pragma once

// Lattice polytopes in Z^3: the simplex Delta, its polar dual, lattice
// points, edge lengths, facet genera and the monomial support shift.

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "k3lab/latticecore.hpp"
#include "k3lab/transcription.hpp"

namespace k3lab::toric {

using constants::Transcription;
using constants::Vec3;

// Inward facet inequality <normal, x> >= offset, normal primitive.
struct Facet {
    Vec3 normal;
    long offset;
    std::vector<std::size_t> vertices; // indices into the polytope's vertex list
};

class LatticePolytope {
public:
    // Keeps only the extreme points, in input order. Throws
    // std::invalid_argument unless the points span a 3-dimensional hull.
    explicit LatticePolytope(const std::vector<Vec3>& points);

    const std::vector<Vec3>& vertices() const { return vertices_; }
    const std::vector<Facet>& facets() const { return facets_; }
    bool contains(const Vec3& x) const;
    bool in_interior(const Vec3& x) const;
    // Same vertex set, any order.
    bool same_as(const LatticePolytope& other) const;

private:
    std::vector<Vec3> vertices_;
    std::vector<Facet> facets_;
};

LatticePolytope delta(const Transcription& t = constants::transcribed());

// {y : <y,x> >= -1 for all x in p}. Throws k3lab::DomainError if the origin
// is not interior or the dual has non-integral vertices.
LatticePolytope dual_polytope(const LatticePolytope& p);

// Sorted lexicographically.
std::vector<Vec3> lattice_points(const LatticePolytope& p);

struct EdgeReport {
    Vec3 from, to;
    long lattice_length;
    std::string singularity; // "A11", ..., or "smooth"
};
std::vector<EdgeReport> edge_reports(const LatticePolytope& p);

// Interior lattice points of the facet spanned by the three vertices.
// Throws std::invalid_argument if they do not span a facet.
long facet_genus(const LatticePolytope& p, const std::array<Vec3, 3>& facet);

struct SupportShiftReport {
    Vec3 shift;
    std::size_t feasible_shifts = 0;       // shifts putting all nine points in Delta
    std::vector<std::pair<std::string, Vec3>> shifted; // monomial name -> point
    std::vector<std::string> interior;     // monomials landing in the interior
    bool vertex_correspondence = false;    // z, 1/z, x^3, y^2 -> v1..v4
};
// Throws std::domain_error when no shift exists.
SupportShiftReport support_shift_report(const Transcription& t = constants::transcribed());
Vec3 support_shift(const Transcription& t = constants::transcribed());

// The 19 (-2)-curves of the resolved compactification and their incidences.
lattice::CurveGraph nineteen_curve_graph(const Transcription& t = constants::transcribed());

std::string to_string(const Vec3& v);

} // namespace k3lab::toric
