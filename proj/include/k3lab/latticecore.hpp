#pragma once

// Integer lattices given by Gram matrices, and graphs of (-2)-curves.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "k3lab/exactcore.hpp"

namespace k3lab::lattice {

using exact::BigInt;
using exact::BigRational;
using IntVector = std::vector<BigInt>;
using IntMatrix = std::vector<IntVector>;
using RatVector = std::vector<BigRational>;
using RatMatrix = std::vector<RatVector>;

class GramLattice {
public:
    GramLattice() = default;
    // Throws std::invalid_argument if the matrix is not square, not
    // symmetric, or does not match the label count.
    GramLattice(std::vector<std::string> labels, IntMatrix gram);

    std::size_t dimension() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const IntMatrix& gram() const { return gram_; }
    const BigInt& at(std::size_t i, std::size_t j) const { return gram_[i][j]; }
    std::optional<std::size_t> index_of(std::string_view label) const;

    BigRational pair(const RatVector& x, const RatVector& y) const;
    BigInt pair(const IntVector& x, const IntVector& y) const;
    // Sublattice spanned by the named basis vectors.
    GramLattice restrict_to(const std::vector<std::string>& labels) const;

private:
    std::vector<std::string> labels_;
    IntMatrix gram_;
};

struct CurveGraph {
    std::vector<std::string> nodes;
    std::vector<std::pair<std::string, std::string>> edges;
    std::map<std::string, long> self_intersection; // missing nodes default to -2

    // Throws std::invalid_argument on unknown endpoints or self-loops.
    void validate() const;
    CurveGraph induced(const std::vector<std::string>& subset) const;
};

// "U", "E8", "E8(-1)" or "rank1(m)". Throws std::invalid_argument otherwise.
GramLattice standard_lattice(std::string_view name);
GramLattice rank1(long m);

// Block diagonal sum. Clashing labels from b get a "'" suffix.
GramLattice direct_sum(const GramLattice& a, const GramLattice& b);

GramLattice graph_to_gram(const CurveGraph& g);

struct LatticeInvariants {
    std::size_t rank = 0;
    std::size_t positive = 0;
    std::size_t negative = 0;
    BigInt determinant = 0;
    bool is_even = true;
    // True when the determinant was taken on an integral basis of L/ker.
    // Otherwise it is the determinant of some maximal nondegenerate
    // coordinate block and only the sign and nonvanishing are meaningful.
    bool determinant_on_integral_basis = true;
};

LatticeInvariants lattice_invariants(const GramLattice& lat);

// Z-basis of {x in Z^n : G x = 0}, each vector primitive with its first
// nonzero entry positive.
std::vector<IntVector> kernel_basis(const GramLattice& lat);

// Pairings v_i . G . v_j.
RatMatrix induced_gram(const GramLattice& ambient, const std::vector<RatVector>& vectors);
// Same, but insists on integer entries (std::domain_error otherwise).
GramLattice induced_integral_gram(const GramLattice& ambient, const std::vector<RatVector>& vectors,
                                  std::vector<std::string> labels = {});

bool is_e8_dynkin(const CurveGraph& g);

// Exact helpers on rational matrices.
std::size_t matrix_rank(RatMatrix m);
BigRational determinant(RatMatrix m);
RatMatrix to_rational(const IntMatrix& m);

} // namespace k3lab::lattice
