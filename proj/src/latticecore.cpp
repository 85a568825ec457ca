#include "k3lab/latticecore.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace k3lab::lattice {

GramLattice::GramLattice(std::vector<std::string> labels, IntMatrix gram)
    : labels_(std::move(labels)), gram_(std::move(gram)) {
    const std::size_t n = labels_.size();
    if (gram_.size() != n) throw std::invalid_argument("Gram matrix size does not match label count");
    for (std::size_t i = 0; i < n; ++i) {
        if (gram_[i].size() != n) throw std::invalid_argument("Gram matrix is not square");
        for (std::size_t j = 0; j < i; ++j)
            if (gram_[i][j] != gram_[j][i]) throw std::invalid_argument("Gram matrix is not symmetric");
    }
}

std::optional<std::size_t> GramLattice::index_of(std::string_view label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
        if (labels_[i] == label) return i;
    return std::nullopt;
}

BigRational GramLattice::pair(const RatVector& x, const RatVector& y) const {
    if (x.size() != dimension() || y.size() != dimension()) throw std::invalid_argument("vector dimension mismatch");
    BigRational s = 0;
    for (std::size_t i = 0; i < dimension(); ++i) {
        if (x[i] == 0) continue;
        BigRational row = 0;
        for (std::size_t j = 0; j < dimension(); ++j)
            if (y[j] != 0 && gram_[i][j] != 0) row += BigRational(gram_[i][j]) * y[j];
        s += x[i] * row;
    }
    return s;
}

BigInt GramLattice::pair(const IntVector& x, const IntVector& y) const {
    if (x.size() != dimension() || y.size() != dimension()) throw std::invalid_argument("vector dimension mismatch");
    BigInt s = 0;
    for (std::size_t i = 0; i < dimension(); ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < dimension(); ++j) s += x[i] * gram_[i][j] * y[j];
    }
    return s;
}

GramLattice GramLattice::restrict_to(const std::vector<std::string>& labels) const {
    std::vector<std::size_t> idx;
    for (const auto& l : labels) {
        auto i = index_of(l);
        if (!i) throw std::invalid_argument("unknown basis label '" + l + "'");
        idx.push_back(*i);
    }
    IntMatrix g(idx.size(), IntVector(idx.size()));
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = 0; b < idx.size(); ++b) g[a][b] = gram_[idx[a]][idx[b]];
    return GramLattice(labels, std::move(g));
}

void CurveGraph::validate() const {
    std::set<std::string> names(nodes.begin(), nodes.end());
    if (names.size() != nodes.size()) throw std::invalid_argument("duplicate node names");
    for (const auto& [a, b] : edges) {
        if (!names.count(a) || !names.count(b)) throw std::invalid_argument("edge references unknown node " + a + "-" + b);
        if (a == b) throw std::invalid_argument("self-loop at " + a);
    }
}

CurveGraph CurveGraph::induced(const std::vector<std::string>& subset) const {
    CurveGraph g;
    std::set<std::string> keep(subset.begin(), subset.end());
    for (const auto& n : nodes)
        if (keep.count(n)) g.nodes.push_back(n);
    if (g.nodes.size() != keep.size()) throw std::invalid_argument("subset names a node outside the graph");
    for (const auto& e : edges)
        if (keep.count(e.first) && keep.count(e.second)) g.edges.push_back(e);
    for (const auto& [n, s] : self_intersection)
        if (keep.count(n)) g.self_intersection[n] = s;
    return g;
}

namespace {

IntMatrix e8_cartan() {
    // Bourbaki labelling: chain 1-3-4-5-6-7-8 with 2 attached to 4.
    const int edges[7][2] = {{0, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {1, 3}};
    IntMatrix g(8, IntVector(8, 0));
    for (int i = 0; i < 8; ++i) g[i][i] = 2;
    for (auto& e : edges) g[e[0]][e[1]] = g[e[1]][e[0]] = -1;
    return g;
}

std::vector<std::string> numbered(std::string_view stem, std::size_t n) {
    std::vector<std::string> v;
    for (std::size_t i = 1; i <= n; ++i) v.push_back(std::string(stem) + std::to_string(i));
    return v;
}

} // namespace

GramLattice rank1(long m) {
    if (m == 0) throw std::invalid_argument("rank1 needs a nonzero integer");
    return GramLattice({"g"}, {{BigInt(m)}});
}

GramLattice standard_lattice(std::string_view name) {
    if (name == "U") return GramLattice({"e", "f"}, {{0, 1}, {1, 0}});
    if (name == "E8") return GramLattice(numbered("a", 8), e8_cartan());
    if (name == "E8(-1)") {
        IntMatrix g = e8_cartan();
        for (auto& row : g)
            for (auto& x : row) x = -x;
        return GramLattice(numbered("a", 8), std::move(g));
    }
    if (name.starts_with("rank1(") && name.ends_with(")")) {
        std::string inner(name.substr(6, name.size() - 7));
        std::size_t used = 0;
        long m = 0;
        try {
            m = std::stol(inner, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != inner.size() || inner.empty()) throw std::invalid_argument("bad rank1 argument '" + inner + "'");
        return rank1(m);
    }
    throw std::invalid_argument("unknown lattice name '" + std::string(name) + "'");
}

GramLattice direct_sum(const GramLattice& a, const GramLattice& b) {
    std::vector<std::string> labels = a.labels();
    std::set<std::string> seen(labels.begin(), labels.end());
    for (auto l : b.labels()) {
        while (seen.count(l)) l += "'";
        seen.insert(l);
        labels.push_back(l);
    }
    const std::size_t n = a.dimension(), m = b.dimension();
    IntMatrix g(n + m, IntVector(n + m, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g[i][j] = a.at(i, j);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) g[n + i][n + j] = b.at(i, j);
    return GramLattice(std::move(labels), std::move(g));
}

GramLattice graph_to_gram(const CurveGraph& g) {
    g.validate();
    const std::size_t n = g.nodes.size();
    IntMatrix m(n, IntVector(n, 0));
    auto idx = [&](const std::string& s) {
        return static_cast<std::size_t>(std::find(g.nodes.begin(), g.nodes.end(), s) - g.nodes.begin());
    };
    for (std::size_t i = 0; i < n; ++i) {
        auto it = g.self_intersection.find(g.nodes[i]);
        m[i][i] = it == g.self_intersection.end() ? -2 : it->second;
    }
    for (const auto& [a, b] : g.edges) {
        std::size_t i = idx(a), j = idx(b);
        m[i][j] += 1;
        m[j][i] += 1;
    }
    return GramLattice(g.nodes, std::move(m));
}

RatMatrix to_rational(const IntMatrix& m) {
    RatMatrix r(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (const auto& x : m[i]) r[i].emplace_back(x);
    return r;
}

std::size_t matrix_rank(RatMatrix m) {
    std::size_t rank = 0;
    if (m.empty()) return 0;
    const std::size_t rows = m.size(), cols = m[0].size();
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t p = rank;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[rank]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            if (m[r][c] == 0) continue;
            BigRational f = m[r][c] / m[rank][c];
            for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
        }
        ++rank;
    }
    return rank;
}

BigRational determinant(RatMatrix m) {
    const std::size_t n = m.size();
    BigRational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            if (m[r][c] == 0) continue;
            BigRational f = m[r][c] / m[c][c];
            for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return det;
}

namespace {

// Diagonal entries of a congruent diagonal form (P^T G P = diag).
std::vector<BigRational> congruence_diagonal(RatMatrix a) {
    const std::size_t n = a.size();
    std::vector<BigRational> diag;
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i][i] == 0) {
            std::size_t j = i + 1;
            while (j < n && a[j][j] == 0) ++j;
            if (j < n) {
                std::swap(a[i], a[j]);
                for (auto& row : a) std::swap(row[i], row[j]);
            } else {
                j = i + 1;
                while (j < n && a[i][j] == 0) ++j;
                if (j == n) {
                    diag.push_back(0);
                    continue;
                }
                // e_i <- e_i + e_j makes the pivot 2 a_ij.
                for (std::size_t k = 0; k < n; ++k) a[i][k] += a[j][k];
                for (std::size_t k = 0; k < n; ++k) a[k][i] += a[k][j];
            }
        }
        const BigRational piv = a[i][i];
        for (std::size_t r = i + 1; r < n; ++r) {
            if (a[r][i] == 0) continue;
            BigRational f = a[r][i] / piv;
            for (std::size_t k = 0; k < n; ++k) a[r][k] -= f * a[i][k];
            for (std::size_t k = 0; k < n; ++k) a[k][r] -= f * a[k][i];
        }
        diag.push_back(piv);
    }
    return diag;
}

bool unimodular_minor(const std::vector<IntVector>& kernel, const std::vector<std::size_t>& coords) {
    RatMatrix m(kernel.size());
    for (std::size_t r = 0; r < kernel.size(); ++r)
        for (auto c : coords) m[r].emplace_back(kernel[r][c]);
    BigRational d = determinant(m);
    return d == 1 || d == -1;
}

// Coordinates P with |det K[:,P]| = 1, so the remaining basis vectors map to
// a Z-basis of Z^n / ker.
std::optional<std::vector<std::size_t>> complement_pivots(const std::vector<IntVector>& kernel, std::size_t n) {
    const std::size_t k = kernel.size();
    if (k == 0) return std::vector<std::size_t>{};
    std::vector<std::size_t> pick(k);
    // Lexicographic search over k-subsets; the kernels met here are tiny.
    std::vector<bool> mask(n, false);
    std::fill(mask.begin(), mask.begin() + static_cast<long>(k), true);
    do {
        std::size_t t = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (mask[i]) pick[t++] = i;
        if (unimodular_minor(kernel, pick)) return pick;
    } while (std::prev_permutation(mask.begin(), mask.end()));
    return std::nullopt;
}

} // namespace

std::vector<IntVector> kernel_basis(const GramLattice& lat) {
    const std::size_t n = lat.dimension();
    IntMatrix a = lat.gram();
    // Unimodular column operations A -> A U; U starts as the identity and
    // its columns matching zero columns of the echelon form span the kernel.
    IntMatrix u(n, IntVector(n, 0));
    for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;
    auto col_axpy = [&](std::size_t dst, std::size_t src, const BigInt& q) {
        for (std::size_t r = 0; r < n; ++r) a[r][dst] -= q * a[r][src];
        for (std::size_t r = 0; r < n; ++r) u[r][dst] -= q * u[r][src];
    };
    auto col_swap = [&](std::size_t x, std::size_t y) {
        for (std::size_t r = 0; r < n; ++r) {
            std::swap(a[r][x], a[r][y]);
            std::swap(u[r][x], u[r][y]);
        }
    };
    std::size_t pivot = 0;
    for (std::size_t row = 0; row < n && pivot < n; ++row) {
        for (;;) {
            std::size_t best = n;
            for (std::size_t c = pivot; c < n; ++c)
                if (a[row][c] != 0 && (best == n || abs(a[row][c]) < abs(a[row][best]))) best = c;
            if (best == n) break;
            col_swap(pivot, best);
            bool done = true;
            for (std::size_t c = pivot + 1; c < n; ++c) {
                if (a[row][c] == 0) continue;
                BigInt q;
                mpz_fdiv_q(q.get_mpz_t(), a[row][c].get_mpz_t(), a[row][pivot].get_mpz_t());
                col_axpy(c, pivot, q);
                if (a[row][c] != 0) done = false;
            }
            if (done) {
                ++pivot;
                break;
            }
        }
    }
    std::vector<IntVector> basis;
    for (std::size_t c = pivot; c < n; ++c) {
        IntVector v(n);
        for (std::size_t r = 0; r < n; ++r) v[r] = u[r][c];
        BigInt g = 0;
        for (const auto& x : v) g = gcd(g, x);
        auto first = std::find_if(v.begin(), v.end(), [](const BigInt& x) { return x != 0; });
        if (first != v.end() && *first < 0) g = -g;
        if (g != 0 && g != 1)
            for (auto& x : v) x /= g;
        basis.push_back(std::move(v));
    }
    return basis;
}

LatticeInvariants lattice_invariants(const GramLattice& lat) {
    LatticeInvariants inv;
    const std::size_t n = lat.dimension();
    for (std::size_t i = 0; i < n; ++i)
        if (mpz_odd_p(lat.at(i, i).get_mpz_t())) inv.is_even = false;
    RatMatrix q = to_rational(lat.gram());
    inv.rank = matrix_rank(q);
    for (const auto& d : congruence_diagonal(q)) {
        if (d > 0) ++inv.positive;
        if (d < 0) ++inv.negative;
    }
    if (inv.rank == 0) {
        inv.determinant = n == 0 ? 1 : 0;
        inv.determinant_on_integral_basis = n == 0;
        return inv;
    }
    auto kernel = kernel_basis(lat);
    std::vector<std::size_t> keep;
    if (auto piv = complement_pivots(kernel, n)) {
        for (std::size_t i = 0; i < n; ++i)
            if (std::find(piv->begin(), piv->end(), i) == piv->end()) keep.push_back(i);
    } else {
        inv.determinant_on_integral_basis = false;
        // Greedy maximal independent set of coordinates.
        for (std::size_t i = 0; i < n && keep.size() < inv.rank; ++i) {
            std::vector<std::size_t> trial = keep;
            trial.push_back(i);
            RatMatrix sub(trial.size());
            for (std::size_t a = 0; a < trial.size(); ++a)
                for (auto b : trial) sub[a].push_back(q[trial[a]][b]);
            if (determinant(sub) != 0) keep = trial;
        }
    }
    RatMatrix sub(keep.size());
    for (std::size_t a = 0; a < keep.size(); ++a)
        for (auto b : keep) sub[a].push_back(q[keep[a]][b]);
    inv.determinant = determinant(sub).get_num();
    return inv;
}

RatMatrix induced_gram(const GramLattice& ambient, const std::vector<RatVector>& vectors) {
    for (const auto& v : vectors)
        if (v.size() != ambient.dimension()) throw std::invalid_argument("vector dimension does not match the ambient lattice");
    RatMatrix g(vectors.size(), RatVector(vectors.size()));
    for (std::size_t i = 0; i < vectors.size(); ++i)
        for (std::size_t j = i; j < vectors.size(); ++j) g[i][j] = g[j][i] = ambient.pair(vectors[i], vectors[j]);
    return g;
}

GramLattice induced_integral_gram(const GramLattice& ambient, const std::vector<RatVector>& vectors,
                                  std::vector<std::string> labels) {
    RatMatrix g = induced_gram(ambient, vectors);
    IntMatrix out(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        for (const auto& x : g[i]) {
            if (x.get_den() != 1) throw std::domain_error("induced pairing is not integral: " + x.get_str());
            out[i].push_back(x.get_num());
        }
    if (labels.empty()) labels = numbered("v", vectors.size());
    return GramLattice(std::move(labels), std::move(out));
}

bool is_e8_dynkin(const CurveGraph& g) {
    g.validate();
    if (g.nodes.size() != 8 || g.edges.size() != 7) return false;
    std::map<std::string, std::vector<std::string>> adj;
    for (const auto& n : g.nodes) adj[n];
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& [a, b] : g.edges) {
        if (!seen.insert(std::minmax(a, b)).second) return false; // multi-edge
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    // 7 edges on 8 nodes: a tree iff connected.
    std::set<std::string> reached{g.nodes[0]};
    std::vector<std::string> stack{g.nodes[0]};
    while (!stack.empty()) {
        auto cur = stack.back();
        stack.pop_back();
        for (const auto& nb : adj[cur])
            if (reached.insert(nb).second) stack.push_back(nb);
    }
    if (reached.size() != 8) return false;
    std::string center;
    for (const auto& [n, nbs] : adj) {
        if (nbs.size() > 3) return false;
        if (nbs.size() == 3) {
            if (!center.empty()) return false;
            center = n;
        }
    }
    if (center.empty()) return false;
    std::vector<std::size_t> arms;
    for (const auto& start : adj[center]) {
        std::size_t len = 1;
        std::string prev = center, cur = start;
        while (adj[cur].size() == 2) {
            const auto& next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
            prev = cur;
            cur = next;
            ++len;
        }
        arms.push_back(len);
    }
    std::sort(arms.begin(), arms.end());
    return arms == std::vector<std::size_t>{1, 2, 4};
}

} // namespace k3lab::lattice
