#pragma once

// Numeric j-function, Fricke pairs, the classical modular polynomials for
// n <= 3 (rebuilt from q-expansions and cached on disk) and the coefficients
// of the one-parameter family at (j(tau), j(-1/(n tau))).

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "k3lab/exactcore.hpp"
#include "k3lab/transcription.hpp"

namespace k3lab::modular {

using exact::BigComplex;
using exact::BigFloat;
using exact::BigInt;

// Truncated power series in q with integer coefficients q^0 .. q^N.
class QSeries {
public:
    static constexpr unsigned kMinOrder = 16;

    // Throws std::invalid_argument when N < kMinOrder.
    QSeries(std::vector<BigInt> coefficients, unsigned order);

    static QSeries eisenstein_e4(unsigned order);
    // prod_{k>=1} (1 - q^k)^24, so that Delta = q * eta_product.
    static QSeries eta_product(unsigned order);

    unsigned order() const { return order_; }
    const std::vector<BigInt>& coefficients() const { return c_; }
    BigComplex evaluate(const BigComplex& q) const;

    friend QSeries operator*(const QSeries& a, const QSeries& b);

private:
    std::vector<BigInt> c_;
    unsigned order_;
};

inline constexpr unsigned kSeriesOrder = 64;

// Reduces tau into the standard fundamental domain. Throws
// k3lab::DomainError unless Im tau > 0.
BigComplex reduce_to_fundamental_domain(const BigComplex& tau);

// j(tau) = E4^3 / Delta at the reduced point, computed at tau's precision.
BigComplex j_numeric(const BigComplex& tau);

// (j(tau), j(-1/(n tau))). Throws std::invalid_argument for n < 1.
std::pair<BigComplex, BigComplex> fricke_pair(const BigComplex& tau, long n);

struct ModularPolynomial {
    int n = 0;
    // (i, j) -> coefficient of X^i Y^j
    std::map<std::pair<unsigned, unsigned>, BigInt> coefficients;

    unsigned degree_x() const;
    unsigned degree_y() const;
    bool is_symmetric() const;
    BigInt coefficient(unsigned i, unsigned j) const;
    friend bool operator==(const ModularPolynomial&, const ModularPolynomial&) = default;
};

struct ReconstructionAudit {
    std::size_t samples = 0;
    double max_rounding_residue = 0; // |c - round(c)| / max(1, |round(c)|)
    double max_sample_residue = 0;   // |Phi(x_k, y_k)| / scale on the samples
};

// Fits Phi_n(X, j(tau)) = prod (X - j(gamma tau)) over the cosets as a
// polynomial in j(tau) by least squares, and rounds to integers. Throws
// std::invalid_argument unless 1 <= n <= 3, k3lab::PrecisionError when a
// rounding residue exceeds 1e-6.
ModularPolynomial reconstruct_modular_polynomial(int n, ReconstructionAudit* audit = nullptr);

// Cache text: "n=<n>", then "i j coeff" lines in lexicographic (i, j) order,
// trailing newline.
std::string serialize(const ModularPolynomial& phi);
// Throws std::invalid_argument on malformed text.
ModularPolynomial parse_modular_polynomial(const std::string& text);

std::filesystem::path cache_file(const std::filesystem::path& dir, int n);
// Written to a temporary file first and renamed into place.
void write_cache(const std::filesystem::path& dir, const ModularPolynomial& phi);
// nullopt when absent or unreadable.
std::optional<ModularPolynomial> read_cache(const std::filesystem::path& dir, int n);
// K3LAB_CACHE_DIR if set.
std::optional<std::filesystem::path> cache_dir_from_env();

struct BuildInfo {
    bool from_cache = false;
    std::optional<ReconstructionAudit> audit;
};

// Reads the cache in cache_dir when present and valid, otherwise
// reconstructs and (with a cache_dir) writes it.
ModularPolynomial build_modular_polynomial(int n, const std::optional<std::filesystem::path>& cache_dir = std::nullopt,
                                           BuildInfo* info = nullptr);

BigComplex eval_modpoly(const ModularPolynomial& phi, const BigComplex& x, const BigComplex& y);
// Largest |c X^i Y^j| over the monomials, the scale for vanishing tests.
BigFloat modpoly_scale(const ModularPolynomial& phi, const BigComplex& x, const BigComplex& y);

// a = -(j1 j2)^(1/3) / 48, b = -((j1-1728)(j2-1728))^(1/2) / 864 at the
// Fricke pair, principal branches.
std::pair<BigComplex, BigComplex> family_coefficients(const BigComplex& tau, long n,
                                                      const constants::Transcription& t = constants::transcribed());

} // namespace k3lab::modular
