#include "k3lab/modularcurve.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unistd.h>

#include "k3lab/errors.hpp"

namespace k3lab::modular {

using exact::BigRational;

namespace {

BigComplex cnum(long v, mpfr_prec_t prec) { return BigComplex(BigRational(v), prec); }

BigComplex cnum(const BigInt& v, mpfr_prec_t prec) { return BigComplex(BigRational(v), prec); }

} // namespace

QSeries::QSeries(std::vector<BigInt> coefficients, unsigned order) : c_(std::move(coefficients)), order_(order) {
    if (order_ < kMinOrder) throw std::invalid_argument("q-series truncation order below 16");
    c_.resize(order_ + 1, BigInt(0));
}

QSeries QSeries::eisenstein_e4(unsigned order) {
    std::vector<BigInt> c(order + 1, BigInt(0));
    c[0] = 1;
    for (unsigned n = 1; n <= order; ++n) {
        BigInt sigma3 = 0;
        for (unsigned d = 1; d <= n; ++d)
            if (n % d == 0) sigma3 += BigInt(d) * d * d;
        c[n] = 240 * sigma3;
    }
    return QSeries(std::move(c), order);
}

QSeries QSeries::eta_product(unsigned order) {
    std::vector<BigInt> c(order + 1, BigInt(0));
    c[0] = 1;
    for (unsigned k = 1; k <= order; ++k)
        for (int rep = 0; rep < 24; ++rep)
            for (unsigned n = order; n >= k; --n) c[n] -= c[n - k];
    return QSeries(std::move(c), order);
}

QSeries operator*(const QSeries& a, const QSeries& b) {
    unsigned order = std::min(a.order_, b.order_);
    std::vector<BigInt> c(order + 1, BigInt(0));
    for (unsigned i = 0; i <= order; ++i)
        for (unsigned j = 0; i + j <= order; ++j) c[i + j] += a.c_[i] * b.c_[j];
    return QSeries(std::move(c), order);
}

BigComplex QSeries::evaluate(const BigComplex& q) const {
    auto prec = q.precision();
    BigComplex acc = cnum(c_.back(), prec);
    for (std::size_t k = c_.size() - 1; k-- > 0;) acc = acc * q + cnum(c_[k], prec);
    return acc;
}

BigComplex reduce_to_fundamental_domain(const BigComplex& tau) {
    if (tau.imag().sign() <= 0) throw DomainError("tau must lie in the upper half-plane");
    auto prec = tau.precision();
    BigComplex z = tau;
    BigFloat one(1L, prec);
    for (int iter = 0; iter < 1000; ++iter) {
        BigFloat shift = exact::round(z.real());
        if (!shift.is_zero()) z = BigComplex(z.real() - shift, z.imag());
        BigFloat norm = z.real() * z.real() + z.imag() * z.imag();
        if (!(norm < one)) break;
        z = -(cnum(1, prec) / z);
    }
    return z;
}

namespace {

struct Series {
    QSeries e4_cubed;
    QSeries eta;
};

const Series& series() {
    static const Series s = [] {
        auto e4 = QSeries::eisenstein_e4(kSeriesOrder);
        return Series{e4 * e4 * e4, QSeries::eta_product(kSeriesOrder)};
    }();
    return s;
}

} // namespace

BigComplex j_numeric(const BigComplex& tau) {
    BigComplex z = reduce_to_fundamental_domain(tau);
    auto prec = z.precision();
    BigFloat two_pi = BigFloat(2L, prec) * BigFloat::pi(prec);
    BigComplex q = exact::exp(BigComplex(BigFloat(0L, prec), two_pi) * z);
    const auto& s = series();
    return s.e4_cubed.evaluate(q) / (q * s.eta.evaluate(q));
}

std::pair<BigComplex, BigComplex> fricke_pair(const BigComplex& tau, long n) {
    if (n < 1) throw std::invalid_argument("level must be positive");
    auto prec = tau.precision();
    BigComplex partner = -(cnum(1, prec) / (cnum(n, prec) * tau));
    return {j_numeric(tau), j_numeric(partner)};
}

unsigned ModularPolynomial::degree_x() const {
    unsigned d = 0;
    for (const auto& [ij, c] : coefficients) d = std::max(d, ij.first);
    return d;
}

unsigned ModularPolynomial::degree_y() const {
    unsigned d = 0;
    for (const auto& [ij, c] : coefficients) d = std::max(d, ij.second);
    return d;
}

bool ModularPolynomial::is_symmetric() const {
    for (const auto& [ij, c] : coefficients)
        if (coefficient(ij.second, ij.first) != c) return false;
    return true;
}

BigInt ModularPolynomial::coefficient(unsigned i, unsigned j) const {
    auto it = coefficients.find({i, j});
    return it == coefficients.end() ? BigInt(0) : it->second;
}

namespace {

constexpr mpfr_prec_t kReconstructionPrecision = 512;

// Points gamma tau over the cosets of Gamma0(n), n = 1 or prime.
std::vector<BigComplex> coset_points(const BigComplex& tau, int n) {
    auto prec = tau.precision();
    if (n == 1) return {tau};
    std::vector<BigComplex> pts{cnum(n, prec) * tau};
    for (int m = 0; m < n; ++m) pts.push_back((tau + cnum(m, prec)) / cnum(n, prec));
    return pts;
}

// Solves the square system in place by Gaussian elimination with partial pivoting.
std::vector<BigFloat> solve(std::vector<std::vector<BigFloat>> a, std::vector<BigFloat> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (exact::abs(a[r][col]) > exact::abs(a[piv][col])) piv = r;
        if (a[piv][col].is_zero()) throw PrecisionError("singular normal equations");
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            BigFloat f = a[r][col] / a[col][col];
            for (std::size_t k = col; k < n; ++k) a[r][k] = a[r][k] - f * a[col][k];
            b[r] = b[r] - f * b[col];
        }
    }
    std::vector<BigFloat> x(n, BigFloat(a[0][0].precision()));
    for (std::size_t r = n; r-- > 0;) {
        BigFloat s = b[r];
        for (std::size_t k = r + 1; k < n; ++k) s = s - a[r][k] * x[k];
        x[r] = s / a[r][r];
    }
    return x;
}

double to_double_ratio(const BigFloat& num, const BigFloat& den) { return (num / den).to_double(); }

} // namespace

ModularPolynomial reconstruct_modular_polynomial(int n, ReconstructionAudit* audit) {
    if (n < 1 || n > 3) throw std::invalid_argument("modular polynomials are built for n = 1, 2, 3 only");
    const mpfr_prec_t prec = kReconstructionPrecision;
    const unsigned deg = n == 1 ? 1 : static_cast<unsigned>(n + 1);
    const std::size_t samples = 3 * (deg + 1) + 2;

    // sample tau = i y, y in [1.1, 2.5]
    std::vector<BigFloat> ys;
    std::vector<std::vector<BigFloat>> coeffs; // per sample: coefficients of prod (X - r), low to high
    std::vector<std::vector<BigComplex>> roots;
    for (std::size_t k = 0; k < samples; ++k) {
        BigRational step(14 * static_cast<long>(k), 10 * static_cast<long>(samples - 1));
        step.canonicalize();
        BigFloat im = BigFloat("1.1", prec) + BigFloat(step, prec);
        BigComplex tau(BigFloat(0L, prec), im);
        ys.push_back(j_numeric(tau).real());
        auto pts = coset_points(tau, n);
        std::vector<BigComplex> r;
        for (const auto& p : pts) r.push_back(j_numeric(p));
        std::vector<BigComplex> poly{cnum(1, prec)};
        for (const auto& root : r) {
            std::vector<BigComplex> next(poly.size() + 1, cnum(0, prec));
            for (std::size_t i = 0; i < poly.size(); ++i) {
                next[i + 1] = next[i + 1] + poly[i];
                next[i] = next[i] - root * poly[i];
            }
            poly = std::move(next);
        }
        std::vector<BigFloat> re;
        for (const auto& c : poly) re.push_back(c.real());
        coeffs.push_back(std::move(re));
        roots.push_back(std::move(r));
    }

    BigFloat scale = ys[0];
    for (const auto& y : ys)
        if (exact::abs(y) > scale) scale = exact::abs(y);

    ModularPolynomial phi;
    phi.n = n;
    phi.coefficients[{deg, 0}] = 1;
    double worst = 0;
    const std::size_t m = deg + 1; // unknowns per X-power
    for (unsigned xi = 0; xi < deg; ++xi) {
        // least squares in the scaled variable Y / scale
        std::vector<std::vector<BigFloat>> ata(m, std::vector<BigFloat>(m, BigFloat(0L, prec)));
        std::vector<BigFloat> atb(m, BigFloat(0L, prec));
        for (std::size_t k = 0; k < samples; ++k) {
            std::vector<BigFloat> row{BigFloat(1L, prec)};
            BigFloat y = ys[k] / scale;
            for (std::size_t e = 1; e < m; ++e) row.push_back(row.back() * y);
            for (std::size_t r = 0; r < m; ++r) {
                for (std::size_t c = 0; c < m; ++c) ata[r][c] = ata[r][c] + row[r] * row[c];
                atb[r] = atb[r] + row[r] * coeffs[k][xi];
            }
        }
        auto sol = solve(ata, atb);
        BigFloat power(1L, prec);
        for (std::size_t e = 0; e < m; ++e) {
            BigFloat value = sol[e] / power;
            power = power * scale;
            BigFloat rounded = exact::round(value);
            BigFloat denom = exact::abs(rounded);
            if (denom < BigFloat(1L, prec)) denom = BigFloat(1L, prec);
            double residue = to_double_ratio(exact::abs(value - rounded), denom);
            worst = std::max(worst, residue);
            if (residue > 1e-6)
                throw PrecisionError("rounding residue " + std::to_string(residue) + " for X^" + std::to_string(xi) +
                                     " Y^" + std::to_string(e));
            BigInt c = rounded.round_to_integer();
            if (c != 0) phi.coefficients[{xi, static_cast<unsigned>(e)}] = c;
        }
    }

    if (audit) {
        audit->samples = samples;
        audit->max_rounding_residue = worst;
        double sample_worst = 0;
        for (std::size_t k = 0; k < samples; ++k) {
            BigComplex y(ys[k], BigFloat(0L, prec));
            for (const auto& r : roots[k]) {
                double v = to_double_ratio(abs(eval_modpoly(phi, r, y)), modpoly_scale(phi, r, y));
                sample_worst = std::max(sample_worst, v);
            }
        }
        audit->max_sample_residue = sample_worst;
    }
    return phi;
}

std::string serialize(const ModularPolynomial& phi) {
    std::ostringstream out;
    out << "n=" << phi.n << "\n";
    for (const auto& [ij, c] : phi.coefficients) out << ij.first << " " << ij.second << " " << c.get_str() << "\n";
    return out.str();
}

ModularPolynomial parse_modular_polynomial(const std::string& text) {
    if (text.empty() || text.back() != '\n') throw std::invalid_argument("modpoly text must end with a newline");
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    if (line.rfind("n=", 0) != 0) throw std::invalid_argument("modpoly text must start with n=<n>");
    ModularPolynomial phi;
    try {
        std::size_t used = 0;
        phi.n = std::stoi(line.substr(2), &used);
        if (used != line.size() - 2) throw std::invalid_argument("bad level");
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed level line '" + line + "'");
    }
    std::optional<std::pair<unsigned, unsigned>> last;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        long i = -1, j = -1;
        std::string c, extra;
        if (!(ls >> i >> j >> c) || (ls >> extra) || i < 0 || j < 0)
            throw std::invalid_argument("malformed monomial line '" + line + "'");
        BigInt v;
        if (v.set_str(c, 10) != 0) throw std::invalid_argument("malformed coefficient '" + c + "'");
        std::pair<unsigned, unsigned> key{static_cast<unsigned>(i), static_cast<unsigned>(j)};
        if (last && !(*last < key)) throw std::invalid_argument("monomials out of lexicographic order");
        last = key;
        phi.coefficients[key] = v;
    }
    return phi;
}

std::filesystem::path cache_file(const std::filesystem::path& dir, int n) {
    return dir / ("modpoly_" + std::to_string(n) + ".txt");
}

void write_cache(const std::filesystem::path& dir, const ModularPolynomial& phi) {
    std::filesystem::create_directories(dir);
    auto target = cache_file(dir, phi.n);
    auto tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << serialize(phi);
        if (!out.flush()) throw std::runtime_error("cannot write " + tmp.string());
    }
    std::filesystem::rename(tmp, target);
}

std::optional<ModularPolynomial> read_cache(const std::filesystem::path& dir, int n) {
    std::ifstream in(cache_file(dir, n), std::ios::binary);
    if (!in) return std::nullopt;
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        auto phi = parse_modular_polynomial(buf.str());
        if (phi.n != n) return std::nullopt;
        return phi;
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
}

std::optional<std::filesystem::path> cache_dir_from_env() {
    const char* env = std::getenv("K3LAB_CACHE_DIR");
    if (!env || !*env) return std::nullopt;
    return std::filesystem::path(env);
}

ModularPolynomial build_modular_polynomial(int n, const std::optional<std::filesystem::path>& cache_dir, BuildInfo* info) {
    if (n < 1 || n > 3) throw std::invalid_argument("modular polynomials are built for n = 1, 2, 3 only");
    if (cache_dir) {
        if (auto cached = read_cache(*cache_dir, n)) {
            if (info) *info = {true, std::nullopt};
            return *cached;
        }
    }
    ReconstructionAudit audit;
    auto phi = reconstruct_modular_polynomial(n, &audit);
    if (cache_dir) write_cache(*cache_dir, phi);
    if (info) *info = {false, audit};
    return phi;
}

BigComplex eval_modpoly(const ModularPolynomial& phi, const BigComplex& x, const BigComplex& y) {
    auto prec = std::max(x.precision(), y.precision());
    std::vector<BigComplex> xp{cnum(1, prec)}, yp{cnum(1, prec)};
    for (unsigned k = 0; k < phi.degree_x(); ++k) xp.push_back(xp.back() * x);
    for (unsigned k = 0; k < phi.degree_y(); ++k) yp.push_back(yp.back() * y);
    BigComplex sum = cnum(0, prec);
    for (const auto& [ij, c] : phi.coefficients) sum = sum + cnum(c, prec) * xp[ij.first] * yp[ij.second];
    return sum;
}

BigFloat modpoly_scale(const ModularPolynomial& phi, const BigComplex& x, const BigComplex& y) {
    auto prec = std::max(x.precision(), y.precision());
    BigFloat ax = abs(x), ay = abs(y);
    BigFloat best(0L, prec);
    for (const auto& [ij, c] : phi.coefficients) {
        BigFloat term = exact::abs(BigFloat(BigRational(c), prec));
        for (unsigned k = 0; k < ij.first; ++k) term = term * ax;
        for (unsigned k = 0; k < ij.second; ++k) term = term * ay;
        if (term > best) best = term;
    }
    return best;
}

std::pair<BigComplex, BigComplex> family_coefficients(const BigComplex& tau, long n, const constants::Transcription& t) {
    auto [j1, j2] = fricke_pair(tau, n);
    auto prec = tau.precision();
    BigComplex shift(t.j_1728, prec);
    BigComplex a = -(exact::cbrt(j1 * j2) / BigComplex(BigRational(t.a_divisor), prec));
    BigComplex b = -(exact::sqrt((j1 - shift) * (j2 - shift)) / BigComplex(BigRational(t.b_divisor), prec));
    return {a, b};
}

} // namespace k3lab::modular
