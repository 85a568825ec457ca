#pragma once

// Exact arithmetic foundation: big rationals, sparse multivariate polynomials,
// gcd-free rational functions, univariate polynomials over Q and
// arbitrary-precision real/complex numbers.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>
#include <mpfr.h>

namespace k3lab::exact {

using BigInt = mpz_class;
using BigRational = mpq_class;

// Accepts "7", "-3", "p/q" and plain decimals such as "0.25" or "-1.5".
BigRational parse_rational(std::string_view text);
std::string to_string(const BigRational& q);

// Packed exponent vector. Up to eight variables, each exponent < 256; the
// first variable sits in the most significant byte so integer order is the
// lexicographic monomial order.
class Monomial {
public:
    static constexpr std::size_t kMaxVariables = 8;
    static constexpr unsigned kMaxExponent = 255;

    Monomial() = default;
    static Monomial from_exponents(std::span<const unsigned> exps);

    unsigned exponent(std::size_t var) const {
        return static_cast<unsigned>((key_ >> (8 * (kMaxVariables - 1 - var))) & 0xffu);
    }
    unsigned total_degree() const;
    std::uint64_t key() const { return key_; }

    // Throws std::overflow_error when an exponent would exceed kMaxExponent.
    Monomial operator*(Monomial other) const;

    auto operator<=>(const Monomial&) const = default;

private:
    explicit Monomial(std::uint64_t key) : key_(key) {}
    std::uint64_t key_ = 0;
};

using Assignment = std::map<std::string, BigRational, std::less<>>;

// Sparse multivariate polynomial over Q. Terms are kept canonical: sorted by
// monomial, no zero coefficients. Two polynomials compare equal iff they
// share the variable list and the term maps agree.
class MultiPolynomial {
public:
    using TermMap = std::map<Monomial, BigRational>;

    MultiPolynomial() = default;
    explicit MultiPolynomial(std::vector<std::string> variables);

    static MultiPolynomial constant(std::vector<std::string> variables, const BigRational& c);
    static MultiPolynomial variable(std::vector<std::string> variables, std::string_view name);
    static MultiPolynomial term(std::vector<std::string> variables, std::span<const unsigned> exps,
                                const BigRational& c);

    const std::vector<std::string>& variables() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    BigRational constant_term() const;
    std::optional<std::size_t> index_of(std::string_view var) const;

    int total_degree() const; // -1 for the zero polynomial
    int degree_in(std::string_view var) const;
    // Degree in the given group of variables if every term has the same
    // degree there; nullopt otherwise (and for the zero polynomial).
    std::optional<unsigned> homogeneous_degree(std::span<const std::string> group) const;
    bool divisible_by_variable(std::string_view var) const;
    // Leading (largest-monomial) coefficient; zero polynomial has none.
    const BigRational& leading_coefficient() const;

    BigRational evaluate(const Assignment& point) const;
    // Replace `var` by `value` (which must live on the same variable list).
    MultiPolynomial substitute(std::string_view var, const MultiPolynomial& value) const;
    // Re-express over a superset of the current variables.
    MultiPolynomial embed(const std::vector<std::string>& variables) const;

    MultiPolynomial pow(unsigned e) const;
    MultiPolynomial operator-() const;
    MultiPolynomial& operator+=(const MultiPolynomial& rhs);
    MultiPolynomial& operator-=(const MultiPolynomial& rhs);
    MultiPolynomial& operator*=(const MultiPolynomial& rhs);
    MultiPolynomial& operator*=(const BigRational& c);

    friend MultiPolynomial operator+(MultiPolynomial a, const MultiPolynomial& b) { return a += b; }
    friend MultiPolynomial operator-(MultiPolynomial a, const MultiPolynomial& b) { return a -= b; }
    friend MultiPolynomial operator*(const MultiPolynomial& a, const MultiPolynomial& b);
    friend MultiPolynomial operator*(MultiPolynomial a, const BigRational& c) { return a *= c; }
    friend MultiPolynomial operator*(const BigRational& c, MultiPolynomial a) { return a *= c; }
    friend bool operator==(const MultiPolynomial& a, const MultiPolynomial& b);

    std::string to_string() const;

private:
    void require_same_ring(const MultiPolynomial& other) const;
    void add_term(Monomial m, const BigRational& c);

    std::vector<std::string> vars_;
    TermMap terms_;
};

bool poly_is_zero(const MultiPolynomial& p);
BigRational poly_evaluate(const MultiPolynomial& p, const Assignment& point);

// Parses sums/products/integer powers of the given variables and rational
// constants, e.g. "l1*(l1-1)*v1^2*v2^2 - 3/2*u1". Division is only allowed
// by constants.
MultiPolynomial parse_polynomial(std::string_view text, const std::vector<std::string>& variables);

// Quotient of polynomials. The denominator is stored as a list of normalized
// factors (leading coefficient 1) with multiplicities; factors are merged
// only when syntactically identical, never via gcd. Equality is decided by
// cross-multiplication.
class RationalFunction {
public:
    using Factor = std::pair<MultiPolynomial, unsigned>;

    RationalFunction() = default;
    RationalFunction(MultiPolynomial numerator); // NOLINT(google-explicit-constructor)
    RationalFunction(MultiPolynomial numerator, const MultiPolynomial& denominator);
    RationalFunction(MultiPolynomial numerator, std::vector<Factor> denominator_factors);

    const MultiPolynomial& numerator() const { return num_; }
    const std::vector<Factor>& denominator_factors() const { return factors_; }
    MultiPolynomial denominator() const;
    const std::vector<std::string>& variables() const { return num_.variables(); }

    // Throws k3lab::DomainError when the denominator vanishes at the point.
    BigRational evaluate(const Assignment& point) const;
    RationalFunction pow(unsigned e) const;

    RationalFunction operator-() const;
    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);

private:
    void absorb_factor(MultiPolynomial f, unsigned mult);

    MultiPolynomial num_;
    std::vector<Factor> factors_;
};

bool ratfunc_equal(const RationalFunction& f, const RationalFunction& g);

// Writes sum(terms) as N / D with D the least common multiple of the factored
// denominators; returns N. The sum vanishes identically iff N does.
MultiPolynomial clear_denominators(std::span<const RationalFunction> terms);

// -4p^3 - 27q^2, the discriminant of x^3 + p x + q.
BigRational cubic_discriminant(const BigRational& p, const BigRational& q);

// Dense univariate polynomial over Q, coefficients stored lowest degree first.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<BigRational> coeffs);
    static UniPoly monomial(unsigned degree, const BigRational& c = 1);
    // Throws std::invalid_argument if p involves more than the named variable.
    static UniPoly from_multi(const MultiPolynomial& p, std::string_view var);

    int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 for zero
    bool is_zero() const { return c_.empty(); }
    const std::vector<BigRational>& coeffs() const { return c_; }
    BigRational coeff(unsigned k) const { return k < c_.size() ? c_[k] : BigRational(0); }
    const BigRational& leading() const { return c_.back(); }
    // Multiplicity of t = 0 as a root; nullopt for the zero polynomial.
    std::optional<unsigned> valuation() const;

    BigRational evaluate(const BigRational& x) const;
    UniPoly derivative() const;
    UniPoly monic() const;
    UniPoly pow(unsigned e) const;
    // t^d p(1/t) with d = degree.
    UniPoly reversed(unsigned d) const;

    UniPoly operator-() const;
    friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator*(const BigRational& c, const UniPoly& a);
    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

    std::string to_string(std::string_view var = "t") const;

private:
    void trim();
    std::vector<BigRational> c_;
};

// Quotient and remainder; throws std::domain_error on division by zero.
std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);
UniPoly gcd(UniPoly a, UniPoly b); // monic, gcd(0,0) = 0

// Yun's algorithm: returns (f_k, k) with p = c * prod f_k^k, each f_k monic,
// squarefree and pairwise coprime. Constant factors are omitted.
std::vector<std::pair<UniPoly, unsigned>> squarefree_decomposition(const UniPoly& p);

// ---------------------------------------------------------------------------
// Arbitrary precision floats (MPFR) and complex numbers on top of them.

constexpr mpfr_prec_t kDefaultPrecision = 256;
constexpr mpfr_prec_t kMinPrecision = 64;

class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t prec = kDefaultPrecision);
    BigFloat(long v, mpfr_prec_t prec);
    BigFloat(double v, mpfr_prec_t prec);
    BigFloat(const BigRational& q, mpfr_prec_t prec);
    BigFloat(std::string_view decimal, mpfr_prec_t prec);
    BigFloat(const BigFloat& other);
    BigFloat(BigFloat&& other) noexcept;
    BigFloat& operator=(const BigFloat& other);
    BigFloat& operator=(BigFloat&& other) noexcept;
    ~BigFloat();

    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
    mpfr_srcptr get() const { return v_; }
    mpfr_ptr get() { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    BigInt round_to_integer() const;
    std::string to_string(int digits = 30) const;
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    static BigFloat pi(mpfr_prec_t prec);

    BigFloat operator-() const;
    friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b);
    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return b < a; }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return !(b < a); }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) { return !(a < b); }

private:
    mpfr_t v_;
};

BigFloat sqrt(const BigFloat& x);
BigFloat abs(const BigFloat& x);
BigFloat exp(const BigFloat& x);
BigFloat log(const BigFloat& x);
BigFloat sin(const BigFloat& x);
BigFloat cos(const BigFloat& x);
BigFloat atan2(const BigFloat& y, const BigFloat& x);
BigFloat round(const BigFloat& x);

class BigComplex {
public:
    explicit BigComplex(mpfr_prec_t prec = kDefaultPrecision);
    BigComplex(BigFloat re, BigFloat im);
    BigComplex(const BigRational& re, mpfr_prec_t prec);
    BigComplex(const BigRational& re, const BigRational& im, mpfr_prec_t prec);

    // "3", "-1.5+2i", "0.5-0.25i", "2i", "i", "-i".
    static BigComplex parse(std::string_view text, mpfr_prec_t prec = kDefaultPrecision);
    static BigComplex i(mpfr_prec_t prec = kDefaultPrecision);

    const BigFloat& real() const { return re_; }
    const BigFloat& imag() const { return im_; }
    mpfr_prec_t precision() const;

    BigComplex conj() const;
    BigFloat abs() const;
    BigFloat arg() const;
    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
    std::string to_string(int digits = 30) const;

    BigComplex operator-() const;
    friend BigComplex operator+(const BigComplex& a, const BigComplex& b);
    friend BigComplex operator-(const BigComplex& a, const BigComplex& b);
    friend BigComplex operator*(const BigComplex& a, const BigComplex& b);
    friend BigComplex operator/(const BigComplex& a, const BigComplex& b);

private:
    BigFloat re_;
    BigFloat im_;
};

BigComplex exp(const BigComplex& z);
BigComplex log(const BigComplex& z);  // principal branch
BigComplex sqrt(const BigComplex& z); // principal branch
BigComplex cbrt(const BigComplex& z); // principal branch, exp(log(z)/3)
BigFloat abs(const BigComplex& z);

} // namespace k3lab::exact
