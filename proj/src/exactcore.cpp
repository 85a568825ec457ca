#include "k3lab/exactcore.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "k3lab/errors.hpp"

namespace k3lab::exact {

// ---------------------------------------------------------------------------
// Rationals

BigRational parse_rational(std::string_view text) {
    std::string s;
    for (char ch : text) {
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    }
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    auto bad = [&] { return std::invalid_argument("malformed rational literal '" + std::string(text) + "'"); };
    auto is_int = [](std::string_view t) {
        if (!t.empty() && (t[0] == '-' || t[0] == '+')) t.remove_prefix(1);
        return !t.empty() && std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    };
    auto to_int = [](std::string t) {
        if (!t.empty() && t[0] == '+') t.erase(0, 1);
        return BigInt(t);
    };
    if (auto slash = s.find('/'); slash != std::string::npos) {
        std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (!is_int(num) || !is_int(den)) throw bad();
        BigInt d = to_int(den);
        if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
        BigRational q(to_int(num), d);
        q.canonicalize();
        return q;
    }
    if (auto dot = s.find('.'); dot != std::string::npos) {
        std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
        bool neg = !whole.empty() && whole[0] == '-';
        if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) whole.erase(0, 1);
        if (whole.empty()) whole = "0";
        if (!is_int(whole) || (!frac.empty() && !is_int(frac)) || (!frac.empty() && (frac[0] == '-' || frac[0] == '+')))
            throw bad();
        BigInt scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
        BigRational q(BigInt(whole) * scale + (frac.empty() ? BigInt(0) : BigInt(frac)), scale);
        q.canonicalize();
        return neg ? BigRational(-q) : q;
    }
    if (!is_int(s)) throw bad();
    return BigRational(to_int(s));
}

std::string to_string(const BigRational& q) { return q.get_str(); }

// ---------------------------------------------------------------------------
// Monomial

Monomial Monomial::from_exponents(std::span<const unsigned> exps) {
    if (exps.size() > kMaxVariables) throw std::invalid_argument("too many variables for a packed monomial");
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < exps.size(); ++i) {
        if (exps[i] > kMaxExponent) throw std::overflow_error("exponent exceeds packed monomial range");
        key |= static_cast<std::uint64_t>(exps[i]) << (8 * (kMaxVariables - 1 - i));
    }
    return Monomial(key);
}

unsigned Monomial::total_degree() const {
    unsigned d = 0;
    for (std::size_t i = 0; i < kMaxVariables; ++i) d += exponent(i);
    return d;
}

Monomial Monomial::operator*(Monomial other) const {
    // Byte-wise add; bit 7 of partial is the carry into each top bit.
    constexpr std::uint64_t low7 = 0x7f7f7f7f7f7f7f7fULL;
    std::uint64_t a = key_, b = other.key_;
    std::uint64_t partial = (a & low7) + (b & low7);
    std::uint64_t carry = (a & b) | ((a | b) & partial);
    if (carry & ~low7) throw std::overflow_error("monomial exponent overflow");
    return Monomial(a + b);
}

// ---------------------------------------------------------------------------
// MultiPolynomial

MultiPolynomial::MultiPolynomial(std::vector<std::string> variables) : vars_(std::move(variables)) {
    if (vars_.size() > Monomial::kMaxVariables) throw std::invalid_argument("at most 8 variables supported");
}

MultiPolynomial MultiPolynomial::constant(std::vector<std::string> variables, const BigRational& c) {
    MultiPolynomial p(std::move(variables));
    p.add_term(Monomial{}, c);
    return p;
}

MultiPolynomial MultiPolynomial::variable(std::vector<std::string> variables, std::string_view name) {
    MultiPolynomial p(std::move(variables));
    auto idx = p.index_of(name);
    if (!idx) throw std::invalid_argument("unknown variable '" + std::string(name) + "'");
    std::vector<unsigned> e(p.vars_.size(), 0);
    e[*idx] = 1;
    p.add_term(Monomial::from_exponents(e), 1);
    return p;
}

MultiPolynomial MultiPolynomial::term(std::vector<std::string> variables, std::span<const unsigned> exps,
                                      const BigRational& c) {
    MultiPolynomial p(std::move(variables));
    if (exps.size() != p.vars_.size()) throw std::invalid_argument("exponent vector length mismatch");
    p.add_term(Monomial::from_exponents(exps), c);
    return p;
}

void MultiPolynomial::add_term(Monomial m, const BigRational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

bool MultiPolynomial::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Monomial{});
}

BigRational MultiPolynomial::constant_term() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? BigRational(0) : it->second;
}

std::optional<std::size_t> MultiPolynomial::index_of(std::string_view var) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == var) return i;
    return std::nullopt;
}

int MultiPolynomial::total_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.total_degree()));
    return d;
}

int MultiPolynomial::degree_in(std::string_view var) const {
    auto idx = index_of(var);
    if (!idx) return terms_.empty() ? -1 : 0;
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.exponent(*idx)));
    return d;
}

std::optional<unsigned> MultiPolynomial::homogeneous_degree(std::span<const std::string> group) const {
    if (terms_.empty()) return std::nullopt;
    std::vector<std::size_t> idx;
    for (const auto& g : group) {
        if (auto i = index_of(g)) idx.push_back(*i);
    }
    std::optional<unsigned> deg;
    for (const auto& [m, c] : terms_) {
        unsigned d = 0;
        for (auto i : idx) d += m.exponent(i);
        if (deg && *deg != d) return std::nullopt;
        deg = d;
    }
    return deg;
}

bool MultiPolynomial::divisible_by_variable(std::string_view var) const {
    auto idx = index_of(var);
    if (!idx) return terms_.empty();
    return std::all_of(terms_.begin(), terms_.end(), [&](const auto& t) { return t.first.exponent(*idx) > 0; });
}

const BigRational& MultiPolynomial::leading_coefficient() const {
    if (terms_.empty()) throw std::logic_error("zero polynomial has no leading coefficient");
    return terms_.rbegin()->second;
}

BigRational MultiPolynomial::evaluate(const Assignment& point) const {
    std::vector<BigRational> vals(vars_.size());
    std::vector<bool> used(vars_.size(), false);
    for (const auto& [m, c] : terms_)
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (m.exponent(i) > 0) used[i] = true;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (!used[i]) continue;
        auto it = point.find(vars_[i]);
        if (it == point.end()) throw MissingAssignment(vars_[i]);
        vals[i] = it->second;
    }
    // Cache powers per variable.
    std::vector<std::vector<BigRational>> powers(vars_.size());
    BigRational result = 0;
    for (const auto& [m, c] : terms_) {
        BigRational t = c;
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            unsigned e = m.exponent(i);
            if (e == 0) continue;
            auto& pw = powers[i];
            if (pw.empty()) pw.push_back(1);
            while (pw.size() <= e) pw.push_back(pw.back() * vals[i]);
            t *= pw[e];
        }
        result += t;
    }
    return result;
}

MultiPolynomial MultiPolynomial::substitute(std::string_view var, const MultiPolynomial& value) const {
    auto idx = index_of(var);
    if (!idx) return *this;
    require_same_ring(value);
    MultiPolynomial out(vars_);
    std::vector<MultiPolynomial> powers{MultiPolynomial::constant(vars_, 1)};
    for (const auto& [m, c] : terms_) {
        unsigned e = m.exponent(*idx);
        while (powers.size() <= e) powers.push_back(powers.back() * value);
        std::vector<unsigned> rest(vars_.size());
        for (std::size_t i = 0; i < vars_.size(); ++i) rest[i] = (i == *idx) ? 0 : m.exponent(i);
        out += MultiPolynomial::term(vars_, rest, c) * powers[e];
    }
    return out;
}

MultiPolynomial MultiPolynomial::embed(const std::vector<std::string>& variables) const {
    std::vector<std::size_t> map(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        auto it = std::find(variables.begin(), variables.end(), vars_[i]);
        if (it == variables.end()) throw std::invalid_argument("embed: variable '" + vars_[i] + "' missing from target");
        map[i] = static_cast<std::size_t>(it - variables.begin());
    }
    MultiPolynomial out(variables);
    for (const auto& [m, c] : terms_) {
        std::vector<unsigned> e(variables.size(), 0);
        for (std::size_t i = 0; i < vars_.size(); ++i) e[map[i]] = m.exponent(i);
        out.add_term(Monomial::from_exponents(e), c);
    }
    return out;
}

void MultiPolynomial::require_same_ring(const MultiPolynomial& other) const {
    if (vars_ != other.vars_)
        throw std::invalid_argument("polynomials live on different variable lists");
}

MultiPolynomial MultiPolynomial::pow(unsigned e) const {
    MultiPolynomial result = MultiPolynomial::constant(vars_, 1);
    MultiPolynomial base = *this;
    while (e > 0) {
        if (e & 1u) result *= base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return result;
}

MultiPolynomial MultiPolynomial::operator-() const {
    MultiPolynomial out = *this;
    for (auto& [m, c] : out.terms_) c = -c;
    return out;
}

namespace {
// A variable-free polynomial (a bare constant) adapts to the other operand.
void unify(MultiPolynomial& a, const MultiPolynomial& b) {
    if (a.variables() != b.variables() && a.variables().empty() && a.is_constant())
        a = MultiPolynomial::constant(b.variables(), a.constant_term());
}
} // namespace

MultiPolynomial& MultiPolynomial::operator+=(const MultiPolynomial& rhs) {
    unify(*this, rhs);
    if (rhs.vars_ != vars_ && rhs.vars_.empty()) {
        add_term(Monomial{}, rhs.constant_term());
        return *this;
    }
    require_same_ring(rhs);
    for (const auto& [m, c] : rhs.terms_) add_term(m, c);
    return *this;
}

MultiPolynomial& MultiPolynomial::operator-=(const MultiPolynomial& rhs) {
    unify(*this, rhs);
    if (rhs.vars_ != vars_ && rhs.vars_.empty()) {
        add_term(Monomial{}, -rhs.constant_term());
        return *this;
    }
    require_same_ring(rhs);
    for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
    return *this;
}

MultiPolynomial& MultiPolynomial::operator*=(const MultiPolynomial& rhs) {
    *this = *this * rhs;
    return *this;
}

MultiPolynomial& MultiPolynomial::operator*=(const BigRational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

MultiPolynomial operator*(const MultiPolynomial& a0, const MultiPolynomial& b0) {
    MultiPolynomial a = a0, b = b0;
    unify(a, b);
    unify(b, a);
    a.require_same_ring(b);
    std::unordered_map<std::uint64_t, BigRational> acc;
    acc.reserve(a.terms_.size() * b.terms_.size() / 2 + 1);
    BigRational prod;
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            mpq_mul(prod.get_mpq_t(), ca.get_mpq_t(), cb.get_mpq_t());
            auto [it, inserted] = acc.try_emplace((ma * mb).key(), prod);
            if (!inserted) it->second += prod;
        }
    }
    MultiPolynomial out(a.vars_);
    for (auto& [k, c] : acc) {
        if (c != 0) {
            std::vector<unsigned> exps(Monomial::kMaxVariables);
            for (std::size_t i = 0; i < Monomial::kMaxVariables; ++i)
                exps[i] = static_cast<unsigned>((k >> (8 * (Monomial::kMaxVariables - 1 - i))) & 0xffu);
            out.terms_.emplace(Monomial::from_exponents(exps), std::move(c));
        }
    }
    return out;
}

bool operator==(const MultiPolynomial& a, const MultiPolynomial& b) {
    if (a.vars_ == b.vars_) return a.terms_ == b.terms_;
    if (a.is_constant() && b.is_constant()) return a.constant_term() == b.constant_term();
    return false;
}

std::string MultiPolynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        BigRational mag = abs(c);
        bool neg = c < 0;
        if (first) {
            if (neg) os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        bool has_var = m.total_degree() > 0;
        bool wrote = false;
        if (!has_var || mag != 1) {
            os << mag.get_str();
            wrote = true;
        }
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            unsigned e = m.exponent(i);
            if (e == 0) continue;
            if (wrote) os << "*";
            os << vars_[i];
            if (e > 1) os << "^" << e;
            wrote = true;
        }
    }
    return os.str();
}

bool poly_is_zero(const MultiPolynomial& p) { return p.is_zero(); }

BigRational poly_evaluate(const MultiPolynomial& p, const Assignment& point) { return p.evaluate(point); }

// ---------------------------------------------------------------------------
// Polynomial parser

namespace {

class PolyParser {
public:
    PolyParser(std::string_view text, const std::vector<std::string>& vars) : s_(text), vars_(vars) {}

    MultiPolynomial parse() {
        MultiPolynomial p = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected character");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("polynomial parse error at offset " + std::to_string(pos_) + ": " + what +
                                    " in '" + std::string(s_) + "'");
    }
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    MultiPolynomial expr() {
        MultiPolynomial acc = term();
        for (;;) {
            if (accept('+'))
                acc += term();
            else if (accept('-'))
                acc -= term();
            else
                return acc;
        }
    }

    MultiPolynomial term() {
        MultiPolynomial acc = unary();
        for (;;) {
            if (accept('*')) {
                acc = acc * unary();
            } else if (accept('/')) {
                MultiPolynomial d = unary();
                if (!d.is_constant() || d.is_zero()) fail("division by a non-constant or zero");
                acc *= BigRational(1) / d.constant_term();
            } else {
                return acc;
            }
        }
    }

    MultiPolynomial unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    MultiPolynomial power() {
        MultiPolynomial base = primary();
        if (accept('^')) {
            skip_ws();
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) fail("expected exponent");
            return base.pow(static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start)))));
        }
        return base;
    }

    MultiPolynomial primary() {
        skip_ws();
        if (accept('(')) {
            MultiPolynomial p = expr();
            if (!accept(')')) fail("expected ')'");
            return p;
        }
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return MultiPolynomial::constant(vars_, BigRational(BigInt(std::string(s_.substr(start, pos_ - start)))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            std::string name(s_.substr(start, pos_ - start));
            if (std::find(vars_.begin(), vars_.end(), name) == vars_.end()) fail("unknown variable '" + name + "'");
            return MultiPolynomial::variable(vars_, name);
        }
        fail("unexpected character");
    }

    std::string_view s_;
    const std::vector<std::string>& vars_;
    std::size_t pos_ = 0;
};

} // namespace

MultiPolynomial parse_polynomial(std::string_view text, const std::vector<std::string>& variables) {
    return PolyParser(text, variables).parse();
}

// ---------------------------------------------------------------------------
// RationalFunction

RationalFunction::RationalFunction(MultiPolynomial numerator) : num_(std::move(numerator)) {}

RationalFunction::RationalFunction(MultiPolynomial numerator, const MultiPolynomial& denominator)
    : num_(std::move(numerator)) {
    absorb_factor(denominator, 1);
}

RationalFunction::RationalFunction(MultiPolynomial numerator, std::vector<Factor> denominator_factors)
    : num_(std::move(numerator)) {
    for (auto& [f, m] : denominator_factors) absorb_factor(std::move(f), m);
}

void RationalFunction::absorb_factor(MultiPolynomial f, unsigned mult) {
    if (mult == 0) return;
    if (f.is_zero()) throw DomainError("rational function with zero denominator");
    if (num_.variables().empty() && !f.variables().empty())
        num_ = MultiPolynomial::constant(f.variables(), num_.constant_term());
    BigRational lc = f.leading_coefficient();
    if (f.is_constant()) {
        BigRational inv = 1;
        for (unsigned k = 0; k < mult; ++k) inv /= lc;
        num_ *= inv;
        return;
    }
    if (lc != 1) {
        f *= BigRational(1) / lc;
        BigRational inv = 1;
        for (unsigned k = 0; k < mult; ++k) inv /= lc;
        num_ *= inv;
    }
    for (auto& [g, m] : factors_) {
        if (g == f) {
            m += mult;
            return;
        }
    }
    factors_.emplace_back(std::move(f), mult);
}

MultiPolynomial RationalFunction::denominator() const {
    MultiPolynomial d = MultiPolynomial::constant(num_.variables(), 1);
    for (const auto& [f, m] : factors_) d *= f.pow(m);
    return d;
}

BigRational RationalFunction::evaluate(const Assignment& point) const {
    BigRational den = 1;
    for (const auto& [f, m] : factors_) {
        BigRational v = f.evaluate(point);
        if (v == 0) throw DomainError("denominator vanishes at evaluation point");
        for (unsigned k = 0; k < m; ++k) den *= v;
    }
    return num_.evaluate(point) / den;
}

RationalFunction RationalFunction::pow(unsigned e) const {
    RationalFunction out(num_.pow(e));
    for (const auto& [f, m] : factors_) out.factors_.emplace_back(f, m * e);
    if (e == 0) out.factors_.clear();
    return out;
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction out = *this;
    out.num_ = -out.num_;
    return out;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    // LCM of factor lists: max multiplicity per syntactically equal factor.
    std::vector<RationalFunction::Factor> lcm = a.factors_;
    for (const auto& [g, m] : b.factors_) {
        auto it = std::find_if(lcm.begin(), lcm.end(), [&](const auto& f) { return f.first == g; });
        if (it == lcm.end())
            lcm.emplace_back(g, m);
        else
            it->second = std::max(it->second, m);
    }
    auto cofactor = [&](const RationalFunction& x) {
        MultiPolynomial c = MultiPolynomial::constant(x.num_.variables(), 1);
        for (const auto& [g, m] : lcm) {
            unsigned own = 0;
            for (const auto& [h, k] : x.factors_)
                if (h == g) own = k;
            if (m > own) c = c * g.pow(m - own);
        }
        return c;
    };
    RationalFunction out;
    MultiPolynomial na = a.num_, nb = b.num_;
    if (na.variables().empty() && !nb.variables().empty()) na = MultiPolynomial::constant(nb.variables(), na.constant_term());
    if (nb.variables().empty() && !na.variables().empty()) nb = MultiPolynomial::constant(na.variables(), nb.constant_term());
    RationalFunction ea = a, eb = b;
    ea.num_ = na;
    eb.num_ = nb;
    out.num_ = na * cofactor(ea) + nb * cofactor(eb);
    out.factors_ = std::move(lcm);
    return out;
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    RationalFunction out(a.num_ * b.num_);
    out.factors_ = a.factors_;
    for (const auto& [g, m] : b.factors_) out.absorb_factor(g, m);
    return out;
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.num_.is_zero()) throw DomainError("division by the zero rational function");
    RationalFunction out(a.num_ * b.denominator());
    out.factors_ = a.factors_;
    out.absorb_factor(b.num_, 1);
    return out;
}

bool ratfunc_equal(const RationalFunction& f, const RationalFunction& g) {
    return (f.numerator() * g.denominator() - g.numerator() * f.denominator()).is_zero();
}

MultiPolynomial clear_denominators(std::span<const RationalFunction> terms) {
    if (terms.empty()) return MultiPolynomial();
    RationalFunction sum = terms.front();
    for (std::size_t i = 1; i < terms.size(); ++i) sum = sum + terms[i];
    return sum.numerator();
}

BigRational cubic_discriminant(const BigRational& p, const BigRational& q) {
    return BigRational(-4) * p * p * p - BigRational(27) * q * q;
}

// ---------------------------------------------------------------------------
// UniPoly

UniPoly::UniPoly(std::vector<BigRational> coeffs) : c_(std::move(coeffs)) { trim(); }

void UniPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UniPoly UniPoly::monomial(unsigned degree, const BigRational& c) {
    std::vector<BigRational> v(degree + 1, BigRational(0));
    v[degree] = c;
    return UniPoly(std::move(v));
}

UniPoly UniPoly::from_multi(const MultiPolynomial& p, std::string_view var) {
    auto idx = p.index_of(var);
    std::vector<BigRational> v;
    for (const auto& [m, c] : p.terms()) {
        for (std::size_t i = 0; i < p.variables().size(); ++i)
            if ((!idx || i != *idx) && m.exponent(i) > 0)
                throw std::invalid_argument("polynomial is not univariate in '" + std::string(var) + "'");
        unsigned e = idx ? m.exponent(*idx) : 0;
        if (v.size() <= e) v.resize(e + 1, BigRational(0));
        v[e] += c;
    }
    return UniPoly(std::move(v));
}

std::optional<unsigned> UniPoly::valuation() const {
    for (std::size_t k = 0; k < c_.size(); ++k)
        if (c_[k] != 0) return static_cast<unsigned>(k);
    return std::nullopt;
}

BigRational UniPoly::evaluate(const BigRational& x) const {
    BigRational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

UniPoly UniPoly::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<BigRational> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<long>(k);
    return UniPoly(std::move(d));
}

UniPoly UniPoly::monic() const {
    if (is_zero()) return {};
    BigRational inv = BigRational(1) / c_.back();
    return inv * *this;
}

UniPoly UniPoly::pow(unsigned e) const {
    UniPoly r({BigRational(1)});
    for (unsigned k = 0; k < e; ++k) r = r * *this;
    return r;
}

UniPoly UniPoly::reversed(unsigned d) const {
    if (degree() > static_cast<int>(d)) throw std::invalid_argument("reversal degree below polynomial degree");
    std::vector<BigRational> v(d + 1, BigRational(0));
    for (std::size_t k = 0; k < c_.size(); ++k) v[d - k] = c_[k];
    return UniPoly(std::move(v));
}

UniPoly UniPoly::operator-() const {
    UniPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    std::vector<BigRational> v(std::max(a.c_.size(), b.c_.size()), BigRational(0));
    for (std::size_t k = 0; k < a.c_.size(); ++k) v[k] += a.c_[k];
    for (std::size_t k = 0; k < b.c_.size(); ++k) v[k] += b.c_[k];
    return UniPoly(std::move(v));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigRational> v(a.c_.size() + b.c_.size() - 1, BigRational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    return UniPoly(std::move(v));
}

UniPoly operator*(const BigRational& c, const UniPoly& a) {
    UniPoly r = a;
    for (auto& x : r.c_) x *= c;
    r.trim();
    return r;
}

std::string UniPoly::to_string(std::string_view var) const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        const auto& c = c_[static_cast<std::size_t>(k)];
        if (c == 0) continue;
        BigRational mag = abs(c);
        os << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
        first = false;
        if (k == 0 || mag != 1) os << mag.get_str() << (k > 0 ? "*" : "");
        if (k > 0) os << var;
        if (k > 1) os << "^" << k;
    }
    return os.str();
}

std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<BigRational> r = a.coeffs();
    int db = b.degree();
    if (a.degree() < db) return {UniPoly{}, a};
    std::vector<BigRational> q(static_cast<std::size_t>(a.degree() - db + 1), BigRational(0));
    for (int k = a.degree(); k >= db; --k) {
        BigRational coef = r[static_cast<std::size_t>(k)] / b.leading();
        q[static_cast<std::size_t>(k - db)] = coef;
        if (coef == 0) continue;
        for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(k - db + j)] -= coef * b.coeffs()[static_cast<std::size_t>(j)];
    }
    return {UniPoly(std::move(q)), UniPoly(std::move(r))};
}

UniPoly gcd(UniPoly a, UniPoly b) {
    while (!b.is_zero()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = r.monic();
    }
    return a.monic();
}

std::vector<std::pair<UniPoly, unsigned>> squarefree_decomposition(const UniPoly& p) {
    std::vector<std::pair<UniPoly, unsigned>> out;
    if (p.degree() <= 0) return out;
    UniPoly f = p.monic();
    UniPoly fp = f.derivative();
    UniPoly a = gcd(f, fp);
    UniPoly b = divmod(f, a).first;
    UniPoly c = divmod(fp, a).first;
    UniPoly d = c - b.derivative();
    unsigned k = 1;
    while (b.degree() > 0) {
        UniPoly g = gcd(b, d);
        if (g.degree() > 0) out.emplace_back(g, k);
        b = divmod(b, g).first;
        c = divmod(d, g).first;
        d = c - b.derivative();
        ++k;
    }
    return out;
}

// ---------------------------------------------------------------------------
// BigFloat

namespace {
mpfr_prec_t checked(mpfr_prec_t prec) {
    if (prec < kMinPrecision) throw std::invalid_argument("precision below 64 bits");
    return prec;
}
} // namespace

BigFloat::BigFloat(mpfr_prec_t prec) {
    mpfr_init2(v_, checked(prec));
    mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(long v, mpfr_prec_t prec) {
    mpfr_init2(v_, checked(prec));
    mpfr_set_si(v_, v, MPFR_RNDN);
}

BigFloat::BigFloat(double v, mpfr_prec_t prec) {
    mpfr_init2(v_, checked(prec));
    mpfr_set_d(v_, v, MPFR_RNDN);
}

BigFloat::BigFloat(const BigRational& q, mpfr_prec_t prec) {
    mpfr_init2(v_, checked(prec));
    mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(std::string_view decimal, mpfr_prec_t prec) {
    mpfr_init2(v_, checked(prec));
    std::string s(decimal);
    if (mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN) != 0) {
        mpfr_clear(v_);
        throw std::invalid_argument("malformed decimal '" + s + "'");
    }
}

BigFloat::BigFloat(const BigFloat& other) {
    mpfr_init2(v_, other.precision());
    mpfr_set(v_, other.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
    mpfr_init2(v_, other.precision());
    mpfr_swap(v_, other.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
    if (this != &other) {
        mpfr_set_prec(v_, other.precision());
        mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
    mpfr_swap(v_, other.v_);
    return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

BigInt BigFloat::round_to_integer() const {
    BigInt z;
    mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
    return z;
}

std::string BigFloat::to_string(int digits) const {
    if (mpfr_nan_p(v_)) return "nan";
    if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
    std::string fmt = "%." + std::to_string(digits) + "Rg";
    char* buf = nullptr;
    mpfr_asprintf(&buf, fmt.c_str(), v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

BigFloat BigFloat::pi(mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::operator-() const {
    BigFloat r(precision());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
}

#define K3LAB_BINARY_OP(op, fn)                                                  \
    BigFloat operator op(const BigFloat& a, const BigFloat& b) {                 \
        BigFloat r(std::max(a.precision(), b.precision()));                      \
        fn(r.get(), a.get(), b.get(), MPFR_RNDN);                                \
        return r;                                                                \
    }
K3LAB_BINARY_OP(+, mpfr_add)
K3LAB_BINARY_OP(-, mpfr_sub)
K3LAB_BINARY_OP(*, mpfr_mul)
K3LAB_BINARY_OP(/, mpfr_div)
#undef K3LAB_BINARY_OP

#define K3LAB_UNARY_FN(name, fn)                                                 \
    BigFloat name(const BigFloat& x) {                                           \
        BigFloat r(x.precision());                                               \
        fn(r.get(), x.get(), MPFR_RNDN);                                         \
        return r;                                                                \
    }
K3LAB_UNARY_FN(sqrt, mpfr_sqrt)
K3LAB_UNARY_FN(abs, mpfr_abs)
K3LAB_UNARY_FN(exp, mpfr_exp)
K3LAB_UNARY_FN(log, mpfr_log)
K3LAB_UNARY_FN(sin, mpfr_sin)
K3LAB_UNARY_FN(cos, mpfr_cos)
#undef K3LAB_UNARY_FN

BigFloat round(const BigFloat& x) {
    BigFloat r(x.precision());
    mpfr_round(r.get(), x.get());
    return r;
}

BigFloat atan2(const BigFloat& y, const BigFloat& x) {
    BigFloat r(std::max(y.precision(), x.precision()));
    mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
    return r;
}

// ---------------------------------------------------------------------------
// BigComplex

BigComplex::BigComplex(mpfr_prec_t prec) : re_(prec), im_(prec) {}

BigComplex::BigComplex(BigFloat re, BigFloat im) : re_(std::move(re)), im_(std::move(im)) {
    // Keep both parts at the common (higher) precision.
    mpfr_prec_t p = std::max(re_.precision(), im_.precision());
    if (re_.precision() != p) re_ = re_ + BigFloat(p);
    if (im_.precision() != p) im_ = im_ + BigFloat(p);
}

BigComplex::BigComplex(const BigRational& re, mpfr_prec_t prec) : re_(re, prec), im_(prec) {}

BigComplex::BigComplex(const BigRational& re, const BigRational& im, mpfr_prec_t prec) : re_(re, prec), im_(im, prec) {}

mpfr_prec_t BigComplex::precision() const { return std::max(re_.precision(), im_.precision()); }

BigComplex BigComplex::i(mpfr_prec_t prec) { return BigComplex(BigFloat(prec), BigFloat(1L, prec)); }

BigComplex BigComplex::parse(std::string_view text, mpfr_prec_t prec) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) throw std::invalid_argument("empty complex literal");
    auto real_part = [&](const std::string& t) {
        if (t.empty() || t == "+") return BigFloat(1L, prec);
        if (t == "-") return BigFloat(-1L, prec);
        std::string u = t;
        if (u[0] == '+') u.erase(0, 1);
        if (u.find('/') != std::string::npos) return BigFloat(parse_rational(u), prec);
        return BigFloat(u, prec);
    };
    if (s.back() != 'i') return BigComplex(real_part(s), BigFloat(prec));
    std::string body = s.substr(0, s.size() - 1);
    // Split at the last sign that is not an exponent sign and not leading.
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string::npos) return BigComplex(BigFloat(prec), real_part(body));
    return BigComplex(real_part(body.substr(0, split)), real_part(body.substr(split)));
}

BigComplex BigComplex::conj() const { return BigComplex(re_, -im_); }

BigFloat BigComplex::abs() const {
    BigFloat r(precision());
    mpfr_hypot(r.get(), re_.get(), im_.get(), MPFR_RNDN);
    return r;
}

BigFloat BigComplex::arg() const { return atan2(im_, re_); }

std::string BigComplex::to_string(int digits) const {
    std::string r = re_.to_string(digits);
    std::string i = im_.to_string(digits);
    if (i.empty() || i[0] != '-') i = "+" + i;
    return r + i + "i";
}

BigComplex BigComplex::operator-() const { return BigComplex(-re_, -im_); }

BigComplex operator+(const BigComplex& a, const BigComplex& b) { return BigComplex(a.re_ + b.re_, a.im_ + b.im_); }
BigComplex operator-(const BigComplex& a, const BigComplex& b) { return BigComplex(a.re_ - b.re_, a.im_ - b.im_); }
BigComplex operator*(const BigComplex& a, const BigComplex& b) {
    return BigComplex(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
}
BigComplex operator/(const BigComplex& a, const BigComplex& b) {
    if (b.is_zero()) throw std::domain_error("complex division by zero");
    BigFloat d = b.re_ * b.re_ + b.im_ * b.im_;
    return BigComplex((a.re_ * b.re_ + a.im_ * b.im_) / d, (a.im_ * b.re_ - a.re_ * b.im_) / d);
}

BigComplex exp(const BigComplex& z) {
    BigFloat m = exp(z.real());
    return BigComplex(m * cos(z.imag()), m * sin(z.imag()));
}

BigComplex log(const BigComplex& z) {
    if (z.is_zero()) throw std::domain_error("log of zero");
    return BigComplex(log(z.abs()), z.arg());
}

BigComplex sqrt(const BigComplex& z) {
    if (z.is_zero()) return BigComplex(z.precision());
    mpfr_prec_t p = z.precision();
    BigFloat r = z.abs();
    BigFloat two(2L, p);
    BigFloat re = sqrt((r + abs(z.real())) / two);
    BigFloat other = abs(z.imag()) / (two * re);
    if (z.real().sign() >= 0) return BigComplex(re, z.imag().sign() < 0 ? -other : other);
    return BigComplex(other, z.imag().sign() < 0 ? -re : re);
}

BigComplex cbrt(const BigComplex& z) {
    if (z.is_zero()) return BigComplex(z.precision());
    BigComplex l = log(z);
    BigFloat three(3L, z.precision());
    return exp(BigComplex(l.real() / three, l.imag() / three));
}

BigFloat abs(const BigComplex& z) { return z.abs(); }

} // namespace k3lab::exact
