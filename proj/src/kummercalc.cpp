#include "k3lab/kummercalc.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

#include "k3lab/toricmirror.hpp"

namespace k3lab::kummer {

KummerClass& KummerClass::operator+=(const KummerClass& o) {
    a += o.a;
    b += o.b;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) g[i][j] += o.g[i][j];
    return *this;
}

KummerClass& KummerClass::operator-=(const KummerClass& o) {
    a -= o.a;
    b -= o.b;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) g[i][j] -= o.g[i][j];
    return *this;
}

KummerClass operator*(const BigRational& c, KummerClass x) {
    x.a *= c;
    x.b *= c;
    for (auto& row : x.g)
        for (auto& v : row) v *= c;
    return x;
}

std::string KummerClass::to_string() const {
    std::ostringstream os;
    os << "(" << a.get_str() << "," << b.get_str() << ";[";
    for (int i = 0; i < 4; ++i) {
        os << (i ? ",[" : "[");
        for (int j = 0; j < 4; ++j) os << (j ? "," : "") << g[i][j].get_str();
        os << "]";
    }
    os << "])";
    return os.str();
}

BigRational pair(const KummerClass& x, const KummerClass& y) {
    BigRational s = 2 * (x.a * y.b + y.a * x.b);
    BigRational t = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) t += x.g[i][j] * y.g[i][j];
    return s - 2 * t;
}

namespace {

std::map<std::string, KummerClass> build_generators() {
    std::map<std::string, KummerClass> m;
    KummerClass f1, f2;
    f1.a = 1;
    f2.b = 1;
    m["F1"] = f1;
    m["F2"] = f2;
    const BigRational half(1, 2);
    for (int i = 0; i < 4; ++i) {
        KummerClass row, col;
        row.a = half;
        col.b = half;
        for (int k = 0; k < 4; ++k) {
            row.g[i][k] = -half;
            col.g[k][i] = -half;
        }
        m["F1" + std::to_string(i + 1)] = row;
        m["F2" + std::to_string(i + 1)] = col;
        for (int j = 0; j < 4; ++j) {
            KummerClass gij;
            gij.g[i][j] = 1;
            m["G" + std::to_string(i + 1) + std::to_string(j + 1)] = gij;
        }
    }
    return m;
}

} // namespace

const std::map<std::string, KummerClass>& standard_generators() {
    static const auto m = build_generators();
    return m;
}

std::vector<std::string> curve_generator_labels() {
    std::vector<std::string> v;
    for (int i = 1; i <= 4; ++i) v.push_back("F1" + std::to_string(i));
    for (int j = 1; j <= 4; ++j) v.push_back("F2" + std::to_string(j));
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j) v.push_back("G" + std::to_string(i) + std::to_string(j));
    return v;
}

KummerClass parse_class(std::string_view text, const std::map<std::string, KummerClass>& extra) {
    const auto& gens = standard_generators();
    KummerClass out;
    std::size_t pos = 0;
    auto fail = [&](const std::string& why) {
        throw std::invalid_argument("bad class expression '" + std::string(text) + "': " + why);
    };
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    skip();
    if (pos == text.size()) fail("empty");
    bool first = true;
    while (pos < text.size()) {
        BigRational sign = 1;
        if (text[pos] == '+' || text[pos] == '-') {
            if (text[pos] == '-') sign = -1;
            ++pos;
            skip();
        } else if (!first) {
            fail("expected '+' or '-'");
        }
        first = false;
        std::size_t start = pos;
        while (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/')) ++pos;
        BigRational coeff = 1;
        if (pos > start) coeff = exact::parse_rational(text.substr(start, pos - start));
        skip();
        if (pos < text.size() && text[pos] == '*') {
            ++pos;
            skip();
        }
        start = pos;
        while (pos < text.size() && std::isalnum(static_cast<unsigned char>(text[pos]))) ++pos;
        std::string label(text.substr(start, pos - start));
        if (label.empty()) fail("missing label");
        const KummerClass* cls = nullptr;
        if (auto it = gens.find(label); it != gens.end()) cls = &it->second;
        if (auto it = extra.find(label); it != extra.end()) cls = &it->second;
        if (!cls) fail("unknown label " + label);
        out += (sign * coeff) * *cls;
        skip();
    }
    return out;
}

KummerClass morecurves_class(const std::array<std::pair<int, int>, 3>& cells) {
    for (std::size_t p = 0; p < 3; ++p) {
        auto [i, j] = cells[p];
        if (i < 1 || i > 4 || j < 1 || j > 4) throw std::invalid_argument("cell index out of range 1..4");
        for (std::size_t q = 0; q < p; ++q)
            if (cells[q].first == i || cells[q].second == j)
                throw std::invalid_argument("row or column index repeated in morecurves class");
    }
    const auto& gens = standard_generators();
    KummerClass c = gens.at("F1") + gens.at("F2");
    for (auto [i, j] : cells) c -= gens.at("G" + std::to_string(i) + std::to_string(j));
    return c;
}

KummerClass big_d(const Transcription& t) { return parse_class(t.big_d); }

std::map<std::string, KummerClass> named_classes(const Transcription& t) {
    std::map<std::string, KummerClass> m = standard_generators();
    m["D"] = big_d(t);
    m["C1"] = morecurves_class(t.c1_cells);
    m["C3"] = morecurves_class(t.c3_cells);
    m["C4"] = parse_class(t.c4_class);
    // C2 is what fiber one needs beyond its other components.
    KummerClass rest;
    for (const auto& [label, mult] : t.i0star_one)
        if (label != "C2") rest += BigRational(mult) * m.at(label);
    m["C2"] = m["D"] - rest;
    return m;
}

E8FiberReport iistar_fiber_report(const Transcription& t) {
    E8FiberReport r;
    KummerClass d = big_d(t);
    KummerClass sum = parse_class(t.e8_fiber);
    r.sum_equals_d = sum == d;
    r.components_orthogonal = true;
    const auto& gens = standard_generators();
    // Component labels are read back from the expression.
    std::string_view s = t.e8_fiber;
    std::size_t pos = 0;
    while (pos < s.size()) {
        while (pos < s.size() && !std::isalpha(static_cast<unsigned char>(s[pos]))) ++pos;
        std::size_t start = pos;
        while (pos < s.size() && std::isalnum(static_cast<unsigned char>(s[pos]))) ++pos;
        if (start == pos) break;
        std::string label(s.substr(start, pos - start));
        BigRational p = pair(d, gens.at(label));
        r.component_pairings.emplace_back(label, p);
        if (p != 0) r.components_orthogonal = false;
    }
    return r;
}

bool iistar_fiber_check(const Transcription& t) { return iistar_fiber_report(t).ok(); }

std::pair<Fiber, Fiber> i0star_fibers(const Transcription& t) {
    auto m = named_classes(t);
    auto build = [&](const std::vector<std::pair<std::string, int>>& spec) {
        Fiber f;
        for (const auto& [label, mult] : spec) {
            auto it = m.find(label);
            if (it == m.end()) throw std::invalid_argument("unknown fiber component " + label);
            f.push_back({label, it->second, mult});
        }
        return f;
    };
    return {build(t.i0star_one), build(t.i0star_two)};
}

KummerClass fiber_sum(const Fiber& f) {
    KummerClass s;
    for (const auto& c : f) s += BigRational(c.multiplicity) * c.cls;
    return s;
}

BigRational LabeledGraphReport::adjacency(std::string_view x, std::string_view y) const {
    std::size_t i = labels.size(), j = labels.size();
    for (std::size_t k = 0; k < labels.size(); ++k) {
        if (labels[k] == x) i = k;
        if (labels[k] == y) j = k;
    }
    if (i == labels.size() || j == labels.size()) throw std::invalid_argument("label not in labeled graph");
    return pairing[i][j];
}

LabeledGraphReport labeled_graph_check(const Transcription& t) {
    auto m = named_classes(t);
    LabeledGraphReport r;
    r.labels = t.labeled_nodes;
    const std::size_t n = r.labels.size();
    std::vector<KummerClass> cls;
    for (const auto& l : r.labels) {
        auto it = m.find(l);
        if (it == m.end()) throw std::invalid_argument("unknown labeled node " + l);
        cls.push_back(it->second);
    }
    auto index = [&](const std::string& l) {
        for (std::size_t k = 0; k < n; ++k)
            if (r.labels[k] == l) return k;
        throw std::invalid_argument("edge endpoint not a labeled node: " + l);
    };
    std::vector<std::vector<int>> expected(n, std::vector<int>(n, 0));
    for (std::size_t k = 0; k < n; ++k) expected[k][k] = -2;
    for (const auto& [x, y] : t.labeled_edges) {
        auto i = index(x), j = index(y);
        expected[i][j] = expected[j][i] = 1;
    }
    r.pairing.assign(n, std::vector<BigRational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            r.pairing[i][j] = pair(cls[i], cls[j]);
            if (j >= i && r.pairing[i][j] != expected[i][j])
                r.mismatches.push_back(r.labels[i] + "-" + r.labels[j] + ": expected " + std::to_string(expected[i][j]) +
                                       ", got " + r.pairing[i][j].get_str());
        }
    r.rank = lattice::matrix_rank(r.pairing);
    return r;
}

std::vector<KummerClass> branch_octet(const Transcription& t) {
    auto m = named_classes(t);
    std::vector<KummerClass> v;
    for (const auto& l : t.branch_octet) {
        auto it = m.find(l);
        if (it == m.end()) throw std::invalid_argument("unknown octet member " + l);
        v.push_back(it->second);
    }
    return v;
}

FrickeNumbers fricke_numbers(long n, const Transcription& t) {
    if (n < 1) throw std::invalid_argument("fricke_numbers needs n >= 1");
    const auto& gens = standard_generators();
    // Basis F1, F2, R_Y; R_Y is a fiber class so R_Y^2 = 0.
    exact::BigInt f1f2 = pair(gens.at("F1"), gens.at("F2")).get_num();
    exact::BigInt ry1 = exact::BigInt(t.ry_f1) * n, ry2 = t.ry_f2;
    lattice::GramLattice lat({"F1", "F2", "R_Y"}, {{0, f1f2, ry1}, {f1f2, 0, ry2}, {ry1, ry2, 0}});
    lattice::RatVector proj{-1, -n, 1};
    FrickeNumbers out;
    out.ry_f1 = ry1;
    out.ry_f2 = ry2;
    out.proj_square = lattice::induced_gram(lat, {proj})[0][0];
    out.rx_square = BigRational(t.pullback_degree) * out.proj_square;
    // R_X is twice a primitive class.
    out.generator_square = out.rx_square / 4;
    return out;
}

std::pair<exact::BigInt, exact::BigInt> l3_l4_squares(const Transcription& t) {
    auto lat = lattice::graph_to_gram(toric::nineteen_curve_graph(t));
    lattice::IntVector w3(t.weight_l3.begin(), t.weight_l3.end());
    lattice::IntVector w4(t.weight_l4.begin(), t.weight_l4.end());
    for (auto& x : w4) x *= 2;
    return {lat.pair(w3, w3), lat.pair(w4, w4)};
}

std::vector<std::string> non_integral_classes(const Transcription& t) {
    auto m = named_classes(t);
    std::vector<std::string> bad;
    auto labels = curve_generator_labels();
    for (const auto& [name, cls] : m) {
        for (const auto& g : labels) {
            if (pair(cls, m.at(g)).get_den() != 1) {
                bad.push_back(name);
                break;
            }
        }
    }
    return bad;
}

} // namespace k3lab::kummer
