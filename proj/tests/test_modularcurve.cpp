#include "doctest.h"

#include <chrono>
#include <fstream>
#include <random>
#include <unistd.h>

#include "k3lab/errors.hpp"
#include "k3lab/modularcurve.hpp"
#include "k3lab/weierstrassfam.hpp"

using namespace k3lab::modular;
using k3lab::exact::BigRational;
using k3lab::exact::kDefaultPrecision;

namespace {

BigComplex c(const char* text) { return BigComplex::parse(text); }
BigComplex c(long v) { return BigComplex(BigRational(v), kDefaultPrecision); }

double dist(const BigComplex& x, const BigComplex& y) { return abs(x - y).to_double(); }
double rel(const BigComplex& x, const BigComplex& y) { return (abs(x - y) / abs(y)).to_double(); }

BigComplex random_tau(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> re(-0.5, 0.5), im(0.9, 1.6);
    return BigComplex(BigFloat(re(rng), kDefaultPrecision), BigFloat(im(rng), kDefaultPrecision));
}

std::filesystem::path scratch_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("k3lab_test_" + name + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(dir);
    return dir;
}

const ModularPolynomial& phi(int n) {
    static std::map<int, ModularPolynomial> built;
    auto it = built.find(n);
    if (it == built.end()) it = built.emplace(n, build_modular_polynomial(n, cache_dir_from_env())).first;
    return it->second;
}

} // namespace

TEST_CASE("q-series") {
    auto e4 = QSeries::eisenstein_e4(20);
    CHECK(e4.coefficients()[0] == 1);
    CHECK(e4.coefficients()[1] == 240);
    CHECK(e4.coefficients()[2] == 2160);
    auto eta = QSeries::eta_product(20);
    // Ramanujan tau: q prod (1-q^n)^24 = q - 24 q^2 + 252 q^3 - 1472 q^4 + 4830 q^5
    CHECK(eta.coefficients()[0] == 1);
    CHECK(eta.coefficients()[1] == -24);
    CHECK(eta.coefficients()[2] == 252);
    CHECK(eta.coefficients()[3] == -1472);
    CHECK(eta.coefficients()[4] == 4830);
    CHECK(eta.coefficients()[10] == 534612);
    CHECK(eta.coefficients()[11] == -370944);
    CHECK_THROWS_AS(QSeries({1}, 8), std::invalid_argument);
}

TEST_CASE("j at classical points") {
    CHECK(dist(j_numeric(c("i")), c(1728)) < 1e-20);
    auto rho = BigComplex(BigFloat("0.5", kDefaultPrecision), sqrt(BigFloat(3L, kDefaultPrecision)) / BigFloat(2L, kDefaultPrecision));
    CHECK(abs(j_numeric(rho)).to_double() < 1e-20);
    CHECK(dist(j_numeric(c("2i")), c(287496)) < 1e-15);
    // j(sqrt(2) i) = 8000
    auto r2 = BigComplex(BigFloat(0L, kDefaultPrecision), sqrt(BigFloat(2L, kDefaultPrecision)));
    CHECK(dist(j_numeric(r2), c(8000)) < 1e-15);
    CHECK_THROWS_AS(j_numeric(c("1-i")), k3lab::DomainError);
    CHECK_THROWS_AS(j_numeric(c("3")), k3lab::DomainError);
}

TEST_CASE("modularity") {
    std::mt19937_64 rng(3);
    for (int k = 0; k < 10; ++k) {
        auto tau = random_tau(rng);
        auto j = j_numeric(tau);
        CHECK(rel(j_numeric(tau + c(1)), j) < 1e-40);
        CHECK(rel(j_numeric(-(c(1) / tau)), j) < 1e-40);
        auto red = reduce_to_fundamental_domain(tau * c(5) + c("0.3i"));
        CHECK(abs(red.real()).to_double() <= 0.5 + 1e-30);
        CHECK(abs(red).to_double() >= 1 - 1e-30);
    }
}

TEST_CASE("fricke pairs") {
    auto [a, b] = fricke_pair(c("i"), 1);
    CHECK(dist(a, c(1728)) < 1e-20);
    CHECK(dist(b, c(1728)) < 1e-20);
    auto [x, y] = fricke_pair(c("i"), 2);
    CHECK(dist(x, c(1728)) < 1e-20);
    CHECK(dist(y, c(287496)) < 1e-15);
    auto fixed = BigComplex(BigFloat(0L, kDefaultPrecision), BigFloat(1L, kDefaultPrecision) / sqrt(BigFloat(2L, kDefaultPrecision)));
    auto [f1, f2] = fricke_pair(fixed, 2);
    CHECK(rel(f1, f2) < 1e-40);
    CHECK_THROWS_AS(fricke_pair(c("i"), 0), std::invalid_argument);

    std::mt19937_64 rng(9);
    for (int k = 0; k < 10; ++k) {
        auto tau = random_tau(rng);
        for (long n : {2L, 3L}) {
            auto [p, q] = fricke_pair(tau, n);
            auto [r, s] = fricke_pair(-(c(1) / (c(n) * tau)), n);
            CHECK(rel(r, q) < 1e-40);
            CHECK(rel(s, p) < 1e-40);
        }
    }
}

TEST_CASE("modular polynomials") {
    auto start = std::chrono::steady_clock::now();
    const auto& p1 = phi(1);
    CHECK(p1.coefficients.size() == 2);
    CHECK(p1.coefficient(1, 0) == 1);
    CHECK(p1.coefficient(0, 1) == -1);
    CHECK(abs(eval_modpoly(p1, c(777), c(777))).is_zero());

    ReconstructionAudit audit;
    auto p2 = reconstruct_modular_polynomial(2, &audit);
    CHECK(audit.max_rounding_residue < 1e-6);
    CHECK(audit.max_sample_residue < 1e-20);
    CHECK(p2.is_symmetric());
    CHECK(p2.degree_x() == 3);
    CHECK(p2.degree_y() == 3);
    CHECK(p2.coefficient(2, 2) == -1);
    // the classical coefficients
    CHECK(p2.coefficient(3, 0) == 1);
    CHECK(p2.coefficient(2, 1) == 1488);
    CHECK(p2.coefficient(2, 0) == -162000);
    CHECK(p2.coefficient(1, 1) == 40773375);
    CHECK(p2.coefficient(1, 0) == BigInt("8748000000"));
    CHECK(p2.coefficient(0, 0) == BigInt("-157464000000000"));
    CHECK(p2.coefficients.size() == 11);

    auto p3 = reconstruct_modular_polynomial(3, &audit);
    CHECK(audit.max_rounding_residue < 1e-6);
    CHECK(p3.is_symmetric());
    CHECK(p3.degree_x() == 4);
    CHECK(p3.degree_y() == 4);
    CHECK(p3.coefficient(3, 3) == -1);
    CHECK(p3.coefficient(3, 2) == 2232);
    CHECK(p3.coefficient(2, 2) == BigInt("2587918086"));
    CHECK(p3.coefficient(1, 1) == BigInt("-770845966336000000"));
    CHECK(p3.coefficient(0, 0) == 0);
    CHECK(p3.coefficient(1, 0) == BigInt("1855425871872000000000"));
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    CHECK(secs < 120);

    CHECK_THROWS_AS(reconstruct_modular_polynomial(4), std::invalid_argument);
    CHECK_THROWS_AS(build_modular_polynomial(0), std::invalid_argument);
}

TEST_CASE("vanishing on Fricke pairs") {
    const auto& p2 = phi(2);
    auto [x, y] = fricke_pair(c("i"), 2);
    CHECK((abs(eval_modpoly(p2, x, y)) / modpoly_scale(p2, x, y)).to_double() < 1e-4);
    CHECK((abs(eval_modpoly(p2, c(1728), c(1729))) / modpoly_scale(p2, c(1728), c(1729))).to_double() > 1e-4);

    std::mt19937_64 rng(12);
    for (int k = 0; k < 10; ++k) {
        auto tau = random_tau(rng);
        for (int n : {2, 3}) {
            auto [a, b] = fricke_pair(tau, n);
            const auto& p = phi(n);
            CHECK((abs(eval_modpoly(p, a, b)) / modpoly_scale(p, a, b)).to_double() < 1e-4);
        }
    }
}

TEST_CASE("cache file") {
    auto dir = scratch_dir("cache");
    BuildInfo info;
    auto cold = build_modular_polynomial(2, dir, &info);
    CHECK_FALSE(info.from_cache);
    REQUIRE(std::filesystem::exists(cache_file(dir, 2)));
    std::ifstream in(cache_file(dir, 2));
    std::string first;
    std::getline(in, first);
    CHECK(first == "n=2");
    std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(body.rfind("0 0 -157464000000000\n", 0) == 0);
    CHECK(body.back() == '\n');

    auto start = std::chrono::steady_clock::now();
    auto warm = build_modular_polynomial(2, dir, &info);
    CHECK(info.from_cache);
    CHECK(warm == cold);
    CHECK(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() < 5);

    CHECK(parse_modular_polynomial(serialize(cold)) == cold);
    CHECK_THROWS_AS(parse_modular_polynomial("n=2\n0 0 5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_modular_polynomial("n=2\n1 0 5\n0 0 5\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_modular_polynomial("m=2\n"), std::invalid_argument);

    // a corrupt cache is rebuilt
    std::ofstream(cache_file(dir, 2)) << "garbage";
    build_modular_polynomial(2, dir, &info);
    CHECK_FALSE(info.from_cache);
    CHECK(read_cache(dir, 2) == cold);
    std::filesystem::remove_all(dir);
}

TEST_CASE("family coefficients") {
    auto [a, b] = family_coefficients(c("i"), 1);
    CHECK(dist(a, c(-3)) < 1e-20);
    CHECK(abs(b).to_double() < 1e-10);

    auto [a2, b2] = family_coefficients(c("i"), 2);
    BigComplex a_cubed = a2 * a2 * a2;
    CHECK(rel(a_cubed, BigComplex(BigRational(-35937, 8), kDefaultPrecision)) < 1e-15);

    auto tau = BigComplex::parse("0.1+1.3i");
    auto [ga, gb] = family_coefficients(tau, 2);
    CHECK_FALSE(k3lab::weierstrass::is_degenerate(ga, gb));
    auto [da, db] = family_coefficients(c("i"), 1);
    CHECK(k3lab::weierstrass::is_degenerate(da, db, 1e-15));
}
