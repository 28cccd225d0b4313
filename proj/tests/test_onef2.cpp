#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "hlp/error.hpp"
#include "hlp/onef2.hpp"
#include "hlp/special.hpp"
#include "oracles.hpp"

using hlp::cplx;
using hlp::kPi;
using hlp::LpVerdict;
using hlp::OneF2Params;

namespace {

LpVerdict verdict(double a, double b, double c) { return hlp::lp_from_mask(hlp::region_mask({a, b, c})); }

bool has(const hlp::RegionVerdict& v, const std::string& name) {
    return std::find(v.memberships.begin(), v.memberships.end(), name) != v.memberships.end();
}

// Random triples a ∈ (0, 5), b, c ∈ (0, 10) with the requested verdict.
std::vector<OneF2Params> sample_with(LpVerdict want, int count, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ua(0.0, 5.0), ubc(0.0, 10.0);
    std::vector<OneF2Params> out;
    while (static_cast<int>(out.size()) < count) {
        OneF2Params p{ua(rng), ubc(rng), ubc(rng)};
        if (verdict(p.a, p.b, p.c) == want) out.push_back(p);
    }
    return out;
}

}  // namespace

TEST_CASE("phi evaluation: closed forms and the Boost oracle") {
    CHECK(hlp::phi_eval({1.3, 0.4, 2.2}, 0.0) == 1.0);
    // (a, a + 1/2, 2a) with a = 1: J̄_{1/2}(z/2)² = (sin(z/2)/(z/2))².
    for (double z : {0.3, 2.0, 7.5, 19.0}) {
        double s = std::sin(z / 2) / (z / 2);
        CHECK(std::fabs(hlp::phi_eval({1.0, 1.5, 2.0}, z) - s * s) <= 1e-14);
    }
    // ₁F₂(1/2; 1−ν, 1+ν; −z²) = J̄_{−ν}(z) J̄_ν(z): Φ at argument 2z.
    double nu = 0.3, z = 1.7;
    CHECK(hlp::phi_eval({0.5, 1.0 - nu, 1.0 + nu}, 2.0 * z) ==
          doctest::Approx(oracle::jbar(-nu, z) * oracle::jbar(nu, z)).epsilon(1e-13));
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ua(-2.0, 5.0), ubc(0.2, 6.0), ux(0.0, 12.0);
    for (int i = 0; i < 40; ++i) {
        double a = ua(rng), b = ubc(rng), c = ubc(rng), x = ux(rng);
        double ref = oracle::onef2(a, b, c, -x * x / 4.0);
        INFO(a << "," << b << "," << c << " x=" << x);
        CHECK(std::fabs(hlp::phi_eval({a, b, c}, x) - ref) <= 1e-11 * std::max(1.0, std::fabs(ref)));
    }
    // Evenness, real coefficients, refusal far out.
    cplx w(3.1, -1.4);
    OneF2Params p{0.8, 1.9, 2.6};
    CHECK(std::abs(hlp::phi_eval(p, w) - hlp::phi_eval(p, -w)) <= 1e-15);
    CHECK(std::abs(hlp::phi_eval(p, std::conj(w)) - std::conj(hlp::phi_eval(p, w))) <= 1e-15);
    CHECK_THROWS_AS(hlp::phi_eval(p, 250.0), hlp::ConvergenceError);
    CHECK_THROWS_AS(hlp::phi_eval(p, cplx(30.0, 0.0), 5), hlp::ConvergenceError);
    CHECK_THROWS_AS(hlp::validate({1.0, -2.0, 1.0}), hlp::DomainError);
}

TEST_CASE("phi derivative matches central differences") {
    OneF2Params p{1.2, 2.5, 0.7};
    for (double x : {0.5, 3.0, 11.0}) {
        double h = 1e-5;
        double fd = x * (hlp::phi_eval(p, x + h) - hlp::phi_eval(p, x - h)) / (2 * h);
        CHECK(hlp::phi_zderiv_estimate(p, cplx(x, 0.0)).value.real() == doctest::Approx(fd).epsilon(1e-7));
    }
}

TEST_CASE("classifier examples") {
    auto s1 = hlp::classify_region({0.5, 1.0, 1.0});
    CHECK(has(s1, "S_a"));
    CHECK(s1.lp == LpVerdict::LP);
    auto s2 = hlp::classify_region({3.5, 4.0, 7.0});
    CHECK(has(s2, "S_a"));
    CHECK(s2.lp == LpVerdict::LP);
    CHECK_FALSE(s2.near_S);
    auto x = hlp::classify_region({3.5, 4.5, 3.75});
    CHECK(has(x, "X_a"));
    CHECK(x.lp == LpVerdict::LP);
    auto n = hlp::classify_region({0.5, 2.0, 2.0});
    CHECK(has(n, "P_a"));
    CHECK_FALSE(has(n, "S_a"));
    CHECK(n.lp == LpVerdict::NotLP);
    CHECK_FALSE(n.certificate.empty());
    // a = 7/2: (2b−7)(2c−7) ≥ 7, b + c ≥ 11, b > 7/2 lies in P_a∖S_a.
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(3.5, 12.0);
    int tested = 0;
    while (tested < 200) {
        double b = u(rng), c = u(rng);
        if (b <= 3.5 || (2 * b - 7) * (2 * c - 7) < 7 || b + c < 11) continue;
        ++tested;
        INFO("b=" << b << " c=" << c);
        CHECK(verdict(3.5, b, c) == LpVerdict::NotLP);
    }
    // Just off S_a: flagged, not a member.
    auto near = hlp::classify_region({3.5, 4.0 + 1e-11, 7.0});
    CHECK(near.near_S);
    CHECK_FALSE(has(near, "S_a"));
    CHECK(verdict(0.5, 0.3, 0.5) != LpVerdict::NotLP);  // N_a: b ≤ a
}

TEST_CASE("Type 2 lattice points for a = 7/2") {
    int count = 0;
    for (int b = 1; b <= 12; ++b)
        for (int c = 1; c <= 12; ++c)
            if (hlp::region_mask({3.5, double(b), double(c)}) & hlp::kType2) {
                ++count;
                CHECK(verdict(3.5, b, c) == LpVerdict::LP);
                CHECK(((b <= 4 && c <= 7) || (b <= 7 && c <= 4)));
            }
    CHECK(count == 40);
}

TEST_CASE("property: classifier consistency on 1e5 random triples") {
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> ua(0.0, 5.0), ubc(0.0, 10.0);
    int lp = 0, notlp = 0, und = 0;
    for (int i = 0; i < 100000; ++i) {
        OneF2Params p{ua(rng), ubc(rng), ubc(rng)};
        unsigned m = hlp::region_mask(p);
        bool cert = (m & hlp::kLpSufficient) != 0, excl = (m & hlp::kP) && !(m & hlp::kS);
        CHECK_FALSE((cert && excl));
        LpVerdict v = hlp::lp_from_mask(m);
        (v == LpVerdict::LP ? lp : v == LpVerdict::NotLP ? notlp : und)++;
    }
    CHECK(lp > 0);
    CHECK(notlp > 0);
    CHECK(und > 0);
}

TEST_CASE("property: verdicts are symmetric in b and c") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> ua(0.0, 5.0), ubc(0.0, 10.0);
    auto swap_bits = [](unsigned m) {
        unsigned out = m & ~(hlp::kZ | hlp::kZstar | hlp::kX | hlp::kXstar);
        if (m & hlp::kZ) out |= hlp::kZstar;
        if (m & hlp::kZstar) out |= hlp::kZ;
        if (m & hlp::kX) out |= hlp::kXstar;
        if (m & hlp::kXstar) out |= hlp::kX;
        return out;
    };
    for (int i = 0; i < 20000; ++i) {
        double a = ua(rng), b = ubc(rng), c = ubc(rng);
        CHECK(hlp::region_mask({a, c, b}) == swap_bits(hlp::region_mask({a, b, c})));
    }
}

TEST_CASE("property: imaginary-axis positivity") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> ua(0.01, 5.0), ubc(0.01, 10.0);
    for (int i = 0; i < 30; ++i) {
        OneF2Params p{ua(rng), ubc(rng), ubc(rng)};
        for (double y = 0.0; y <= 30.0; y += 0.75) {
            cplx v = hlp::phi_eval(p, cplx(0.0, y));
            CHECK(v.real() > 0.0);
            CHECK(std::fabs(v.imag()) <= 1e-14 * v.real());
        }
    }
}

TEST_CASE("complex zero count examples") {
    CHECK(hlp::complex_zero_count({1.0, 1.5, 2.0}, {0.5, 20.0, 0.5, 10.0}) == 0);
    CHECK(hlp::complex_zero_count({0.5, 2.0, 2.0}, {0.1, 40.0, 0.1, 20.0}) >= 1);
    CHECK(hlp::four_quadrant_count({0.5, 2.0, 2.0}, {0.1, 40.0, 0.1, 20.0}) >= 4);
    CHECK(hlp::complex_zero_count({1.3, 0.4, 2.2}, {0.005, 0.015, 0.005, 0.015}) == 0);
    // Rectangles straddling the real axis also count real zeros: sin²(z/2)/(z/2)² has a
    // double zero at 2π.
    CHECK(hlp::complex_zero_count({1.0, 1.5, 2.0}, {5.5, 7.0, -0.5, 0.5}) == 2);
}

TEST_CASE("property: verdicts agree with argument-principle counts") {
    for (const auto& p : sample_with(LpVerdict::LP, 50, 101)) {
        INFO(p.a << "," << p.b << "," << p.c);
        CHECK(hlp::complex_zero_count(p, {0.0, 40.0, 0.05, 40.0}) == 0);
    }
    for (const auto& p : sample_with(LpVerdict::NotLP, 50, 202)) {
        INFO(p.a << "," << p.b << "," << p.c);
        int total = hlp::four_quadrant_count(p, {0.0, 40.0, 0.05, 40.0});
        CHECK(total >= 4);
        CHECK(total % 2 == 0);
    }
}

TEST_CASE("zeros in Z_a are real, simple and interlaced") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> ua(0.6, 4.0), ubc(0.0, 6.0);
    int tested = 0;
    while (tested < 6) {
        OneF2Params p{ua(rng), ubc(rng), ubc(rng)};
        unsigned m = hlp::region_mask(p);
        if (!(m & hlp::kZ) || (m & hlp::kS)) continue;
        ++tested;
        auto s = hlp::onef2_transform(p);
        INFO(p.a << "," << p.b << "," << p.c << " nu=" << s.nu);
        auto z = hlp::locate_zeros(s, 29);
        auto j = hlp::zero_table(s.nu, 30);
        for (int k = 1; k <= 29; ++k) {
            CHECK(j(k) < z.zeta[k - 1]);
            CHECK(z.zeta[k - 1] < j(k + 1));
            // Series residual within its own bound; the transform (quadrature at large ζ) vanishes.
            auto e = hlp::phi_eval_estimate(p, cplx(z.zeta[k - 1], 0.0));
            CHECK(std::abs(e.value) <= e.error + 1e-9);
            CHECK(std::fabs(hlp::ht_eval(s, z.zeta[k - 1]).value) <= 1e-12);
            if (k > 1) CHECK(z.derivative[k - 1] * z.derivative[k - 2] < 0.0);
        }
    }
}

TEST_CASE("transfer search examples") {
    auto t3 = hlp::transfer_search({1.5, 1.0 / 3.0, 2.0 / 3.0}, 8);
    REQUIRE(t3.has_value());
    CHECK(t3->seed_family == "Type3");
    auto cc = hlp::transfer_search({0.5, 1.0 / 3.0, 2.0 / 3.0}, 8);
    REQUIRE(cc.has_value());
    CHECK(cc->m == 0);
    CHECK(cc->seed_family == "Type3");
    OneF2Params t1{2.7, 1.7, 3.0};
    auto p1 = hlp::transfer_search(t1, 8);
    REQUIRE(p1.has_value());
    CHECK(p1->seed_family == "Type1");
    // The (m, n) = (2, 1) path from the seed (0.7, 0.7, 3) on the Bessel line is valid too.
    hlp::TransferPath alt{{0.7, 0.7, 3.0}, "Type1", 2, 1, 0};
    CHECK(hlp::transfer_replay(alt, t1));
    hlp::TransferPath bad{{0.7, 0.7, 3.0}, "Type1", 2, 3, 0};  // n > m
    CHECK_FALSE(hlp::transfer_replay(bad, {2.7, 3.7, 3.0}));
    CHECK_FALSE(hlp::transfer_search({1.0, -0.5, 2.0}, 8).has_value());
    CHECK_THROWS_AS(hlp::transfer_search({1.0, 2.0, 3.0}, 65), hlp::DomainError);
    for (int b = 1; b <= 4; ++b)
        for (int c = 1; c <= 7; ++c) CHECK(hlp::transfer_search({3.5, double(b), double(c)}, 8).has_value());
}

TEST_CASE("property: every transfer path replays onto an LP seed") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> ua(0.0, 6.0), ubc(0.05, 8.0);
    int found = 0;
    for (int i = 0; i < 300; ++i) {
        OneF2Params p{ua(rng), ubc(rng), ubc(rng)};
        auto path = hlp::transfer_search(p, 6);
        if (!path) continue;
        ++found;
        CHECK(hlp::transfer_replay(*path, p));
        CHECK(verdict(path->seed.a, path->seed.b, path->seed.c) == LpVerdict::LP);
        CHECK(path->seed.a + path->m == doctest::Approx(p.a));
        CHECK(path->seed.b + path->n == doctest::Approx(p.b));
        CHECK(path->seed.c + path->l == doctest::Approx(p.c));
    }
    CHECK(found > 0);
}

TEST_CASE("operator identities") {
    CHECK(hlp::operator_identity_check({1.0, 2.0, 3.0}, 1, 2.0) <= 1e-10);
    CHECK_THROWS_AS(hlp::operator_identity_check({1.0, 1.0, 3.0}, 2, 2.0), hlp::DomainError);
    CHECK_THROWS_AS(hlp::operator_identity_check({1.0, 2.0, 1.0}, 3, 2.0), hlp::DomainError);
    CHECK_THROWS_AS(hlp::operator_identity_check({0.0, 2.0, 3.0}, 1, 2.0), hlp::DomainError);
    CHECK(hlp::operator_identity_check({1.0, 2.0, 3.0}, 1, 0.0) == 0.0);
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> ua(-3.0, 5.0), ubc(0.1, 6.0), uz(-7.0, 7.0);
    for (int i = 0; i < 60; ++i) {
        OneF2Params p{ua(rng), ubc(rng), ubc(rng)};
        cplx z(uz(rng), uz(rng));
        for (int which : {1, 2, 3}) CHECK(hlp::operator_identity_check(p, which, z) <= 1e-9);
    }
}

TEST_CASE("zeta sums") {
    // (1, 2, 3/2): a/(4bc) = 1/12, but Φ = 2(1 − cos z)/z² has double zeros, so localization refuses.
    CHECK_THROWS_AS(hlp::zeta_sum_check({1.0, 2.0, 1.5}, 200), hlp::SignPatternError);
    auto z = hlp::zeta_sum_check({1.0, 1.75, 1.5}, 200);
    CHECK(z.rhs == doctest::Approx(1.0 / 10.5).epsilon(1e-15));
    CHECK(z.gap <= 1e-6);
    // a = b: Bessel zeros j_{c−1,m}, sum 1/(4c).
    auto bz = hlp::zeta_sum_check({2.0, 2.0, 3.0}, 200);
    CHECK(bz.rhs == doctest::Approx(1.0 / 12.0).epsilon(1e-15));
    CHECK(bz.gap <= 1e-9);
    CHECK(bz.zeros.zeta[0] == doctest::Approx(oracle::bessel_zero(2.0, 1)).epsilon(1e-13));
    CHECK(hlp::zeta_sum_check({2.0, 3.0, 1.0}, 200).gap <= 1e-6);
}

TEST_CASE("region grid: symmetry and serial/parallel agreement") {
    for (double a : {0.5, 1.0, 3.5}) {
        auto g = hlp::region_grid(a, {0.0, 9.0}, {0.0, 9.0}, 90);
        auto h = hlp::region_grid_serial(a, {0.0, 9.0}, {0.0, 9.0}, 90);
        CHECK(g.mask == h.mask);
        for (int i = 0; i < g.nb; ++i)
            for (int j = 0; j < g.nc; ++j) CHECK(hlp::lp_from_mask(g.at(i, j)) == hlp::lp_from_mask(g.at(j, i)));
    }
    CHECK_THROWS_AS(hlp::region_grid(1.0, {0.0, 3.0}, {0.0, 3.0}, 2001), hlp::DomainError);
    auto csv = hlp::region_grid_csv(hlp::region_grid(1.0, {0.0, 3.0}, {0.0, 3.0}, 4));
    CHECK(csv.rfind("b,c,verdict,memberships\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 17);
}

TEST_CASE("region SVG overlays the measure-zero sets") {
    auto count = [](const std::string& s, const std::string& needle) {
        int n = 0;
        for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
        return n;
    };
    auto half = hlp::region_grid_svg(hlp::region_grid(0.5, {0.0, 3.0}, {0.0, 3.0}, 60));
    CHECK(half.find("<!-- hankel-lp ") != std::string::npos);
    CHECK(count(half, "class=\"type3-segment\"") == 2);  // b + c = 1, 2
    CHECK(count(half, "class=\"type1-ray\"") == 2);      // b = 1/2 and c = 1/2
    CHECK(count(half, "class=\"S_a-point\"") == 1);      // (1, 1)
    CHECK(count(half, "stroke-width=\"1.5\"") == 1);
    auto big = hlp::region_grid_svg(hlp::region_grid(3.5, {0.0, 12.0}, {0.0, 12.0}, 60));
    CHECK(count(big, "class=\"X_a\"") == 1);
    CHECK(count(big, "class=\"X_a-star\"") == 1);
    CHECK(count(big, "class=\"Z_a\"") == 1);
    CHECK(count(big, "class=\"S_a-point\"") == 2);
    CHECK(count(big, "class=\"type2-point\"") >= 40);
    CHECK(count(big, "class=\"type3-segment\"") == 8);
}

TEST_CASE("verdict JSON") {
    auto j = hlp::verdict_to_json(hlp::classify_region({3.5, 4.0, 7.0}));
    for (const char* key : {"\"a\"", "\"b\"", "\"c\"", "\"memberships\"", "\"lp\":\"LP\"", "\"certificate\"", "\"near_S_a\""})
        CHECK(j.find(key) != std::string::npos);
}
