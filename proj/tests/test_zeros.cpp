#include <cmath>
#include <sstream>

#include "doctest.h"
#include "hlp/error.hpp"
#include "hlp/io.hpp"
#include "hlp/special.hpp"
#include "hlp/zeros.hpp"
#include "oracles.hpp"

using hlp::kPi;
using hlp::SignVerdict;
using hlp::TransformSpec;
using hlp::WeightFunction;

namespace {

// f = 2(ν+1) t^{ν+1/2}: H̄_ν(f) = J̄_{ν+1}.
TransformSpec besselish(double nu) { return hlp::bessel_lambda_spec(nu, nu + 1.0); }

}  // namespace

TEST_CASE("sturm sufficiency examples") {
    CHECK(hlp::sturm_sufficiency(TransformSpec(0.0, WeightFunction::beta_power(1.0, 0.0, 1.0))).guaranteed);
    auto ex = hlp::sturm_sufficiency(TransformSpec(0.5, hlp::parse_weight("step:0,1;1/3,2")));
    CHECK_FALSE(ex.guaranteed);
    CHECK(ex.reason.find("exceptional") != std::string::npos);
    auto neg = hlp::sturm_sufficiency(besselish(2.0));
    CHECK_FALSE(neg.guaranteed);
    CHECK_FALSE(neg.reason.empty());
    // |ν| > 1/2 with t^{3/2−3|ν|} f increasing: ν = 0.75, f = t^{1}.
    CHECK(hlp::sturm_sufficiency(TransformSpec(0.75, WeightFunction::beta_power(1.0, 0.0, 1.0))).guaranteed);
    // Decreasing weights are never covered.
    CHECK_FALSE(hlp::sturm_sufficiency(TransformSpec(0.0, hlp::parse_weight("step:0,2;1/2,1"))).guaranteed);
    // Irrational step at |ν| = 1/2 is not exceptional.
    auto irr = TransformSpec(0.5, WeightFunction::step({{1.0 / std::sqrt(2.0), {}}}, {1.0, 2.0}));
    CHECK(hlp::sturm_sufficiency(irr).guaranteed);
}

TEST_CASE("sign sequence examples") {
    auto a = hlp::sign_sequence(besselish(0.5), 0.5, 50);
    CHECK(a.verdict == SignVerdict::AllPositive);
    CHECK(a.sigma.size() == 50);
    for (std::size_t m = 0; m < 50; ++m) CHECK(a.sigma[m] > a.error[m]);
    CHECK(hlp::sign_sequence(besselish(3.0), 3.0, 50).verdict == SignVerdict::AllPositive);
    // Adversarial step (value ratio 100 at t = 1/2) outside the sufficient conditions.
    auto adv = hlp::sign_sequence(TransformSpec(3.0, hlp::parse_weight("step:0,1;1/2,100")), 3.0, 50);
    CHECK(adv.verdict == SignVerdict::Mixed);
    CHECK(adv.first_violation >= 1);
    CHECK(adv.first_violation <= 50);
    // The exceptional case at ν = 1/2 genuinely breaks the pattern.
    auto exc = hlp::sign_sequence(TransformSpec(0.5, hlp::parse_weight("step:0,1;1/2,100")), 0.5, 50);
    CHECK(exc.verdict == SignVerdict::Mixed);
    // Case (ii): J̄_1 at the zeros of J̄_{3/2} has sign (−1)^m, so every σ_m < 0.
    auto neg = hlp::sign_sequence(besselish(0.0), 1.5, 20);
    CHECK(neg.verdict == SignVerdict::AllNegative);
    CHECK_THROWS_AS(hlp::sign_sequence(besselish(0.0), 2.5, 5), hlp::DomainError);
    CHECK_THROWS_AS(hlp::sign_sequence(besselish(0.0), -1.0, 5), hlp::DomainError);
}

TEST_CASE("property: verdict is consistent with the sequence") {
    for (const char* w : {"step:0,1;1/2,100", "step:0,100;1/2,1", "beta:1,0.5,0.5", "step:0,1;1/3,2;2/3,3"})
        for (double nu : {-0.5, 0.0, 1.0, 3.0}) {
            TransformSpec s(nu, hlp::parse_weight(w));
            hlp::SignSequence q;
            try {
                q = hlp::sign_sequence(s, nu, 30);
            } catch (const hlp::SignPatternError&) {
                FAIL("guaranteed pattern violated for " << w << " nu=" << nu);
                continue;
            }
            int first = 0;
            bool pos = true, neg = true;
            for (std::size_t m = 0; m < q.sigma.size(); ++m) {
                bool p = q.sigma[m] > q.error[m], n = q.sigma[m] < -q.error[m];
                pos = pos && p;
                neg = neg && n;
                if (!first && !(p && pos) && !(n && neg)) first = static_cast<int>(m) + 1;
            }
            INFO(w << " nu=" << nu);
            if (pos) CHECK(q.verdict == SignVerdict::AllPositive);
            else if (neg) CHECK(q.verdict == SignVerdict::AllNegative);
            else {
                CHECK(q.verdict == SignVerdict::Mixed);
                CHECK(q.first_violation == first);
            }
        }
}

TEST_CASE("locate zeros: Bessel weight interlaces with the order below") {
    auto z = hlp::locate_zeros(besselish(0.0), 40);
    CHECK(z.sign_case == 1);
    REQUIRE(z.zeta.size() == 40);
    for (int m = 1; m <= 40; ++m) {
        CHECK(z.zeta[m - 1] == doctest::Approx(oracle::bessel_zero(1.0, m)).epsilon(1e-13));
        CHECK(z.brackets[m - 1].first == doctest::Approx(hlp::bessel_zero(0.0, m)).epsilon(1e-15));
        CHECK(z.brackets[m - 1].second == doctest::Approx(hlp::bessel_zero(0.0, m + 1)).epsilon(1e-15));
        CHECK(z.multiplicity[m - 1] == 1);
    }
}

TEST_CASE("locate zeros: sin z / z") {
    TransformSpec u(-0.5, hlp::parse_weight("step:0,1"));
    auto z = hlp::locate_zeros(u, 30);
    for (int m = 1; m <= 30; ++m) {
        CHECK(z.zeta[m - 1] == doctest::Approx(m * kPi).epsilon(1e-14));
        CHECK(z.brackets[m - 1].first == doctest::Approx((m - 0.5) * kPi).epsilon(1e-14));
        CHECK(z.brackets[m - 1].second == doctest::Approx((m + 0.5) * kPi).epsilon(1e-14));
    }
}

TEST_CASE("locate zeros: case (ii) brackets start at the origin") {
    auto z = hlp::locate_zeros(besselish(0.0), 10, 1.5);
    CHECK(z.sign_case == 2);
    CHECK(z.brackets[0].first == 0.0);
    CHECK(z.brackets[0].second == doctest::Approx(hlp::bessel_zero(1.5, 1)).epsilon(1e-15));
    for (int m = 1; m <= 10; ++m) CHECK(z.zeta[m - 1] == doctest::Approx(oracle::bessel_zero(1.0, m)).epsilon(1e-13));
}

TEST_CASE("locate zeros: 1F2 weight, (a, b, c) = (1, 2, 1.5) has double zeros") {
    // Φ(z) = ₁F₂(1; 2, 3/2; −z²/4) = 2(1 − cos z)/z²: double zeros at 2kπ, sitting on the
    // brackets' endpoints j_{1/2,2k}.  Strict interlacing fails and localization refuses.
    auto s = hlp::onef2_spec(1.0, 2.0, 1.5);
    for (double x : {1.0, 4.0, 9.5}) CHECK(hlp::ht_eval(s, x).value == doctest::Approx(2.0 * (1.0 - std::cos(x)) / (x * x)).epsilon(1e-12));
    auto q = hlp::sign_sequence(s, 0.5, 10);
    CHECK(q.verdict == SignVerdict::Mixed);
    CHECK(q.first_violation == 2);
    CHECK_THROWS_AS(hlp::locate_zeros(s, 10), hlp::SignPatternError);
    // A strictly interior Z_a point works: (1, 1.75, 1.5).
    auto z = hlp::locate_zeros(hlp::onef2_spec(1.0, 1.75, 1.5), 30);
    for (int k = 1; k <= 30; ++k) {
        CHECK(z.zeta[k - 1] > k * kPi);
        CHECK(z.zeta[k - 1] < (k + 1) * kPi);
    }
}

TEST_CASE("locate zeros refuses Mixed patterns") {
    TransformSpec s(3.0, hlp::parse_weight("step:0,1;1/2,100"));
    CHECK_THROWS_AS(hlp::locate_zeros(s, 20), hlp::SignPatternError);
}

TEST_CASE("property: interlacing, count exactness and simplicity") {
    std::vector<TransformSpec> specs = {besselish(0.0), besselish(-0.3), TransformSpec(0.25, hlp::parse_weight("step:0,1;0.3,2;0.7,5")),
                                        TransformSpec(0.0, WeightFunction::beta_power(1.0, 0.0, 1.0)),
                                        TransformSpec(0.75, WeightFunction::beta_power(3.0, -0.5, 2.0))};
    for (const auto& s : specs) {
        REQUIRE(hlp::sturm_sufficiency(s).guaranteed);
        int M = 60;
        auto z = hlp::locate_zeros(s, M);
        auto j = hlp::zero_table(s.nu, M + 1);
        for (int m = 1; m < M; ++m) {
            CHECK(j(m) < z.zeta[m - 1]);
            CHECK(z.zeta[m - 1] < j(m + 1));
            CHECK(z.derivative[m - 1] * z.derivative[m] < 0.0);
        }
        // No zeros other than the located ones in (0, j_{ν,M}): scan for sign changes.
        int count = 0;
        double prev = hlp::ht_eval(s, 1e-3).value;
        for (double x = 1e-3 + 0.01; x < j(M); x += 0.01) {
            double v = hlp::ht_eval(s, x).value;
            if (v * prev < 0.0) ++count;
            prev = v;
        }
        CHECK(count == M - 1);
    }
}

TEST_CASE("parallel and serial localization agree bitwise") {
    auto s = TransformSpec(0.25, hlp::parse_weight("step:0,1;0.3,2;0.7,5"));
    auto a = hlp::locate_zeros(s, 80, 0.25), b = hlp::locate_zeros_serial(s, 80, 0.25);
    CHECK(a.zeta == b.zeta);
    CHECK(a.derivative == b.derivative);
}

TEST_CASE("Rayleigh sums: closed forms") {
    for (double nu : {-0.5, 0.0, 1.0, 2.5}) {
        auto d = hlp::rayleigh_newton(besselish(nu), 3);
        CHECK(d[0] == doctest::Approx(1.0 / (4.0 * (nu + 2.0))).epsilon(1e-14));
    }
    CHECK(hlp::rayleigh_newton(hlp::onef2_spec(1.0, 2.0, 1.5), 0)[0] == doctest::Approx(1.0 / 12.0).epsilon(1e-14));
    // Δ_1 for ν = 0 from β_k = 1/(k+1): ((ν+2)β_1² − (ν+1)β_0β_2)/(16(ν+1)²(ν+2)β_0²) = 1/192.
    double b0 = 1.0, b1 = 0.5, b2 = 1.0 / 3.0;
    double d1 = (2.0 * b1 * b1 - b0 * b2) / (16.0 * 2.0 * b0 * b0);
    CHECK(d1 == doctest::Approx(1.0 / 192.0).epsilon(1e-15));
    auto r = hlp::rayleigh_sums(besselish(0.0), 4, 400);
    REQUIRE(r.direct_available);
    CHECK(r.newton[1] == doctest::Approx(d1).epsilon(1e-14));
    CHECK(std::fabs(r.direct[1] - d1) <= 1e-7);
    // Σ j_{μ,m}^{−6} = 1/(32(μ+1)³(μ+2)(μ+3)) with μ = 1.
    CHECK(r.newton[2] == doctest::Approx(1.0 / 3072.0).epsilon(1e-13));
    CHECK(std::fabs(r.direct[2] - 1.0 / 3072.0) <= 1e-7);
}

TEST_CASE("property: Rayleigh routes agree for k <= 4") {
    std::vector<TransformSpec> specs = {besselish(0.0), besselish(1.0), TransformSpec(-0.5, hlp::parse_weight("step:0,1")),
                                        TransformSpec(0.0, WeightFunction::beta_power(1.0, 0.0, 1.0)),
                                        hlp::onef2_spec(1.0, 1.75, 1.5)};
    for (const auto& s : specs) {
        auto r = hlp::rayleigh_sums(s, 4, 400);
        REQUIRE(r.direct_available);
        for (int k = 0; k <= 4; ++k) {
            INFO("nu=" << s.nu << " k=" << k << " direct=" << r.direct[k] << " newton=" << r.newton[k]);
            CHECK(std::fabs(r.direct[k] - r.newton[k]) <= 1e-7);
            CHECK(r.direct[k] > 0.0);
            if (k > 0) CHECK(r.direct[k] < r.direct[k - 1]);
        }
    }
}

TEST_CASE("Rayleigh direct route refuses short zero lists") {
    auto z = hlp::locate_zeros(besselish(0.0), 5);
    CHECK_THROWS_AS(hlp::rayleigh_direct(z, 2), hlp::NumericalError);
    auto r = hlp::rayleigh_sums(hlp::onef2_spec(1.0, 2.0, 1.5), 2, 100);
    CHECK_FALSE(r.direct_available);
    CHECK_FALSE(r.direct_note.empty());
    CHECK(r.newton[0] == doctest::Approx(1.0 / 12.0).epsilon(1e-14));
}

TEST_CASE("property: product form matches the series") {
    for (const auto& s : {besselish(0.0), hlp::onef2_spec(1.0, 1.75, 1.5)}) {
        auto z = hlp::locate_zeros(s, 400);
        double d0 = hlp::rayleigh_newton(s, 0)[0];
        double b0 = hlp::ht_eval(s, 0.0).value;
        for (double x : {1.0, 2.5, 5.0})
            CHECK(std::fabs(hlp::product_form(b0, z, d0, x) - hlp::ht_series_eval(s, x).value.real()) <= 1e-4);
    }
}

TEST_CASE("zero list CSV round-trip") {
    auto z = hlp::locate_zeros(besselish(0.0), 12);
    std::string csv = hlp::zeros_to_csv(z);
    CHECK(csv.rfind("m,lo,hi,zeta\n", 0) == 0);
    std::istringstream in(csv);
    auto back = hlp::read_zero_list(in);
    CHECK(back.zeta == z.zeta);
    CHECK(back.brackets == z.brackets);
    std::string j = hlp::rayleigh_to_json(hlp::rayleigh_sums(besselish(0.0), 2, 100));
    for (const char* key : {"\"direct\"", "\"newton\"", "\"direct_available\""}) CHECK(j.find(key) != std::string::npos);
}
