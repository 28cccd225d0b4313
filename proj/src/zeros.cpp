#include "hlp/zeros.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <exception>
#include <fmt/format.h>
#include <limits>

#include "hlp/dd.hpp"
#include "hlp/error.hpp"
#include "hlp/parallel.hpp"
#include "hlp/special.hpp"

namespace hlp {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Brent's method on a verified sign-change bracket.
template <class F>
double brent(F&& f, double a, double b, double fa, double fb, double rtol) {
    if ((fa > 0.0) == (fb > 0.0))
        throw BracketError(fmt::format("no sign change on [{:.17g}, {:.17g}]", a, b));
    double c = a, fc = fa, d = b - a, e = d;
    for (int it = 0; it < 200; ++it) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::fabs(fc) < std::fabs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        double tol = 2.0 * kEps * std::fabs(b) + 0.5 * rtol * std::fabs(b);
        double m = 0.5 * (c - b);
        if (std::fabs(m) <= tol || fb == 0.0) return b;
        if (std::fabs(e) >= tol && std::fabs(fa) > std::fabs(fb)) {
            double s = fb / fa, p, q;
            if (a == c) {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                double r = fb / fc;
                q = fa / fc;
                p = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0));
                q = (q - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q; else p = -p;
            if (2.0 * p < std::min(3.0 * m * q - std::fabs(tol * q), std::fabs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += (std::fabs(d) > tol) ? d : (m > 0 ? tol : -tol);
        fb = f(b);
    }
    throw ConvergenceError(fmt::format("Brent iteration did not converge near {:.17g}", b));
}

ZeroList locate_impl(const TransformSpec& s, int M, double mu, double rtol, bool parallel) {
    if (M < 1) throw DomainError("zero count M must be >= 1");
    if (!(rtol > 0.0 && rtol < 1e-3)) throw DomainError("root tolerance must lie in (0, 1e-3)");
    SignSequence sig = sign_sequence(s, mu, M + 1);
    if (sig.verdict == SignVerdict::Mixed)
        throw SignPatternError(fmt::format(
            "sign pattern of (-1)^(m+1) H(j_mu,m) is mixed (first violation at m = {}, sigma = {:.3e} +- {:.1e}); "
            "interlacing hypotheses fail, zeros not located",
            sig.first_violation, sig.sigma[sig.first_violation - 1], sig.error[sig.first_violation - 1]));
    ZeroTable jt = parallel ? zero_table(mu, M + 1) : zero_table_serial(mu, M + 1);
    ZeroList out;
    out.mu = mu;
    out.sign_case = sig.verdict == SignVerdict::AllPositive ? 1 : 2;
    for (int m = 0; m < M; ++m) {
        if (out.sign_case == 1) out.brackets.emplace_back(jt.zeros[m], jt.zeros[m + 1]);
        else out.brackets.emplace_back(m == 0 ? 0.0 : jt.zeros[m - 1], jt.zeros[m]);
    }
    out.zeta.assign(M, 0.0);
    out.derivative.assign(M, 0.0);
    out.multiplicity.assign(M, 1);
    auto f = [&](double x) { return ht_eval(s, x).value; };
    auto one = [&](int m) {
        auto [lo, hi] = out.brackets[m];
        double flo = (lo == 0.0) ? ht_eval(s, 0.0).value : f(lo);
        double fhi = f(hi);
        double z = brent(f, lo, hi, flo, fhi, rtol);
        double d = ht_deriv(s, z).value;
        double scale = std::max(std::fabs(flo), std::fabs(fhi)) / (hi - lo);
        if (!(std::fabs(d) > 1e-10 * scale))
            throw NumericalError(fmt::format("zero {:.17g} in ({}, {}) fails the simplicity check (|H'| = {:.3e})",
                                             z, lo, hi, std::fabs(d)));
        out.zeta[m] = z;
        out.derivative[m] = d;
    };
    if (parallel) {
        std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 2) num_threads(thread_count())
        for (int m = 0; m < M; ++m) {
            try {
                one(m);
            } catch (...) {
#pragma omp critical(hlp_locate_error)
                if (!failure) failure = std::current_exception();
            }
        }
        if (failure) std::rethrow_exception(failure);
    } else {
        for (int m = 0; m < M; ++m) one(m);
    }
    return out;
}

}  // namespace

const char* to_string(SignVerdict v) {
    switch (v) {
        case SignVerdict::AllPositive: return "AllPositive";
        case SignVerdict::AllNegative: return "AllNegative";
        default: return "Mixed";
    }
}

SturmResult sturm_sufficiency(const TransformSpec& s) {
    double a = std::fabs(s.nu);
    if (a < 0.5) {
        if (monotonicity_check(s.f, 0.0)) return {true, "|nu| < 1/2 and f nondecreasing"};
        return {false, "|nu| < 1/2 but f is not nondecreasing"};
    }
    if (a == 0.5) {
        if (!monotonicity_check(s.f, 0.0)) return {false, "|nu| = 1/2 but f is not nondecreasing"};
        if (is_exceptional(s.f)) return {false, "exceptional case: step function with jumps only at rational points"};
        return {true, "|nu| = 1/2, f nondecreasing and not exceptional"};
    }
    double e = 1.5 - 3.0 * a;
    if (monotonicity_check(s.f, e)) return {true, fmt::format("|nu| > 1/2 and t^({}) f(t) nondecreasing", e)};
    return {false, fmt::format("|nu| > 1/2 but t^({}) f(t) is not nondecreasing", e)};
}

SignSequence sign_sequence(const TransformSpec& s, double mu, int M) {
    if (M < 1) throw DomainError("sign sequence length M must be >= 1");
    if (!(mu > -1.0) || !(mu < s.nu + 2.0))
        throw DomainError(fmt::format("sign sequence needs -1 < mu < nu + 2 (mu = {})", mu));
    ZeroTable jt = zero_table(mu, M);
    SignSequence out;
    out.mu = mu;
    out.sigma.assign(M, 0.0);
    out.error.assign(M, 0.0);
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 4) num_threads(thread_count())
    for (int m = 0; m < M; ++m) {
        try {
            auto h = ht_eval(s, jt.zeros[m]);
            double sign = (m % 2 == 0) ? 1.0 : -1.0;  // (−1)^{m+1} with 1-based m
            out.sigma[m] = sign * h.value;
            out.error[m] = h.error;
        } catch (...) {
#pragma omp critical(hlp_sign_error)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    auto definite = [&](int m, bool positive) {
        double v = out.sigma[m], e = out.error[m];
        return positive ? v > e : v < -e;
    };
    bool positive = out.sigma[0] > 0.0;
    out.verdict = positive ? SignVerdict::AllPositive : SignVerdict::AllNegative;
    for (int m = 0; m < M; ++m) {
        if (!definite(m, positive)) {
            out.verdict = SignVerdict::Mixed;
            out.first_violation = m + 1;
            break;
        }
    }
    if (mu == s.nu && out.verdict != SignVerdict::AllPositive && sturm_sufficiency(s).guaranteed)
        throw SignPatternError(fmt::format(
            "sign pattern {} contradicts the guaranteed interlacing (first violation at m = {})",
            to_string(out.verdict), out.first_violation));
    return out;
}

ZeroList locate_zeros(const TransformSpec& s, int M) { return locate_impl(s, M, s.nu, kDefaultRootTol, true); }

ZeroList locate_zeros(const TransformSpec& s, int M, double mu, double rtol) {
    return locate_impl(s, M, mu, rtol, true);
}

ZeroList locate_zeros_serial(const TransformSpec& s, int M, double mu, double rtol) {
    return locate_impl(s, M, mu, rtol, false);
}

std::vector<double> rayleigh_newton(const TransformSpec& s, int K) {
    if (K < 0) throw DomainError("Rayleigh order K must be >= 0");
    MomentStream beta(s.f, s.nu);
    // c_k = β_k (−1/4)^k / (k! (ν+1)_k)
    std::vector<dd> c;
    dd scale(1.0);
    for (int k = 0; k <= K + 1; ++k) {
        if (k > 0) scale = scale * dd(-0.25) / (ddetail::two_sum(s.nu, static_cast<double>(k)) * static_cast<double>(k));
        c.push_back(beta.next() * scale);
    }
    std::vector<dd> delta;
    for (int k = 0; k <= K; ++k) {
        dd acc = c[k + 1] * static_cast<double>(k + 1);
        for (int i = 1; i <= k; ++i) acc += c[i] * delta[k - i];
        delta.push_back(-acc / c[0]);
    }
    std::vector<double> out;
    for (const auto& d : delta) out.push_back(d.to_double());
    return out;
}

RayleighSums rayleigh_direct(const ZeroList& z, int K) {
    const int M = static_cast<int>(z.zeta.size());
    if (M < 10) throw NumericalError(fmt::format("direct Rayleigh sums need at least 10 zeros (have {})", M));
    // Fit ζ_m/π − m ≈ c₀ + c₁/m + (−1)^m (d₀ + d₁/m) over the last (up to) 50
    // zeros.  The alternating part (competing algebraic and oscillatory terms in
    // the asymptotics of H̄) only perturbs the tail at high order, so the tail
    // uses the smooth part alone.
    int first = std::max(1, M - 49);
    Eigen::MatrixXd A(M - first + 1, 4);
    Eigen::VectorXd y(M - first + 1);
    for (int m = first; m <= M; ++m) {
        double alt = (m % 2 == 0) ? 1.0 : -1.0;
        A.row(m - first) << 1.0, 1.0 / m, alt, alt / m;
        y(m - first) = z.zeta[m - 1] / kPi - m;
    }
    Eigen::VectorXd coef = A.colPivHouseholderQr().solve(y);
    double c0 = coef(0), c1 = coef(1);
    RayleighSums r;
    r.zeros_used = M;
    r.direct_available = true;
    constexpr int kExplicit = 2000;
    for (int k = 0; k <= K; ++k) {
        double p = 2.0 * k + 2.0;
        // Sum smallest terms first.
        double head = 0.0;
        for (int m = M; m >= 1; --m) head += std::pow(z.zeta[m - 1], -p);
        double tail = 0.0;
        int m0 = M + kExplicit + 1;
        // Euler–Maclaurin remainder for Σ_{m≥m0} (π(m + c₀))^{−p}.
        double x0 = m0 + c0;
        double g0 = std::pow(kPi * x0, -p);
        double integral = std::pow(kPi, -p) * std::pow(x0, 1.0 - p) / (p - 1.0);
        double dg = -p * g0 / x0;
        tail += integral + 0.5 * g0 - dg / 12.0;
        for (int m = m0 - 1; m > M; --m) tail += std::pow(kPi * (m + c0 + c1 / m), -p);
        if (!(tail < 0.1 * (head + tail)))
            throw NumericalError(fmt::format("direct Rayleigh sum k = {}: tail {:.3e} dominates; more zeros needed", k, tail));
        r.direct.push_back(head + tail);
        r.direct_tail.push_back(tail);
    }
    return r;
}

RayleighSums rayleigh_sums(const TransformSpec& s, int K, int M_zeros) {
    RayleighSums r;
    try {
        ZeroList z = locate_zeros(s, M_zeros);
        r = rayleigh_direct(z, K);
    } catch (const NumericalError& e) {
        r = RayleighSums{};
        r.direct_available = false;
        r.direct_note = e.what();
    }
    r.newton = rayleigh_newton(s, K);
    return r;
}

double product_form(double b0, const ZeroList& z, double delta0, double x) {
    double prod = b0, partial = 0.0;
    for (double zeta : z.zeta) {
        prod *= 1.0 - x * x / (zeta * zeta);
        partial += 1.0 / (zeta * zeta);
    }
    return prod * std::exp(-x * x * (delta0 - partial));
}

std::string zeros_to_csv(const ZeroList& z) {
    std::string out = "m,lo,hi,zeta\n";
    for (std::size_t m = 0; m < z.zeta.size(); ++m)
        out += fmt::format("{},{:.17g},{:.17g},{:.17g}\n", m + 1, z.brackets[m].first, z.brackets[m].second, z.zeta[m]);
    return out;
}

std::string rayleigh_to_json(const RayleighSums& r) {
    auto arr = [](const std::vector<double>& v) {
        std::string s = "[";
        for (std::size_t i = 0; i < v.size(); ++i) s += fmt::format("{}{:.17g}", i ? "," : "", v[i]);
        return s + "]";
    };
    std::string note;
    for (char ch : r.direct_note) {
        if (ch == '"' || ch == '\\') note += '\\';
        note += ch;
    }
    return fmt::format(
        "{{\"direct_available\":{},\"zeros_used\":{},\"direct\":{},\"direct_tail\":{},\"newton\":{},\"note\":\"{}\"}}",
        r.direct_available ? "true" : "false", r.zeros_used, arr(r.direct), arr(r.direct_tail), arr(r.newton), note);
}

}  // namespace hlp
