#include "hlp/special.hpp"

#include <cmath>
#include <fmt/format.h>

#include "hlp/error.hpp"

namespace hlp {

namespace {

constexpr double kLanczosG = 7.0;
constexpr double kLanczosCoef[9] = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

// Lanczos series A_g(x) for the shifted argument x (Γ(x+1) form).
double lanczos_sum(double x) {
    double a = kLanczosCoef[0];
    for (int i = 1; i < 9; ++i) a += kLanczosCoef[i] / (x + i);
    return a;
}

}  // namespace

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

double gamma_fn(double x) {
    if (!std::isfinite(x)) throw DomainError(fmt::format("gamma: non-finite argument {}", x));
    if (is_nonpositive_integer(x)) throw DomainError(fmt::format("gamma: pole at {}", x));
    if (x < 0.5) {
        // Γ(x) Γ(1-x) = π / sin(πx); sin(πx) via reduction keeps poles exact.
        double s = std::sin(kPi * (x - 2.0 * std::floor(x / 2.0)));
        return kPi / (s * gamma_fn(1.0 - x));
    }
    double xm = x - 1.0;
    double t = xm + kLanczosG + 0.5;
    // Split the power to postpone overflow for x up to ~171.
    double p = std::pow(t, 0.5 * (xm + 0.5));
    return std::sqrt(2.0 * kPi) * p * (p * std::exp(-t)) * lanczos_sum(xm);
}

double lgamma_fn(double x) {
    if (is_nonpositive_integer(x)) throw DomainError(fmt::format("lgamma: pole at {}", x));
    if (x < 0.5) {
        double s = std::sin(kPi * (x - 2.0 * std::floor(x / 2.0)));
        return std::log(kPi / std::fabs(s)) - lgamma_fn(1.0 - x);
    }
    double xm = x - 1.0;
    double t = xm + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * kPi) + (xm + 0.5) * std::log(t) - t + std::log(lanczos_sum(xm));
}

double beta_fn(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError(fmt::format("beta: need a, b > 0 (got {}, {})", a, b));
    if (a + b < 150.0) return gamma_fn(a) * gamma_fn(b) / gamma_fn(a + b);
    return std::exp(lgamma_fn(a) + lgamma_fn(b) - lgamma_fn(a + b));
}

double pochhammer(double x, int k) {
    double p = 1.0;
    for (int i = 0; i < k; ++i) p *= x + i;
    return p;
}

}  // namespace hlp
