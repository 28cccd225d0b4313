#pragma once

// Zeros of H̄_ν(f): sufficient conditions for the interlacing pattern, sign
// sequences at Bessel zeros, bracketed localization and Rayleigh-type sums
// Δ_k = Σ ζ_m^{−(2k+2)}.

#include <string>
#include <utility>
#include <vector>

#include "hlp/hankel.hpp"

namespace hlp {

struct SturmResult {
    bool guaranteed = false;
    std::string reason;
};

// Monotonicity hypotheses on f (per |ν| regime, exceptional case excluded at
// |ν| = 1/2) under which H̄_ν(f) has exactly one zero in each (j_{ν,m}, j_{ν,m+1}).
SturmResult sturm_sufficiency(const TransformSpec& s);

enum class SignVerdict { AllPositive, AllNegative, Mixed };

const char* to_string(SignVerdict v);

struct SignSequence {
    double mu = 0.0;
    std::vector<double> sigma;   // σ_m = (−1)^{m+1} H̄_ν(f)(j_{μ,m})
    std::vector<double> error;   // absolute error estimate per σ_m
    SignVerdict verdict = SignVerdict::Mixed;
    int first_violation = 0;     // 1-based index for Mixed, else 0
};

// A σ_m within its own error estimate of zero counts as a violation.  When
// sturm_sufficiency guarantees the pattern and μ = ν, anything but
// AllPositive throws SignPatternError.
SignSequence sign_sequence(const TransformSpec& s, double mu, int M);

struct ZeroList {
    double mu = 0.0;
    int sign_case = 1;                                // 1: σ_m > 0, 2: σ_m < 0
    std::vector<double> zeta;                         // ascending positive zeros
    std::vector<std::pair<double, double>> brackets;  // interlacing brackets
    std::vector<int> multiplicity;                    // all 1 (checked)
    std::vector<double> derivative;                   // H̄'(ζ_m)
};

// First M positive zeros, bracketed by consecutive zeros of J̄_μ (μ defaults
// to ν).  Refuses a Mixed sign pattern with SignPatternError.  rtol is the
// relative Brent tolerance.
inline constexpr double kDefaultRootTol = 1e-14;
ZeroList locate_zeros(const TransformSpec& s, int M);
ZeroList locate_zeros(const TransformSpec& s, int M, double mu, double rtol = kDefaultRootTol);
ZeroList locate_zeros_serial(const TransformSpec& s, int M, double mu, double rtol = kDefaultRootTol);

struct RayleighSums {
    std::vector<double> direct;        // Σ_{m≤M} ζ_m^{−(2k+2)} + tail
    std::vector<double> direct_tail;   // tail correction included above
    std::vector<double> newton;        // from the Taylor coefficients of H̄(√w)
    bool direct_available = false;
    std::string direct_note;           // why the direct route is unavailable
    int zeros_used = 0;
};

// Δ_0..Δ_K by Newton's identities on c_k = β_k (−1/4)^k / (k! (ν+1)_k).
std::vector<double> rayleigh_newton(const TransformSpec& s, int K);

// Δ_0..Δ_K from located zeros plus a fitted tail ζ_m ≈ π(m + c₀ + c₁/m).
// Throws NumericalError when the tail is not small relative to the sum.
RayleighSums rayleigh_direct(const ZeroList& z, int K);

// Both routes; the direct route is marked unavailable (not an error) when the
// zeros cannot be located.
RayleighSums rayleigh_sums(const TransformSpec& s, int K, int M_zeros);

// H̄(0) Π_{m≤M} (1 − z²/ζ_m²) · exp(−z² · remainder), remainder = Δ_0 − Σ_{m≤M} ζ_m^{−2}.
double product_form(double b0, const ZeroList& z, double delta0, double x);

std::string zeros_to_csv(const ZeroList& z);
std::string rayleigh_to_json(const RayleighSums& r);

}  // namespace hlp
