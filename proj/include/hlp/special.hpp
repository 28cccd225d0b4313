#pragma once

// Gamma-family helpers needed by the normalization J_ν = (z/2)^ν/Γ(ν+1) · J̄_ν
// and by closed-form moments of beta-power weights.

namespace hlp {

inline constexpr double kPi = 3.14159265358979323846;

// Γ(x) by the Lanczos approximation (g = 7, 9 terms), reflection for x < 1/2.
// Relative accuracy ~1e-15 away from the poles; throws DomainError at poles.
double gamma_fn(double x);

// log|Γ(x)|, usable where Γ itself overflows.
double lgamma_fn(double x);

// B(a, b) = Γ(a)Γ(b)/Γ(a+b) for a, b > 0.
double beta_fn(double a, double b);

// Rising factorial (x)_k = x (x+1) ... (x+k-1), (x)_0 = 1.
double pochhammer(double x, int k);

// True when x is a non-positive integer (a pole of Γ).
bool is_nonpositive_integer(double x);

}  // namespace hlp
