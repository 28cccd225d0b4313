#pragma once

// Normalized finite Hankel transforms H̄_ν(f)(z) = ∫₀¹ t^{ν+1/2} f(t) J̄_ν(zt) dt,
// partial-fraction expansions of H̄_ν(f)(z) / (z J̄_μ(z)), sampling
// reconstruction and the Wronskian series.

#include <string>
#include <vector>

#include "hlp/bessel.hpp"
#include "hlp/weights.hpp"

namespace hlp {

// ν > −1 and a weight that passes validate_integrability (checked on construction).
struct TransformSpec {
    TransformSpec(double nu, WeightFunction f);
    double nu;
    WeightFunction f;
};

// Spec whose transform is J̄_λ: f(t) = 2/B(λ−ν, ν+1) (1−t²)^{λ−ν−1} t^{ν+1/2}, λ > ν > −1.
TransformSpec bessel_lambda_spec(double nu, double lambda);

// Spec whose transform is ₁F₂(a; b, c; −z²/4): ν = c−1 with the ₁F₂ weight (b > a > 0).
TransformSpec onef2_spec(double a, double b, double c);

struct SeriesResult {
    cplx value;              // H̄_ν(f)(z)
    cplx z_deriv;            // z · d/dz H̄_ν(f)(z)
    double truncation_error = 0.0;
    double rounding_error = 0.0;
    int terms = 0;
};

// Σ_{k<K} β_k/(k!(ν+1)_k) (−z²/4)^k summed in double-double.  K = 0 selects
// automatic truncation; an explicit K whose next term exceeds 1e−15 of the
// sum throws ConvergenceError carrying the truncation estimate.
SeriesResult ht_series_eval(const TransformSpec& s, cplx z, int K = 0);

// Radius up to which the series is trusted by ht_eval.
double ht_series_radius(const TransformSpec& s);

// Panel Gauss quadrature of the defining integral: panels no wider than
// 4π/|z| (about two oscillations), Gauss–Jacobi rules on the end panels for
// the t^α and (1−t)^p endpoint behaviour, splits at 1/2 and at every
// breakpoint or table node.  Works for real and complex z (|Im z| <= 50).
Estimate<double> ht_quad_eval(const TransformSpec& s, double z);
Estimate<cplx> ht_quad_eval(const TransformSpec& s, cplx z);

// d/dz H̄_ν(f)(z) = −z/(2(ν+1)) ∫₀¹ t^{ν+5/2} f(t) J̄_{ν+1}(zt) dt by the same quadrature.
Estimate<double> ht_quad_deriv(const TransformSpec& s, double z);

// Dispatcher: series inside ht_series_radius, quadrature outside.
Estimate<double> ht_eval(const TransformSpec& s, double z);
Estimate<cplx> ht_eval(const TransformSpec& s, cplx z);
Estimate<double> ht_deriv(const TransformSpec& s, double z);

struct PfeExpansion {
    double nu = 0.0;
    double mu = 0.0;
    int N = 0;
    double b0 = 0.0;                 // H̄_ν(f)(0) = β_0(f)
    std::vector<double> residues;    // r_m = H̄(j_m) / (j_m² J̄_{μ+1}(j_m))
    ZeroTable zeros;                 // j_{μ,1..N}
    double decay_exponent = 0.0;     // fitted over m ∈ [N/2, N] (NaN if residues vanish)
    double decay_constant = 0.0;     // |r_m| ≈ C j_m^{−exponent}
    bool decay_ok = true;            // exponent ≥ ν − μ + 1 (minus fitting slack)
};

// Residues at the zeros of J̄_μ, −1 < μ < ν + 2.  Parallel over m.
PfeExpansion build_pfe(const TransformSpec& s, double mu, int N);
PfeExpansion build_pfe_serial(const TransformSpec& s, double mu, int N);

// b0/z − 2(μ+1) Σ r_m (1/(z − j_m) + 1/(z + j_m)); error = tail estimate.
Estimate<cplx> pfe_eval(const PfeExpansion& e, cplx z);

// |H̄(z)/(z J̄_μ(z)) − pfe(z)| at rank N.
double pfe_residual(const TransformSpec& s, double mu, cplx z, int N);
double pfe_residual(const PfeExpansion& e, const TransformSpec& s, cplx z);

struct SampleSet {
    double mu = 0.0;
    ZeroTable zeros;
    std::vector<double> values;  // φ(j_{μ,m})
    double phi0 = 0.0;           // φ(0)
};

// φ = H̄_ν(f) sampled at j_{μ,1..N}.
SampleSet make_samples(const TransformSpec& s, double mu, int N);

// J̄_μ(z)[φ(0) + 2z² Σ φ(j_m)/(j_m J̄'_μ(j_m)) · 1/(z² − j_m²)], with the
// sample itself returned within 1e−6 of a node ±j_m.
cplx sampling_reconstruct(double nu, double mu, const SampleSet& samples, cplx z);

struct WronskianValues {
    double series_value = 0.0;  // 8x(μ+1) J̄_μ(x)² Σ r_m j_m² / (x² − j_m²)²
    double direct_value = 0.0;  // J̄_μ H̄' − J̄'_μ H̄
};

WronskianValues wronskian_check(const TransformSpec& s, double mu, double x, int N);
WronskianValues wronskian_check(const PfeExpansion& e, const TransformSpec& s, double x);

// JSON text (nu, mu, N, b0, zeros[], residues[]) and CSV (m, j_mu_m, phi).
std::string pfe_to_json(const PfeExpansion& e);
std::string samples_to_csv(const SampleSet& s);

}  // namespace hlp
