#pragma once

// Normalized Bessel functions J̄_ν(z) = Γ(ν+1) (2/z)^ν J_ν(z) (even, entire,
// J̄_ν(0) = 1), their derivatives, and validated tables of positive zeros.
//
// Evaluation scheme (see BesselKernel):
//   |z| <= 4                 power series in double precision
//   4 < |z| <= R(ν)          power series in double-double (absorbs the
//                            e^{|z|} cancellation of the alternating series)
//   |z| > R(ν)               Hankel asymptotic expansion, truncated at its
//                            smallest term
// with R(ν) = max(30, 10 + 2|ν|).  Full double accuracy holds for |ν| <= 20;
// beyond that the error estimate grows and is reported, never hidden.

#include <complex>
#include <utility>
#include <vector>

namespace hlp {

using cplx = std::complex<double>;

// Value plus an absolute error estimate.
template <class T>
struct Estimate {
    T value{};
    double error = 0.0;
};

// Series/asymptotic crossover radius.
double series_switch_radius(double nu);

// Fixed-order evaluator: caches Γ(ν+1) and the Hankel coefficients a_k(ν).
// Immutable after construction, safe to share between threads.
class BesselKernel {
public:
    explicit BesselKernel(double nu);

    double nu() const { return nu_; }
    double switch_radius() const { return radius_; }

    double operator()(double x) const { return eval(x).value; }
    cplx operator()(cplx z) const { return eval(z).value; }

    Estimate<double> eval(double x) const;
    Estimate<cplx> eval(cplx z) const;

private:
    Estimate<double> series_double(double x) const;
    Estimate<double> series_dd(double x) const;
    Estimate<double> asymptotic(double x) const;
    Estimate<cplx> series_complex(cplx z) const;
    Estimate<cplx> asymptotic(cplx z) const;

    double nu_;
    double radius_;
    double pref_;  // Γ(ν+1) 2^ν sqrt(2/π)
    double cos_phi_, sin_phi_;  // φ = (ν/2 + 1/4)π
    std::vector<double> hankel_coef_;  // a_k(ν), possibly terminating
};

// J̄_ν(z).  Throws DomainError when ν is a negative integer, OverflowError when
// |Im z| > 50 on the asymptotic branch.
cplx jbar_eval(double nu, cplx z);
double jbar_eval(double nu, double x);
Estimate<cplx> jbar_eval_estimate(double nu, cplx z);

// J_ν(x) = (x/2)^ν / Γ(ν+1) · J̄_ν(x), x > 0.
double j_eval(double nu, double x);

// J̄'_ν(z) = −z/(2(ν+1)) · J̄_{ν+1}(z), ν > −1.
cplx jbar_deriv(double nu, cplx z);
double jbar_deriv(double nu, double x);

// McMahon-type first-order seed (m + μ/2 − 1/4)π.
double zero_seed(double mu, int m);

// m-th positive zero of J̄_μ, μ > −1, m >= 1, to ~1e-15 relative.
double bessel_zero(double mu, int m);

struct ZeroTable {
    double mu = 0.0;
    std::vector<double> zeros;                          // j_{μ,1..M}
    std::vector<std::pair<double, double>> brackets;    // sign-change brackets

    std::size_t size() const { return zeros.size(); }
    // 1-based access mirroring j_{μ,m}.
    double operator()(int m) const { return zeros.at(static_cast<std::size_t>(m - 1)); }
};

// First M zeros; brackets found by a sign-change scan, refined in parallel.
ZeroTable zero_table(double mu, int M);
// Single-threaded reference implementation (identical results).
ZeroTable zero_table_serial(double mu, int M);

}  // namespace hlp
