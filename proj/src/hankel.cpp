#include "hlp/hankel.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <fmt/format.h>
#include <functional>
#include <limits>

#include "hlp/dd.hpp"
#include "hlp/error.hpp"
#include "hlp/parallel.hpp"
#include "hlp/quadrature.hpp"
#include "hlp/special.hpp"

namespace hlp {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kPanelNodes = 28;
constexpr int kMaxSeriesTerms = 3000;
constexpr double kPoleRadius = 1e-8;
constexpr double kSampleSwitch = 1e-6;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool is_nonneg_integer(double x) { return x >= 0.0 && x == std::floor(x); }

void check_mu_range(double nu, double mu) {
    if (!(mu > -1.0) || !(mu < nu + 2.0))
        throw DomainError(fmt::format("parameter-range violation: need -1 < mu < nu + 2 (mu = {}, nu = {})", mu, nu));
}

// ---------------------------------------------------------------------------
// Power series in double-double.

cdd make_w(cplx z) {
    double x = z.real(), y = z.imag();
    cdd z2(mul_exact(x, x) - mul_exact(y, y), mul_exact(x, y) * 2.0);
    return z2 * -0.25;
}

SeriesResult series_impl(const TransformSpec& s, cplx z, int K) {
    MomentStream beta(s.f, s.nu);
    const bool real = z.imag() == 0.0;
    cdd w = real ? cdd(mul_exact(z.real(), z.real()) * -0.25) : make_w(z);
    double wabs = 0.25 * std::norm(z);
    cdd u(dd(1.0));  // (−z²/4)^k / (k!(ν+1)_k)
    cdd sum(dd(0.0)), deriv(dd(0.0));
    double abs_sum = 0.0, last = 0.0;
    int k = 0;
    const int kmax = K > 0 ? K : kMaxSeriesTerms;
    for (; k < kmax; ++k) {
        if (k > 0) {
            dd den = ddetail::two_sum(s.nu, static_cast<double>(k)) * static_cast<double>(k);
            u = (real ? cdd(u.re * w.re) : u * w) / den;
        }
        dd b = beta.next();
        cdd term = u * b;
        sum += term;
        deriv += term * (2.0 * k);
        last = abs(term);
        abs_sum += last;
        if (K == 0 && k > 0 && k * (s.nu + k) > wabs && last < 1e-33 * std::max(abs(sum), 1e-300)) break;
        if (K == 0 && last == 0.0 && k > 0) break;
    }
    SeriesResult r;
    r.value = sum.to_complex();
    r.z_deriv = deriv.to_complex();
    r.terms = k + (K == 0 ? 1 : 0);
    double rel = beta.exact() ? 1e-31 : 4e-15;
    r.rounding_error = 16.0 * rel * abs_sum + kEps * std::abs(r.value);
    if (K > 0) {
        // Magnitude of the first omitted term.
        dd den = ddetail::two_sum(s.nu, static_cast<double>(K)) * static_cast<double>(K);
        cdd un = (u * w) / den;
        double next = abs(un * beta.next());
        r.truncation_error = next;
        if (next > 1e-15 * std::abs(r.value))
            throw ConvergenceError(fmt::format(
                "transform series not converged at K = {} for |z| = {}: next term {:.3e}, sum {:.3e}", K,
                std::abs(z), next, std::abs(r.value)));
    } else {
        if (k >= kMaxSeriesTerms)
            throw ConvergenceError(fmt::format("transform series failed to converge for |z| = {}", std::abs(z)));
        r.truncation_error = last;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Panel quadrature.

// The integrand weight g(t) = t^{ν+1/2} f(t) (times t² in derivative mode),
// split as t^alpha · near0(t) at the left end and (1−t)^pend · near1(t) at
// the right end, with cut points where g is not smooth.
struct Profile {
    double alpha = 0.0;
    double pend = 0.0;
    std::vector<double> cuts;
    std::function<double(double)> full, near0, near1;
};

Profile make_profile(const TransformSpec& s, bool deriv) {
    Profile pr;
    const double nu = s.nu;
    const double extra = deriv ? 2.0 : 0.0;
    pr.cuts = {0.0, 0.5, 1.0};
    std::visit(overloaded{
                   [&](const BetaPower& w) {
                       double a = w.q + nu + 0.5 + extra, C = w.C, p = w.p;
                       pr.alpha = a;
                       pr.pend = p;
                       pr.full = [=](double t) { return C * std::pow(t, a) * std::pow(1.0 - t * t, p); };
                       pr.near0 = [=](double t) { return C * std::pow(1.0 - t * t, p); };
                       pr.near1 = [=](double t) { return C * std::pow(t, a) * std::pow(1.0 + t, p); };
                   },
                   [&](const Step&) {
                       double a = nu + 0.5 + extra;
                       const WeightFunction* f = &s.f;
                       pr.alpha = a;
                       pr.pend = 0.0;
                       pr.full = [=](double t) { return std::pow(t, a) * (*f)(t); };
                       pr.near0 = [=](double t) { return (*f)(t); };
                       pr.near1 = pr.full;
                   },
                   [&](const Tabulated&) {
                       double a = nu + 0.5 + extra;
                       const WeightFunction* f = &s.f;
                       pr.alpha = a;
                       pr.pend = 0.0;
                       pr.full = [=](double t) { return std::pow(t, a) * (*f)(t); };
                       pr.near0 = [=](double t) { return (*f)(t); };
                       pr.near1 = pr.full;
                   },
               },
               s.f.variant());
    if (const auto* w = std::get_if<Step>(&s.f.variant()))
        for (const auto& b : w->breaks) pr.cuts.push_back(b.value);
    if (const auto* w = std::get_if<Tabulated>(&s.f.variant()))
        for (double t : w->nodes) pr.cuts.push_back(t);
    std::sort(pr.cuts.begin(), pr.cuts.end());
    pr.cuts.erase(std::unique(pr.cuts.begin(), pr.cuts.end()), pr.cuts.end());
    return pr;
}

template <class Z>
Estimate<Z> panel_quadrature(const Profile& pr, const BesselKernel& ker, Z z) {
    const double zabs = std::abs(z);
    const double hmax = zabs > 0.0 ? 4.0 * kPi / zabs : 1.0;
    const bool sing0 = !is_nonneg_integer(pr.alpha);
    const bool sing1 = !is_nonneg_integer(pr.pend);
    Z total = 0.0;
    double abs_total = 0.0;
    for (std::size_t c = 0; c + 1 < pr.cuts.size(); ++c) {
        double u = pr.cuts[c], v = pr.cuts[c + 1];
        int n = std::max(1, static_cast<int>(std::ceil((v - u) / hmax)));
        double h = (v - u) / n, half = 0.5 * h;
        for (int i = 0; i < n; ++i) {
            double a = u + i * h;
            double b = (i == n - 1) ? v : a + h;
            Z acc = 0.0;
            double abs_acc = 0.0, scale;
            if (a == 0.0 && sing0) {
                if (!(pr.alpha > -1.0 + 1e-12))
                    throw NumericalError(fmt::format(
                        "endpoint singularity t^{} not integrable on panel [0, {}]", pr.alpha, b));
                const QuadRule& r = gauss_jacobi(kPanelNodes, 0.0, pr.alpha);
                for (std::size_t j = 0; j < r.x.size(); ++j) {
                    double t = half * (1.0 + r.x[j]);
                    Z term = r.w[j] * pr.near0(t) * ker(z * t);
                    acc += term;
                    abs_acc += std::abs(term);
                }
                scale = std::pow(half, pr.alpha + 1.0);
            } else if (b == 1.0 && sing1) {
                if (!(pr.pend > -1.0 + 1e-12))
                    throw NumericalError(fmt::format(
                        "endpoint singularity (1-t)^{} not integrable on panel [{}, 1]", pr.pend, a));
                const QuadRule& r = gauss_jacobi(kPanelNodes, pr.pend, 0.0);
                for (std::size_t j = 0; j < r.x.size(); ++j) {
                    double t = 1.0 - half * (1.0 - r.x[j]);
                    Z term = r.w[j] * pr.near1(t) * ker(z * t);
                    acc += term;
                    abs_acc += std::abs(term);
                }
                scale = std::pow(half, pr.pend + 1.0);
            } else {
                const QuadRule& r = gauss_legendre(kPanelNodes);
                double mid = 0.5 * (a + b), hh = 0.5 * (b - a);
                for (std::size_t j = 0; j < r.x.size(); ++j) {
                    double t = mid + hh * r.x[j];
                    Z term = r.w[j] * pr.full(t) * ker(z * t);
                    acc += term;
                    abs_acc += std::abs(term);
                }
                scale = hh;
            }
            total += scale * acc;
            abs_total += scale * abs_acc;
        }
    }
    if (!std::isfinite(std::abs(total)))
        throw NumericalError("transform quadrature produced a non-finite value");
    // Rounding of the products z·t shifts each kernel phase by ~eps·|z|.
    return {total, (8.0 + 2.0 * zabs) * kEps * abs_total};
}

}  // namespace

// ---------------------------------------------------------------------------

TransformSpec::TransformSpec(double nu_, WeightFunction f_) : nu(nu_), f(std::move(f_)) {
    auto rep = validate_integrability(f, nu);
    if (!rep.ok) throw DomainError("transform spec rejected: " + rep.reason);
}

TransformSpec bessel_lambda_spec(double nu, double lambda) {
    if (!(lambda > nu) || !(nu > -1.0))
        throw DomainError(fmt::format("Bessel weight needs lambda > nu > -1 (got lambda={}, nu={})", lambda, nu));
    return TransformSpec(nu, WeightFunction::beta_power(2.0 / beta_fn(lambda - nu, nu + 1.0), lambda - nu - 1.0,
                                                        nu + 0.5));
}

TransformSpec onef2_spec(double a, double b, double c) { return TransformSpec(c - 1.0, WeightFunction::onef2(a, b, c)); }

SeriesResult ht_series_eval(const TransformSpec& s, cplx z, int K) {
    if (K < 0) throw DomainError("series truncation K must be >= 0");
    if (z.real() < 0.0 || (z.real() == 0.0 && z.imag() < 0.0)) {
        SeriesResult r = series_impl(s, -z, K);  // even function; z·d/dz is even too
        return r;
    }
    return series_impl(s, z, K);
}

double ht_series_radius(const TransformSpec& s) {
    double R = series_switch_radius(s.nu);
    if (std::holds_alternative<Tabulated>(s.f.variant())) R = std::min(R, 8.0);
    return R;
}

Estimate<double> ht_quad_eval(const TransformSpec& s, double z) {
    Profile pr = make_profile(s, false);
    BesselKernel ker(s.nu);
    return panel_quadrature(pr, ker, std::fabs(z));
}

Estimate<cplx> ht_quad_eval(const TransformSpec& s, cplx z) {
    if (z.imag() == 0.0) {
        auto r = ht_quad_eval(s, z.real());
        return {cplx(r.value, 0.0), r.error};
    }
    if (z.real() < 0.0) z = -z;
    Profile pr = make_profile(s, false);
    BesselKernel ker(s.nu);
    return panel_quadrature(pr, ker, z);
}

Estimate<double> ht_quad_deriv(const TransformSpec& s, double z) {
    Profile pr = make_profile(s, true);
    BesselKernel ker(s.nu + 1.0);
    auto r = panel_quadrature(pr, ker, std::fabs(z));
    double factor = -z / (2.0 * (s.nu + 1.0));
    return {factor * r.value, std::fabs(factor) * r.error};
}

Estimate<double> ht_eval(const TransformSpec& s, double z) {
    if (std::fabs(z) <= ht_series_radius(s)) {
        auto r = ht_series_eval(s, cplx(z, 0.0));
        return {r.value.real(), r.rounding_error + r.truncation_error};
    }
    return ht_quad_eval(s, z);
}

Estimate<cplx> ht_eval(const TransformSpec& s, cplx z) {
    if (std::abs(z) <= ht_series_radius(s)) {
        auto r = ht_series_eval(s, z);
        return {r.value, r.rounding_error + r.truncation_error};
    }
    return ht_quad_eval(s, z);
}

Estimate<double> ht_deriv(const TransformSpec& s, double z) {
    if (z == 0.0) return {0.0, 0.0};
    if (std::fabs(z) <= ht_series_radius(s)) {
        auto r = ht_series_eval(s, cplx(z, 0.0));
        return {r.z_deriv.real() / z, 2.0 * r.terms * (r.rounding_error + r.truncation_error) / std::fabs(z)};
    }
    return ht_quad_deriv(s, z);
}

// ---------------------------------------------------------------------------
// Partial fractions.

namespace {

void fit_decay(PfeExpansion& e, const std::vector<char>& significant) {
    int lo = std::max(1, e.N / 2);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (int m = lo; m <= e.N; ++m) {
        if (!significant[m - 1]) continue;
        double x = std::log(e.zeros(m)), y = std::log(std::fabs(e.residues[m - 1]));
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++n;
    }
    if (n < 5) {
        // Residues vanish within their error (e.g. H̄ sharing the zeros of J̄_μ).
        e.decay_exponent = std::numeric_limits<double>::quiet_NaN();
        e.decay_constant = 0.0;
        e.decay_ok = true;
        return;
    }
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    e.decay_exponent = -slope;
    double C = 0.0;
    for (int m = std::max(1, e.N - e.N / 10); m <= e.N; ++m)
        if (significant[m - 1]) C = std::max(C, std::fabs(e.residues[m - 1]) * std::pow(e.zeros(m), e.decay_exponent));
    e.decay_constant = C;
    e.decay_ok = e.decay_exponent >= e.nu - e.mu + 1.0 - 0.1;
}

PfeExpansion pfe_impl(const TransformSpec& s, double mu, int N, bool parallel) {
    check_mu_range(s.nu, mu);
    if (N < 1) throw DomainError("PFE rank N must be >= 1");
    PfeExpansion e;
    e.nu = s.nu;
    e.mu = mu;
    e.N = N;
    e.zeros = parallel ? zero_table(mu, N) : zero_table_serial(mu, N);
    e.b0 = moment(s.f, s.nu, 0);
    e.residues.assign(N, 0.0);
    std::vector<char> significant(N, 0);
    BesselKernel kmu1(mu + 1.0);
    auto one = [&](int i) {
        double j = e.zeros.zeros[i];
        auto h = ht_eval(s, j);
        e.residues[i] = h.value / (j * j * kmu1(j));
        significant[i] = std::fabs(h.value) > 10.0 * h.error;
    };
    if (parallel) {
        std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 4) num_threads(thread_count())
        for (int i = 0; i < N; ++i) {
            try {
                one(i);
            } catch (...) {
#pragma omp critical(hlp_pfe_error)
                if (!failure) failure = std::current_exception();
            }
        }
        if (failure) std::rethrow_exception(failure);
    } else {
        for (int i = 0; i < N; ++i) one(i);
    }
    fit_decay(e, significant);
    return e;
}

void check_poles(const PfeExpansion& e, cplx z) {
    if (std::abs(z) < kPoleRadius) throw PoleProximityError("pfe_eval: z within 1e-8 of the pole at 0");
    for (int m = 1; m <= e.N; ++m) {
        double j = e.zeros(m);
        if (std::abs(z - j) < kPoleRadius || std::abs(z + j) < kPoleRadius)
            throw PoleProximityError(fmt::format("pfe_eval: z within 1e-8 of the pole at +-{}", j));
    }
}

}  // namespace

PfeExpansion build_pfe(const TransformSpec& s, double mu, int N) { return pfe_impl(s, mu, N, true); }

PfeExpansion build_pfe_serial(const TransformSpec& s, double mu, int N) { return pfe_impl(s, mu, N, false); }

Estimate<cplx> pfe_eval(const PfeExpansion& e, cplx z) {
    check_poles(e, z);
    cplx sum = 0.0;
    for (int m = e.N; m >= 1; --m) {
        double j = e.zeros(m);
        sum += e.residues[m - 1] * (2.0 * z / (z * z - j * j));
    }
    cplx value = e.b0 / z - 2.0 * (e.mu + 1.0) * sum;
    double tail = 0.0;
    if (e.decay_constant > 0.0 && std::isfinite(e.decay_exponent)) {
        double ex = e.decay_exponent, jn = e.zeros(e.N);
        // Σ_{m>N} C j^{−ex} · 2|z|/j² with j_m ≈ j_N + π(m − N).
        tail = 4.0 * (e.mu + 1.0) * std::abs(z) * e.decay_constant * std::pow(jn, -ex - 1.0) / (kPi * (ex + 1.0));
    }
    return {value, tail};
}

double pfe_residual(const PfeExpansion& e, const TransformSpec& s, cplx z) {
    auto rhs = pfe_eval(e, z);
    cplx lhs = ht_eval(s, z).value / (z * jbar_eval(e.mu, z));
    return std::abs(lhs - rhs.value);
}

double pfe_residual(const TransformSpec& s, double mu, cplx z, int N) { return pfe_residual(build_pfe(s, mu, N), s, z); }

// ---------------------------------------------------------------------------
// Sampling.

SampleSet make_samples(const TransformSpec& s, double mu, int N) {
    check_mu_range(s.nu, mu);
    SampleSet out;
    out.mu = mu;
    out.zeros = zero_table(mu, N);
    out.phi0 = moment(s.f, s.nu, 0);
    out.values.assign(N, 0.0);
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 4) num_threads(thread_count())
    for (int i = 0; i < N; ++i) {
        try {
            out.values[i] = ht_eval(s, out.zeros.zeros[i]).value;
        } catch (...) {
#pragma omp critical(hlp_sample_error)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

cplx sampling_reconstruct(double nu, double mu, const SampleSet& samples, cplx z) {
    check_mu_range(nu, mu);
    if (samples.mu != mu) throw DomainError("sample set was taken at a different order mu");
    const auto& js = samples.zeros.zeros;
    for (std::size_t m = 0; m < js.size(); ++m)
        if (std::abs(z - js[m]) < kSampleSwitch || std::abs(z + js[m]) < kSampleSwitch) return samples.values[m];
    BesselKernel kmu1(mu + 1.0);
    cplx z2 = z * z, sum = 0.0;
    for (std::size_t m = js.size(); m-- > 0;) {
        double j = js[m];
        // 1/(j J̄'_μ(j)) = −2(μ+1) / (j² J̄_{μ+1}(j))
        double c = -2.0 * (mu + 1.0) * samples.values[m] / (j * j * kmu1(j));
        sum += c / (z2 - j * j);
    }
    return jbar_eval(mu, z) * (samples.phi0 + 2.0 * z2 * sum);
}

// ---------------------------------------------------------------------------
// Wronskian.

WronskianValues wronskian_check(const PfeExpansion& e, const TransformSpec& s, double x) {
    if (!(x > 0.0)) throw DomainError("wronskian_check needs x > 0");
    for (double j : e.zeros.zeros)
        if (std::fabs(x - j) < kPoleRadius)
            throw PoleProximityError(fmt::format("wronskian_check: x within 1e-8 of zero {}", j));
    double sum = 0.0;
    for (int m = e.N; m >= 1; --m) {
        double j = e.zeros(m), d = x * x - j * j;
        sum += e.residues[m - 1] * j * j / (d * d);
    }
    double jm = jbar_eval(e.mu, x);
    WronskianValues w;
    w.series_value = 8.0 * x * (e.mu + 1.0) * jm * jm * sum;
    double h = ht_eval(s, x).value, hp = ht_deriv(s, x).value;
    w.direct_value = jm * hp - jbar_deriv(e.mu, x) * h;
    return w;
}

WronskianValues wronskian_check(const TransformSpec& s, double mu, double x, int N) {
    return wronskian_check(build_pfe(s, mu, N), s, x);
}

// ---------------------------------------------------------------------------

std::string pfe_to_json(const PfeExpansion& e) {
    std::string out = fmt::format("{{\"nu\":{:.17g},\"mu\":{:.17g},\"N\":{},\"b0\":{:.17g},\"zeros\":[", e.nu, e.mu,
                                  e.N, e.b0);
    for (int m = 0; m < e.N; ++m) out += fmt::format("{}{:.17g}", m ? "," : "", e.zeros.zeros[m]);
    out += "],\"residues\":[";
    for (int m = 0; m < e.N; ++m) out += fmt::format("{}{:.17g}", m ? "," : "", e.residues[m]);
    out += "]}";
    return out;
}

std::string samples_to_csv(const SampleSet& s) {
    std::string out = "m,j_mu_m,phi\n";
    for (std::size_t m = 0; m < s.values.size(); ++m)
        out += fmt::format("{},{:.17g},{:.17g}\n", m + 1, s.zeros.zeros[m], s.values[m]);
    return out;
}

}  // namespace hlp
