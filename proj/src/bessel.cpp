#include "hlp/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <exception>
#include <fmt/format.h>
#include <limits>

#include "hlp/dd.hpp"
#include "hlp/error.hpp"
#include "hlp/parallel.hpp"
#include "hlp/special.hpp"

namespace hlp {

namespace {

constexpr int kMaxSeriesTerms = 600;
constexpr int kMaxHankelTerms = 80;
constexpr double kDoubleSeriesRadius = 4.0;
constexpr double kMaxImag = 50.0;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kDdEps = 1e-32;

void check_order(double nu) {
    if (!std::isfinite(nu)) throw DomainError(fmt::format("invalid order nu = {}", nu));
    if (nu <= -1.0 && nu == std::floor(nu))
        throw DomainError(fmt::format("invalid order nu = {}: (nu+1)_m vanishes", nu));
}

// Representative of {z, -z} used for evaluation, so evenness is exact.
cplx canonical(cplx z) {
    if (z.real() < 0.0 || (z.real() == 0.0 && z.imag() < 0.0)) return -z;
    return z;
}

}  // namespace

double series_switch_radius(double nu) { return std::max(30.0, 10.0 + 2.0 * std::fabs(nu)); }

BesselKernel::BesselKernel(double nu) : nu_(nu), radius_(series_switch_radius(nu)) {
    check_order(nu);
    pref_ = gamma_fn(nu + 1.0) * std::pow(2.0, nu) * std::sqrt(2.0 / kPi);
    double phi = (0.5 * nu + 0.25) * kPi;
    cos_phi_ = std::cos(phi);
    sin_phi_ = std::sin(phi);
    // a_k(ν) = Π_{i=1..k} (4ν² − (2i−1)²) / (k! 8^k)
    double four_nu2 = 4.0 * nu * nu;
    double a = 1.0;
    hankel_coef_.push_back(a);
    for (int k = 1; k < kMaxHankelTerms; ++k) {
        double odd = 2.0 * k - 1.0;
        a *= (four_nu2 - odd * odd) / (8.0 * k);
        hankel_coef_.push_back(a);
        if (a == 0.0) break;  // half-integer order: the expansion terminates
    }
}

Estimate<double> BesselKernel::eval(double x) const {
    x = std::fabs(x);
    if (x == 0.0) return {1.0, 0.0};
    if (x <= kDoubleSeriesRadius) return series_double(x);
    if (x <= radius_) return series_dd(x);
    return asymptotic(x);
}

Estimate<cplx> BesselKernel::eval(cplx z) const {
    z = canonical(z);
    if (z.imag() == 0.0) {
        auto r = eval(z.real());
        return {cplx(r.value, 0.0), r.error};
    }
    if (std::abs(z) <= radius_) return series_complex(z);
    return asymptotic(z);
}

Estimate<double> BesselKernel::series_double(double x) const {
    double w = -0.25 * x * x;
    double term = 1.0, sum = 1.0, abs_sum = 1.0;
    for (int k = 1; k < kMaxSeriesTerms; ++k) {
        term *= w / (k * (nu_ + k));
        sum += term;
        abs_sum += std::fabs(term);
        if (k * (nu_ + k) > -w && std::fabs(term) < 1e-18 * std::fabs(sum)) break;
        if (term == 0.0) break;
    }
    return {sum, 4.0 * kEps * abs_sum};
}

Estimate<double> BesselKernel::series_dd(double x) const {
    dd w = mul_exact(x, x) * -0.25;
    double wabs = 0.25 * x * x;
    dd term(1.0), sum(1.0);
    double abs_sum = 1.0;
    for (int k = 1; k < kMaxSeriesTerms; ++k) {
        dd denom = ddetail::two_sum(nu_, static_cast<double>(k)) * static_cast<double>(k);
        term = term * w / denom;
        sum += term;
        double at = abs(term);
        abs_sum += at;
        if (k * (nu_ + k) > wabs && at < kDdEps * std::max(abs(sum), 1e-300)) break;
        if (at == 0.0) break;
    }
    double value = sum.to_double();
    return {value, 8.0 * kDdEps * abs_sum + kEps * std::fabs(value)};
}

Estimate<double> BesselKernel::asymptotic(double x) const {
    double inv = 1.0 / x;
    double p = 0.0, q = 0.0, pw = 1.0, prev = std::numeric_limits<double>::infinity();
    double trunc = 0.0;
    for (std::size_t k = 0; k < hankel_coef_.size(); ++k) {
        double t = hankel_coef_[k] * pw;
        if (t == 0.0) { trunc = 0.0; break; }
        // Past the initial hump (2k−1 > 2|ν|) the terms decrease until the
        // expansion starts to diverge; stop at the smallest term.
        if (2.0 * k - 1.0 > 2.0 * std::fabs(nu_) && std::fabs(t) > prev) { trunc = prev; break; }
        double s = ((k / 2) % 2 == 0) ? t : -t;
        if (k % 2 == 0) p += s; else q += s;
        prev = std::fabs(t);
        trunc = prev;
        if (prev < 1e-17) { trunc = 0.0; break; }
        pw *= inv;
    }
    double c = std::cos(x), s = std::sin(x);
    double cw = c * cos_phi_ + s * sin_phi_;   // cos(x − φ)
    double sw = s * cos_phi_ - c * sin_phi_;   // sin(x − φ)
    double amp = pref_ * std::pow(x, -nu_ - 0.5);
    double value = amp * (p * cw - q * sw);
    double err = amp * (trunc + 4.0 * kEps * (std::fabs(p) + std::fabs(q)));
    return {value, err};
}

Estimate<cplx> BesselKernel::series_complex(cplx z) const {
    double r = std::abs(z);
    if (r <= kDoubleSeriesRadius) {
        cplx w = -0.25 * z * z;
        cplx term = 1.0, sum = 1.0;
        double abs_sum = 1.0;
        for (int k = 1; k < kMaxSeriesTerms; ++k) {
            term *= w / (k * (nu_ + k));
            sum += term;
            abs_sum += std::abs(term);
            if (k * (nu_ + k) > 0.25 * r * r && std::abs(term) < 1e-18 * std::abs(sum)) break;
            if (term == 0.0) break;
        }
        return {sum, 4.0 * kEps * abs_sum};
    }
    double x = z.real(), y = z.imag();
    cdd z2(mul_exact(x, x) - mul_exact(y, y), mul_exact(x, y) * 2.0);
    cdd w = z2 * -0.25;
    double wabs = 0.25 * r * r;
    cdd term(dd(1.0)), sum(dd(1.0));
    double abs_sum = 1.0;
    for (int k = 1; k < kMaxSeriesTerms; ++k) {
        dd denom = ddetail::two_sum(nu_, static_cast<double>(k)) * static_cast<double>(k);
        term = (term * w) / denom;
        sum += term;
        double at = abs(term);
        abs_sum += at;
        if (k * (nu_ + k) > wabs && at < kDdEps * std::max(abs(sum), 1e-300)) break;
        if (at == 0.0) break;
    }
    cplx value = sum.to_complex();
    return {value, 8.0 * kDdEps * abs_sum + kEps * std::abs(value)};
}

Estimate<cplx> BesselKernel::asymptotic(cplx z) const {
    if (std::fabs(z.imag()) > kMaxImag)
        throw OverflowError(fmt::format("jbar: |Im z| = {} exceeds {} on the asymptotic branch",
                                        std::fabs(z.imag()), kMaxImag));
    cplx inv = 1.0 / z;
    cplx p = 0.0, q = 0.0, pw = 1.0;
    double prev = std::numeric_limits<double>::infinity(), trunc = 0.0;
    for (std::size_t k = 0; k < hankel_coef_.size(); ++k) {
        cplx t = hankel_coef_[k] * pw;
        double at = std::abs(t);
        if (at == 0.0) { trunc = 0.0; break; }
        if (2.0 * k - 1.0 > 2.0 * std::fabs(nu_) && at > prev) { trunc = prev; break; }
        cplx s = ((k / 2) % 2 == 0) ? t : -t;
        if (k % 2 == 0) p += s; else q += s;
        prev = at;
        trunc = at;
        if (at < 1e-17) { trunc = 0.0; break; }
        pw *= inv;
    }
    cplx c = std::cos(z), s = std::sin(z);
    cplx cw = c * cos_phi_ + s * sin_phi_;
    cplx sw = s * cos_phi_ - c * sin_phi_;
    cplx amp = pref_ * std::exp((-nu_ - 0.5) * std::log(z));
    cplx value = amp * (p * cw - q * sw);
    double scale = std::abs(amp) * (std::abs(cw) + std::abs(sw));
    double err = scale * (trunc + 4.0 * kEps * (std::abs(p) + std::abs(q)));
    return {value, err};
}

namespace {

// Small per-thread cache: repeated free-function calls at one order reuse
// the kernel instead of recomputing Γ and the Hankel coefficients.
const BesselKernel& cached_kernel(double nu) {
    thread_local std::deque<BesselKernel> cache;
    for (const auto& k : cache)
        if (k.nu() == nu) return k;
    if (cache.size() >= 8) cache.pop_front();
    cache.emplace_back(nu);
    return cache.back();
}

}  // namespace

Estimate<cplx> jbar_eval_estimate(double nu, cplx z) { return cached_kernel(nu).eval(z); }

cplx jbar_eval(double nu, cplx z) { return cached_kernel(nu).eval(z).value; }

double jbar_eval(double nu, double x) { return cached_kernel(nu).eval(x).value; }

double j_eval(double nu, double x) {
    if (!(x > 0.0)) throw DomainError(fmt::format("j_eval: need x > 0 (got {})", x));
    check_order(nu);
    if (nu == 0.0) return jbar_eval(0.0, x);
    double scale = std::exp(nu * std::log(0.5 * x) - lgamma_fn(nu + 1.0));
    if (nu + 1.0 < 0.0 && gamma_fn(nu + 1.0) < 0.0) scale = -scale;
    return scale * jbar_eval(nu, x);
}

cplx jbar_deriv(double nu, cplx z) {
    if (!(nu > -1.0)) throw DomainError(fmt::format("jbar_deriv: order must exceed -1 (got {})", nu));
    return -z / (2.0 * (nu + 1.0)) * jbar_eval(nu + 1.0, z);
}

double jbar_deriv(double nu, double x) {
    if (!(nu > -1.0)) throw DomainError(fmt::format("jbar_deriv: order must exceed -1 (got {})", nu));
    return -x / (2.0 * (nu + 1.0)) * jbar_eval(nu + 1.0, x);
}

double zero_seed(double mu, int m) { return (m + 0.5 * mu - 0.25) * kPi; }

namespace {

constexpr double kScanStep = 0.5;

void check_zero_args(double mu, int m) {
    if (!(mu > -1.0) || !std::isfinite(mu))
        throw DomainError(fmt::format("Bessel zeros need mu > -1 (got {})", mu));
    if (m < 1) throw DomainError(fmt::format("zero index must be >= 1 (got {})", m));
}

// Sign-change brackets for the first M zeros of J̄_μ.  The scan step is far
// below the minimal zero spacing (> 2 for every μ > −1), so no zero is missed
// and bracket k holds exactly the k-th zero.
std::vector<std::pair<double, double>> scan_brackets(const BesselKernel& k, int M) {
    std::vector<std::pair<double, double>> out;
    out.reserve(static_cast<std::size_t>(M));
    double lo = 0.0, flo = 1.0;
    // Start the scan close to the first zero when the order is large.
    if (k.nu() > 2.0) {
        double start = std::floor(std::max(0.0, k.nu() - 2.0 * std::cbrt(k.nu()) - 2.0) / kScanStep) * kScanStep;
        double fs = k(start);
        if (fs > 0.0) { lo = start; flo = fs; }
    }
    while (static_cast<int>(out.size()) < M) {
        double hi = lo + kScanStep;
        double fhi = k(hi);
        if (fhi == 0.0) {  // landed exactly on a zero: widen slightly
            hi += 0.25 * kScanStep;
            fhi = k(hi);
        }
        if ((flo > 0.0) != (fhi > 0.0)) out.emplace_back(lo, hi);
        lo = hi;
        flo = fhi;
        if (lo > 1e7) throw BracketError("Bessel zero scan ran past x = 1e7");
    }
    return out;
}

// Safeguarded Newton on a sign-change bracket; bisection when a step escapes.
double refine_zero(const BesselKernel& kmu, const BesselKernel& kmu1, double lo, double hi) {
    double mu = kmu.nu();
    double flo = kmu(lo), fhi = kmu(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw BracketError(fmt::format("no sign change of Jbar_{} on [{}, {}]", mu, lo, hi));
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        double f = kmu(x);
        if (f == 0.0) return x;
        if ((f > 0.0) == (flo > 0.0)) { lo = x; flo = f; } else { hi = x; }
        double d = -x / (2.0 * (mu + 1.0)) * kmu1(x);
        double xn = (d != 0.0) ? x - f / d : 0.5 * (lo + hi);
        if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
        if (std::fabs(xn - x) <= 2.0 * kEps * x) return xn;
        x = xn;
        if (hi - lo <= 2.0 * kEps * x) return 0.5 * (lo + hi);
    }
    throw ConvergenceError(fmt::format("zero refinement for mu = {} did not converge near {}", mu, x));
}

ZeroTable build_table(double mu, int M, bool parallel) {
    check_zero_args(mu, M);
    BesselKernel kmu(mu), kmu1(mu + 1.0);
    ZeroTable t;
    t.mu = mu;
    t.brackets = scan_brackets(kmu, M);
    t.zeros.assign(static_cast<std::size_t>(M), 0.0);
    if (parallel) {
        std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 16) num_threads(thread_count())
        for (int m = 0; m < M; ++m) {
            try {
                t.zeros[m] = refine_zero(kmu, kmu1, t.brackets[m].first, t.brackets[m].second);
            } catch (...) {
#pragma omp critical(hlp_zero_table_error)
                if (!failure) failure = std::current_exception();
            }
        }
        if (failure) std::rethrow_exception(failure);
    } else {
        for (int m = 0; m < M; ++m)
            t.zeros[m] = refine_zero(kmu, kmu1, t.brackets[m].first, t.brackets[m].second);
    }
    for (int m = 1; m < M; ++m)
        if (!(t.zeros[m] > t.zeros[m - 1]))
            throw BracketError(fmt::format("zero table for mu = {} not increasing at m = {}", mu, m + 1));
    return t;
}

}  // namespace

ZeroTable zero_table(double mu, int M) { return build_table(mu, M, true); }

ZeroTable zero_table_serial(double mu, int M) { return build_table(mu, M, false); }

double bessel_zero(double mu, int m) {
    check_zero_args(mu, m);
    const BesselKernel& kmu = cached_kernel(mu);
    BesselKernel kmu1(mu + 1.0);
    double beta = zero_seed(mu, m);
    if (beta >= std::max(30.0, 2.0 * mu * mu)) {
        // Seed error is below (4μ²+1)/(8β) <= 0.3 here; the window [β−1, β+1]
        // is narrower than the zero spacing, so it holds at most this zero.
        double lo = beta - 1.0, hi = beta + 1.0;
        if ((kmu(lo) > 0.0) != (kmu(hi) > 0.0)) {
            double z = refine_zero(kmu, kmu1, lo, hi);
            // Index check: sgn J̄_{μ+1}(j_{μ,m}) = (−1)^{m+1}.
            bool expect_positive = (m % 2 == 1);
            if ((kmu1(z) > 0.0) == expect_positive) return z;
        }
    }
    auto br = scan_brackets(kmu, m);
    return refine_zero(kmu, kmu1, br.back().first, br.back().second);
}

}  // namespace hlp
