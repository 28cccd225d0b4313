#include "hlp/onef2.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <fmt/format.h>
#include <limits>

#include "hlp/dd.hpp"
#include "hlp/error.hpp"
#include "hlp/parallel.hpp"
#include "hlp/special.hpp"
#include "hlp/version.hpp"

namespace hlp {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kDdEps = 4.93038065763132e-32;  // 2^−104
constexpr double kMeasureZeroTol = 1e-12;
constexpr double kNearSTol = 1e-9;
constexpr int kMaxTerms = 400;
constexpr double kMaxModulus = 200.0;

// Σ t_k or Σ 2k t_k with t_{k+1} = t_k · (a+k)/((b+k)(c+k)(k+1)) · (−z²/4).
Estimate<cplx> series(const OneF2Params& p, cplx z, int K, bool zderiv) {
    validate(p);
    if (!(std::abs(z) <= kMaxModulus))
        throw ConvergenceError(fmt::format("1F2 series refused at |z| = {:.6g} > {}", std::abs(z), kMaxModulus));
    if (K < 0) throw DomainError("series truncation K must be >= 0");
    const int kmax = K > 0 ? K : kMaxTerms;
    cdd zz(z);
    cdd w = zz * zz * dd(-0.25);
    const double wabs = std::abs(z) * std::abs(z) / 4.0;
    cdd t(dd(1.0));
    cdd sum = zderiv ? cdd(dd(0.0)) : t;
    double absum = zderiv ? 0.0 : 1.0;
    for (int k = 0; k < kmax; ++k) {
        double kk = static_cast<double>(k);
        dd r = ddetail::two_sum(p.a, kk) /
               (ddetail::two_sum(p.b, kk) * ddetail::two_sum(p.c, kk) * (kk + 1.0));
        t = t * w * r;
        cdd term = zderiv ? t * (2.0 * (kk + 1.0)) : t;
        sum += term;
        double at = abs(term);
        absum += at;
        if (!std::isfinite(absum)) throw OverflowError(fmt::format("1F2 series overflow at |z| = {:.6g}", std::abs(z)));
        // Terms decrease geometrically once the ratio is below 1/2.
        double ratio = wabs * std::fabs((p.a + kk + 1.0) / ((p.b + kk + 1.0) * (p.c + kk + 1.0) * (kk + 2.0)));
        if (ratio < 0.5 && at <= 0x1p-110 * absum) {
            Estimate<cplx> out;
            out.value = sum.to_complex();
            out.error = 8.0 * (k + 2) * kDdEps * absum + 0.5 * kEps * std::abs(out.value);
            return out;
        }
    }
    throw ConvergenceError(fmt::format("1F2 series did not converge within {} terms at |z| = {:.6g}", kmax,
                                       std::abs(z)));
}

bool near(double x, double y) {
    return std::fabs(x - y) <= kMeasureZeroTol * std::max({1.0, std::fabs(x), std::fabs(y)});
}

bool is_int(double x) { return near(x, std::round(x)); }

bool in_I(double a, double c) {
    if (a < 1.0) return 1.0 - a <= c && c <= 2.0 * a - 0.5;
    return 0.0 < c && c <= a / 2.0 + 1.0;
}

bool in_L(double a, double c) {
    if (a <= 0.75) return 1.0 - a <= c && c <= 2.0 * a - 0.5;
    if (a <= 5.0 / 6.0) return (0.0 < c && c <= 2.0 * a - 1.5) || (1.0 - a <= c && c <= 2.0 * a - 0.5);
    if (a < 1.0) return 0.0 < c && c <= 2.0 * a - 0.5;
    return 0.0 < c && c <= (a + std::floor(a - 1.0)) / 2.0 + 1.0;
}

std::string describe_I(double a) {
    if (a < 1.0) return fmt::format("[{:.17g}, {:.17g}]", 1.0 - a, 2.0 * a - 0.5);
    return fmt::format("(0, {:.17g}]", a / 2.0 + 1.0);
}

std::string describe_L(double a) {
    if (a <= 0.75) return fmt::format("[{:.17g}, {:.17g}]", 1.0 - a, 2.0 * a - 0.5);
    if (a <= 5.0 / 6.0)
        return fmt::format("(0, {:.17g}] U [{:.17g}, {:.17g}]", 2.0 * a - 1.5, 1.0 - a, 2.0 * a - 0.5);
    if (a < 1.0) return fmt::format("(0, {:.17g}]", 2.0 * a - 0.5);
    return fmt::format("(0, {:.17g}]", (a + std::floor(a - 1.0)) / 2.0 + 1.0);
}

bool type1(double A, double B, double C) {
    return is_int(A - B) && std::round(A - B) >= 0.0 && B > 0.0 && C > 0.0;
}

// Smallest admissible m for the Type 2 family, or −1.
int type2_shift(double A, double B, double C) {
    if (!(B > 0.0 && C > 0.0)) return -1;
    double nb = B - A - 0.5;
    if (!is_int(nb) || std::round(nb) > 0.0) return -1;
    if (!is_int(C - 2.0 * A)) return -1;
    double mmax = std::round(2.0 * A - C);
    for (int m = 0; m <= mmax && m < A + 0.5; ++m)
        if (!near(A - m, 0.0)) return m;
    return -1;
}

bool type3(double A, double B, double C, int* mm = nullptr, int* kk = nullptr) {
    double m = A - 0.5;
    if (!is_int(m) || std::round(m) < 0.0 || !(B > 0.0 && C > 0.0) || !is_int(B + C)) return false;
    int mi = static_cast<int>(std::round(m)), k = static_cast<int>(std::round(B + C));
    if (mm) *mm = mi;
    if (kk) *kk = k;
    return 1 <= k && k <= 2 * mi + 2;
}

double p_threshold(double a, double b) { return std::max(3.0 * a + 0.5 - b, a + a / (2.0 * (b - a))); }

bool near_S(double a, double b, double c) {
    auto close = [&](double x, double y) { return std::fabs(b - x) <= kNearSTol && std::fabs(c - y) <= kNearSTol; };
    return close(a + 0.5, 2.0 * a) || close(2.0 * a, a + 0.5);
}

const char* membership_name(unsigned bit) {
    switch (bit) {
        case kN: return "N_a";
        case kP: return "P_a";
        case kS: return "S_a";
        case kZ: return "Z_a";
        case kZstar: return "Z_a*";
        case kX: return "X_a";
        case kXstar: return "X_a*";
        case kType1: return "Type1";
        case kType2: return "Type2";
        case kType3: return "Type3";
        default: return "?";
    }
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        if (ch == '"' || ch == '\\') out += '\\';
        out += ch;
    }
    return out;
}

}  // namespace

void validate(const OneF2Params& p) {
    if (!std::isfinite(p.a) || !std::isfinite(p.b) || !std::isfinite(p.c))
        throw DomainError("1F2 parameters must be finite");
    if (is_nonpositive_integer(p.b) || is_nonpositive_integer(p.c))
        throw DomainError(fmt::format("1F2 denominator parameters must not be non-positive integers (b = {}, c = {})",
                                      p.b, p.c));
}

Estimate<cplx> phi_eval_estimate(const OneF2Params& p, cplx z, int K) { return series(p, z, K, false); }

cplx phi_eval(const OneF2Params& p, cplx z, int K) { return series(p, z, K, false).value; }

double phi_eval(const OneF2Params& p, double x, int K) { return series(p, cplx(x, 0.0), K, false).value.real(); }

Estimate<cplx> phi_zderiv_estimate(const OneF2Params& p, cplx z, int K) { return series(p, z, K, true); }

const char* to_string(LpVerdict v) {
    switch (v) {
        case LpVerdict::LP: return "LP";
        case LpVerdict::NotLP: return "NotLP";
        default: return "Undetermined";
    }
}

unsigned region_mask(const OneF2Params& p) {
    const double a = p.a, b = p.b, c = p.c;
    unsigned m = 0;
    if (a > 0.0) {
        if (b <= a || c <= a || b + c < 3.0 * a + 0.5) m |= kN;
        if (b > a && c >= p_threshold(a, b)) m |= kP;
        if ((near(b, a + 0.5) && near(c, 2.0 * a)) || (near(b, 2.0 * a) && near(c, a + 0.5))) m |= kS;
    }
    if (a > 0.5) {
        if (a < b && b <= a + 1.0 && in_I(a, c)) m |= kZ;
        if (a < c && c <= a + 1.0 && in_I(a, b)) m |= kZstar;
        if (0.0 < b && b <= a + 1.0 && in_L(a, c)) m |= kX;
        if (0.0 < c && c <= a + 1.0 && in_L(a, b)) m |= kXstar;
    }
    if (type1(a, b, c) || type1(a, c, b)) m |= kType1;
    if (type2_shift(a, b, c) >= 0 || type2_shift(a, c, b) >= 0) m |= kType2;
    if (type3(a, b, c)) m |= kType3;
    return m;
}

LpVerdict lp_from_mask(unsigned mask) {
    bool lp = (mask & kLpSufficient) != 0;
    bool notlp = (mask & kP) && !(mask & kS);
    if (lp && notlp) throw ClassificationError("LP certificate and P_a \\ S_a membership both fired");
    if (lp) return LpVerdict::LP;
    if (notlp) return LpVerdict::NotLP;
    return LpVerdict::Undetermined;
}

RegionVerdict classify_region(const OneF2Params& p) {
    validate(p);
    RegionVerdict v;
    v.a = p.a;
    v.b = p.b;
    v.c = p.c;
    v.mask = region_mask(p);
    for (unsigned bit = 1; bit <= kType3; bit <<= 1)
        if (v.mask & bit) v.memberships.emplace_back(membership_name(bit));
    v.near_S = p.a > 0.0 && !(v.mask & kS) && near_S(p.a, p.b, p.c);
    const double a = p.a, b = p.b, c = p.c;
    std::vector<std::string> cert;
    if (v.mask & kS) cert.push_back("S_a: (b, c) is (a+1/2, 2a) up to order; Phi = Jbar_{a-1/2}(z/2)^2 has only real double zeros");
    if (v.mask & kZ)
        cert.push_back(fmt::format("Z_a: a < b = {:.17g} <= a+1 and c = {:.17g} in I_a = {}", b, c, describe_I(a)));
    if (v.mask & kZstar)
        cert.push_back(fmt::format("Z_a*: a < c = {:.17g} <= a+1 and b = {:.17g} in I_a = {}", c, b, describe_I(a)));
    if (v.mask & kX)
        cert.push_back(fmt::format("X_a: 0 < b = {:.17g} <= a+1 and c = {:.17g} in L_a = {}", b, c, describe_L(a)));
    if (v.mask & kXstar)
        cert.push_back(fmt::format("X_a*: 0 < c = {:.17g} <= a+1 and b = {:.17g} in L_a = {}", c, b, describe_L(a)));
    if (v.mask & kType1) {
        bool direct = type1(a, b, c);
        cert.push_back(fmt::format("Type1: a - {} = {:.17g} is a nonnegative integer, b, c > 0 (shifted Bessel line)",
                                   direct ? "b" : "c", a - (direct ? b : c)));
    }
    if (v.mask & kType2) {
        bool direct = type2_shift(a, b, c) >= 0;
        double B = direct ? b : c, C = direct ? c : b;
        int m = type2_shift(a, B, C);
        cert.push_back(fmt::format(
            "Type2: base a0 = {:.17g} with shifts (m, n, l) = ({}, {}, {}) of (a0, a0+1/2, 2a0){}", a - m, m,
            static_cast<int>(std::round(B - (a - m) - 0.5)), static_cast<int>(std::round(C - 2.0 * (a - m))),
            direct ? "" : " with b and c exchanged"));
    }
    if (v.mask & kType3) {
        int m = 0, k = 0;
        type3(a, b, c, &m, &k);
        cert.push_back(fmt::format("Type3: a = 1/2 + {}, b + c = {} <= 2m+2 = {}", m, k, 2 * m + 2));
    }
    v.lp = lp_from_mask(v.mask);
    if (v.lp == LpVerdict::LP) {
        for (std::size_t i = 0; i < cert.size(); ++i) v.certificate += (i ? "; " : "") + cert[i];
    } else if (v.lp == LpVerdict::NotLP) {
        v.certificate = fmt::format(
            "P_a \\ S_a: b - a = {:.17g} > 0, c - max(3a+1/2-b, a+a/(2(b-a))) = {:.17g} >= 0; Phi(x) > 0 for x > 0 "
            "so Phi has no real zeros and at least four non-real zeros",
            b - a, c - p_threshold(a, b));
    } else {
        v.certificate = "no LP-sufficient region or type applies and (b, c) is not in P_a \\ S_a";
    }
    if (v.near_S) v.certificate += " [flag: within 1e-9 of S_a]";
    return v;
}

std::string verdict_to_json(const RegionVerdict& v) {
    std::string mem = "[";
    for (std::size_t i = 0; i < v.memberships.size(); ++i) mem += fmt::format("{}\"{}\"", i ? "," : "", v.memberships[i]);
    mem += "]";
    return fmt::format(
        "{{\"a\":{:.17g},\"b\":{:.17g},\"c\":{:.17g},\"memberships\":{},\"lp\":\"{}\",\"certificate\":\"{}\","
        "\"near_S_a\":{}}}",
        v.a, v.b, v.c, mem, to_string(v.lp), json_escape(v.certificate), v.near_S ? "true" : "false");
}

std::optional<TransferPath> transfer_search(const OneF2Params& p, int max_shift) {
    validate(p);
    if (max_shift < 0 || max_shift > 64) throw DomainError("transfer search budget must be in [0, 64]");
    // −b_seed < n and −c_seed < ℓ reduce to b > 0 and c > 0 for every shift.
    if (!(p.b > 0.0 && p.c > 0.0)) return std::nullopt;
    // Shift order: m ascending, then n and ℓ by magnitude (nonnegative first).
    auto order = [&](int hi) {
        std::vector<int> v;
        for (int k = 0; k <= max_shift; ++k) {
            if (k <= hi) v.push_back(k);
            if (k > 0) v.push_back(-k);
        }
        return v;
    };
    for (int m = 0; m <= max_shift; ++m)
        for (int n : order(m))
            for (int l : order(m)) {
                OneF2Params seed{p.a - m, p.b - n, p.c - l};
                if (is_nonpositive_integer(seed.b) || is_nonpositive_integer(seed.c)) continue;
                unsigned mask = region_mask(seed);
                if (lp_from_mask(mask) != LpVerdict::LP) continue;
                TransferPath path{seed, "", m, n, l};
                for (unsigned bit : {kType1, kType2, kType3, kS, kZ, kZstar, kX, kXstar})
                    if (mask & bit) {
                        path.seed_family = membership_name(bit);
                        break;
                    }
                return path;
            }
    return std::nullopt;
}

bool transfer_replay(const TransferPath& path, const OneF2Params& target) {
    const auto& s = path.seed;
    if (path.m < 0 || path.n > path.m || path.l > path.m) return false;
    if (!(-s.b < path.n) || !(-s.c < path.l)) return false;
    if (!near(s.a + path.m, target.a) || !near(s.b + path.n, target.b) || !near(s.c + path.l, target.c)) return false;
    if (is_nonpositive_integer(s.b) || is_nonpositive_integer(s.c)) return false;
    return lp_from_mask(region_mask(s)) == LpVerdict::LP;
}

double operator_identity_check(const OneF2Params& p, int which, cplx z) {
    validate(p);
    cplx zd = phi_zderiv_estimate(p, z).value;
    switch (which) {
        case 1: {
            if (p.a == 0.0) throw DomainError("identity 1 requires a != 0");
            cplx rhs = -p.a * z * z / (2.0 * p.b * p.c) * phi_eval(OneF2Params{p.a + 1.0, p.b + 1.0, p.c + 1.0}, z);
            return std::abs(zd - rhs);
        }
        case 2: {
            if (p.b == 1.0) throw DomainError("identity 2 requires b != 1");
            cplx lhs = zd + 2.0 * (p.b - 1.0) * phi_eval(p, z);
            cplx rhs = 2.0 * (p.b - 1.0) * phi_eval(OneF2Params{p.a, p.b - 1.0, p.c}, z);
            return std::abs(lhs - rhs);
        }
        case 3: {
            if (p.c == 1.0) throw DomainError("identity 3 requires c != 1");
            cplx lhs = zd + 2.0 * (p.c - 1.0) * phi_eval(p, z);
            cplx rhs = 2.0 * (p.c - 1.0) * phi_eval(OneF2Params{p.a, p.b, p.c - 1.0}, z);
            return std::abs(lhs - rhs);
        }
        default: throw DomainError(fmt::format("identity index must be 1, 2 or 3 (got {})", which));
    }
}

namespace {

struct BoundaryTooClose : std::exception {};

struct PhaseTracker {
    const OneF2Params& p;

    cplx eval(cplx z) const {
        auto e = phi_eval_estimate(p, z);
        if (!(std::abs(e.value) > 1e3 * e.error)) throw BoundaryTooClose{};
        return e.value;
    }

    // Phase increment along [za, zb]; split until both halves turn by less
    // than π/2 and add up to the whole (guards against winding loss).
    double segment(cplx za, cplx zb, cplx fa, cplx fb, int depth) const {
        cplx zm = 0.5 * (za + zb);
        cplx fm = eval(zm);
        double d = std::arg(fb / fa);
        double d1 = std::arg(fm / fa), d2 = std::arg(fb / fm);
        if (std::fabs(d1) < kPi / 2 && std::fabs(d2) < kPi / 2 && std::fabs(d1 + d2 - d) < 1e-6) return d1 + d2;
        if (depth > 48) throw BoundaryTooClose{};
        return segment(za, zm, fa, fm, depth + 1) + segment(zm, zb, fm, fb, depth + 1);
    }

    double boundary(const Rect& r) const {
        const cplx v[5] = {{r.x0, r.y0}, {r.x1, r.y0}, {r.x1, r.y1}, {r.x0, r.y1}, {r.x0, r.y0}};
        double total = 0.0;
        for (int e = 0; e < 4; ++e) {
            double len = std::abs(v[e + 1] - v[e]);
            int n = std::max(4, static_cast<int>(std::ceil(len / 0.25)));
            cplx za = v[e], fa = eval(za);
            for (int i = 1; i <= n; ++i) {
                cplx zb = (i == n) ? v[e + 1] : v[e] + (v[e + 1] - v[e]) * (static_cast<double>(i) / n);
                cplx fb = eval(zb);
                total += segment(za, zb, fa, fb, 0);
                za = zb;
                fa = fb;
            }
        }
        return total;
    }
};

}  // namespace

int complex_zero_count(const OneF2Params& p, Rect rect) {
    validate(p);
    if (!(rect.x0 < rect.x1 && rect.y0 < rect.y1)) throw DomainError("rectangle must satisfy x0 < x1 and y0 < y1");
    PhaseTracker tracker{p};
    double last = std::numeric_limits<double>::quiet_NaN();
    for (int attempt = 0; attempt <= 3; ++attempt) {
        double d = 1e-3 * attempt;
        Rect r{rect.x0 - d, rect.x1 + d, rect.y0 - d, rect.y1 + d};
        try {
            double w = tracker.boundary(r) / (2.0 * kPi);
            double n = std::round(w);
            last = w;
            if (std::fabs(w - n) <= 0.25) return static_cast<int>(n);
        } catch (const BoundaryTooClose&) {
        }
    }
    throw NumericalError(fmt::format(
        "argument-principle count failed: boundary too close to a zero after 3 nudges (last winding {:.4f})", last));
}

int four_quadrant_count(const OneF2Params& p, Rect q) {
    return complex_zero_count(p, q) + complex_zero_count(p, Rect{-q.x1, -q.x0, q.y0, q.y1}) +
           complex_zero_count(p, Rect{-q.x1, -q.x0, -q.y1, -q.y0}) + complex_zero_count(p, Rect{q.x0, q.x1, -q.y1, -q.y0});
}

TransformSpec onef2_transform(const OneF2Params& p) {
    validate(p);
    const double a = p.a, b = p.b, c = p.c;
    unsigned m = region_mask(p);
    if (m & kZ) return onef2_spec(a, b, c);
    if (m & kZstar) return onef2_spec(a, c, b);
    if (b > a && a > 0.0) return onef2_spec(a, b, c);
    if (c > a && a > 0.0) return onef2_spec(a, c, b);
    throw DomainError("1F2 triple has no Hankel-transform representation (needs a > 0 and max(b, c) > a)");
}

ZetaSumCheck zeta_sum_check(const OneF2Params& p, int M) {
    validate(p);
    ZetaSumCheck out;
    out.rhs = p.a / (4.0 * p.b * p.c);
    if (p.a == p.b || p.a == p.c) {
        // Φ reduces to J̄ of order (other parameter) − 1.
        double mu = (p.a == p.b ? p.c : p.b) - 1.0;
        ZeroTable t = zero_table(mu, M);
        out.zeros.mu = mu;
        out.zeros.zeta = t.zeros;
        out.zeros.brackets = t.brackets;
        out.zeros.multiplicity.assign(M, 1);
        out.zeros.derivative.assign(M, std::numeric_limits<double>::quiet_NaN());
    } else {
        out.zeros = locate_zeros(onef2_transform(p), M);
    }
    out.lhs = rayleigh_direct(out.zeros, 0).direct[0];
    out.gap = std::fabs(out.lhs - out.rhs);
    return out;
}

ZetaSumCheck zeta_sum_check(const OneF2Params& p, const ZeroList& zeros) {
    validate(p);
    ZetaSumCheck out;
    out.rhs = p.a / (4.0 * p.b * p.c);
    out.zeros = zeros;
    out.lhs = rayleigh_direct(out.zeros, 0).direct[0];
    out.gap = std::fabs(out.lhs - out.rhs);
    return out;
}

namespace {

RegionGrid grid_impl(double a, std::array<double, 2> br, std::array<double, 2> cr, int resolution, bool parallel) {
    if (resolution < 1 || resolution > 2000) throw DomainError("grid resolution must be in [1, 2000]");
    if (!(br[0] < br[1] && cr[0] < cr[1])) throw DomainError("grid ranges must be increasing");
    if (!std::isfinite(a)) throw DomainError("a must be finite");
    RegionGrid g;
    g.a = a;
    g.b_range = br;
    g.c_range = cr;
    g.nb = g.nc = resolution;
    g.mask.assign(static_cast<std::size_t>(resolution) * resolution, 0u);
    auto row = [&](int j) {
        double c = g.c_at(j);
        for (int i = 0; i < g.nb; ++i) {
            double b = g.b_at(i);
            unsigned m = 0;
            if (!is_nonpositive_integer(b) && !is_nonpositive_integer(c)) m = region_mask(OneF2Params{a, b, c});
            g.mask[static_cast<std::size_t>(j) * g.nb + i] = m;
        }
    };
    if (parallel) {
#pragma omp parallel for schedule(static) num_threads(thread_count())
        for (int j = 0; j < g.nc; ++j) row(j);
    } else {
        for (int j = 0; j < g.nc; ++j) row(j);
    }
    return g;
}

}  // namespace

RegionGrid region_grid(double a, std::array<double, 2> b_range, std::array<double, 2> c_range, int resolution) {
    return grid_impl(a, b_range, c_range, resolution, true);
}

RegionGrid region_grid_serial(double a, std::array<double, 2> b_range, std::array<double, 2> c_range,
                              int resolution) {
    return grid_impl(a, b_range, c_range, resolution, false);
}

std::string region_grid_csv(const RegionGrid& g) {
    std::string out = "b,c,verdict,memberships\n";
    for (int j = 0; j < g.nc; ++j)
        for (int i = 0; i < g.nb; ++i) {
            unsigned m = g.at(i, j);
            std::string mem;
            for (unsigned bit = 1; bit <= kType3; bit <<= 1)
                if (m & bit) mem += (mem.empty() ? "" : "|") + std::string(membership_name(bit));
            out += fmt::format("{:.17g},{:.17g},{},{}\n", g.b_at(i), g.c_at(j), to_string(lp_from_mask(m)), mem);
        }
    return out;
}

namespace {

struct Canvas {
    const RegionGrid& g;
    static constexpr double kMargin = 60.0, kSize = 520.0;
    double X(double b) const { return kMargin + (b - g.b_range[0]) / (g.b_range[1] - g.b_range[0]) * kSize; }
    double Y(double c) const { return kMargin + kSize - (c - g.c_range[0]) / (g.c_range[1] - g.c_range[0]) * kSize; }
};

const char* fill_for(LpVerdict v) {
    switch (v) {
        case LpVerdict::LP: return "#a6dba0";
        case LpVerdict::NotLP: return "#f4a582";
        default: return "#f0f0f0";
    }
}

}  // namespace

std::string region_grid_svg(const RegionGrid& g) {
    Canvas cv{g};
    const double a = g.a;
    const double b0 = g.b_range[0], b1 = g.b_range[1], c0 = g.c_range[0], c1 = g.c_range[1];
    const double W = 2 * Canvas::kMargin + Canvas::kSize;
    std::string s;
    s += fmt::format("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{0}\" viewBox=\"0 0 {0} {0}\">\n", W);
    s += fmt::format("<!-- hankel-lp {} -->\n", kVersion);
    s += fmt::format("<title>(b, c) region classification of 1F2(a; b, c; -z^2/4), a = {:.17g}</title>\n", a);
    s += fmt::format("<defs><clipPath id=\"plot\"><rect x=\"{0}\" y=\"{0}\" width=\"{1}\" height=\"{1}\"/></clipPath></defs>\n",
                     Canvas::kMargin, Canvas::kSize);
    // Background raster: runs of equal verdict per row.
    s += "<g id=\"raster\" shape-rendering=\"crispEdges\">\n";
    const double cw = Canvas::kSize / g.nb, ch = Canvas::kSize / g.nc;
    for (int j = 0; j < g.nc; ++j) {
        int i = 0;
        while (i < g.nb) {
            LpVerdict v = lp_from_mask(g.at(i, j));
            int k = i + 1;
            while (k < g.nb && lp_from_mask(g.at(k, j)) == v) ++k;
            s += fmt::format("<rect x=\"{:.3f}\" y=\"{:.3f}\" width=\"{:.3f}\" height=\"{:.3f}\" fill=\"{}\"/>\n",
                             Canvas::kMargin + i * cw, Canvas::kMargin + Canvas::kSize - (j + 1) * ch, (k - i) * cw, ch,
                             fill_for(v));
            i = k;
        }
    }
    s += "</g>\n<g id=\"overlay\" clip-path=\"url(#plot)\" fill=\"none\" stroke-width=\"1.5\">\n";
    auto line = [&](double ba, double ca, double bb, double cb, const char* color, const char* cls) {
        s += fmt::format("<line class=\"{}\" x1=\"{:.3f}\" y1=\"{:.3f}\" x2=\"{:.3f}\" y2=\"{:.3f}\" stroke=\"{}\"/>\n", cls,
                         cv.X(ba), cv.Y(ca), cv.X(bb), cv.Y(cb), color);
    };
    auto rect = [&](double ba, double bb, double ca, double cb, const char* cls) {
        s += fmt::format(
            "<rect class=\"{}\" x=\"{:.3f}\" y=\"{:.3f}\" width=\"{:.3f}\" height=\"{:.3f}\" stroke=\"#1b7837\" "
            "stroke-dasharray=\"6 3\"/>\n",
            cls, cv.X(ba), cv.Y(cb), cv.X(bb) - cv.X(ba), cv.Y(ca) - cv.Y(cb));
    };
    auto point = [&](double b, double c, const char* color, const char* cls) {
        s += fmt::format("<circle class=\"{}\" cx=\"{:.3f}\" cy=\"{:.3f}\" r=\"3.5\" stroke=\"{}\" fill=\"{}\"/>\n", cls,
                         cv.X(b), cv.Y(c), color, color);
    };
    // Type 1: rays b = a − k and c = a − k.
    for (int k = 0; a - k > 0.0; ++k) {
        line(a - k, std::max(c0, 0.0), a - k, c1, "#2166ac", "type1-ray");
        line(std::max(b0, 0.0), a - k, b1, a - k, "#2166ac", "type1-ray");
    }
    // Type 3: segments b + c = k, b, c > 0, when a = 1/2 + m.
    if (a >= 0.5 && is_int(a - 0.5)) {
        int m = static_cast<int>(std::round(a - 0.5));
        for (int k = 1; k <= 2 * m + 2; ++k) line(0.0, k, k, 0.0, "#762a83", "type3-segment");
    }
    // Type 2 lattice points (both orientations).
    for (int n = 0; a + 0.5 - n > 0.0; ++n)
        for (int l = 0; 2.0 * a - l > 0.0; ++l) {
            double B = a + 0.5 - n, C = 2.0 * a - l;
            if (type2_shift(a, B, C) >= 0) {
                point(B, C, "#e08214", "type2-point");
                if (B != C) point(C, B, "#e08214", "type2-point");
            }
        }
    if (a > 0.5) {
        // Z_a and X_a rectangles with their transposes.
        auto I = [&](std::vector<std::array<double, 2>>& out) {
            if (a < 1.0) out.push_back({1.0 - a, 2.0 * a - 0.5});
            else out.push_back({0.0, a / 2.0 + 1.0});
        };
        auto L = [&](std::vector<std::array<double, 2>>& out) {
            if (a <= 0.75) out.push_back({1.0 - a, 2.0 * a - 0.5});
            else if (a <= 5.0 / 6.0) {
                out.push_back({0.0, 2.0 * a - 1.5});
                out.push_back({1.0 - a, 2.0 * a - 0.5});
            } else if (a < 1.0) out.push_back({0.0, 2.0 * a - 0.5});
            else out.push_back({0.0, (a + std::floor(a - 1.0)) / 2.0 + 1.0});
        };
        std::vector<std::array<double, 2>> ia, la;
        I(ia);
        L(la);
        for (auto& r : ia) {
            rect(a, a + 1.0, r[0], r[1], "Z_a");
            rect(r[0], r[1], a, a + 1.0, "Z_a-star");
        }
        for (auto& r : la) {
            rect(0.0, a + 1.0, r[0], r[1], "X_a");
            rect(r[0], r[1], 0.0, a + 1.0, "X_a-star");
        }
    }
    if (a > 0.0) {
        // P_a boundary c = max(3a + 1/2 − b, a + a/(2(b − a))) for b > a.
        std::string pts;
        for (int i = 0; i <= 400; ++i) {
            double b = std::max(b0, a) + (b1 - std::max(b0, a)) * i / 400.0;
            if (b <= a) continue;
            double c = std::min(p_threshold(a, b), c1 + (c1 - c0));
            pts += fmt::format("{:.3f},{:.3f} ", cv.X(b), cv.Y(c));
        }
        s += fmt::format("<polyline class=\"P_a-boundary\" points=\"{}\" stroke=\"#b2182b\"/>\n", pts);
        point(a + 0.5, 2.0 * a, "#000000", "S_a-point");
        if (a != 0.5) point(2.0 * a, a + 0.5, "#000000", "S_a-point");
    }
    s += "</g>\n";
    // Frame, ticks and labels.
    s += fmt::format("<rect x=\"{0}\" y=\"{0}\" width=\"{1}\" height=\"{1}\" fill=\"none\" stroke=\"#000000\"/>\n",
                     Canvas::kMargin, Canvas::kSize);
    s += "<g font-family=\"sans-serif\" font-size=\"12\">\n";
    for (double t = std::ceil(b0); t <= b1; t += 1.0)
        s += fmt::format("<text x=\"{:.3f}\" y=\"{:.3f}\" text-anchor=\"middle\">{:g}</text>\n", cv.X(t),
                         Canvas::kMargin + Canvas::kSize + 16, t);
    for (double t = std::ceil(c0); t <= c1; t += 1.0)
        s += fmt::format("<text x=\"{:.3f}\" y=\"{:.3f}\" text-anchor=\"end\">{:g}</text>\n", Canvas::kMargin - 6,
                         cv.Y(t) + 4, t);
    s += fmt::format("<text x=\"{:.3f}\" y=\"{:.3f}\" text-anchor=\"middle\">b</text>\n", W / 2, W - 20);
    s += fmt::format("<text x=\"20\" y=\"{:.3f}\" text-anchor=\"middle\">c</text>\n", W / 2);
    s += fmt::format("<text x=\"{:.3f}\" y=\"30\" text-anchor=\"middle\">a = {:g}: green LP, red not LP, grey undetermined</text>\n",
                     W / 2, a);
    s += "</g>\n</svg>\n";
    return s;
}

}  // namespace hlp
