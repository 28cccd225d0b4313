#pragma once

// Double-double arithmetic (an unevaluated sum hi + lo, ~32 significant digits).
// Used to sum alternating power series whose terms grow far larger than the
// final result, e.g. J̄_ν(x) for x up to ~50 where plain doubles would lose
// e^x of relative accuracy.  Error-free transforms follow Dekker/Knuth; the
// build disables floating-point contraction so they stay exact.

#include <cmath>
#include <complex>

namespace hlp {

struct dd {
    double hi = 0.0;
    double lo = 0.0;

    constexpr dd() = default;
    constexpr dd(double h) : hi(h), lo(0.0) {}
    constexpr dd(double h, double l) : hi(h), lo(l) {}

    explicit operator double() const { return hi + lo; }
    double to_double() const { return hi + lo; }
};

namespace ddetail {

inline dd two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

inline dd quick_two_sum(double a, double b) {
    double s = a + b;
    double err = b - (s - a);
    return {s, err};
}

inline void split(double a, double& hi, double& lo) {
    constexpr double splitter = 134217729.0;  // 2^27 + 1
    double t = splitter * a;
    hi = t - (t - a);
    lo = a - hi;
}

inline dd two_prod(double a, double b) {
    double p = a * b;
    double ah, al, bh, bl;
    split(a, ah, al);
    split(b, bh, bl);
    double err = ((ah * bh - p) + ah * bl + al * bh) + al * bl;
    return {p, err};
}

}  // namespace ddetail

inline dd operator+(const dd& a, const dd& b) {
    dd s = ddetail::two_sum(a.hi, b.hi);
    dd t = ddetail::two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = ddetail::quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return ddetail::quick_two_sum(s.hi, s.lo);
}

inline dd operator-(const dd& a) { return {-a.hi, -a.lo}; }
inline dd operator-(const dd& a, const dd& b) { return a + (-b); }

inline dd operator*(const dd& a, const dd& b) {
    dd p = ddetail::two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return ddetail::quick_two_sum(p.hi, p.lo);
}

inline dd operator*(const dd& a, double b) {
    dd p = ddetail::two_prod(a.hi, b);
    p.lo += a.lo * b;
    return ddetail::quick_two_sum(p.hi, p.lo);
}

inline dd operator/(const dd& a, const dd& b) {
    double q1 = a.hi / b.hi;
    dd r = a - b * q1;
    double q2 = r.hi / b.hi;
    r = r - b * q2;
    double q3 = r.hi / b.hi;
    dd q = ddetail::quick_two_sum(q1, q2);
    return q + dd(q3);
}

inline dd& operator+=(dd& a, const dd& b) { return a = a + b; }
inline dd& operator-=(dd& a, const dd& b) { return a = a - b; }
inline dd& operator*=(dd& a, const dd& b) { return a = a * b; }
inline dd& operator/=(dd& a, const dd& b) { return a = a / b; }

inline double abs(const dd& a) { return std::fabs(a.hi + a.lo); }

// Exact product of two doubles as a dd.
inline dd mul_exact(double a, double b) { return ddetail::two_prod(a, b); }

// Complex double-double.
struct cdd {
    dd re;
    dd im;

    cdd() = default;
    cdd(dd r) : re(r), im(0.0) {}
    cdd(dd r, dd i) : re(r), im(i) {}
    cdd(std::complex<double> z) : re(z.real()), im(z.imag()) {}

    std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }
};

inline cdd operator+(const cdd& a, const cdd& b) { return {a.re + b.re, a.im + b.im}; }
inline cdd operator-(const cdd& a, const cdd& b) { return {a.re - b.re, a.im - b.im}; }
inline cdd operator-(const cdd& a) { return {-a.re, -a.im}; }
inline cdd operator*(const cdd& a, const cdd& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline cdd operator*(const cdd& a, const dd& b) { return {a.re * b, a.im * b}; }
inline cdd operator*(const cdd& a, double b) { return {a.re * b, a.im * b}; }
inline cdd operator/(const cdd& a, const dd& b) { return {a.re / b, a.im / b}; }
inline cdd& operator+=(cdd& a, const cdd& b) { return a = a + b; }

inline double abs(const cdd& a) { return std::hypot(a.re.to_double(), a.im.to_double()); }

}  // namespace hlp
