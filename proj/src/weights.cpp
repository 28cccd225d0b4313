#include "hlp/weights.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <numeric>
#include <sstream>

#include "hlp/error.hpp"
#include "hlp/quadrature.hpp"
#include "hlp/special.hpp"

namespace hlp {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(trim(cur));
    return out;
}

double parse_real(const std::string& s) {
    std::size_t pos = 0;
    double v;
    try {
        v = std::stod(s, &pos);
    } catch (...) {
        throw DomainError(fmt::format("cannot parse number '{}'", s));
    }
    if (pos != s.size()) throw DomainError(fmt::format("cannot parse number '{}'", s));
    return v;
}

// "n/d" → exact rational; anything else → float breakpoint (never rational).
Breakpoint parse_breakpoint(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return {parse_real(s), std::nullopt};
    Rational r;
    try {
        std::size_t p1 = 0, p2 = 0;
        std::string ns = trim(s.substr(0, slash)), ds = trim(s.substr(slash + 1));
        r.num = std::stoll(ns, &p1);
        r.den = std::stoll(ds, &p2);
        if (p1 != ns.size() || p2 != ds.size()) throw 0;
    } catch (...) {
        throw DomainError(fmt::format("cannot parse rational breakpoint '{}'", s));
    }
    if (r.den <= 0) throw DomainError(fmt::format("rational breakpoint '{}' needs a positive denominator", s));
    long long g = std::gcd(r.num, r.den);
    if (g > 1) { r.num /= g; r.den /= g; }
    return {r.value(), r};
}

// Fritsch–Carlson monotone Hermite slopes.
std::vector<double> pchip_slopes(const std::vector<double>& x, const std::vector<double>& y) {
    std::size_t n = x.size();
    std::vector<double> d(n, 0.0), h(n - 1), del(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = x[i + 1] - x[i];
        del[i] = (y[i + 1] - y[i]) / h[i];
    }
    if (n == 2) {
        d[0] = d[1] = del[0];
        return d;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (del[i - 1] * del[i] <= 0.0) continue;
        double w1 = 2.0 * h[i] + h[i - 1], w2 = h[i] + 2.0 * h[i - 1];
        d[i] = (w1 + w2) / (w1 / del[i - 1] + w2 / del[i]);
    }
    auto endpoint = [](double h0, double h1, double d0, double d1) {
        double s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if ((s > 0) != (d0 > 0) || d0 == 0.0) return 0.0;
        if ((d0 > 0) != (d1 > 0) && std::fabs(s) > 3.0 * std::fabs(d0)) return 3.0 * d0;
        return s;
    };
    d[0] = endpoint(h[0], h[1], del[0], del[1]);
    d[n - 1] = endpoint(h[n - 2], h[n - 3], del[n - 2], del[n - 3]);
    return d;
}

double table_eval(const Tabulated& tb, double t) {
    const auto& x = tb.nodes;
    const auto& y = tb.values;
    if (t <= x.front()) return y.front();
    if (t >= x.back()) return y.back();
    std::size_t i = static_cast<std::size_t>(std::upper_bound(x.begin(), x.end(), t) - x.begin()) - 1;
    double h = x[i + 1] - x[i], s = (t - x[i]) / h;
    if (tb.order == 1) return y[i] + s * (y[i + 1] - y[i]);
    double h00 = (1 + 2 * s) * (1 - s) * (1 - s), h10 = s * (1 - s) * (1 - s);
    double h01 = s * s * (3 - 2 * s), h11 = s * s * (s - 1);
    return h00 * y[i] + h10 * h * tb.slopes[i] + h01 * y[i + 1] + h11 * h * tb.slopes[i + 1];
}

// ∫₀¹ t^{e} f(t) dt for a tabulated f, e > −1, piecewise Gaussian rules.
double table_power_integral(const Tabulated& tb, double e) {
    const auto& x = tb.nodes;
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        double a = x[i], b = x[i + 1], half = 0.5 * (b - a);
        if (a == 0.0 && e != std::floor(e)) {
            const QuadRule& r = gauss_jacobi(48, 0.0, e);
            double s = 0.0;
            for (std::size_t j = 0; j < r.x.size(); ++j) {
                double t = half * (1.0 + r.x[j]);
                s += r.w[j] * table_eval(tb, t);
            }
            total += std::pow(half, e + 1.0) * s;
        } else {
            const QuadRule& r = gauss_legendre(32);
            double s = 0.0;
            for (std::size_t j = 0; j < r.x.size(); ++j) {
                double t = a + half * (1.0 + r.x[j]);
                s += r.w[j] * std::pow(t, e) * table_eval(tb, t);
            }
            total += half * s;
        }
    }
    return total;
}

std::string fmt_real(double v) { return fmt::format("{:.17g}", v); }

}  // namespace

WeightFunction WeightFunction::beta_power(double C, double p, double q) {
    if (!std::isfinite(C) || !std::isfinite(p) || !std::isfinite(q))
        throw DomainError("beta-power weight needs finite C, p, q");
    if (!(C > 0.0)) throw DomainError(fmt::format("beta-power weight needs C > 0 (got {})", C));
    return WeightFunction(BetaPower{C, p, q});
}

WeightFunction WeightFunction::step(std::vector<Breakpoint> breaks, std::vector<double> values) {
    if (values.size() != breaks.size() + 1)
        throw DomainError("step weight needs exactly one more value than interior breakpoints");
    for (std::size_t i = 0; i < breaks.size(); ++i) {
        double b = breaks[i].value;
        if (!(b > 0.0 && b < 1.0)) throw DomainError(fmt::format("step breakpoint {} not inside (0, 1)", b));
        if (i > 0 && !(b > breaks[i - 1].value)) throw DomainError("step breakpoints must be strictly ascending");
    }
    for (double v : values)
        if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(fmt::format("step value {} must be positive", v));
    return WeightFunction(Step{std::move(breaks), std::move(values)});
}

WeightFunction WeightFunction::tabulated(std::vector<double> nodes, std::vector<double> values, int order) {
    if (nodes.size() != values.size() || nodes.size() < 2)
        throw DomainError("tabulated weight needs at least two (t, f) pairs");
    if (order != 1 && order != 3) throw DomainError("tabulated weight order must be 1 or 3");
    if (nodes.front() != 0.0 || nodes.back() != 1.0)
        throw DomainError("tabulated weight nodes must start at 0 and end at 1");
    for (std::size_t i = 1; i < nodes.size(); ++i)
        if (!(nodes[i] > nodes[i - 1])) throw DomainError("tabulated nodes must be strictly ascending");
    for (double v : values)
        if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(fmt::format("tabulated value {} must be positive", v));
    Tabulated tb{std::move(nodes), std::move(values), order, {}};
    tb.slopes = pchip_slopes(tb.nodes, tb.values);
    return WeightFunction(std::move(tb));
}

WeightFunction WeightFunction::onef2(double a, double b, double c) {
    if (!(a > 0.0) || !(b > a))
        throw DomainError(fmt::format("Hankel representation of 1F2 needs b > a > 0 (got a={}, b={})", a, b));
    return beta_power(2.0 / beta_fn(a, b - a), b - a - 1.0, 2.0 * a - c - 0.5);
}

double WeightFunction::operator()(double t) const {
    return std::visit(overloaded{
                          [t](const BetaPower& w) { return w.C * std::pow(1.0 - t * t, w.p) * std::pow(t, w.q); },
                          [t](const Step& w) {
                              std::size_t i = 0;
                              while (i < w.breaks.size() && t >= w.breaks[i].value) ++i;
                              return w.values[i];
                          },
                          [t](const Tabulated& w) { return table_eval(w, t); },
                      },
                      v_);
}

std::string WeightFunction::describe() const {
    return std::visit(overloaded{
                          [](const BetaPower& w) {
                              return fmt::format("beta:{},{},{}", fmt_real(w.C), fmt_real(w.p), fmt_real(w.q));
                          },
                          [](const Step& w) {
                              std::string s = "step:0," + fmt_real(w.values[0]);
                              for (std::size_t i = 0; i < w.breaks.size(); ++i) {
                                  const auto& b = w.breaks[i];
                                  std::string bs = b.exact ? fmt::format("{}/{}", b.exact->num, b.exact->den)
                                                           : fmt_real(b.value);
                                  s += ";" + bs + "," + fmt_real(w.values[i + 1]);
                              }
                              return s;
                          },
                          [](const Tabulated& w) {
                              return fmt::format("table:{} nodes, order {}", w.nodes.size(), w.order);
                          },
                      },
                      v_);
}

WeightFunction parse_weight(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos) throw DomainError(fmt::format("weight spec '{}' lacks a kind prefix", text));
    std::string kind = trim(text.substr(0, colon)), body = trim(text.substr(colon + 1));
    if (kind == "beta") {
        auto parts = split(body, ',');
        if (parts.size() != 3) throw DomainError("beta weight expects beta:C,p,q");
        return WeightFunction::beta_power(parse_real(parts[0]), parse_real(parts[1]), parse_real(parts[2]));
    }
    if (kind == "step") {
        std::vector<Breakpoint> breaks;
        std::vector<double> values;
        auto pairs = split(body, ';');
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            auto bv = split(pairs[i], ',');
            if (bv.size() != 2) throw DomainError(fmt::format("step segment '{}' expects b,v", pairs[i]));
            Breakpoint b = parse_breakpoint(bv[0]);
            double v = parse_breakpoint(bv[1]).value;
            if (i == 0) {
                if (b.value != 0.0) throw DomainError("first step segment must start at 0");
            } else {
                breaks.push_back(b);
            }
            values.push_back(v);
        }
        if (values.empty()) throw DomainError("step weight needs at least one segment");
        return WeightFunction::step(std::move(breaks), std::move(values));
    }
    if (kind == "table") return read_weight_table(body);
    throw DomainError(fmt::format("unknown weight kind '{}'", kind));
}

WeightFunction read_weight_table(const std::string& path, int order) {
    std::ifstream in(path);
    if (!in) throw DomainError(fmt::format("cannot open weight table '{}'", path));
    std::string line;
    if (!std::getline(in, line) || trim(line) != "t,f")
        throw DomainError(fmt::format("weight table '{}' must start with header 't,f'", path));
    std::vector<double> t, f;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty()) continue;
        auto parts = split(line, ',');
        if (parts.size() != 2) throw DomainError(fmt::format("bad weight table row '{}'", line));
        t.push_back(parse_real(parts[0]));
        f.push_back(parse_real(parts[1]));
    }
    return WeightFunction::tabulated(std::move(t), std::move(f), order);
}

IntegrabilityReport validate_integrability(const WeightFunction& f, double nu) {
    if (!(nu > -1.0)) return {false, fmt::format("order nu = {} must exceed -1", nu)};
    if (const auto* w = std::get_if<BetaPower>(&f.variant())) {
        if (!(w->p > -1.0)) return {false, fmt::format("p = {} <= -1: (1-t^2)^p not integrable at t = 1", w->p)};
        if (nu >= -0.5) {
            if (!(w->q > -1.0)) return {false, fmt::format("q = {} <= -1: f not integrable at t = 0", w->q)};
        } else if (!(w->q + nu + 0.5 > -1.0)) {
            return {false, fmt::format("q + nu + 1/2 = {} <= -1: t^(nu+1/2) f not integrable at t = 0",
                                       w->q + nu + 0.5)};
        }
    }
    // Step and tabulated weights are bounded and positive by construction.
    return {true, ""};
}

MomentStream::MomentStream(const WeightFunction& f, double nu) : f_(&f), nu_(nu) {
    auto rep = validate_integrability(f, nu);
    if (!rep.ok) throw DomainError("integrability violation: " + rep.reason);
    const auto& v = f.variant();
    if (const auto* w = std::get_if<BetaPower>(&v)) {
        kind_ = Kind::Beta;
        x0_ = 0.5 * (w->q + nu + 1.5);
        p1_ = w->p + 1.0;
        current_ = dd(0.5 * w->C * beta_fn(x0_, p1_));
    } else if (const auto* w = std::get_if<Step>(&v)) {
        kind_ = Kind::Step;
        s0_ = ddetail::two_sum(nu, 1.5);
        double s0 = nu + 1.5;
        std::size_t n = w->values.size();
        // Σ_i v_i (b_{i+1}^s − b_i^s) regrouped by breakpoint.
        for (std::size_t j = 0; j < w->breaks.size(); ++j) {
            double b = w->breaks[j].value;
            coef_.push_back(w->values[j] - w->values[j + 1]);
            power_.push_back(dd(std::pow(b, s0)));
            base_.push_back(mul_exact(b, b));
        }
        coef_.push_back(w->values[n - 1]);
        power_.push_back(dd(1.0));
        base_.push_back(dd(1.0));
    } else {
        kind_ = Kind::Table;
    }
}

dd MomentStream::next() {
    int k = k_++;
    switch (kind_) {
        case Kind::Beta: {
            dd out = current_;
            // β_{k+1}/β_k = (x0 + k)/(x0 + k + p + 1)
            dd num = ddetail::two_sum(x0_, static_cast<double>(k));
            dd den = num + ddetail::two_sum(p1_, 0.0);
            current_ = current_ * num / den;
            return out;
        }
        case Kind::Step: {
            dd sum(0.0);
            for (std::size_t j = 0; j < coef_.size(); ++j) {
                sum += power_[j] * coef_[j];
                power_[j] = power_[j] * base_[j];
            }
            return sum / (s0_ + dd(2.0 * k));
        }
        case Kind::Table:
        default: {
            const auto& tb = std::get<Tabulated>(f_->variant());
            return dd(table_power_integral(tb, 2.0 * k + nu_ + 0.5));
        }
    }
}

double moment(const WeightFunction& f, double nu, int k) {
    if (k < 0) throw DomainError("moment index must be nonnegative");
    if (const auto* w = std::get_if<BetaPower>(&f.variant())) {
        auto rep = validate_integrability(f, nu);
        if (!rep.ok) throw DomainError("integrability violation: " + rep.reason);
        double x0 = 0.5 * (w->q + nu + 1.5);
        return 0.5 * w->C * beta_fn(x0 + k, w->p + 1.0);
    }
    if (const auto* w = std::get_if<Tabulated>(&f.variant())) {
        auto rep = validate_integrability(f, nu);
        if (!rep.ok) throw DomainError("integrability violation: " + rep.reason);
        return table_power_integral(*w, 2.0 * k + nu + 0.5);
    }
    MomentStream s(f, nu);
    dd b;
    for (int i = 0; i <= k; ++i) b = s.next();
    return b.to_double();
}

std::vector<double> moments(const WeightFunction& f, double nu, int K) {
    MomentStream s(f, nu);
    std::vector<double> out;
    for (int k = 0; k <= K; ++k) out.push_back(s.next().to_double());
    return out;
}

bool is_exceptional(const WeightFunction& f) {
    return std::visit(overloaded{
                          // Constant weight: a step function with no jumps.
                          [](const BetaPower& w) { return w.p == 0.0 && w.q == 0.0; },
                          [](const Step& w) {
                              for (std::size_t i = 0; i < w.breaks.size(); ++i) {
                                  bool jump = w.values[i] != w.values[i + 1];
                                  if (jump && !w.breaks[i].exact) return false;
                              }
                              return true;
                          },
                          [](const Tabulated& w) {
                              return std::all_of(w.values.begin(), w.values.end(),
                                                 [&](double v) { return v == w.values.front(); });
                          },
                      },
                      f.variant());
}

bool monotonicity_check(const WeightFunction& f, double exponent) {
    return std::visit(overloaded{
                          // d/dt log(t^{e+q}(1−t²)^p) = (e+q)/t − 2pt/(1−t²) ≥ 0 on (0,1)
                          // ⇔ (e+q)(1−t²) ≥ 2pt² for all t ⇔ e+q ≥ 0 and p ≤ 0.
                          [exponent](const BetaPower& w) { return w.p <= 0.0 && exponent + w.q >= 0.0; },
                          // t^e is monotone on each piece; jumps must go up.
                          [exponent](const Step& w) {
                              if (exponent < 0.0) return false;
                              for (std::size_t i = 0; i + 1 < w.values.size(); ++i)
                                  if (w.values[i + 1] < w.values[i]) return false;
                              return true;
                          },
                          [exponent, &f](const Tabulated&) {
                              constexpr int kSamples = 2048;
                              double prev = -1.0;
                              for (int i = 0; i < kSamples; ++i) {
                                  double t = (i + 1.0) / (kSamples + 1.0);
                                  double g = std::pow(t, exponent) * f(t);
                                  if (i > 0 && g < prev * (1.0 - 1e-13)) return false;
                                  prev = g;
                              }
                              return true;
                          },
                      },
                      f.variant());
}

}  // namespace hlp
