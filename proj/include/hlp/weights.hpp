#pragma once

// Weight functions f(t) on (0, 1) for the finite Hankel transform
//   H̄_ν(f)(z) = ∫₀¹ t^{ν+1/2} f(t) J̄_ν(zt) dt,
// their moments β_k(f) = ∫₀¹ t^{2k+ν+1/2} f(t) dt, and the structural
// predicates (integrability, exceptional case, monotonicity) that the zero
// theorems depend on.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hlp/dd.hpp"

namespace hlp {

struct Rational {
    long long num = 0;
    long long den = 1;
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// A breakpoint keeps its exact rational form when it was supplied as one.
struct Breakpoint {
    double value = 0.0;
    std::optional<Rational> exact;
};

// f(t) = C (1 − t²)^p t^q.
struct BetaPower {
    double C = 1.0;
    double p = 0.0;
    double q = 0.0;
};

// f(t) = values[i] on [b_i, b_{i+1}) with b_0 = 0, b_n = 1 and the interior
// breakpoints b_1 < ... < b_{n−1} strictly inside (0, 1).
struct Step {
    std::vector<Breakpoint> breaks;
    std::vector<double> values;  // breaks.size() + 1 entries
};

// Samples on a grid covering [0, 1], interpolated piecewise-linearly (order 1)
// or by the monotone piecewise-cubic Hermite scheme of Fritsch–Carlson (order 3).
struct Tabulated {
    std::vector<double> nodes;
    std::vector<double> values;
    int order = 3;
    std::vector<double> slopes;  // Hermite slopes (filled on construction)
};

class WeightFunction {
public:
    using Variant = std::variant<BetaPower, Step, Tabulated>;

    static WeightFunction beta_power(double C, double p, double q);
    static WeightFunction step(std::vector<Breakpoint> breaks, std::vector<double> values);
    static WeightFunction tabulated(std::vector<double> nodes, std::vector<double> values, int order = 3);
    // Weight that represents ₁F₂(a; b, c; −z²/4) as H̄_{c−1}(f) (requires b > a > 0):
    // f(t) = 2/B(a, b−a) · (1 − t²)^{b−a−1} t^{2a−c−1/2}.
    static WeightFunction onef2(double a, double b, double c);

    double operator()(double t) const;
    const Variant& variant() const { return v_; }
    // Text form in the CLI grammar; round-trips for beta and step weights (tables
// are summarised, since the grammar refers to a file).
    std::string describe() const;

private:
    explicit WeightFunction(Variant v) : v_(std::move(v)) {}
    Variant v_;
};

// CLI grammar: "beta:C,p,q", "step:0,v0;b1,v1;...", "table:path.csv".
// Step breakpoints written as "n/d" are stored as exact rationals.
WeightFunction parse_weight(const std::string& text);

// Two-column CSV with header "t,f".
WeightFunction read_weight_table(const std::string& path, int order = 3);

struct IntegrabilityReport {
    bool ok = true;
    std::string reason;
};

// ok iff (ν ≥ −1/2 and ∫|f| < ∞) or (−1 < ν < −1/2 and ∫ t^{ν+1/2}|f| < ∞),
// plus positivity of f.
IntegrabilityReport validate_integrability(const WeightFunction& f, double nu);

// β_k(f); closed form for beta-power and step weights, quadrature for tables.
// Throws DomainError when validate_integrability fails.
double moment(const WeightFunction& f, double nu, int k);
std::vector<double> moments(const WeightFunction& f, double nu, int K);

// β_0, β_1, ... in double-double.  For beta-power and step weights each
// β_k is a fixed finite combination of exact recurrences, so any error is a
// k-independent relative factor per component; series built from the
// stream therefore inherit no cancellation from the moments themselves.
class MomentStream {
public:
    MomentStream(const WeightFunction& f, double nu);
    dd next();
    // True when moments come from an exact recurrence (not quadrature).
    bool exact() const { return kind_ != Kind::Table; }

private:
    enum class Kind { Beta, Step, Table };
    Kind kind_;
    int k_ = 0;
    // beta-power
    dd current_;
    double x0_ = 0.0, p1_ = 0.0;
    // step: β_k = Σ_j coef_j b_j^{s0} (b_j²)^k / (s0 + 2k)
    dd s0_;
    std::vector<double> coef_;
    std::vector<dd> power_, base_;
    // table
    const WeightFunction* f_ = nullptr;
    double nu_ = 0.0;
};

// Remark-type exceptional case: a step function whose jumps all sit at
// rational points (constant functions included).
bool is_exceptional(const WeightFunction& f);

// Is t ↦ t^exponent · f(t) nondecreasing on (0, 1)?
bool monotonicity_check(const WeightFunction& f, double exponent);

}  // namespace hlp
