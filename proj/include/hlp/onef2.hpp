#pragma once

// Φ(z) = ₁F₂(a; b, c; −z²/4): evaluation, closed-form Laguerre–Pólya region
// classification with certificates, transference searches over integer
// parameter shifts, and argument-principle zero counts.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hlp/bessel.hpp"
#include "hlp/zeros.hpp"

namespace hlp {

struct OneF2Params {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
};

// Throws DomainError unless a, b, c are finite and b, c are not
// non-positive integers.
void validate(const OneF2Params& p);

// Series accuracy is absolute, ≈ 1e−31 · Σ|t_k| ≈ 1e−31 · Φ(i|z|), so results
// are meaningful for |z| up to roughly 60; beyond |z| = 200 evaluation is
// refused.  K = 0 selects the truncation automatically (at most 400 terms);
// an explicit K must suffice for convergence.
Estimate<cplx> phi_eval_estimate(const OneF2Params& p, cplx z, int K = 0);
cplx phi_eval(const OneF2Params& p, cplx z, int K = 0);
double phi_eval(const OneF2Params& p, double x, int K = 0);
// z Φ'(z) from the differentiated series.
Estimate<cplx> phi_zderiv_estimate(const OneF2Params& p, cplx z, int K = 0);

enum Membership : unsigned {
    kN = 1u << 0,
    kP = 1u << 1,
    kS = 1u << 2,
    kZ = 1u << 3,
    kZstar = 1u << 4,
    kX = 1u << 5,
    kXstar = 1u << 6,
    kType1 = 1u << 7,
    kType2 = 1u << 8,
    kType3 = 1u << 9,
};
inline constexpr unsigned kLpSufficient = kS | kZ | kZstar | kX | kXstar | kType1 | kType2 | kType3;

enum class LpVerdict { LP, NotLP, Undetermined };
const char* to_string(LpVerdict v);

struct RegionVerdict {
    double a = 0.0, b = 0.0, c = 0.0;
    unsigned mask = 0;
    std::vector<std::string> memberships;
    LpVerdict lp = LpVerdict::Undetermined;
    std::string certificate;
    bool near_S = false;  // within 1e−9 of S_a (boundary ambiguity flag)
};

// Membership mask only (no certificate text); used for dense grids.
unsigned region_mask(const OneF2Params& p);
LpVerdict lp_from_mask(unsigned mask);

// Total on valid parameters; throws ClassificationError if an LP certificate
// and P_a∖S_a membership both fire.
RegionVerdict classify_region(const OneF2Params& p);
std::string verdict_to_json(const RegionVerdict& v);

struct TransferPath {
    OneF2Params seed;
    std::string seed_family;  // membership name certifying the seed
    int m = 0, n = 0, l = 0;  // target = (seed.a + m, seed.b + n, seed.c + l)
};

// First integer shift in the order m ascending, then |n|, then |ℓ| (ties:
// nonnegative first) with 0 ≤ m ≤ max_shift, −max_shift ≤ n, ℓ ≤ m, such that (a−m, b−n, c−ℓ) is classified LP and the
// shift satisfies m ≥ 0, −b_seed < n ≤ m, −c_seed < ℓ ≤ m.
std::optional<TransferPath> transfer_search(const OneF2Params& p, int max_shift);
// Replays a path: checks the shift constraints and that the seed is LP.
bool transfer_replay(const TransferPath& path, const OneF2Params& target);

// |LHS − RHS| of the three shift identities:
//   1: zΦ' = −a z²/(2bc) ₁F₂(a+1; b+1, c+1)          (a ≠ 0)
//   2: zΦ' + 2(b−1)Φ = 2(b−1) ₁F₂(a; b−1, c)          (b ≠ 1)
//   3: zΦ' + 2(c−1)Φ = 2(c−1) ₁F₂(a; b, c−1)          (c ≠ 1)
double operator_identity_check(const OneF2Params& p, int which, cplx z);

struct Rect {
    double x0, x1, y0, y1;
};

// Number of zeros of Φ inside rect (winding number of the boundary image).
// The boundary is nudged outward by 1e−3 up to three times when it passes too
// close to a zero; throws NumericalError if the winding stays non-integral.
int complex_zero_count(const OneF2Params& p, Rect rect);
// Sum over the rectangle and its reflections in both axes.
int four_quadrant_count(const OneF2Params& p, Rect first_quadrant);

struct ZetaSumCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    double gap = 0.0;
    ZeroList zeros;
};

// Σ 1/ζ_k² from located zeros (plus tail) against a/(4bc).
ZetaSumCheck zeta_sum_check(const OneF2Params& p, int M);
// Same, from an already located (e.g. re-read) zero list.
ZetaSumCheck zeta_sum_check(const OneF2Params& p, const ZeroList& zeros);
// Hankel-transform representation used for p (orientation with b > a,
// preferring Z_a over Z_a*).
TransformSpec onef2_transform(const OneF2Params& p);

struct RegionGrid {
    double a = 0.0;
    std::array<double, 2> b_range{}, c_range{};
    int nb = 0, nc = 0;
    std::vector<unsigned> mask;  // row-major, index j * nb + i (c index j)
    double b_at(int i) const { return b_range[0] + (i + 0.5) * (b_range[1] - b_range[0]) / nb; }
    double c_at(int j) const { return c_range[0] + (j + 0.5) * (c_range[1] - c_range[0]) / nc; }
    unsigned at(int i, int j) const { return mask[static_cast<std::size_t>(j) * nb + i]; }
};

RegionGrid region_grid(double a, std::array<double, 2> b_range, std::array<double, 2> c_range, int resolution);
RegionGrid region_grid_serial(double a, std::array<double, 2> b_range, std::array<double, 2> c_range,
                              int resolution);
std::string region_grid_csv(const RegionGrid& g);
std::string region_grid_svg(const RegionGrid& g);

}  // namespace hlp
