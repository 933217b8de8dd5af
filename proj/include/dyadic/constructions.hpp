#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "dyadic/set.hpp"

namespace dyadic {

struct CapCheck {
    std::string name;
    bool pass = false;
    Rat measured;  // exact measured quantity (count or constant bracket)
    Rat cap;       // configured constant multiplier
};

struct SharpExample {
    std::string construction;
    Set2 P;
    Set1 A;      // 1-D component when applicable (empty otherwise)
    Set1 Theta;  // slope set at P's scale
    Scale delta;
    std::vector<std::pair<std::string, Rat>> params;   // input parameters
    std::vector<std::pair<std::string, Rat>> snapped;  // snapped scales / derived sizes
    Rat claimed_exponent;  // projection target is 2^{k * claimed_exponent}
    std::vector<CapCheck> caps;

    bool all_pass() const;
};

/// Maximal AP of cells {0, g, 2g, ...} in [0,1) with dyadic gap.
Set1 ap_set(Scale gap, Scale scale);

/// All reduced p/q in [0,1] with q <= Q, snapped to delta-cells, deduplicated.
Set1 farey_slopes(int Q, Scale delta);

/// Largest Q with Q <= rho^{-s/2}, exact.
Int farey_order(Scale rho, const Rat& s);

/// P0 = A x A with A an AP of gap rho^{t/2}; Theta0 = Farey slopes of order
/// ~rho^{-s/2}; verifies the non-concentration caps and the projection bound
/// |pi_theta(P0)|_rho <= cap * rho^{-(s+t)/2} for every theta.
SharpExample standard_sharp_example(Scale rho, const Rat& s, const Rat& t, const Rat& cap);

/// Scales the standard example at Delta ~ delta^u down by rho ~
/// delta^{1-t/2-u/2} and refines the slopes; verifies |P0| ~ delta^{-t},
/// single-scale non-concentration at exponent u, and the projection cap at
/// exponent t/2 + s u/2.
SharpExample minimal_nonconc_example(Scale delta, const Rat& s, const Rat& t, const Rat& u, const Rat& cap);

/// Katz-Tao rescaling of the standard example: P = (delta/rho) P0 with
/// projection cap rho^{-(s+t)/2} over the rho-neighbourhood of Theta0.
SharpExample katz_tao_sharp_example(Scale delta, Scale rho, const Rat& s, const Rat& t, const Rat& cap);

/// alpha <= s branch: A0 = D + B0 with B0 a Katz-Tao (delta,alpha)-AP in
/// [0, l], l = delta |B|^{1/alpha}, and D a Katz-Tao (l,alpha)-AP of size
/// N = |A|/|B|; projection cap N |B|^{(s+2 alpha)/(2 alpha)}.
SharpExample product_example_small_alpha(Scale delta, const Rat& s, const Rat& alpha, const Int& sizeA,
                                          const Int& sizeB, const Rat& cap);

/// alpha >= s branch, built on the ABC ratio construction with
/// C_target = |A|^{s/alpha}; projection cap |A|^{1/2+s/(2 alpha)} |B|^{1/2}.
SharpExample product_example_large_alpha(Scale delta, const Rat& s, const Rat& alpha, const Int& sizeA,
                                          const Int& sizeB, const Rat& cap);

struct DirichletResult {
    Int a, b;  // |x - a/b| <= m/(|b| n), a in A-A, b in (B-B)\{0}
};
/// Pigeonhole over the fractional parts of k m x, k = 0..n/m.
DirichletResult dirichlet_approx(long m, long n, const Rat& x);

struct RatioCoveringResult {
    Int covering;
    Rat scale;               // covering scale
    Rat target;              // n^2/m (Prop) or |B| D (Cor)
    Rat constant;            // covering / target
    std::vector<Rat> ratios;  // the ratio set itself, sorted ascending
};
/// Covering of [0,1] cap (A-A)/((B-B)\{0}) for A = {0..n}, B = {0,m,..,n},
/// at scale m/n^2, by brute-force ratio enumeration.
RatioCoveringResult ratio_covering_prop(long n, long m);
/// B = {b0, b0+gap, ..., b0+(count-1) gap} inside {0..n}; covering at scale
/// 1/(|B| D) with D = diam(B). Reduces to the translated window.
RatioCoveringResult ratio_covering_cor(long n, long b0, long gap, long count);

struct ABCWitness {
    Int bigA, bigB, bigC;
    long gap_units = 1;  // gap of B in units of 1/bigA
    std::vector<Rat> C;  // ratio set, sorted ascending
    Int c_covering;      // |C|_{1/bigC}
    Int max_sum_count;   // max_{c in C} |A + cB|
    Rat worst_c;
    std::vector<CapCheck> caps;

    bool all_pass() const;
};
/// A = AP gap 1/bigA in [0,1]; B sub-AP with gap in [bigA/(2 bigB),
/// bigA/bigB]; C the ratio set of the window [0, sqrt(bigC/(bigA bigB))];
/// verifies |C|_{1/bigC} >= bigC/16 and max_c |A+cB| <= K sqrt(bigA bigB bigC).
ABCWitness abc_ratio_construction(const Int& bigA, const Int& bigB, const Int& bigC, const Rat& K);

/// {construction, parameters, snapped_scales, claimed_exponent, verified_caps}.
void write_manifest_json(std::ostream& out, const SharpExample& ex);

}  // namespace dyadic
