#pragma once

#include <string>
#include <vector>

#include "dyadic/decompose.hpp"
#include "dyadic/tube.hpp"

namespace dyadic {

/// min{t, (s+t)/2, 1} for s in (0,1], t in [0,2].
Rat furstenberg_exponent(const Rat& s, const Rat& t);

struct ParameterBudget {
    Rat s, t, u, zeta;
    Rat eta, xi, eps, eps_f;

    Rat omega() const { return t / 2 + s * u / 2 - zeta; }
    Rat tau() const { return default_tau(2, xi); }
    /// omega > 0, eta < omega/8, xi < omega/8, eps < min{omega/(2s+4), tau*eps_f/2}.
    bool valid(std::string* why = nullptr) const;
};

/// Fills eta, xi, eps, eps_f with admissible defaults for given (s,t,u,zeta).
ParameterBudget make_budget(const Rat& s, const Rat& t, const Rat& u, const Rat& zeta);

struct IndexClassification {
    std::vector<std::size_t> I1, I1_big, I1_small, I2, I3;
    Rat A1, A2;      // boundaries of the three (possibly empty) slope bands
    Rat A;           // (1 - t/2) m
    Rat a_frak;      // two-class boundary: slopes <= s vs slopes in (s, 2-s]
};
IndexClassification classify(const Decomposition& dec, const Rat& s, const Rat& t, const Rat& eta);

struct Thm12Result {
    bool ok = false;
    Rat Lambda;      // t/2 + s(u - eps)/2 - 2 eta - 3 xi / 2
    Rat total_gain;  // sum of certified per-band gains, in Delta-exponent units
    Rat E;           // bracket exponent of the combined bound
    std::string case_name;
    std::vector<std::string> trace;
    Decomposition dec;
    IndexClassification cls;
};

/// Exact rational replay of the full bookkeeping chain: per-band gains, the
/// combined bound, the A1/A2-vs-A case analysis, and Lambda > zeta. Requires
/// beta(m) = t*m and beta((1 - t/2) m) >= (u - eps) m.
Thm12Result thm12_bookkeeping(const std::vector<Rat>& beta, const ParameterBudget& budget);

struct Thm1Result {
    bool ok = false;
    Rat a_frak;
    Rat exponent;  // F(a) + (F(m) - F(a))/2 + s (m - a)/2
    Rat target;    // (s + t)/(2t) * F(m)
    std::vector<std::string> trace;
    Decomposition dec;
};

/// Katz-Tao branch: all slopes must be <= t; checks exponent >= target
/// exactly on the decomposition's affine majorant.
Thm1Result thm1_bookkeeping(const std::vector<Rat>& beta, const Rat& s, const Rat& t, const Rat& xi);

struct Thm2Result {
    Rat theta;             // min{1, alpha/s}
    Rat expA, expB;        // bound = |A|^expA |B|^expB
    bool trivial_beats;    // |B|^alpha < |A|^{alpha - s}: the trivial M|A| bound wins
    std::string note;
};

/// Piecewise product-set bound with theta = min{1, alpha/s}.
/// Preconditions: alpha + beta_exp in [s, 2 - s], |A|^beta_exp >= |B|^alpha.
Thm2Result thm2_exponent(const Rat& s, const Rat& alpha, const Rat& beta_exp, const Int& sizeA, const Int& sizeB);

/// theta-parameterized exponents (expA, expB) for audit; theta must satisfy
/// max{theta s/alpha, (1-theta) s/beta_exp} <= 1.
std::pair<Rat, Rat> thm2_general_exponents(const Rat& s, const Rat& alpha, const Rat& beta_exp, const Rat& theta);

struct BlockFactor {
    int level_from = 0, level_to = 0;
    Rat max_ratio;  // max over coarse squares of |T_p| / M_p
    std::size_t n_cells = 0;
};
struct ProductCheckReport {
    Rat global_ratio;  // |T| / M of the input configuration
    Rat product;       // product of per-block max ratios
    Rat comparison;    // global_ratio / product
    std::vector<BlockFactor> blocks;
};

/// Empirical sanity check of the multiscale product bound: levels must
/// increase from 0 (exclusive) to cfg.delta.k (inclusive).
ProductCheckReport multiscale_product_check(const Configuration& cfg, const std::vector<int>& levels);

}  // namespace dyadic
