#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dyadic/numeric.hpp"

namespace dyadic {

struct PiecewiseLinear {
    std::vector<Rat> xs, ys;  // strictly increasing xs

    Rat operator()(const Rat& x) const;
};

/// f(x) >= f(a) + sigma (x - a) - eps (b - a) for all x in [a, b]; exact,
/// checked at a, b and every knot strictly between (sufficient by piecewise
/// linearity).
bool superlinear_check(const PiecewiseLinear& f, const Rat& a, const Rat& b, const Rat& sigma, const Rat& eps);

/// Partition 0 = a_0 < ... < a_n = m with slopes t_0 < ... < t_{n-1} such
/// that (i) a_{j+1} - a_j >= tau m, (ii) (f, a_j, a_{j+1}) is
/// (t_j, 0)-superlinear, (iii) sum (a_{j+1} - a_j) t_j >= f(m) - xi m.
struct Decomposition {
    std::vector<Rat> breakpoints;
    std::vector<Rat> slopes;
    Rat tau, xi;
    bool certified = false;
    std::string diagnostic;  // empty when certified

    Rat slope_sum() const;  // sum len_j * t_j
};

inline Rat default_tau(int d, const Rat& xi) { return xi * xi / (8 * d); }

/// values[i] = f(i) for i = 0..m; f(0) = 0, non-decreasing, d-Lipschitz.
/// Certification: greatest convex minorant contact points give exact
/// (slope, 0)-superlinear pieces with zero loss; pieces shorter than tau*m
/// are regrouped (short runs close at length >= tau*m; a short run ahead of
/// a long piece is folded into the preceding group) and each group gets the
/// exact slope sigma*(a,b) = min_{knot x in (a,b]} (f(x)-f(a))/(x-a); equal
/// or decreasing adjacent slopes are merged. All three postconditions are
/// re-verified; on failure `certified` is false and `diagnostic` explains.
Decomposition decompose(const std::vector<Rat>& values, int d, const Rat& xi);
Decomposition decompose(const std::vector<Rat>& values, int d, const Rat& xi, const Rat& tau);

struct AffineMajorant {
    PiecewiseLinear F;  // F(0) = 0, slope t_j on [a_j, a_{j+1}]
    Rat max_error;      // max_j f(a_j) - F(a_j) >= 0
    bool ok = false;    // F(a_j) <= f(a_j) <= F(a_j) + xi m and pairwise bound
};
AffineMajorant affine_majorant(const Decomposition& dec, const std::vector<Rat>& values);

/// {tau, xi, breakpoints, slopes, certified}.
void write_decomposition_json(std::ostream& out, const Decomposition& dec);

}  // namespace dyadic
