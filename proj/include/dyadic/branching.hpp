#pragma once

#include <iosfwd>
#include <vector>

#include "dyadic/set.hpp"

namespace dyadic {

/// beta(j) = log2 |P|_{Delta^j} / T with Delta = 2^-T. Covering numbers need
/// not be powers of two, so each value is kept as a rational bracket
/// [lo, hi]; `values` is a certified minorant (non-decreasing, 2-Lipschitz,
/// values[0] = 0) used by all downstream exact inequality checks. The
/// brackets coincide with `values` whenever every count is a power of two.
struct BranchingFunction {
    int T = 1, m = 0;
    std::vector<Rat> lo, hi;  // brackets, size m+1
    std::vector<Rat> values;  // certified exact minorant, size m+1
    bool exact = true;        // values == lo == hi everywhere

    /// Linear interpolation of `values` at rational x in [0, m].
    Rat value(const Rat& x) const;
};

BranchingFunction branching_function(const Set2& P, int T, int m);
BranchingFunction branching_function(const Set1& P, int T, int m);

/// Wraps externally supplied values (must satisfy the invariants).
BranchingFunction branching_from_values(int T, std::vector<Rat> values);

struct UniformityReport {
    bool uniform = false;
    std::vector<Int> N;  // N_1..N_m children per ancestor, when uniform
    int fail_level = -1;
};
UniformityReport is_uniform(const Set2& P, int T, int m);

/// Extracts a {Delta^j}-uniform subset with |P'| >= (4T)^{-m} |P|:
/// bottom-up per level, child counts classed into the 2T dyadic classes
/// [2^i, 2^{i+1}) for i < 2T-1 and [2^{2T-1}, 2^{2T}] for the top; the class
/// maximizing the retained cardinality wins (ties to smaller i), and every
/// surviving parent is trimmed to the class-minimal child count, keeping the
/// lexically smallest children.
Set2 uniformize(const Set2& P, int T, int m);

/// Guaranteed loss exponent: |P'| >= delta^eps |P| with eps = log2(4T)/T.
Rat uniformize_loss_exponent(int T);

// --- branching file format: "T m" header, then m+1 lines "num/den" ---
void write_branching(std::ostream& out, const BranchingFunction& b);
BranchingFunction read_branching(std::istream& in);

}  // namespace dyadic
