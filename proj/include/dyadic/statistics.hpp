#pragma once

#include <iosfwd>
#include <vector>

#include "dyadic/set.hpp"

namespace dyadic {

enum class NonConcKind { frostman, katz_tao };

/// Per-scale maxima of |P cap Q| with the witness cell, plus the level
/// attaining the extremal ratio. The extremal constant C* involves 2^{js}
/// which is irrational for general rational s, so it is reported as an
/// exact rational bracket [constant_lower, constant_upper] while all
/// decisions (argmax, cap checks) are made by exact integer-power
/// comparisons.
struct NonConcReport {
    NonConcKind kind = NonConcKind::frostman;
    Rat s;
    int delta_log2 = 0;  // k with delta = 2^-k
    Int set_size;
    int dim = 2;

    int witness_level = 0;  // level j of the extremal cell, r = 2^-j
    Int witness_count;      // |P cap Q| at the witness
    std::int64_t witness_ix = 0, witness_iy = 0;

    Rat constant_lower, constant_upper;

    struct LevelEntry {
        int level;
        Int max_count;
        std::int64_t ix, iy;
    };
    std::vector<LevelEntry> per_level;

    /// Ratio of candidate (count, level): count * 2^{level*s} / norm, where
    /// norm = |P| (frostman) or 2^{k*s} scaling folded in (katz_tao).
    /// Exact test C* <= cap.
    bool leq_cap(const Rat& cap) const;
};

NonConcReport frostman_constant(const Set2& P, const Rat& s);
NonConcReport frostman_constant(const Set1& P, const Rat& s);
NonConcReport katz_tao_constant(const Set2& P, const Rat& s);
NonConcReport katz_tao_constant(const Set1& P, const Rat& s);

struct SingleScaleResult {
    bool ok = false;
    int level = 0;       // resolved level of delta * |P|^{1/2}
    Int cap;             // floor bound delta^u * |P| is checked exactly, this is the worst count
    std::int64_t worst_ix = 0, worst_iy = 0;
    Int worst_count;
};

/// Every cell at scale delta*|P|^{1/2} (resolved to the next finer dyadic)
/// must hold at most delta^u * |P| cells of P; exact.
SingleScaleResult check_single_scale_nonconcentration(const Set2& P, const Rat& u);

/// {s, constant_num, constant_den, witness_level, witness_ix, witness_iy, per_level}.
void write_report_json(std::ostream& out, const NonConcReport& rep);

}  // namespace dyadic
