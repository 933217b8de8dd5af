#include "dyadic/statistics.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <utility>

#include <boost/multiprecision/integer.hpp>

namespace dyadic {

namespace {

struct Agg2 {
    Cell2 cell;
    Int count;
};
struct Agg1 {
    Cell1 cell;
    Int count;
};

// One coarsening step: halve indices, sum counts of merged cells.
std::vector<Agg2> coarsen_counts(std::vector<Agg2> v) {
    for (auto& a : v) a.cell = {a.cell.ix >> 1, a.cell.iy >> 1};
    std::sort(v.begin(), v.end(), [](const Agg2& a, const Agg2& b) { return a.cell < b.cell; });
    std::vector<Agg2> out;
    for (auto& a : v) {
        if (!out.empty() && out.back().cell == a.cell)
            out.back().count += a.count;
        else
            out.push_back(std::move(a));
    }
    return out;
}

std::vector<Agg1> coarsen_counts(std::vector<Agg1> v) {
    for (auto& a : v) a.cell = {a.cell.i >> 1};
    std::sort(v.begin(), v.end(), [](const Agg1& a, const Agg1& b) { return a.cell < b.cell; });
    std::vector<Agg1> out;
    for (auto& a : v) {
        if (!out.empty() && out.back().cell == a.cell)
            out.back().count += a.count;
        else
            out.push_back(std::move(a));
    }
    return out;
}

Cell2 as_cell2(const Agg2& a) { return a.cell; }
Cell2 as_cell2(const Agg1& a) { return {a.cell.i, 0}; }

// Scan levels k..0 bottom-up, recording per-level maxima and the candidate
// maximizing count * 2^{level*s} (the same argmax serves both the Frostman
// ratio count*2^{js}/|P| and the Katz-Tao ratio count*2^{(j-k)s}).
template <typename Agg>
NonConcReport scan(std::vector<Agg> counts, int k, const Rat& s, Int size, int dim, NonConcKind kind) {
    if (counts.empty()) throw std::invalid_argument("non-concentration scan: empty set");
    NonConcReport rep;
    rep.kind = kind;
    rep.s = s;
    rep.delta_log2 = k;
    rep.set_size = size;
    rep.dim = dim;

    bool have_best = false;
    for (int j = k;; --j) {
        const Agg* lvl_max = &counts.front();
        for (const auto& a : counts)
            if (a.count > lvl_max->count) lvl_max = &a;
        const Cell2 w = as_cell2(*lvl_max);
        rep.per_level.push_back({j, lvl_max->count, w.ix, w.iy});
        if (!have_best ||
            cmp_pow2_products(lvl_max->count, Rat(j) * s, rep.witness_count, Rat(rep.witness_level) * s) > 0) {
            have_best = true;
            rep.witness_level = j;
            rep.witness_count = lvl_max->count;
            rep.witness_ix = w.ix;
            rep.witness_iy = w.iy;
        }
        if (j == 0) break;
        counts = coarsen_counts(std::move(counts));
    }
    std::reverse(rep.per_level.begin(), rep.per_level.end());

    // C* = count * 2^e / norm with e = js (frostman, norm |P|) or (j-k)s (katz-tao).
    const Rat e = kind == NonConcKind::frostman ? Rat(rep.witness_level) * s : Rat(rep.witness_level - k) * s;
    const Rat norm = kind == NonConcKind::frostman ? Rat(size) : Rat(1);
    rep.constant_lower = Rat(rep.witness_count) * pow2r(rat_floor(e).convert_to<long>()) / norm;
    rep.constant_upper = Rat(rep.witness_count) * pow2r(rat_ceil(e).convert_to<long>()) / norm;
    return rep;
}

template <typename Cell, typename Agg>
std::vector<Agg> unit_counts(const std::vector<Cell>& cells) {
    std::vector<Agg> v;
    v.reserve(cells.size());
    for (const auto& c : cells) v.push_back({c, Int(1)});
    return v;
}

}  // namespace

bool NonConcReport::leq_cap(const Rat& cap) const {
    if (cap <= 0) return false;
    if (kind == NonConcKind::frostman)
        // count <= cap * |P| * 2^{-js}
        return leq_cap_pow2(witness_count, cap * Rat(set_size), Rat(-witness_level) * s);
    // count <= cap * 2^{(k-j)s}
    return leq_cap_pow2(witness_count, cap, Rat(delta_log2 - witness_level) * s);
}

NonConcReport frostman_constant(const Set2& P, const Rat& s) {
    return scan(unit_counts<Cell2, Agg2>(P.cells), P.scale.k, s, Int(P.size()), 2, NonConcKind::frostman);
}
NonConcReport frostman_constant(const Set1& P, const Rat& s) {
    return scan(unit_counts<Cell1, Agg1>(P.cells), P.scale.k, s, Int(P.size()), 1, NonConcKind::frostman);
}
NonConcReport katz_tao_constant(const Set2& P, const Rat& s) {
    return scan(unit_counts<Cell2, Agg2>(P.cells), P.scale.k, s, Int(P.size()), 2, NonConcKind::katz_tao);
}
NonConcReport katz_tao_constant(const Set1& P, const Rat& s) {
    return scan(unit_counts<Cell1, Agg1>(P.cells), P.scale.k, s, Int(P.size()), 1, NonConcKind::katz_tao);
}

SingleScaleResult check_single_scale_nonconcentration(const Set2& P, const Rat& u) {
    if (P.cells.empty()) throw std::invalid_argument("check_single_scale_nonconcentration: empty set");
    const int k = P.scale.k;
    // delta * |P|^{1/2} >= 2^{e-k} where 4^e <= |P|; resolve to the finer side.
    const Int n = Int(P.size());
    int e = 0;
    while (Int(1) << (2 * (e + 1)) <= n) ++e;
    SingleScaleResult res;
    res.level = std::max(0, k - e);

    std::vector<Agg2> counts = unit_counts<Cell2, Agg2>(P.cells);
    for (int j = k; j > res.level; --j) counts = coarsen_counts(std::move(counts));

    res.ok = true;
    res.worst_count = 0;
    for (const auto& a : counts) {
        if (a.count > res.worst_count) {
            res.worst_count = a.count;
            res.worst_ix = a.cell.ix;
            res.worst_iy = a.cell.iy;
        }
    }
    // worst <= delta^u |P| = 2^{-ku} |P|, exact.
    res.ok = leq_cap_pow2(res.worst_count, Rat(n), Rat(-k) * u);
    res.cap = res.worst_count;
    return res;
}

void write_report_json(std::ostream& out, const NonConcReport& rep) {
    out << "{\n"
        << "  \"s\": \"" << rat_string(rep.s) << "\",\n"
        << "  \"constant_num\": " << numerator(rep.constant_upper) << ",\n"
        << "  \"constant_den\": " << denominator(rep.constant_upper) << ",\n"
        << "  \"witness_level\": " << rep.witness_level << ",\n"
        << "  \"witness_ix\": " << rep.witness_ix << ",\n"
        << "  \"witness_iy\": " << rep.witness_iy << ",\n"
        << "  \"per_level\": [";
    for (std::size_t i = 0; i < rep.per_level.size(); ++i) {
        const auto& e = rep.per_level[i];
        out << (i ? ", " : "") << "[" << e.level << ", " << e.max_count << "]";
    }
    out << "]\n}\n";
}

}  // namespace dyadic
