#include "dyadic/branching.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>

namespace dyadic {

namespace {

void check_scale(int scale_k, int T, int m) {
    if (T < 1 || m < 0) throw std::invalid_argument("branching: need T >= 1, m >= 0");
    if (scale_k != T * m) throw std::invalid_argument("branching: set scale must be Delta^m = 2^-(T*m)");
}

template <typename Set>
BranchingFunction build_branching(const Set& P, int T, int m, unsigned precision) {
    check_scale(P.scale.k, T, m);
    if (P.size() == 0) throw std::invalid_argument("branching: empty set");
    BranchingFunction b;
    b.T = T;
    b.m = m;
    b.lo.resize(m + 1);
    b.hi.resize(m + 1);
    b.values.resize(m + 1);
    b.exact = true;
    for (int j = 0; j <= m; ++j) {
        const Int n = covering_number(P, Scale{T * j});
        const Log2Bracket lb = log2_bracket(n, precision);
        b.lo[j] = lb.lo / T;
        b.hi[j] = lb.hi / T;
        if (!lb.exact) b.exact = false;
    }
    // Exact minorant: clamp each bracket floor into the non-decreasing
    // 2-Lipschitz corridor of its predecessor. When all counts are powers of
    // two the clamp is the identity (covering numbers are monotone and grow
    // by at most 4^T per level).
    b.values[0] = 0;
    for (int j = 1; j <= m; ++j) b.values[j] = std::clamp(b.lo[j], b.values[j - 1], Rat(b.values[j - 1] + 2));
    return b;
}

}  // namespace

Rat BranchingFunction::value(const Rat& x) const {
    if (x < 0 || x > m) throw std::invalid_argument("BranchingFunction::value: out of domain");
    const Int j = rat_floor(x);
    const long jl = j.convert_to<long>();
    if (jl == m) return values[m];
    const Rat frac = x - Rat(j);
    return values[jl] + frac * (values[jl + 1] - values[jl]);
}

BranchingFunction branching_function(const Set2& P, int T, int m) { return build_branching(P, T, m, 32); }
BranchingFunction branching_function(const Set1& P, int T, int m) { return build_branching(P, T, m, 32); }

BranchingFunction branching_from_values(int T, std::vector<Rat> values) {
    if (values.empty() || values.front() != 0) throw std::invalid_argument("branching_from_values: need values[0] = 0");
    for (std::size_t j = 1; j < values.size(); ++j) {
        const Rat inc = values[j] - values[j - 1];
        if (inc < 0 || inc > 2) throw std::invalid_argument("branching_from_values: not non-decreasing 2-Lipschitz");
    }
    BranchingFunction b;
    b.T = T;
    b.m = int(values.size()) - 1;
    b.lo = values;
    b.hi = values;
    b.values = std::move(values);
    b.exact = true;
    return b;
}

UniformityReport is_uniform(const Set2& P, int T, int m) {
    check_scale(P.scale.k, T, m);
    UniformityReport rep;
    rep.N.assign(m, Int(0));
    Set2 cur = P;
    for (int j = m; j >= 1; --j) {
        const Set2 parents = coarsen(cur, Scale{T * (j - 1)});
        std::map<Cell2, Int> children;
        const int d = T;
        for (const auto& c : cur.cells) ++children[{floor_shift(c.ix, d), floor_shift(c.iy, d)}];
        Int n = children.begin()->second;
        for (const auto& [p, cnt] : children)
            if (cnt != n) {
                rep.uniform = false;
                rep.fail_level = j;
                return rep;
            }
        rep.N[j - 1] = n;
        cur = parents;
    }
    rep.uniform = true;
    return rep;
}

namespace {

struct UNode {
    Cell2 cell;
    std::vector<std::size_t> children;  // indices into the next-finer layer
    bool alive = true;
};

}  // namespace

Set2 uniformize(const Set2& P, int T, int m) {
    check_scale(P.scale.k, T, m);
    if (P.size() == 0 || m == 0) return P;

    // layers[j] holds the surviving Delta^j-cells, finest first processed.
    std::vector<std::vector<UNode>> layers(m + 1);
    layers[m].reserve(P.size());
    for (const auto& c : P.cells) layers[m].push_back({c, {}, true});

    for (int j = m; j >= 1; --j) {
        // group surviving level-j cells under their Delta^{j-1} parents
        std::map<Cell2, std::vector<std::size_t>> groups;
        for (std::size_t i = 0; i < layers[j].size(); ++i) {
            if (!layers[j][i].alive) continue;
            const Cell2 c = layers[j][i].cell;
            groups[{floor_shift(c.ix, T), floor_shift(c.iy, T)}].push_back(i);
        }
        // 2T dyadic classes over child counts in [1, 4^T]; the top class is
        // closed so counts of exactly 4^T land in class 2T-1.
        const int n_classes = 2 * T;
        std::vector<Int> retained(n_classes, Int(0));
        std::vector<std::size_t> class_min(n_classes, SIZE_MAX);
        std::vector<std::size_t> class_members(n_classes, 0);
        auto class_of = [&](std::size_t cnt) {
            int i = 0;
            while ((std::size_t(1) << (i + 1)) <= cnt) ++i;
            return std::min(i, n_classes - 1);
        };
        for (const auto& [p, idx] : groups) {
            const int ci = class_of(idx.size());
            class_min[ci] = std::min(class_min[ci], idx.size());
            ++class_members[ci];
        }
        for (int ci = 0; ci < n_classes; ++ci)
            if (class_members[ci]) retained[ci] = Int(class_members[ci]) * Int(class_min[ci]);
        int best = 0;
        for (int ci = 1; ci < n_classes; ++ci)
            if (retained[ci] > retained[best]) best = ci;

        layers[j - 1].clear();
        for (auto& [p, idx] : groups) {
            UNode parent{p, {}, true};
            if (class_of(idx.size()) != best) {
                for (std::size_t i : idx) layers[j][i].alive = false;
                continue;
            }
            // Cells are sorted, so the first class_min indices are the
            // lexically smallest children.
            for (std::size_t r = 0; r < idx.size(); ++r) {
                if (r < class_min[best])
                    parent.children.push_back(idx[r]);
                else
                    layers[j][idx[r]].alive = false;
            }
            layers[j - 1].push_back(std::move(parent));
        }
    }

    // walk down from the surviving top cells collecting finest cells
    std::vector<std::size_t> frontier;
    for (std::size_t i = 0; i < layers[0].size(); ++i) frontier.push_back(i);
    for (int j = 0; j < m; ++j) {
        std::vector<std::size_t> next;
        for (std::size_t i : frontier)
            for (std::size_t c : layers[j][i].children) next.push_back(c);
        frontier = std::move(next);
    }
    Set2 out{P.scale, {}};
    out.cells.reserve(frontier.size());
    for (std::size_t i : frontier) out.cells.push_back(layers[m][i].cell);
    out.normalize();
    return out;
}

Rat uniformize_loss_exponent(int T) {
    // (4T)^{-m} = delta^eps with delta = 2^{-Tm}: eps = log2(4T)/T,
    // reported as the upper end of the exact bracket.
    return log2_bracket(Int(4 * T)).hi / T;
}

void write_branching(std::ostream& out, const BranchingFunction& b) {
    out << b.T << " " << b.m << "\n";
    for (const auto& v : b.values) out << rat_string(v) << "\n";
}

BranchingFunction read_branching(std::istream& in) {
    int T = 0, m = 0;
    if (!(in >> T >> m)) throw std::runtime_error("read_branching: bad header");
    std::vector<Rat> values(m + 1);
    for (auto& v : values) {
        std::string tok;
        if (!(in >> tok)) throw std::runtime_error("read_branching: missing value");
        v = parse_rational(tok);
    }
    return branching_from_values(T, std::move(values));
}

}  // namespace dyadic
