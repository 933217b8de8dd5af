#include "dyadic/tube.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <stdexcept>

#include "dyadic/statistics.hpp"

namespace dyadic {

bool incidence(const Tube& t, Cell2 p, Scale level) {
    if (t.level != level) throw std::invalid_argument("incidence: mismatched scales");
    const Rat d = level.value();
    const Rat a0 = Rat(t.ia) * d, a1 = a0 + d;
    const Rat x0 = Rat(p.ix) * d, x1 = x0 + d;
    const Rat y0 = Rat(p.iy) * d, y1 = y0 + d;
    const Rat b0 = Rat(t.ib) * d, b1 = b0 + d;

    Rat lo = a0 * x0, hi = lo;
    for (const Rat& a : {a0, a1})
        for (const Rat& x : {x0, x1}) {
            const Rat v = a * x;
            if (v < lo) lo = v;
            if (v > hi) hi = v;
        }
    // Band over the closed box is [lo+b0, hi+b1]; the half-open parameter and
    // x ranges leave the supremum unattained (the b-coordinate enters with
    // coefficient 1 and b1 is excluded), so boundary-only touches at the top
    // are filtered by strict comparison.
    return lo + b0 < y1 && hi + b1 > y0;
}

std::vector<Tube> tubes_through(Cell2 p, const Set1& theta, Scale level) {
    if (theta.scale != level) throw std::invalid_argument("tubes_through: mismatched scales");
    const Rat d = level.value();
    const Rat xc = (Rat(2 * p.ix + 1)) * d / 2;
    const Rat yc = (Rat(2 * p.iy + 1)) * d / 2;
    const std::int64_t ib_min = -(kInterceptBound << level.k);
    const std::int64_t ib_max = (kInterceptBound << level.k) - 1;

    std::vector<Tube> out;
    for (const auto& sc : theta.cells) {
        const Rat a0 = Rat(sc.i) * d, a1 = a0 + d;
        // Dual segment of the centre: b'(a') = yc - a'*xc for a' in [a0, a1).
        // A b-cell is kept iff it meets the segment, which depends on the sign
        // of xc only through endpoint inclusion.
        const Rat v0 = yc - a0 * xc;  // attained
        const Rat v1 = yc - a1 * xc;  // not attained
        std::int64_t first, last;
        if (v0 == v1) {  // xc == 0: single value
            first = last = rat_floor(v0 / d).convert_to<std::int64_t>();
        } else if (v1 < v0) {  // segment (v1, v0]
            // cell [ib*d,(ib+1)*d) meets (v1, v0] iff ib*d <= v0 and (ib+1)*d > v1
            first = rat_floor(v1 / d).convert_to<std::int64_t>();
            last = rat_floor(v0 / d).convert_to<std::int64_t>();
        } else {  // segment [v0, v1)
            // meets iff ib*d < v1 and (ib+1)*d > v0
            first = rat_floor(v0 / d).convert_to<std::int64_t>();
            last = rat_floor(v1 / d).convert_to<std::int64_t>();
            if (Rat(last) * d >= v1) --last;
        }
        for (std::int64_t ib = std::max(first, ib_min); ib <= std::min(last, ib_max); ++ib)
            out.push_back({level, sc.i, ib});
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Int project(const Set2& P, const Rat& theta1, const Rat& theta2, ProjectionMode mode) {
    const Rat d = P.scale.value();
    Scale r = P.scale;
    if (mode == ProjectionMode::dot) {
        const Rat m = std::max(abs(theta1), abs(theta2));
        if (m == 0) throw std::invalid_argument("project: zero direction");
        const Rat v = d * m;
        if (v < 1) r = resolve_scale(v);
    }
    const Rat rv = r.value();
    std::set<Int> covered;
    for (const auto& c : P.cells) {
        // Image of the half-open box under t1*x + t2*y is an interval whose
        // closure is [lo, hi]; hi is never attained and whether lo is attained
        // does not change which r-cells are met.
        const Rat x0 = Rat(c.ix) * d, x1 = x0 + d;
        const Rat y0 = Rat(c.iy) * d, y1 = y0 + d;
        Rat lo = theta1 * x0 + theta2 * y0, hi = lo;
        for (const Rat& x : {x0, x1})
            for (const Rat& y : {y0, y1}) {
                const Rat v = theta1 * x + theta2 * y;
                if (v < lo) lo = v;
                if (v > hi) hi = v;
            }
        // r-cells j with j*rv < hi and (j+1)*rv > lo
        Int j = rat_floor(lo / rv);
        if (Rat(j + 1) * rv <= lo) ++j;
        for (; Rat(j) * rv < hi; ++j) covered.insert(j);
    }
    return Int(covered.size());
}

Set1 Configuration::slope_set(std::size_t point_index) const {
    Set1 out{delta, {}};
    for (std::size_t ti : incidences[point_index]) out.cells.push_back({tubes[ti].ia});
    out.normalize();
    return out;
}

Configuration build_configuration(const Set2& P, const Set1& theta, const Rat& s) {
    if (P.scale != theta.scale) throw std::invalid_argument("build_configuration: mismatched scales");
    Configuration cfg;
    cfg.points = P;
    cfg.delta = P.scale;
    cfg.s = s;

    std::vector<std::vector<Tube>> per_point;
    per_point.reserve(P.size());
    std::set<Tube> all;
    for (const auto& p : P.cells) {
        auto tp = tubes_through(p, theta, P.scale);
        if (tp.empty()) throw std::runtime_error("build_configuration: a point meets no tube");
        all.insert(tp.begin(), tp.end());
        per_point.push_back(std::move(tp));
    }
    cfg.tubes.assign(all.begin(), all.end());

    cfg.M = Int(per_point.front().size());
    for (const auto& tp : per_point) cfg.M = std::min(cfg.M, Int(tp.size()));

    Rat C(1);
    cfg.incidences.reserve(per_point.size());
    for (std::size_t i = 0; i < per_point.size(); ++i) {
        std::vector<std::size_t> idx;
        Set1 slopes{cfg.delta, {}};
        for (const auto& t : per_point[i]) {
            idx.push_back(std::size_t(std::lower_bound(cfg.tubes.begin(), cfg.tubes.end(), t) - cfg.tubes.begin()));
            slopes.cells.push_back({t.ia});
        }
        cfg.incidences.push_back(std::move(idx));
        slopes.normalize();
        C = std::max(C, Rat(Int(per_point[i].size())) / Rat(cfg.M));
        C = std::max(C, frostman_constant(slopes, s).constant_upper);
    }
    cfg.C = C;
    return cfg;
}

ValidationReport validate_configuration(const Configuration& cfg) {
    ValidationReport rep;
    rep.stored_C = cfg.C;
    if (cfg.incidences.size() != cfg.points.size()) {
        rep.note = "incidence lists do not match the point set";
        return rep;
    }
    Rat minimal(1);
    for (std::size_t i = 0; i < cfg.incidences.size(); ++i) {
        if (cfg.incidences[i].empty()) {
            rep.note = "a point meets no tube";
            rep.worst_point = i;
            return rep;
        }
        Rat ratio = Rat(Int(cfg.incidences[i].size())) / Rat(cfg.M);
        if (ratio < 1) ratio = 1 / ratio;  // C must satisfy C^{-1} M <= |T(p)| <= C M
        Rat fr = frostman_constant(cfg.slope_set(i), cfg.s).constant_upper;
        Rat need = std::max(ratio, fr);
        if (need > minimal) {
            minimal = need;
            rep.worst_point = i;
        }
    }
    rep.minimal_C = minimal;
    rep.valid = minimal <= cfg.C;
    if (!rep.valid) rep.note = "stored C below the recomputed minimum";
    return rep;
}

IncidenceStats measure_incidences(const Configuration& cfg) {
    IncidenceStats st;
    st.n_tubes = cfg.tubes.size();
    st.M = cfg.incidences.empty() ? 0 : cfg.incidences.front().size();
    for (const auto& inc : cfg.incidences) {
        ++st.histogram[inc.size()];
        st.M = std::min(st.M, inc.size());
    }
    st.ratio = st.M ? Rat(Int(st.n_tubes)) / Rat(Int(st.M)) : Rat(0);
    return st;
}

void write_tubes(std::ostream& out, const std::vector<Tube>& tubes, Scale level) {
    out << level.k << " " << tubes.size() << "\n";
    for (const auto& t : tubes) out << t.ia << " " << t.ib << "\n";
}

bool read_tubes(std::istream& in, std::vector<Tube>& tubes, Scale& level) {
    int k = 0;
    std::size_t n = 0;
    if (!(in >> k >> n)) return false;
    level = Scale{k};
    tubes.resize(n);
    for (auto& t : tubes) {
        t.level = level;
        if (!(in >> t.ia >> t.ib)) return false;
    }
    return true;
}

void write_configuration_json(std::ostream& out, const Configuration& cfg) {
    const auto st = measure_incidences(cfg);
    out << "{\n"
        << "  \"delta_log2\": " << -cfg.delta.k << ",\n"
        << "  \"s\": \"" << rat_string(cfg.s) << "\",\n"
        << "  \"C\": \"" << rat_string(cfg.C) << "\",\n"
        << "  \"M\": " << cfg.M << ",\n"
        << "  \"n_points\": " << cfg.points.size() << ",\n"
        << "  \"n_tubes\": " << cfg.tubes.size() << ",\n"
        << "  \"incidence_histogram\": {";
    bool first = true;
    for (const auto& [count, npts] : st.histogram) {
        out << (first ? "" : ", ") << "\"" << count << "\": " << npts;
        first = false;
    }
    out << "}\n}\n";
}

}  // namespace dyadic
