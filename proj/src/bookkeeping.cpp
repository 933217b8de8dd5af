#include "dyadic/bookkeeping.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace dyadic {

Rat furstenberg_exponent(const Rat& s, const Rat& t) {
    if (s <= 0 || s > 1 || t < 0 || t > 2) throw std::invalid_argument("furstenberg_exponent: s in (0,1], t in [0,2]");
    return std::min({t, Rat((s + t) / 2), Rat(1)});
}

bool ParameterBudget::valid(std::string* why) const {
    auto fail = [&](const char* msg) {
        if (why) *why = msg;
        return false;
    };
    if (!(s > 0 && s <= 1)) return fail("s out of (0,1]");
    if (!(t >= s && t <= 2 - s)) return fail("t out of [s, 2-s]");
    if (!(u > 0)) return fail("u <= 0");
    const Rat w = omega();
    if (!(w > 0)) return fail("omega <= 0");
    if (!(eta > 0 && eta < w / 8)) return fail("eta out of (0, omega/8)");
    if (!(xi > 0 && xi < w / 8)) return fail("xi out of (0, omega/8)");
    if (!(eps_f > 0)) return fail("eps_f <= 0");
    const Rat bound = std::min(Rat(w / (2 * s + 4)), Rat(tau() * eps_f / 2));
    if (!(eps > 0 && eps < bound)) return fail("eps out of (0, min{omega/(2s+4), tau*eps_f/2})");
    if (!(eps < u)) return fail("eps >= u");
    return true;
}

ParameterBudget make_budget(const Rat& s, const Rat& t, const Rat& u, const Rat& zeta) {
    ParameterBudget b;
    b.s = s;
    b.t = t;
    b.u = u;
    b.zeta = zeta;
    const Rat w = b.omega();
    if (w <= 0) throw std::invalid_argument("make_budget: zeta must be below t/2 + su/2");
    b.eta = w / 16;
    b.xi = w / 16;
    b.eps_f = w;
    b.eps = std::min({Rat(w / (2 * s + 4)), Rat(b.tau() * b.eps_f / 2), u}) / 2;
    return b;
}

IndexClassification classify(const Decomposition& dec, const Rat& s, const Rat& t, const Rat& eta) {
    IndexClassification cls;
    const Rat m = dec.breakpoints.back();
    cls.A = (1 - t / 2) * m;
    cls.A1 = 0;
    cls.A2 = 0;
    cls.a_frak = 0;
    bool any_I2 = false, any_I3 = false;
    for (std::size_t j = 0; j < dec.slopes.size(); ++j) {
        const Rat& tj = dec.slopes[j];
        const Rat& right = dec.breakpoints[j + 1];
        if (tj <= s) {
            cls.I1.push_back(j);
            (tj >= 2 * eta ? cls.I1_big : cls.I1_small).push_back(j);
            cls.A1 = right;
        } else if (tj < 2 - s) {
            cls.I2.push_back(j);
            any_I2 = true;
            cls.A2 = right;
        } else {
            cls.I3.push_back(j);
            any_I3 = true;
        }
        // two-class split: slopes <= s vs slopes in (s, 2-s]
        if (tj <= s) cls.a_frak = right;
    }
    if (!any_I2) cls.A2 = cls.A1;
    if (!any_I3) cls.A2 = m;
    return cls;
}

namespace {

Rat interp(const std::vector<Rat>& values, const Rat& x) {
    const Int j = rat_floor(x);
    const std::size_t i = j.convert_to<std::size_t>();
    if (i + 1 >= values.size()) return values.back();
    return values[i] + (x - Rat(j)) * (values[i + 1] - values[i]);
}

}  // namespace

Thm12Result thm12_bookkeeping(const std::vector<Rat>& beta, const ParameterBudget& budget) {
    std::string why;
    if (!budget.valid(&why)) throw std::invalid_argument("thm12_bookkeeping: invalid budget: " + why);
    const long mi = long(beta.size()) - 1;
    const Rat m(mi);
    if (beta.back() != budget.t * m)
        throw std::invalid_argument("thm12_bookkeeping: beta(m) must equal t*m");

    Thm12Result res;
    res.Lambda = budget.t / 2 + budget.s * (budget.u - budget.eps) / 2 - 2 * budget.eta - 3 * budget.xi / 2;
    res.trace.push_back("Lambda = t/2 + s(u-eps)/2 - 2 eta - 3 xi/2 = " + rat_string(res.Lambda));

    auto check = [&](bool cond, const std::string& what) {
        res.trace.push_back((cond ? "ok:   " : "FAIL: ") + what);
        if (!cond) res.ok = false;
    };
    res.ok = true;

    // translated single-scale non-concentration: beta((1 - t/2) m) >= (u - eps) m
    const Rat A_pre = (1 - budget.t / 2) * m;
    check(interp(beta, A_pre) >= (budget.u - budget.eps) * m, "precondition beta((1-t/2)m) >= (u-eps)m");

    res.dec = decompose(beta, 2, budget.xi);
    check(res.dec.certified, "decomposition certified");
    const AffineMajorant maj = affine_majorant(res.dec, beta);
    check(maj.ok, "affine majorant inequalities");

    res.cls = classify(res.dec, budget.s, budget.t, budget.eta);
    const auto& cls = res.cls;
    const Rat &s = budget.s, &eta = budget.eta, &xi = budget.xi;
    auto len = [&](std::size_t j) -> Rat { return res.dec.breakpoints[j + 1] - res.dec.breakpoints[j]; };
    const Rat fA1 = interp(beta, cls.A1), fA2 = interp(beta, cls.A2);

    // per-band gains, all in Delta-exponent units (product >= Delta^{-gain})
    Rat gain1 = 0;
    for (std::size_t j : cls.I1_big) gain1 += len(j) * (res.dec.slopes[j] - eta);
    check(gain1 >= fA1 - 2 * eta * cls.A1 - xi * m, "band 1: gain >= beta(A1) - 2 eta A1 - xi m");

    Rat gain2 = 0;
    for (std::size_t j : cls.I2) gain2 += len(j) * ((res.dec.slopes[j] + s) / 2 - eta);
    check(gain2 >= (fA2 - fA1) / 2 + s * (cls.A2 - cls.A1) / 2 - eta * (cls.A2 - cls.A1) - xi * m / 2,
          "band 2: gain >= (beta(A2)-beta(A1))/2 + s(A2-A1)/2 - eta(A2-A1) - xi m/2");

    Rat gain3 = 0;
    for (std::size_t j : cls.I3) gain3 += len(j) * (1 - eta);
    check(gain3 >= (m - cls.A2) * (1 - eta), "band 3: gain >= (m - A2)(1 - eta)");

    res.total_gain = gain1 + gain2 + gain3;
    res.E = fA1 / 2 + fA2 / 2 + s * (cls.A2 - cls.A1) / 2 + (m - cls.A2) - budget.t * m / 2;
    check(res.total_gain >= budget.t * m / 2 - 2 * eta * m - 3 * xi * m / 2 + res.E,
          "combined: total gain >= t m/2 - 2 eta m - 3 xi m/2 + E");

    // case analysis: E >= s (u - eps) m / 2
    const Rat target = s * (budget.u - budget.eps) * m / 2;
    if (cls.A1 >= cls.A) {
        res.case_name = "A1 >= A";
        check(fA1 >= (budget.u - budget.eps) * m, "beta(A1) >= (u-eps)m by monotonicity");
    } else if (cls.A2 <= cls.A) {
        res.case_name = "A2 <= A";
        check(fA2 / 2 >= (budget.u - budget.eps) * m / 2 - (cls.A - cls.A2),
              "beta(A2)/2 >= (u-eps)m/2 - (A - A2) by 2-Lipschitz");
    } else {
        res.case_name = "A1 <= A <= A2";
        const Rat gain12 = fA1 / 2 + s * (cls.A - cls.A1) / 2;
        const Rat gain34 = fA2 / 2 - (cls.A2 - cls.A) * (1 - s / 2);
        check(cls.A2 - cls.A <= fA2 / 2, "A2 - A <= beta(A2)/2 by 2-Lipschitz");
        check(gain12 >= s * interp(beta, cls.A) / 4, "Pi1 Pi2 gain >= s beta(A)/4");
        check(gain34 >= s * interp(beta, cls.A) / 4, "Pi3 Pi4 gain >= s beta(A)/4");
    }
    check(res.E >= target, "E >= s(u-eps)m/2");
    check(res.total_gain >= res.Lambda * m, "total gain >= Lambda m");
    check(res.Lambda > budget.zeta, "Lambda > zeta");
    return res;
}

Thm1Result thm1_bookkeeping(const std::vector<Rat>& beta, const Rat& s, const Rat& t, const Rat& xi) {
    if (!(s > 0 && s <= 1 && t >= s && t <= 2 - s))
        throw std::invalid_argument("thm1_bookkeeping: need s in (0,1], t in [s, 2-s]");
    const Rat m(long(beta.size()) - 1);

    Thm1Result res;
    res.ok = true;
    auto check = [&](bool cond, const std::string& what) {
        res.trace.push_back((cond ? "ok:   " : "FAIL: ") + what);
        if (!cond) res.ok = false;
    };

    res.dec = decompose(beta, 2, xi);
    check(res.dec.certified, "decomposition certified");
    for (const Rat& tj : res.dec.slopes)
        if (tj > t) check(false, "Katz-Tao slope bound t_j <= t");

    // work on the affine majorant F (exact; F(m) <= beta(m) <= F(m) + xi m)
    const AffineMajorant maj = affine_majorant(res.dec, beta);
    check(maj.ok, "affine majorant inequalities");
    const IndexClassification cls = classify(res.dec, s, t, Rat(0));
    res.a_frak = cls.a_frak;
    const Rat Fa = maj.F(res.a_frak), Fm = maj.F.ys.back();
    res.exponent = Fa + (Fm - Fa) / 2 + s * (m - res.a_frak) / 2;
    res.target = (s + t) / (2 * t) * Fm;
    check(s * (m - res.a_frak) / 2 >= s / (2 * t) * (Fm - Fa), "(Delta^a/delta)^{s/2} >= |P|_{a->m}^{s/(2t)}");
    check(res.exponent >= res.target, "exponent >= (s+t)/(2t) * F(m)");
    return res;
}

std::pair<Rat, Rat> thm2_general_exponents(const Rat& s, const Rat& alpha, const Rat& beta_exp, const Rat& theta) {
    if (theta < 0 || theta > 1 || theta * s / alpha > 1 || (1 - theta) * s / beta_exp > 1)
        throw std::invalid_argument("thm2_general_exponents: theta violates the feasibility constraint");
    return {Rat(1) / 2 + theta * s / (2 * alpha), Rat(1) / 2 + (1 - theta) * s / (2 * beta_exp)};
}

Thm2Result thm2_exponent(const Rat& s, const Rat& alpha, const Rat& beta_exp, const Int& sizeA, const Int& sizeB) {
    if (!(s > 0 && s <= 1 && alpha > 0 && beta_exp > 0))
        throw std::invalid_argument("thm2_exponent: need s in (0,1], alpha, beta > 0");
    const Rat sum = alpha + beta_exp;
    if (sum < s || sum > 2 - s) throw std::invalid_argument("thm2_exponent: need alpha + beta in [s, 2-s]");
    if (!pow_geq(sizeA, beta_exp, sizeB, alpha)) throw std::invalid_argument("thm2_exponent: need |A|^beta >= |B|^alpha");

    Thm2Result res;
    res.theta = std::min(Rat(1), Rat(alpha / s));
    if (alpha <= s) {
        res.expA = 1;
        res.expB = (beta_exp + s - alpha) / (2 * beta_exp);
        res.note = "alpha <= s: |A| |B|^{(beta+s-alpha)/(2 beta)}";
        res.trivial_beats = false;
    } else {
        res.expA = (alpha + s) / (2 * alpha);
        res.expB = Rat(1) / 2;
        res.note = "alpha >= s: |A|^{(alpha+s)/(2 alpha)} |B|^{1/2}";
        res.trivial_beats = !pow_geq(sizeB, alpha, sizeA, alpha - s);
    }
    return res;
}

namespace {

// Renormalized parameter cell of a tube relative to the coarse square p at
// level kp, coarsened to `depth` levels below p: the slope is unchanged and
// the intercept maps to (a xc + b - yc)/Delta, evaluated at the tube's
// parameter centre.
std::pair<std::int64_t, std::int64_t> renorm_tube(const Tube& t, Cell2 p, int kp, int depth) {
    const Rat d = t.level.value();
    const Rat ac = Rat(2 * t.ia + 1) * d / 2;
    const Rat bc = Rat(2 * t.ib + 1) * d / 2;
    const Rat D = pow2r(-kp);
    const Rat px = Rat(p.ix) * D, py = Rat(p.iy) * D;
    const Rat b2 = (ac * px + bc - py) / D;
    const Rat cell = pow2r(-depth);
    return {rat_floor(ac / cell).convert_to<std::int64_t>(), rat_floor(b2 / cell).convert_to<std::int64_t>()};
}

}  // namespace

ProductCheckReport multiscale_product_check(const Configuration& cfg, const std::vector<int>& levels) {
    if (levels.empty() || levels.back() != cfg.delta.k)
        throw std::invalid_argument("multiscale_product_check: levels must end at the configuration scale");
    int prev = 0;
    for (int k : levels) {
        if (k <= prev) throw std::invalid_argument("multiscale_product_check: levels must be increasing positive");
        prev = k;
    }

    ProductCheckReport rep;
    const IncidenceStats global = measure_incidences(cfg);
    rep.global_ratio = global.ratio;
    rep.product = 1;

    int from = 0;
    for (int to : levels) {
        BlockFactor blk;
        blk.level_from = from;
        blk.level_to = to;
        blk.max_ratio = 0;
        // group points by their coarse square at level `from`
        std::map<Cell2, std::vector<std::size_t>> coarse;
        const int d = cfg.delta.k - from;
        for (std::size_t i = 0; i < cfg.points.size(); ++i) {
            const Cell2 c = cfg.points.cells[i];
            coarse[{floor_shift(c.ix, d), floor_shift(c.iy, d)}].push_back(i);
        }
        blk.n_cells = coarse.size();
        const int depth = to - from;
        for (const auto& [p, pts] : coarse) {
            std::set<std::pair<std::int64_t, std::int64_t>> all;
            std::size_t min_count = SIZE_MAX;
            for (std::size_t i : pts) {
                std::set<std::pair<std::int64_t, std::int64_t>> mine;
                for (std::size_t ti : cfg.incidences[i]) mine.insert(renorm_tube(cfg.tubes[ti], p, from, depth));
                all.insert(mine.begin(), mine.end());
                min_count = std::min(min_count, mine.size());
            }
            if (min_count == 0 || min_count == SIZE_MAX) continue;
            blk.max_ratio = std::max(blk.max_ratio, Rat(Int(all.size())) / Rat(Int(min_count)));
        }
        if (blk.max_ratio == 0) blk.max_ratio = 1;
        rep.product *= blk.max_ratio;
        rep.blocks.push_back(blk);
        from = to;
    }
    rep.comparison = rep.global_ratio / rep.product;
    return rep;
}

}  // namespace dyadic
