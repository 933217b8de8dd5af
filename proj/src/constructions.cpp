#include "dyadic/constructions.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <set>
#include <stdexcept>

#include "dyadic/statistics.hpp"
#include "dyadic/tube.hpp"

namespace dyadic {
namespace {

long exact_long(const Rat& v, const std::string& what) {
    if (boost::multiprecision::denominator(v) != 1)
        throw std::invalid_argument(what + " must be an integer, got " + rat_string(v));
    Int n = boost::multiprecision::numerator(v);
    if (n < std::numeric_limits<long>::min() || n > std::numeric_limits<long>::max())
        throw std::invalid_argument(what + " out of range");
    return n.convert_to<long>();
}

/// Exact floor(2^e) for rational e >= 0.
Int floor_pow2exp(const Rat& e) {
    if (e < 0) throw std::invalid_argument("floor_pow2exp: negative exponent");
    Int p = boost::multiprecision::numerator(e);
    Int q = boost::multiprecision::denominator(e);
    if (q == 1) return pow2(p.convert_to<long>());
    unsigned long ql = q.convert_to<unsigned long>();
    Int target = pow2(p.convert_to<long>());
    Int lo = 1, hi = Int(2) << (p / q).convert_to<long>();  // (lo^q <= target, hi^q > target)
    while (hi - lo > 1) {
        Int mid = (lo + hi) / 2;
        if (ipow(mid, ql) <= target)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

/// Exact log2 of a positive power of two.
int log2_exact(const Int& n, const std::string& what) {
    if (n <= 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument(what + " must be a positive power of two");
    return static_cast<int>(boost::multiprecision::msb(n));
}

Rat slope_of(Cell1 c, Scale level) { return Rat(c.i) * level.value(); }

/// Max over theta of the slope-sum projection covering of P, with a witness.
Int max_projection(const Set2& P, const Set1& theta, Rat* worst = nullptr) {
    Int best = 0;
    for (const Cell1& c : theta.cells) {
        Rat sl = slope_of(c, theta.scale);
        Int n = project_slope_sum(P, sl);
        if (n > best) {
            best = n;
            if (worst) *worst = sl;
        }
    }
    return best;
}

CapCheck nonconc_check(std::string name, const NonConcReport& rep, const Rat& cap) {
    return CapCheck{std::move(name), rep.leq_cap(cap), rep.constant_upper, cap};
}

}  // namespace

bool SharpExample::all_pass() const {
    return std::all_of(caps.begin(), caps.end(), [](const CapCheck& c) { return c.pass; });
}

bool ABCWitness::all_pass() const {
    return std::all_of(caps.begin(), caps.end(), [](const CapCheck& c) { return c.pass; });
}

Set1 ap_set(Scale gap, Scale scale) {
    if (gap.k < 0 || gap.k > scale.k || scale.k > 62)
        throw std::invalid_argument("ap_set: need 0 <= gap level <= scale level <= 62");
    Set1 out;
    out.scale = scale;
    std::int64_t g = std::int64_t(1) << (scale.k - gap.k);
    std::int64_t n = std::int64_t(1) << gap.k;
    out.cells.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) out.cells.push_back(Cell1{i * g});
    return out;
}

Set1 farey_slopes(int Q, Scale delta) {
    if (Q < 1 || delta.k < 0 || delta.k > 62) throw std::invalid_argument("farey_slopes: bad arguments");
    Set1 out;
    out.scale = delta;
    for (long q = 1; q <= Q; ++q)
        for (long p = 0; p <= q; ++p) {
            if (std::gcd(p, q) != 1) continue;
            out.cells.push_back(Cell1{(std::int64_t(p) << delta.k) / q});
        }
    out.normalize();
    return out;
}

Int farey_order(Scale rho, const Rat& s) {
    Int Q = floor_pow2exp(Rat(rho.k) * s / 2);
    return Q < 1 ? Int(1) : Q;
}

SharpExample standard_sharp_example(Scale rho, const Rat& s, const Rat& t, const Rat& cap) {
    if (!(s > 0 && s <= 1)) throw std::invalid_argument("standard_sharp_example: need s in (0,1]");
    if (!(t >= s && t <= 2 - s)) throw std::invalid_argument("standard_sharp_example: need t in [s, 2-s]");
    if (rho.k < 1) throw std::invalid_argument("standard_sharp_example: need rho < 1");
    Rat gap_exp = Rat(rho.k) * t / 2;
    if (boost::multiprecision::denominator(gap_exp) != 1) {
        Int d = boost::multiprecision::denominator(Rat(t / 2));
        long dl = d.convert_to<long>();
        long lo = (rho.k / dl) * dl, hi = lo + dl;
        long near = (rho.k - lo <= hi - rho.k && lo > 0) ? lo : hi;
        throw std::invalid_argument("standard_sharp_example: rho^{t/2} is not dyadic at this level; nearest representable rho is 2^-" +
                                    std::to_string(near));
    }
    int gk = static_cast<int>(exact_long(gap_exp, "gap level"));

    SharpExample ex;
    ex.construction = "standard_sharp";
    ex.delta = rho;
    ex.A = ap_set(Scale{gk}, rho);
    Int Q = farey_order(rho, s);
    ex.Theta = farey_slopes(static_cast<int>(Q.convert_to<long>()), rho);
    ex.P = product(ex.A, ex.A);
    ex.claimed_exponent = (s + t) / 2;
    ex.params = {{"rho_log2", Rat(rho.k)}, {"s", s}, {"t", t}, {"cap", cap}};
    ex.snapped = {{"gap_log2", Rat(gk)}, {"farey_order", Rat(Q)}, {"n_points", Rat(Int(ex.P.size()))},
                  {"n_slopes", Rat(Int(ex.Theta.size()))}};

    ex.caps.push_back(nonconc_check("A_frostman", frostman_constant(ex.A, t / 2), cap));
    ex.caps.push_back(nonconc_check("A_katz_tao", katz_tao_constant(ex.A, t / 2), cap));
    ex.caps.push_back(nonconc_check("Theta_frostman", frostman_constant(ex.Theta, s), cap));
    ex.caps.push_back(nonconc_check("Theta_katz_tao", katz_tao_constant(ex.Theta, s), cap));
    Rat worst;
    Int proj = max_projection(ex.P, ex.Theta, &worst);
    ex.caps.push_back(CapCheck{"projection", leq_cap_pow2(proj, cap, Rat(rho.k) * (s + t) / 2), Rat(proj), cap});
    return ex;
}

SharpExample minimal_nonconc_example(Scale delta, const Rat& s, const Rat& t, const Rat& u, const Rat& cap) {
    if (!(s > 0 && s <= 1)) throw std::invalid_argument("minimal_nonconc_example: need s in (0,1]");
    if (!(t >= s && t <= 2 - s)) throw std::invalid_argument("minimal_nonconc_example: need t in [s, 2-s]");
    if (!(u > 0 && u <= t && u <= 1)) throw std::invalid_argument("minimal_nonconc_example: need u in (0, min(t,1)]");
    int k = delta.k;
    int ku = static_cast<int>(exact_long(Rat(k) * u, "Delta level k*u"));
    int kr = static_cast<int>(exact_long(Rat(k) * (1 - t / 2 - u / 2), "rho level k*(1-t/2-u/2)"));
    if (ku < 1 || kr < 0 || ku + kr > k)
        throw std::invalid_argument("minimal_nonconc_example: scales do not nest at this level");
    long spread = exact_long(Rat(k - ku) * s, "per-cell slope count exponent");
    if (spread > k - ku) throw std::invalid_argument("minimal_nonconc_example: slope spread exceeds Delta-cell");

    SharpExample inner = standard_sharp_example(Scale{ku}, s, Rat(1), cap);

    SharpExample ex;
    ex.construction = "minimal_nonconc";
    ex.delta = delta;
    ex.A = inner.A;
    ex.P = refine(scale_set(inner.P, kr), delta);
    // Each Delta-slope cell carries 2^spread maximally spaced delta-cells.
    ex.Theta.scale = delta;
    std::int64_t wide = std::int64_t(1) << (k - ku);
    std::int64_t step = wide >> spread;
    for (const Cell1& c : inner.Theta.cells)
        for (std::int64_t j = 0; j < (std::int64_t(1) << spread); ++j)
            ex.Theta.cells.push_back(Cell1{c.i * wide + j * step});
    ex.Theta.normalize();
    ex.claimed_exponent = t / 2 + s * u / 2;
    ex.params = {{"delta_log2", Rat(k)}, {"s", s}, {"t", t}, {"u", u}, {"cap", cap}};
    ex.snapped = {{"Delta_log2", Rat(ku)}, {"rho_log2", Rat(kr)}, {"n_points", Rat(Int(ex.P.size()))},
                  {"n_slopes", Rat(Int(ex.Theta.size()))}};

    // |P| within a factor 4 of delta^{-t}, both directions.
    Int n = Int(ex.P.size());
    bool size_ok = leq_cap_pow2(n, Rat(4), Rat(k) * t) && cmp_pow2_products(Int(1), Rat(k) * t, 4 * n, Rat(0)) <= 0;
    ex.caps.push_back(CapCheck{"size_vs_delta^-t", size_ok, Rat(n), Rat(4)});

    SingleScaleResult ss = check_single_scale_nonconcentration(ex.P, u);
    ex.caps.push_back(CapCheck{"single_scale_nonconc", ss.ok, Rat(ss.worst_count), Rat(1)});
    ex.caps.push_back(nonconc_check("Theta_frostman", frostman_constant(ex.Theta, s), cap));
    Rat worst;
    Int proj = max_projection(ex.P, ex.Theta, &worst);
    ex.caps.push_back(CapCheck{"projection", leq_cap_pow2(proj, cap, Rat(k) * ex.claimed_exponent), Rat(proj), cap});
    return ex;
}

SharpExample katz_tao_sharp_example(Scale delta, Scale rho, const Rat& s, const Rat& t, const Rat& cap) {
    if (rho.k > delta.k) throw std::invalid_argument("katz_tao_sharp_example: need rho >= delta");
    SharpExample inner = standard_sharp_example(rho, s, t, cap);

    SharpExample ex;
    ex.construction = "katz_tao_sharp";
    ex.delta = delta;
    ex.A = inner.A;
    ex.P = scale_set(inner.P, delta.k - rho.k);
    ex.Theta = neighborhood(refine(inner.Theta, delta), rho);
    ex.claimed_exponent = Rat(rho.k) * (s + t) / (2 * Rat(delta.k));
    ex.params = {{"delta_log2", Rat(delta.k)}, {"rho_log2", Rat(rho.k)}, {"s", s}, {"t", t}, {"cap", cap}};
    ex.snapped = {{"n_points", Rat(Int(ex.P.size()))}, {"n_slopes", Rat(Int(ex.Theta.size()))}};

    ex.caps.push_back(nonconc_check("P_katz_tao", katz_tao_constant(ex.P, t), cap));
    Int n = Int(ex.P.size());
    bool size_ok = leq_cap_pow2(n, Rat(4), Rat(rho.k) * t) && cmp_pow2_products(Int(1), Rat(rho.k) * t, 4 * n, Rat(0)) <= 0;
    ex.caps.push_back(CapCheck{"size_vs_rho^-t", size_ok, Rat(n), Rat(4)});
    Rat worst;
    Int proj = max_projection(ex.P, ex.Theta, &worst);
    ex.caps.push_back(CapCheck{"projection", leq_cap_pow2(proj, cap, Rat(rho.k) * (s + t) / 2), Rat(proj), cap});
    return ex;
}

SharpExample product_example_small_alpha(Scale delta, const Rat& s, const Rat& alpha, const Int& sizeA,
                                          const Int& sizeB, const Rat& cap) {
    if (!(alpha > 0 && alpha <= s && s < 1))
        throw std::invalid_argument("product_example_small_alpha: need 0 < alpha <= s < 1");
    if (sizeB < 1 || sizeA < sizeB || sizeA % sizeB != 0)
        throw std::invalid_argument("product_example_small_alpha: need |B| dividing |A|");
    if (!pow_geq(Int(2), Rat(delta.k) * alpha, sizeA, Rat(1)))
        throw std::invalid_argument("product_example_small_alpha: need |A| <= delta^-alpha");
    int k = delta.k;
    int a = log2_exact(sizeA, "|A|");
    int b = log2_exact(sizeB, "|B|");
    long l_shift = exact_long(Rat(b) / alpha, "|B|^{1/alpha} exponent");
    long gD_shift = exact_long(Rat(a - b) / alpha, "N^{1/alpha} exponent") - (a - b);
    if (l_shift > k) throw std::invalid_argument("product_example_small_alpha: l below delta");

    std::int64_t gB = std::int64_t(1) << (l_shift - b);   // B0 gap in delta-cells
    std::int64_t lcells = std::int64_t(1) << l_shift;     // l in delta-cells
    std::int64_t gD = std::int64_t(1) << gD_shift;        // D gap in l-cells
    Int N = sizeA / sizeB;
    std::int64_t Nn = N.convert_to<std::int64_t>();

    SharpExample ex;
    ex.construction = "product_small_alpha";
    ex.delta = delta;
    Set1 B0;
    B0.scale = delta;
    for (std::int64_t i = 0; i < sizeB; ++i) B0.cells.push_back(Cell1{i * gB});
    Set1 A0;
    A0.scale = delta;
    for (std::int64_t j = 0; j < Nn; ++j)
        for (std::int64_t i = 0; i < sizeB; ++i) A0.cells.push_back(Cell1{j * gD * lcells + i * gB});
    A0.normalize();
    B0.normalize();
    ex.A = A0;
    ex.P = product(A0, B0);
    Int Q = floor_pow2exp(Rat(b) * s / (2 * alpha));
    if (Q < 1) Q = 1;
    ex.Theta = farey_slopes(static_cast<int>(Q.convert_to<long>()), delta);
    // target: N |B|^{(s+2 alpha)/(2 alpha)} = 2^{a + b s/(2 alpha)}
    ex.claimed_exponent = (Rat(a) + Rat(b) * s / (2 * alpha)) / Rat(k);
    ex.params = {{"delta_log2", Rat(k)}, {"s", s}, {"alpha", alpha}, {"sizeA", Rat(sizeA)},
                 {"sizeB", Rat(sizeB)}, {"cap", cap}};
    ex.snapped = {{"l_log2", Rat(-(k - l_shift))}, {"N", Rat(N)}, {"farey_order", Rat(Q)},
                  {"n_slopes", Rat(Int(ex.Theta.size()))}};

    ex.caps.push_back(CapCheck{"sizeA_exact", Int(A0.size()) == sizeA, Rat(Int(A0.size())), Rat(sizeA)});
    ex.caps.push_back(nonconc_check("A_katz_tao", katz_tao_constant(A0, alpha), cap));
    ex.caps.push_back(nonconc_check("B_katz_tao", katz_tao_constant(B0, alpha), cap));
    Rat worst;
    Int proj = max_projection(ex.P, ex.Theta, &worst);
    ex.caps.push_back(
        CapCheck{"projection", leq_cap_pow2(proj, cap, Rat(a) + Rat(b) * s / (2 * alpha)), Rat(proj), cap});
    return ex;
}

SharpExample product_example_large_alpha(Scale delta, const Rat& s, const Rat& alpha, const Int& sizeA,
                                          const Int& sizeB, const Rat& cap) {
    if (!(s > 0 && alpha >= s)) throw std::invalid_argument("product_example_large_alpha: need alpha >= s > 0");
    if (sizeB < 1 || sizeB > sizeA) throw std::invalid_argument("product_example_large_alpha: need |B| <= |A|");
    if (!pow_geq(sizeB, alpha, sizeA, alpha - s))
        throw std::invalid_argument("product_example_large_alpha: need |B|^alpha >= |A|^{alpha-s}");
    int k = delta.k;
    int a = log2_exact(sizeA, "|A|");
    int b = log2_exact(sizeB, "|B|");
    long ce = exact_long(Rat(a) * s / alpha, "|A|^{s/alpha} exponent");
    long a_shift = exact_long(Rat(a) / alpha, "|A|^{1/alpha} exponent");
    long gA_shift = a_shift - a;
    if (gA_shift < 0 || a_shift > k)
        throw std::invalid_argument("product_example_large_alpha: scales do not nest at this level");
    Int bigC = pow2(ce);

    ABCWitness abc = abc_ratio_construction(sizeA, sizeB, bigC, cap);
    long m = abc.gap_units;

    SharpExample ex;
    ex.construction = "product_large_alpha";
    ex.delta = delta;
    std::int64_t gA = std::int64_t(1) << gA_shift;
    Set1 A, B;
    A.scale = B.scale = delta;
    std::int64_t nA = sizeA.convert_to<std::int64_t>(), nB = sizeB.convert_to<std::int64_t>();
    for (std::int64_t i = 0; i < nA; ++i) A.cells.push_back(Cell1{i * gA});
    for (std::int64_t j = 0; j < nB; ++j) B.cells.push_back(Cell1{j * m * gA});
    ex.A = A;
    ex.P = product(A, B);
    // Greedy 1/bigC-separated reduction of the ratio set, then snap to delta
    // and fatten by |A|^{-1/alpha}.
    Rat sep = Rat(1, bigC);
    std::vector<Rat> reduced;
    for (const Rat& c : abc.C)
        if (reduced.empty() || c - reduced.back() >= sep) reduced.push_back(c);
    Set1 centers;
    centers.scale = delta;
    for (const Rat& c : reduced) centers.cells.push_back(Cell1{rat_floor(c * pow2(k)).convert_to<std::int64_t>()});
    centers.normalize();
    ex.Theta = neighborhood(centers, Scale{static_cast<int>(a_shift)});
    ex.claimed_exponent = (Rat(a) * (Rat(1) / 2 + s / (2 * alpha)) + Rat(b) / 2) / Rat(k);
    ex.params = {{"delta_log2", Rat(k)}, {"s", s}, {"alpha", alpha}, {"sizeA", Rat(sizeA)},
                 {"sizeB", Rat(sizeB)}, {"cap", cap}};
    ex.snapped = {{"C_target", Rat(bigC)}, {"B_gap_units", Rat(m)}, {"Delta_log2", Rat(k - a_shift)},
                  {"n_slopes", Rat(Int(ex.Theta.size()))}, {"n_slope_centers", Rat(Int(centers.size()))}};

    for (const CapCheck& c : abc.caps) ex.caps.push_back(c);
    ex.caps.push_back(nonconc_check("A_katz_tao", katz_tao_constant(A, alpha), cap));
    ex.caps.push_back(nonconc_check("B_katz_tao", katz_tao_constant(B, alpha), cap));
    ex.caps.push_back(nonconc_check("C_frostman", frostman_constant(ex.Theta, s), cap));

    // Projections are measured exactly at the snapped centers. Every other
    // slope in Theta differs from a measured one by at most 2^{-a/alpha} +
    // delta <= 2 * 2^{-a/alpha}, and B spans at most delta * |A|^{1/alpha},
    // so each point's projection moves by less than 2*delta: the covering over
    // the whole neighborhood is at most 5x the measured maximum.
    Rat worst;
    Int proj = max_projection(ex.P, centers, &worst);
    Rat target_exp = Rat(a) * (Rat(1) / 2 + s / (2 * alpha)) + Rat(b) / 2;
    ex.caps.push_back(CapCheck{"projection_centers", leq_cap_pow2(proj, cap, target_exp), Rat(proj), cap});
    ex.caps.push_back(CapCheck{"projection_neighborhood", leq_cap_pow2(5 * proj, cap, target_exp), Rat(5 * proj), cap});
    return ex;
}

DirichletResult dirichlet_approx(long m, long n, const Rat& x) {
    if (m < 1 || n < m || n % m != 0) throw std::invalid_argument("dirichlet_approx: need 1 <= m | n");
    if (x < 0 || x > 1) throw std::invalid_argument("dirichlet_approx: need x in [0,1]");
    Int p = boost::multiprecision::numerator(x);
    Int q = boost::multiprecision::denominator(x);
    long buckets = n / m;
    // frac(k m x) = ((k m p) mod q) / q; floored mod keeps this in [0,1).
    std::vector<long> first(static_cast<std::size_t>(buckets), -1);
    long i = -1, j = -1;
    for (long kk = 0; kk <= buckets; ++kk) {
        Int val = (Int(kk) * m * p) % q;
        if (val < 0) val += q;
        long bucket = ((val * buckets) / q).convert_to<long>();
        if (bucket >= buckets) bucket = buckets - 1;  // unreachable; guard rounding
        if (first[static_cast<std::size_t>(bucket)] >= 0) {
            j = first[static_cast<std::size_t>(bucket)];
            i = kk;
            break;
        }
        first[static_cast<std::size_t>(bucket)] = kk;
    }
    if (i < 0) throw std::logic_error("dirichlet_approx: pigeonhole failed");
    auto floor_mul = [&](long kk) -> Int {
        Int num = Int(kk) * m * p;
        Int r = num % q;
        if (r < 0) r += q;
        return (num - r) / q;
    };
    DirichletResult res;
    res.b = Int(i - j) * m;
    res.a = floor_mul(i) - floor_mul(j);
    // |x - a/b| <= m/(|b| n) <=> |p b - a q| n <= m q.
    Int err = p * res.b - res.a * q;
    if (err < 0) err = -err;
    if (err * n > Int(m) * q) throw std::logic_error("dirichlet_approx: certificate failed");
    return res;
}

namespace {

RatioCoveringResult ratio_covering_window(long span, long gap, long count, const Rat& scale, const Rat& target) {
    std::set<Rat> ratios;
    for (long jj = 1; jj < count; ++jj) {
        long bb = jj * gap;
        for (long aa = 0; aa <= span && aa <= bb; ++aa) ratios.insert(Rat(aa, bb));
    }
    std::set<Int> cells;
    for (const Rat& r : ratios) cells.insert(rat_floor(r / scale));
    RatioCoveringResult res;
    res.covering = Int(cells.size());
    res.scale = scale;
    res.target = target;
    res.constant = Rat(res.covering) / target;
    res.ratios.assign(ratios.begin(), ratios.end());
    return res;
}

}  // namespace

RatioCoveringResult ratio_covering_prop(long n, long m) {
    if (m < 1 || n < m || n % m != 0) throw std::invalid_argument("ratio_covering_prop: need 1 <= m | n");
    return ratio_covering_window(n, m, n / m + 1, Rat(m, Int(n) * n), Rat(Int(n) * n, m));
}

RatioCoveringResult ratio_covering_cor(long n, long b0, long gap, long count) {
    if (count < 2 || gap < 1 || b0 < 0 || b0 + (count - 1) * gap > n)
        throw std::invalid_argument("ratio_covering_cor: B must be a nontrivial AP inside {0..n}");
    long D = (count - 1) * gap;
    // Translate the window [b0, b0+D] to the origin; the ratio set is invariant.
    return ratio_covering_window(D, gap, count, Rat(1, Int(count) * D), Rat(Int(count) * D, 1));
}

ABCWitness abc_ratio_construction(const Int& bigA, const Int& bigB, const Int& bigC, const Rat& K) {
    if (bigB < 1 || bigA < bigB || bigA > (Int(1) << 20))
        throw std::invalid_argument("abc_ratio_construction: need 1 <= B <= A <= 2^20");
    if (bigC < 1 || bigC > bigA || bigA > bigB * bigC)
        throw std::invalid_argument("abc_ratio_construction: need C <= A <= B*C");
    long A = bigA.convert_to<long>(), Bn = bigB.convert_to<long>(), Cn = bigC.convert_to<long>();

    ABCWitness w;
    w.bigA = bigA;
    w.bigB = bigB;
    w.bigC = bigC;
    long m = A / Bn;
    w.gap_units = m;
    // Window [0, a] with a = i_max/A, i_max maximal with i^2 B <= C A.
    long i_max = static_cast<long>(
        boost::multiprecision::sqrt(Int(Cn) * A / Bn).convert_to<long>());
    while (Int(i_max + 1) * (i_max + 1) * Bn <= Int(Cn) * A) ++i_max;
    while (i_max > 0 && Int(i_max) * i_max * Bn > Int(Cn) * A) --i_max;
    if (i_max > A) i_max = A;

    std::set<Rat> cset;
    for (long dj = 1; dj * m <= i_max; ++dj)
        for (long di = 0; di <= dj * m; ++di) cset.insert(Rat(di, dj * m));
    w.C.assign(cset.begin(), cset.end());

    std::set<Int> ccells;
    for (const Rat& c : w.C) ccells.insert(rat_floor(c * Cn));
    w.c_covering = Int(ccells.size());

    // max_c |A + cB| via integer dedup: values (i q + p j m) / (A q).
    long jmax = A / m;
    w.max_sum_count = 0;
    std::vector<long> stamp;
    long epoch = 0;
    for (const Rat& c : w.C) {
        long p = boost::multiprecision::numerator(c).convert_to<long>();
        long q = boost::multiprecision::denominator(c).convert_to<long>();
        std::size_t range = static_cast<std::size_t>(A * q + p * jmax * m) + 1;
        if (stamp.size() < range) stamp.resize(range, 0);
        ++epoch;
        long cnt = 0;
        for (long jj = 0; jj <= jmax; ++jj) {
            long base = p * jj * m;
            for (long ii = 0; ii <= A; ++ii) {
                long v = ii * q + base;
                if (stamp[static_cast<std::size_t>(v)] != epoch) {
                    stamp[static_cast<std::size_t>(v)] = epoch;
                    ++cnt;
                }
            }
        }
        if (Int(cnt) > w.max_sum_count) {
            w.max_sum_count = cnt;
            w.worst_c = c;
        }
    }

    w.caps.push_back(CapCheck{"ratio_covering", 16 * w.c_covering >= bigC, Rat(w.c_covering), Rat(bigC, 16)});
    bool sum_ok = Rat(w.max_sum_count * w.max_sum_count) <= K * K * Rat(bigA * bigB * bigC);
    w.caps.push_back(CapCheck{"sum_set_cap", sum_ok, Rat(w.max_sum_count), K});
    return w;
}

namespace {

void write_rat_pairs(std::ostream& out, const std::vector<std::pair<std::string, Rat>>& kv) {
    out << "{";
    bool sep = false;
    for (const auto& [key, val] : kv) {
        if (sep) out << ", ";
        sep = true;
        out << "\"" << key << "\": \"" << rat_string(val) << "\"";
    }
    out << "}";
}

}  // namespace

void write_manifest_json(std::ostream& out, const SharpExample& ex) {
    out << "{\n  \"construction\": \"" << ex.construction << "\",\n  \"parameters\": ";
    write_rat_pairs(out, ex.params);
    out << ",\n  \"snapped_scales\": ";
    write_rat_pairs(out, ex.snapped);
    out << ",\n  \"claimed_exponent\": \"" << rat_string(ex.claimed_exponent) << "\",\n  \"verified_caps\": [";
    bool sep = false;
    for (const CapCheck& c : ex.caps) {
        if (sep) out << ",";
        sep = true;
        out << "\n    {\"name\": \"" << c.name << "\", \"pass\": " << (c.pass ? "true" : "false")
            << ", \"measured\": \"" << rat_string(c.measured) << "\", \"cap\": \"" << rat_string(c.cap) << "\"}";
    }
    out << "\n  ]\n}\n";
}

}  // namespace dyadic
