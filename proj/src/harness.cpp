#include "dyadic/harness.hpp"

#include <cmath>
#include <set>
#include <ostream>
#include <stdexcept>

#include "dyadic/bookkeeping.hpp"
#include "dyadic/decompose.hpp"
#include "dyadic/tube.hpp"

namespace dyadic {
namespace {

double log2_int(const Int& n) { return static_cast<double>(boost::multiprecision::msb(n)) +
                                       std::log2(rat_double(Rat(n) / Rat(Int(1) << boost::multiprecision::msb(n)))); }

Rat cap_measured(const SharpExample& ex, const std::string& name) {
    for (const auto& c : ex.caps)
        if (c.name == name) return c.measured;
    throw std::logic_error("missing cap check: " + name);
}

// Covering of the projected corner net of P over the Farey skeleton. The
// example's cap uses the full-cell image over the rho-thickened slope set;
// for the exponent fit both the cell footprint and the thickening radius are
// scale-coupled artifacts that bias the endpoint rho = delta, so the fit
// tracks the corner statistic at the skeleton slopes instead.
Int skeleton_projection(const SharpExample& ex, Scale rho, const Rat& s) {
    Int Q = farey_order(rho, s);
    Set1 centers = farey_slopes(static_cast<int>(Q.convert_to<long>()), ex.delta);
    const Rat d = ex.delta.value();
    Int best = 0;
    for (const auto& th : centers.cells) {
        const Rat c = Rat(th.i) * d;
        std::set<Int> cells;
        for (const auto& q : ex.P.cells) cells.insert(rat_floor(Rat(q.ix) + c * Rat(q.iy)));
        best = std::max(best, Int(cells.size()));
    }
    return best;
}

}  // namespace

ExponentReport sweep_sharp_exponent(Scale delta, const Rat& s, const Rat& t, const std::vector<int>& rho_levels,
                                    const Rat& cap, double tolerance) {
    if (rho_levels.size() < 2) throw std::invalid_argument("sweep_sharp_exponent: need at least two scales");
    ExponentReport rep;
    rep.tolerance = tolerance;
    rep.predicted = (s + t) / (2 * t);
    rep.caps_pass = true;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int rk : rho_levels) {
        SharpExample ex = katz_tao_sharp_example(delta, Scale{rk}, s, t, cap);
        SweepPoint pt;
        pt.rho_log2 = -rk;
        pt.n_points = Int(ex.P.size());
        pt.max_projection = skeleton_projection(ex, Scale{rk}, s);
        pt.caps_pass = ex.all_pass();
        rep.caps_pass = rep.caps_pass && pt.caps_pass;
        double x = log2_int(pt.n_points), y = log2_int(pt.max_projection);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        rep.points.push_back(pt);
    }
    double n = static_cast<double>(rep.points.size());
    rep.fitted_exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    rep.gap = std::abs(rep.fitted_exponent - rat_double(rep.predicted));
    rep.pass = rep.caps_pass && rep.gap <= tolerance;
    return rep;
}

void write_exponent_json(std::ostream& out, const ExponentReport& rep) {
    out << "{\n  \"predicted\": \"" << rat_string(rep.predicted) << "\",\n  \"fitted_exponent\": " << rep.fitted_exponent
        << ",\n  \"gap\": " << rep.gap << ",\n  \"tolerance\": " << rep.tolerance
        << ",\n  \"caps_pass\": " << (rep.caps_pass ? "true" : "false")
        << ",\n  \"pass\": " << (rep.pass ? "true" : "false") << ",\n  \"points\": [";
    bool sep = false;
    for (const auto& pt : rep.points) {
        if (sep) out << ",";
        sep = true;
        out << "\n    {\"rho_log2\": " << pt.rho_log2 << ", \"n_points\": " << pt.n_points
            << ", \"max_projection\": " << pt.max_projection
            << ", \"caps_pass\": " << (pt.caps_pass ? "true" : "false") << "}";
    }
    out << "\n  ]\n}\n";
}

SharpExample build_named_example(const std::string& name, Scale delta, int rho_log2, const Rat& s, const Rat& t,
                                 const Rat& u, const Rat& alpha, const Int& sizeA, const Int& sizeB, const Rat& cap) {
    if (name == "standard_sharp") return standard_sharp_example(Scale{rho_log2 ? rho_log2 : delta.k}, s, t, cap);
    if (name == "minimal_nonconc") return minimal_nonconc_example(delta, s, t, u, cap);
    if (name == "katz_tao_sharp") return katz_tao_sharp_example(delta, Scale{rho_log2}, s, t, cap);
    if (name == "product_small_alpha") return product_example_small_alpha(delta, s, alpha, sizeA, sizeB, cap);
    if (name == "product_large_alpha") return product_example_large_alpha(delta, s, alpha, sizeA, sizeB, cap);
    throw std::invalid_argument("unknown construction: " + name);
}

bool selftest(std::ostream& log) {
    bool all = true;
    auto check = [&](const std::string& name, bool ok) {
        log << (ok ? "ok   " : "FAIL ") << name << "\n";
        all = all && ok;
    };

    SharpExample std6 = standard_sharp_example(Scale{6}, Rat(1, 2), Rat(1), Rat(16));
    check("standard_sharp caps at 2^-6", std6.all_pass());

    Configuration cfg = build_configuration(std6.P, std6.Theta, Rat(1, 2));
    check("configuration validates", validate_configuration(cfg).valid);

    bool dir_ok = true;
    for (long i = 1; i <= 20 && dir_ok; ++i) {
        try {
            dirichlet_approx(2, 12, Rat(i, 23));
        } catch (const std::exception&) {
            dir_ok = false;
        }
    }
    check("dirichlet certificates", dir_ok);

    check("ratio covering constant", ratio_covering_prop(24, 4).constant >= Rat(1, 32));

    check("abc construction caps", abc_ratio_construction(Int(64), Int(64), Int(64), Rat(32)).all_pass());

    std::vector<Rat> vals;
    for (int i = 0; i <= 40; ++i) vals.push_back(Rat(i * i, 40));  // convex, 2-Lipschitz on [0,40]
    Decomposition dec = decompose(vals, 2, Rat(1, 10));
    check("decomposition certified", dec.certified);

    std::vector<Rat> beta;
    for (int i = 0; i <= 40; ++i) beta.push_back(Rat(i));
    ParameterBudget budget = make_budget(Rat(1, 2), Rat(1), Rat(1, 2), Rat(1, 2));
    check("bookkeeping chain", thm12_bookkeeping(beta, budget).ok);

    return all;
}

}  // namespace dyadic
