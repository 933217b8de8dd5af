#include "dyadic/decompose.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace dyadic {

Rat PiecewiseLinear::operator()(const Rat& x) const {
    if (xs.empty() || x < xs.front() || x > xs.back())
        throw std::invalid_argument("PiecewiseLinear: query out of domain");
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    if (it == xs.end()) return ys.back();
    const std::size_t i = std::size_t(it - xs.begin()) - 1;
    return ys[i] + (x - xs[i]) * (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]);
}

bool superlinear_check(const PiecewiseLinear& f, const Rat& a, const Rat& b, const Rat& sigma, const Rat& eps) {
    if (!(a < b)) throw std::invalid_argument("superlinear_check: need a < b");
    const Rat fa = f(a);
    const Rat slack = eps * (b - a);
    auto ok_at = [&](const Rat& x) { return f(x) >= fa + sigma * (x - a) - slack; };
    if (!ok_at(a) || !ok_at(b)) return false;
    for (const Rat& x : f.xs)
        if (x > a && x < b && !ok_at(x)) return false;
    return true;
}

Rat Decomposition::slope_sum() const {
    Rat s = 0;
    for (std::size_t j = 0; j + 1 < breakpoints.size(); ++j) s += (breakpoints[j + 1] - breakpoints[j]) * slopes[j];
    return s;
}

namespace {

// sigma*(a, b): the largest sigma with (f, a, b) (sigma, 0)-superlinear,
// i.e. the minimal chord slope from a to an integer knot in (a, b].
Rat group_slope(const std::vector<Rat>& f, long a, long b) {
    Rat best = (f[b] - f[a]) / (b - a);
    for (long x = a + 1; x < b; ++x) best = std::min(best, Rat((f[x] - f[a]) / (x - a)));
    return best;
}

}  // namespace

Decomposition decompose(const std::vector<Rat>& values, int d, const Rat& xi) {
    return decompose(values, d, xi, default_tau(d, xi));
}

Decomposition decompose(const std::vector<Rat>& values, int d, const Rat& xi, const Rat& tau) {
    const long m = long(values.size()) - 1;
    if (m < 1) throw std::invalid_argument("decompose: need m >= 1");
    if (values[0] != 0) throw std::invalid_argument("decompose: need f(0) = 0");
    for (long i = 1; i <= m; ++i) {
        const Rat inc = values[i] - values[i - 1];
        if (inc < 0 || inc > d) throw std::invalid_argument("decompose: f not non-decreasing d-Lipschitz");
    }
    if (xi <= 0 || tau <= 0) throw std::invalid_argument("decompose: need xi, tau > 0");

    Decomposition dec;
    dec.tau = tau;
    dec.xi = xi;

    // Greatest convex minorant via a lower hull over the knots (i, f(i)):
    // contact abscissae carve [0, m] into pieces with strictly increasing
    // slopes on which f is exactly (slope, 0)-superlinear, with zero loss.
    std::vector<long> hull;
    for (long i = 0; i <= m; ++i) {
        while (hull.size() >= 2) {
            const long p = hull[hull.size() - 2], q = hull.back();
            // pop q unless it turns strictly left: (q-p)(f(i)-f(q)) > (i-q)(f(q)-f(p))
            if ((i - q) * (values[q] - values[p]) >= (q - p) * (values[i] - values[q]))
                hull.pop_back();
            else
                break;
        }
        hull.push_back(i);
    }

    const Rat min_len = tau * m;
    // Regroup hull pieces so every group is at least tau*m long.
    std::vector<std::pair<long, long>> groups;
    long pending = -1;  // start of an accumulating run of short pieces
    for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
        const long a = hull[h], b = hull[h + 1];
        if (pending < 0 && Rat(b - a) >= min_len) {
            groups.emplace_back(a, b);
        } else if (pending >= 0 && Rat(b - a) >= min_len) {
            // fold the short run leftward so it cannot dilute the long piece
            if (!groups.empty()) {
                groups.back().second = a;
                groups.emplace_back(a, b);
            } else {
                groups.emplace_back(pending, b);
            }
            pending = -1;
        } else {
            if (pending < 0) pending = a;
            if (Rat(b - pending) >= min_len) {
                groups.emplace_back(pending, b);
                pending = -1;
            }
        }
    }
    if (pending >= 0) {
        if (!groups.empty())
            groups.back().second = m;
        else
            groups.emplace_back(pending, m);
    }

    std::vector<Rat> slopes;
    for (const auto& [a, b] : groups) slopes.push_back(group_slope(values, a, b));

    // Strictly increasing slopes: merge while an adjacent pair is ordered
    // the wrong way (merging can only raise the left group's exact slope).
    for (std::size_t j = 0; j + 1 < groups.size();) {
        if (slopes[j + 1] <= slopes[j]) {
            groups[j].second = groups[j + 1].second;
            groups.erase(groups.begin() + long(j + 1));
            slopes.erase(slopes.begin() + long(j + 1));
            slopes[j] = group_slope(values, groups[j].first, groups[j].second);
            if (j > 0) --j;
        } else {
            ++j;
        }
    }

    dec.breakpoints.push_back(0);
    for (const auto& [a, b] : groups) dec.breakpoints.push_back(Rat(b));
    dec.slopes = std::move(slopes);

    // Certify the three postconditions.
    PiecewiseLinear f;
    for (long i = 0; i <= m; ++i) {
        f.xs.push_back(Rat(i));
        f.ys.push_back(values[i]);
    }
    dec.certified = true;
    for (std::size_t j = 0; j + 1 < dec.breakpoints.size(); ++j) {
        if (dec.breakpoints[j + 1] - dec.breakpoints[j] < min_len) {
            dec.certified = false;
            dec.diagnostic = "piece shorter than tau*m";
        }
        if (!superlinear_check(f, dec.breakpoints[j], dec.breakpoints[j + 1], dec.slopes[j], Rat(0))) {
            dec.certified = false;
            dec.diagnostic = "superlinearity failed";
        }
        if (j + 1 < dec.slopes.size() && !(dec.slopes[j] < dec.slopes[j + 1])) {
            dec.certified = false;
            dec.diagnostic = "slopes not strictly increasing";
        }
    }
    if (dec.slope_sum() < values[m] - xi * m) {
        dec.certified = false;
        dec.diagnostic = "slope mass below f(m) - xi*m";
    }
    return dec;
}

AffineMajorant affine_majorant(const Decomposition& dec, const std::vector<Rat>& values) {
    const Rat m = dec.breakpoints.back();
    const Rat budget = dec.xi * m;
    AffineMajorant maj;
    maj.F.xs = dec.breakpoints;
    maj.F.ys.resize(dec.breakpoints.size());
    maj.F.ys[0] = 0;
    for (std::size_t j = 0; j + 1 < dec.breakpoints.size(); ++j)
        maj.F.ys[j + 1] = maj.F.ys[j] + dec.slopes[j] * (dec.breakpoints[j + 1] - dec.breakpoints[j]);

    auto f_at = [&](const Rat& x) { return values[rat_floor(x).convert_to<std::size_t>()]; };
    maj.ok = true;
    maj.max_error = 0;
    std::vector<Rat> errs;  // f(a_j) - F(a_j)
    for (std::size_t j = 0; j < dec.breakpoints.size(); ++j) {
        const Rat e = f_at(dec.breakpoints[j]) - maj.F.ys[j];
        errs.push_back(e);
        if (e < 0 || e > budget) maj.ok = false;
        maj.max_error = std::max(maj.max_error, e);
    }
    // pairwise: |f(a_i) - f(a_j) - (F(a_i) - F(a_j))| = |errs_i - errs_j| <= xi m
    for (std::size_t i = 0; i < errs.size(); ++i)
        for (std::size_t j = i + 1; j < errs.size(); ++j)
            if (abs(errs[i] - errs[j]) > budget) maj.ok = false;
    return maj;
}

void write_decomposition_json(std::ostream& out, const Decomposition& dec) {
    out << "{\n  \"tau\": \"" << rat_string(dec.tau) << "\",\n  \"xi\": \"" << rat_string(dec.xi)
        << "\",\n  \"breakpoints\": [";
    for (std::size_t j = 0; j < dec.breakpoints.size(); ++j)
        out << (j ? ", " : "") << "\"" << rat_string(dec.breakpoints[j]) << "\"";
    out << "],\n  \"slopes\": [";
    for (std::size_t j = 0; j < dec.slopes.size(); ++j) out << (j ? ", " : "") << "\"" << rat_string(dec.slopes[j]) << "\"";
    out << "],\n  \"certified\": " << (dec.certified ? "true" : "false") << "\n}\n";
}

}  // namespace dyadic
