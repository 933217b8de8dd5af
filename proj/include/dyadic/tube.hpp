#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <vector>

#include "dyadic/set.hpp"

namespace dyadic {

/// Dual image of the parameter square [ia*d,(ia+1)*d) x [ib*d,(ib+1)*d):
/// the union of the lines y = a'x + b' over the square. Slope = left a-edge.
struct Tube {
    Scale level;
    std::int64_t ia = 0, ib = 0;

    Rat slope() const { return Rat(ia) * level.value(); }
    friend bool operator==(const Tube& s, const Tube& t) {
        return s.level.k == t.level.k && s.ia == t.ia && s.ib == t.ib;
    }
    friend bool operator<(const Tube& s, const Tube& t) {
        if (s.level.k != t.level.k) return s.level.k < t.level.k;
        if (s.ia != t.ia) return s.ia < t.ia;
        return s.ib < t.ib;
    }
};

/// Exact tube/square intersection test. Both at the same scale.
/// The value band over the closed parameter box is [inf, sup] with
/// inf = min corners of a'x + b and sup = max corners + d; the half-open
/// conventions make sup unattained, so the test is inf < y1 and sup > y0.
bool incidence(const Tube& t, Cell2 p, Scale level);

/// Intercept range kept finite: b in [-4, 4) covers every line with
/// |slope| <= 1 meeting [-1,1)^2 with margin.
inline constexpr std::int64_t kInterceptBound = 4;

/// All tubes whose slope cell lies in theta and whose parameter square meets
/// the dual segment {(a', yc - a'xc)} of p's center. Deterministic, sorted.
std::vector<Tube> tubes_through(Cell2 p, const Set1& theta, Scale level);

enum class ProjectionMode { slope_sum, dot };

/// Covering number of the image of P under x + c*y (slope_sum) or
/// (x,y).(t1,t2) (dot; covered at scale resolved from delta*max(|t1|,|t2|)).
Int project(const Set2& P, const Rat& theta1, const Rat& theta2, ProjectionMode mode);
inline Int project_slope_sum(const Set2& P, const Rat& c) {
    return project(P, Rat(1), c, ProjectionMode::slope_sum);
}

struct Configuration {
    Set2 points;
    std::vector<Tube> tubes;                           // sorted, deduplicated
    std::vector<std::vector<std::size_t>> incidences;  // per point: indices into tubes
    Scale delta;
    Rat s;
    Rat C;  // certified: C^{-1} M <= |T(p)| <= C M and every slope set Frostman (delta,s,C)
    Int M;  // min_p |T(p)|

    Set1 slope_set(std::size_t point_index) const;
};

/// Assembles T = union of tubes_through(p, theta) with certified (C, M).
Configuration build_configuration(const Set2& P, const Set1& theta, const Rat& s);

struct ValidationReport {
    bool valid = false;  // every |T(p)| > 0 and the stored C is sufficient
    Rat minimal_C;       // least C satisfying C^{-1} M <= |T(p)| <= C M and the Frostman cap
    Rat stored_C;
    std::size_t worst_point = 0;
    std::string note;
};
/// Recomputes |T(p)| and the Frostman constants of every slope set and
/// returns the minimal admissible C, compared against the stored one.
ValidationReport validate_configuration(const Configuration& cfg);

struct IncidenceStats {
    std::map<std::size_t, std::size_t> histogram;  // |T(p)| -> number of p
    std::size_t n_tubes = 0;
    std::size_t M = 0;  // min_p |T(p)|
    Rat ratio;          // |T| / M
};
IncidenceStats measure_incidences(const Configuration& cfg);

// --- tube file format: "k n" header, then "ia ib" per line ---
void write_tubes(std::ostream& out, const std::vector<Tube>& tubes, Scale level);
bool read_tubes(std::istream& in, std::vector<Tube>& tubes, Scale& level);

/// Configuration export: {delta_log2, s, C, M, n_points, n_tubes, incidence_histogram}.
void write_configuration_json(std::ostream& out, const Configuration& cfg);

}  // namespace dyadic
