#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dyadic/constructions.hpp"

namespace dyadic {

struct SweepPoint {
    int rho_log2 = 0;
    Int n_points;
    Int max_projection;
    bool caps_pass = false;
};

struct ExponentReport {
    std::vector<SweepPoint> points;
    double fitted_exponent = 0.0;  // least-squares slope of log2(proj) vs log2(|P|)
    Rat predicted;
    double gap = 0.0;        // |fitted - predicted|
    double tolerance = 0.1;  // desk scales: finite-size effects shift slopes by O(loglog/log)
    bool caps_pass = false;
    bool pass = false;  // gap <= tolerance and all caps hold
};

/// Sweeps katz_tao_sharp_example over the rho levels at fixed delta and fits
/// the projection growth exponent against (s+t)/(2t).
ExponentReport sweep_sharp_exponent(Scale delta, const Rat& s, const Rat& t, const std::vector<int>& rho_levels,
                                    const Rat& cap, double tolerance = 0.1);

void write_exponent_json(std::ostream& out, const ExponentReport& rep);

/// Dispatch by construction name: standard_sharp, minimal_nonconc,
/// katz_tao_sharp, product_small_alpha, product_large_alpha. Unused
/// parameters are ignored per construction.
SharpExample build_named_example(const std::string& name, Scale delta, int rho_log2, const Rat& s, const Rat& t,
                                 const Rat& u, const Rat& alpha, const Int& sizeA, const Int& sizeB, const Rat& cap);

/// Quick end-to-end battery; logs one line per check, returns true iff all pass.
bool selftest(std::ostream& log);

}  // namespace dyadic
