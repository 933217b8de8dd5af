#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "dyadic/harness.hpp"
#include "dyadic/tube.hpp"

using namespace dyadic;

TEST_CASE("selftest battery passes and logs every check") {
    std::ostringstream log;
    CHECK(selftest(log));
    std::string text = log.str();
    CHECK(text.find("FAIL") == std::string::npos);
    CHECK(std::count(text.begin(), text.end(), '\n') >= 5);
}

TEST_CASE("named dispatch reproduces the direct constructors") {
    SharpExample direct = standard_sharp_example(Scale{6}, Rat(1, 2), Rat(1), Rat(16));
    SharpExample named = build_named_example("standard_sharp", Scale{6}, 0, Rat(1, 2), Rat(1),
                                             Rat(0), Rat(0), Int(0), Int(0), Rat(16));
    CHECK(named.construction == direct.construction);
    CHECK(named.P.cells == direct.P.cells);
    CHECK(named.Theta.cells == direct.Theta.cells);
    CHECK(named.claimed_exponent == direct.claimed_exponent);

    SharpExample kt = build_named_example("katz_tao_sharp", Scale{8}, 4, Rat(1, 2), Rat(1), Rat(0),
                                          Rat(0), Int(0), Int(0), Rat(16));
    CHECK(kt.construction == "katz_tao_sharp");
    CHECK(kt.all_pass());

    CHECK_THROWS(build_named_example("no_such_construction", Scale{6}, 0, Rat(1, 2), Rat(1),
                                     Rat(0), Rat(0), Int(0), Int(0), Rat(16)));
}

TEST_CASE("manifests are deterministic") {
    SharpExample a = build_named_example("standard_sharp", Scale{8}, 0, Rat(1, 2), Rat(1), Rat(0),
                                         Rat(0), Int(0), Int(0), Rat(16));
    SharpExample b = build_named_example("standard_sharp", Scale{8}, 0, Rat(1, 2), Rat(1), Rat(0),
                                         Rat(0), Int(0), Int(0), Rat(16));
    std::ostringstream ja, jb;
    write_manifest_json(ja, a);
    write_manifest_json(jb, b);
    CHECK(ja.str() == jb.str());
}

TEST_CASE("sharp sweep recovers the predicted exponent at small scales") {
    ExponentReport rep =
        sweep_sharp_exponent(Scale{8}, Rat(1, 2), Rat(1), {4, 6, 8}, Rat(16), 0.1);
    REQUIRE(rep.points.size() == 3);
    CHECK(rep.caps_pass);
    CHECK(rep.predicted == Rat(3, 4));
    CHECK(rep.gap <= rep.tolerance);
    CHECK(rep.pass);
    // points carry increasing cardinalities as rho shrinks
    CHECK(rep.points[0].n_points < rep.points[1].n_points);
    CHECK(rep.points[1].n_points < rep.points[2].n_points);

    std::ostringstream out;
    write_exponent_json(out, rep);
    std::string j = out.str();
    for (const char* key : {"fitted_exponent", "predicted", "tolerance", "points", "pass"})
        CHECK(j.find(key) != std::string::npos);
}

TEST_CASE("sweep fails when the tolerance is unreasonably tight") {
    ExponentReport rep =
        sweep_sharp_exponent(Scale{8}, Rat(1, 2), Rat(1), {4, 6, 8}, Rat(16), 1e-9);
    CHECK(rep.caps_pass);
    CHECK_FALSE(rep.pass);
}

TEST_CASE("constructed examples assemble into valid configurations") {
    SharpExample ex = standard_sharp_example(Scale{6}, Rat(1, 2), Rat(1), Rat(16));
    REQUIRE(ex.all_pass());
    Configuration cfg = build_configuration(ex.P, ex.Theta, Rat(1, 2));
    ValidationReport rep = validate_configuration(cfg);
    CHECK(rep.valid);
    IncidenceStats st = measure_incidences(cfg);
    CHECK(st.n_tubes > 0);
    CHECK(st.M >= 1);
}
