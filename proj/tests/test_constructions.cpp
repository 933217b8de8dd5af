#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <numeric>
#include <random>
#include <sstream>

#include "doctest.h"
#include "dyadic/constructions.hpp"
#include "dyadic/statistics.hpp"
#include "dyadic/tube.hpp"

using namespace dyadic;

namespace {

long totient(long q) {
    long result = q, n = q;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        while (n % p == 0) n /= p;
        result -= result / p;
    }
    if (n > 1) result -= result / n;
    return result;
}

}  // namespace

TEST_CASE("arithmetic progressions fill [0,1) with the stated gap") {
    Set1 a = ap_set(Scale{2}, Scale{4});
    REQUIRE(a.size() == 4);
    CHECK(a.cells[0] == Cell1{0});
    CHECK(a.cells[1] == Cell1{4});
    CHECK(a.cells[3] == Cell1{12});
    CHECK(ap_set(Scale{0}, Scale{5}).size() == 1);
    CHECK(ap_set(Scale{3}, Scale{3}).size() == 8);
}

TEST_CASE("farey slopes enumerate reduced fractions") {
    Set1 f3 = farey_slopes(3, Scale{6});
    CHECK(f3.size() == 5);  // 0, 1/3, 1/2, 2/3, 1
    CHECK(f3.contains(Cell1{0}));
    CHECK(f3.contains(Cell1{21}));  // floor(64/3)
    CHECK(f3.contains(Cell1{32}));
    CHECK(f3.contains(Cell1{42}));
    CHECK(f3.contains(Cell1{64}));

    // while delta-cells stay distinct, |F_Q| = 1 + sum_{q<=Q} phi(q)
    for (int Q : {1, 2, 5, 12, 31, 64}) {
        long expect = 1;
        for (long q = 1; q <= Q; ++q) expect += totient(q);
        CHECK(Int(farey_slopes(Q, Scale{13}).size()) == expect);
    }
}

TEST_CASE("farey order is the exact floor of rho^{-s/2}") {
    CHECK(farey_order(Scale{8}, Rat(1, 2)) == 4);    // 2^{8/4}
    CHECK(farey_order(Scale{6}, Rat(1, 2)) == 2);    // floor(2^{1.5})
    CHECK(farey_order(Scale{10}, Rat(1)) == 32);
    CHECK(farey_order(Scale{0}, Rat(1, 2)) == 1);
}

TEST_CASE("standard sharp example at rho = 2^-8") {
    SharpExample ex = standard_sharp_example(Scale{8}, Rat(1, 2), Rat(1), Rat(16));
    CHECK(ex.construction == "standard_sharp");
    CHECK(ex.A.size() == 16);  // gap rho^{1/2} = 2^-4
    CHECK(ex.P.size() == 256);
    CHECK(ex.delta.k == 8);
    CHECK(ex.claimed_exponent == Rat(3, 4));
    REQUIRE(ex.all_pass());
    bool saw_projection = false;
    for (const auto& c : ex.caps) {
        CHECK(c.pass);
        if (c.name == "projection") {
            saw_projection = true;
            // measured covering within the cap 16 * rho^{-3/4} = 16 * 64
            CHECK(c.measured <= Rat(1024));
        }
    }
    CHECK(saw_projection);

    // the point set is A x A and the caps reflect independent re-measurement
    NonConcReport kt = katz_tao_constant(ex.A, Rat(1, 2));
    CHECK(kt.leq_cap(Rat(16)));
    NonConcReport fr = frostman_constant(ex.Theta, Rat(1, 2));
    CHECK(fr.leq_cap(Rat(16)));
}

TEST_CASE("standard sharp projections really are small for every slope") {
    SharpExample ex = standard_sharp_example(Scale{6}, Rat(1, 2), Rat(1), Rat(16));
    REQUIRE(ex.all_pass());
    Rat d = ex.delta.value();
    for (const auto& th : ex.Theta.cells) {
        Int pr = project_slope_sum(ex.P, Rat(th.i) * d);
        CHECK(leq_cap_pow2(pr, Rat(16), Rat(6) * Rat(3, 4)));
    }
}

TEST_CASE("minimal non-concentration example at delta = 2^-8") {
    SharpExample ex = minimal_nonconc_example(Scale{8}, Rat(1, 2), Rat(1), Rat(1, 2), Rat(16));
    CHECK(ex.construction == "minimal_nonconc");
    REQUIRE_MESSAGE(ex.all_pass(), ex.construction);
    // |P0| within the two-sided x4 window of delta^{-t} = 256
    CHECK(Int(ex.P.size()) * 4 >= 256);
    CHECK(Int(ex.P.size()) <= 4 * 256);
    SingleScaleResult ss = check_single_scale_nonconcentration(ex.P, Rat(1, 2));
    CHECK(ss.ok);
}

TEST_CASE("katz-tao sharp example") {
    SharpExample ex = katz_tao_sharp_example(Scale{8}, Scale{4}, Rat(1, 2), Rat(1), Rat(16));
    CHECK(ex.construction == "katz_tao_sharp");
    REQUIRE(ex.all_pass());
    NonConcReport kt = katz_tao_constant(ex.P, Rat(1));
    CHECK(kt.leq_cap(Rat(16)));
    // |P| ~ rho^{-t} = 16 within the configured constant
    CHECK(Int(ex.P.size()) <= 16 * 16);
    CHECK(16 <= Int(ex.P.size()) * 16);
}

TEST_CASE("product example, alpha <= s branch") {
    SharpExample ex =
        product_example_small_alpha(Scale{10}, Rat(1, 2), Rat(1, 2), Int(16), Int(4), Rat(16));
    CHECK(ex.construction == "product_small_alpha");
    REQUIRE(ex.all_pass());
    CHECK(ex.A.size() == 16);

    // infeasible sizes (|A| > delta^-alpha) are rejected outright
    CHECK_THROWS_AS(
        product_example_small_alpha(Scale{10}, Rat(1, 2), Rat(1, 4), Int(32), Int(4), Rat(16)),
        std::invalid_argument);
}

TEST_CASE("product example, alpha >= s branch") {
    SharpExample ex =
        product_example_large_alpha(Scale{12}, Rat(1, 4), Rat(1, 2), Int(16), Int(8), Rat(16));
    CHECK(ex.construction == "product_large_alpha");
    REQUIRE(ex.all_pass());
    bool saw_nbhd = false;
    for (const auto& c : ex.caps)
        if (c.name == "projection_neighborhood") saw_nbhd = true;
    CHECK(saw_nbhd);
}

TEST_CASE("dirichlet approximation returns a valid certificate") {
    DirichletResult r = dirichlet_approx(1, 10, Rat(1, 3));
    CHECK(r.b != 0);
    CHECK(abs(r.a) <= 10);
    CHECK(abs(r.b) <= 10);
    // |x b - a| * n <= m * |b|
    CHECK(abs(Rat(1, 3) * r.b - r.a) * 10 <= abs(Rat(r.b)));

    std::mt19937 rng(31337);
    std::uniform_int_distribution<long> num(0, 257);
    for (long n : {6L, 12L, 24L}) {
        for (long m : {1L, 2L, 3L, 6L}) {
            if (n % m) continue;
            for (int iter = 0; iter < 120; ++iter) {
                Rat x(num(rng), 257);
                DirichletResult d = dirichlet_approx(m, n, x);
                CHECK(abs(d.a) <= n);
                CHECK(d.b != 0);
                CHECK(abs(d.b) <= n);
                CHECK(d.b % m == 0);
                CHECK(abs(x * d.b - d.a) * n <= Rat(m) * abs(Rat(d.b)));
            }
        }
    }
    CHECK_THROWS(dirichlet_approx(1, 10, Rat(3, 2)));  // x must lie in [0,1]
}

TEST_CASE("ratio covering, proposition mode") {
    RatioCoveringResult r = ratio_covering_prop(4, 4);
    CHECK(r.scale == Rat(1, 4));  // m/n^2
    CHECK(r.target == 4);
    CHECK(r.covering == 5);
    CHECK(r.constant == Rat(5, 4));
    CHECK(std::is_sorted(r.ratios.begin(), r.ratios.end()));
    CHECK(r.ratios.front() == 0);
    CHECK(r.ratios.back() == 1);

    for (long n : {8L, 12L, 24L}) {
        for (long m : {1L, 2L, 4L}) {
            if (n % m) continue;
            RatioCoveringResult rr = ratio_covering_prop(n, m);
            CHECK(rr.constant >= Rat(1, 32));
            CHECK(rr.scale == Rat(m, n * n));
        }
    }
}

TEST_CASE("ratio covering, corollary mode, is translation invariant") {
    RatioCoveringResult a = ratio_covering_cor(24, 0, 4, 4);
    RatioCoveringResult b = ratio_covering_cor(24, 8, 4, 4);
    CHECK(a.scale == b.scale);
    CHECK(a.ratios == b.ratios);  // B - B is unchanged by translating B
    CHECK(a.covering == b.covering);
    CHECK(a.target == Rat(4) * Rat(12));  // |B| D with D = 3 * 4
}

TEST_CASE("abc ratio construction at the smallest size") {
    ABCWitness w = abc_ratio_construction(Int(4), Int(4), Int(4), Rat(8));
    CHECK(w.gap_units > 0);
    REQUIRE(w.C.size() == 3);
    CHECK(w.C[0] == 0);
    CHECK(w.C[1] == Rat(1, 2));
    CHECK(w.C[2] == 1);
    CHECK(w.c_covering == 3);
    CHECK(w.max_sum_count == 13);
    CHECK(w.worst_c == Rat(1, 2));
    CHECK(w.all_pass());
}

TEST_CASE("abc ratio construction scales and enforces preconditions") {
    for (int logn : {4, 6}) {
        Int n = pow2(logn);
        ABCWitness w = abc_ratio_construction(n, n, n, Rat(32));
        REQUIRE(w.all_pass());
        // exact re-check of the sum-set cap: max^2 <= K^2 A B C
        CHECK(w.max_sum_count * w.max_sum_count <= Int(32 * 32) * n * n * n);
        // exact re-check of the covering floor
        CHECK(16 * w.c_covering >= n);
    }
    CHECK_THROWS(abc_ratio_construction(Int(4), Int(64), Int(2048), Rat(8)));  // C > B*... A < C
    CHECK_THROWS(abc_ratio_construction(Int(64), Int(2), Int(4), Rat(8)));     // A > B*C
}

TEST_CASE("manifest json contains the required fields") {
    SharpExample ex = standard_sharp_example(Scale{6}, Rat(1, 2), Rat(1), Rat(16));
    std::ostringstream out;
    write_manifest_json(out, ex);
    std::string j = out.str();
    for (const char* key : {"construction", "parameters", "snapped_scales", "claimed_exponent",
                            "verified_caps"})
        CHECK(j.find(key) != std::string::npos);
    CHECK(j.find("standard_sharp") != std::string::npos);
}
