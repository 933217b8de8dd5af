#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "dyadic/statistics.hpp"
#include "test_util.hpp"

using namespace dyadic;

namespace {

// Brute-force floating-point estimate of the extremal constant, used to
// sanity-check the exact rational bracket.
double brute_constant(const Set2& P, double s, bool katz_tao) {
    int k = P.scale.k;
    double best = 0;
    for (int j = 0; j <= k; ++j) {
        Int cnt = 0;
        Set2 parents = coarsen(P, Scale{j});
        for (const auto& q : parents.cells) {
            Int c = 0;
            for (const auto& cell : P.cells)
                if (floor_shift(cell.ix, k - j) == q.ix && floor_shift(cell.iy, k - j) == q.iy) ++c;
            cnt = std::max(cnt, c);
        }
        double ratio = static_cast<double>(cnt) * std::pow(2.0, j * s);
        ratio /= katz_tao ? std::pow(2.0, k * s) : static_cast<double>(P.size());
        best = std::max(best, ratio);
    }
    return best;
}

}  // namespace

TEST_CASE("frostman constant of a full grid is 1") {
    Set2 grid = refine(Set2{Scale{0}, {{0, 0}}}, Scale{3});
    for (Rat s : {Rat(1, 2), Rat(1), Rat(3, 2)}) {
        NonConcReport rep = frostman_constant(grid, s);
        CHECK(rep.constant_lower == 1);
        CHECK(rep.constant_upper == 1);
        CHECK(rep.witness_level == 0);
        CHECK(rep.leq_cap(Rat(1)));
        CHECK_FALSE(rep.leq_cap(Rat(99, 100)));
    }
}

TEST_CASE("frostman constant of a single cell is delta^{-s}") {
    Set2 one{Scale{4}, {{5, 9}}};
    NonConcReport rep = frostman_constant(one, Rat(1, 2));
    // C* = 2^{ks} = 2^2, attained at the finest level
    CHECK(rep.constant_lower == 4);
    CHECK(rep.constant_upper == 4);
    CHECK(rep.witness_level == 4);
    CHECK(rep.witness_count == 1);
    CHECK(rep.leq_cap(Rat(4)));
    CHECK_FALSE(rep.leq_cap(Rat(399, 100)));

    // irrational extremal value 2^{3/2}: bracket straddles it, exact decisions hold
    Set2 one3{Scale{3}, {{1, 2}}};
    NonConcReport r3 = frostman_constant(one3, Rat(1, 2));
    CHECK(r3.constant_lower < r3.constant_upper);
    CHECK(r3.constant_lower * r3.constant_lower <= 8);
    CHECK(r3.constant_upper * r3.constant_upper >= 8);
    CHECK(r3.leq_cap(Rat(3)));            // 2^{3/2} < 3
    CHECK_FALSE(r3.leq_cap(Rat(14, 5)));  // 2^{3/2} > 2.8
}

TEST_CASE("arithmetic progression: katz_tao constant 1, frostman delta^{-s}/|P|") {
    Set1 ap{Scale{4}, {{0}, {4}, {8}, {12}}};  // {0, 1/4, 1/2, 3/4} at 1/16
    NonConcReport kt = katz_tao_constant(ap, Rat(1));
    CHECK(kt.constant_lower == 1);
    CHECK(kt.constant_upper == 1);
    CHECK(kt.leq_cap(Rat(1)));

    NonConcReport fr = frostman_constant(ap, Rat(1));
    CHECK(fr.constant_lower == 4);  // single delta-cell carries 1/4 of the mass
    CHECK(fr.constant_upper == 4);
    CHECK(fr.witness_level == 4);
}

TEST_CASE("katz_tao constant of a full grid is delta^{s-dim}") {
    Set2 grid = refine(Set2{Scale{0}, {{0, 0}}}, Scale{2});
    NonConcReport rep = katz_tao_constant(grid, Rat(1, 2));
    // max at level 0: 16 / 2^{2 * 1/2} = 8
    CHECK(rep.constant_lower == 8);
    CHECK(rep.constant_upper == 8);
    CHECK(rep.witness_level == 0);
    CHECK(rep.witness_count == 16);
}

TEST_CASE("randomized brackets agree with a floating-point scan") {
    std::mt19937 rng(2024);
    for (int iter = 0; iter < 100; ++iter) {
        Set2 P = testutil::random_set2(rng, 6, 50);
        std::uniform_int_distribution<int> snum(1, 4);
        Rat s(snum(rng), 2);
        for (bool kt : {false, true}) {
            NonConcReport rep = kt ? katz_tao_constant(P, s) : frostman_constant(P, s);
            double ref = brute_constant(P, rat_double(s), kt);
            CHECK(rat_double(rep.constant_lower) <= ref * 1.0001);
            CHECK(rat_double(rep.constant_upper) >= ref * 0.9999);
            CHECK(rep.constant_upper - rep.constant_lower <=
                  rep.constant_upper * Rat(1, 16));
            // exact cap decisions: upper passes, well below lower fails
            CHECK(rep.leq_cap(rep.constant_upper));
            CHECK_FALSE(rep.leq_cap(rep.constant_lower / 2));
            // per_level covers every level and matches the witness
            CHECK(rep.per_level.size() == static_cast<std::size_t>(P.scale.k + 1));
            bool witness_seen = false;
            for (const auto& e : rep.per_level)
                if (e.level == rep.witness_level && e.max_count == rep.witness_count)
                    witness_seen = true;
            CHECK(witness_seen);
        }
    }
}

TEST_CASE("cap decisions are monotone in the cap") {
    std::mt19937 rng(99);
    for (int iter = 0; iter < 50; ++iter) {
        Set2 P = testutil::random_set2(rng, 5, 30);
        NonConcReport rep = frostman_constant(P, Rat(1, 2));
        Rat caps[] = {Rat(1, 4), Rat(1), Rat(3), Rat(8), Rat(64)};
        bool prev = false;
        for (const Rat& c : caps) {
            bool cur = rep.leq_cap(c);
            CHECK((!prev || cur));  // once true, stays true
            prev = cur;
        }
        CHECK(rep.leq_cap(rep.constant_upper * 2));
    }
}

TEST_CASE("single-scale nonconcentration: spaced grid passes up to u = 1") {
    Set2 P{Scale{4}, {}};
    for (std::int64_t i = 0; i < 4; ++i)
        for (std::int64_t j = 0; j < 4; ++j) P.cells.push_back({4 * i, 4 * j});
    P.normalize();
    // |P| = 16, intermediate scale delta * 4 = 1/4, one point per cell
    for (Rat u : {Rat(0), Rat(1, 2), Rat(1)}) {
        SingleScaleResult r = check_single_scale_nonconcentration(P, u);
        CHECK(r.ok);
        CHECK(r.level == 2);
        CHECK(r.worst_count == 1);
    }
    CHECK_FALSE(check_single_scale_nonconcentration(P, Rat(9, 8)).ok);
}

TEST_CASE("single-scale nonconcentration: concentrated set fails for u > 0") {
    Set2 P = refine(Set2{Scale{2}, {{0, 0}}}, Scale{4});  // 16 cells in one 1/4-square
    SingleScaleResult r0 = check_single_scale_nonconcentration(P, Rat(0));
    CHECK(r0.ok);
    CHECK(r0.level == 2);
    CHECK(r0.worst_count == 16);
    CHECK_FALSE(check_single_scale_nonconcentration(P, Rat(1, 8)).ok);
}

TEST_CASE("single-scale worst cell is a true maximum") {
    std::mt19937 rng(555);
    for (int iter = 0; iter < 50; ++iter) {
        Set2 P = testutil::random_set2(rng, 6, 60);
        SingleScaleResult r = check_single_scale_nonconcentration(P, Rat(1, 2));
        int d = P.scale.k - r.level;
        REQUIRE(d >= 0);
        Int worst = 0;
        for (const auto& q : coarsen(P, Scale{r.level}).cells) {
            Int c = 0;
            for (const auto& cell : P.cells)
                if (floor_shift(cell.ix, d) == q.ix && floor_shift(cell.iy, d) == q.iy) ++c;
            worst = std::max(worst, c);
        }
        CHECK(r.worst_count == worst);
        // decision matches the exact inequality worst <= |P| * 2^{-k u}
        CHECK(r.ok == leq_cap_pow2(worst, Rat(Int(P.size())), Rat(-P.scale.k) * Rat(1, 2)));
    }
}

TEST_CASE("report json contains the required fields") {
    Set2 P{Scale{3}, {{0, 0}, {1, 5}, {7, 7}}};
    NonConcReport rep = frostman_constant(P, Rat(1, 2));
    std::ostringstream out;
    write_report_json(out, rep);
    std::string j = out.str();
    for (const char* key : {"\"s\"", "constant_num", "constant_den", "witness_level",
                            "witness_ix", "witness_iy", "per_level"})
        CHECK(j.find(key) != std::string::npos);
}
