#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>
#include <sstream>

#include "doctest.h"
#include "dyadic/numeric.hpp"
#include "dyadic/set.hpp"
#include "test_util.hpp"

using namespace dyadic;

TEST_CASE("integer powers and rational powers of two") {
    CHECK(pow2(0) == 1);
    CHECK(pow2(10) == 1024);
    CHECK(pow2r(-3) == Rat(1, 8));
    CHECK(pow2r(4) == 16);
    CHECK(ipow(Int(3), 5) == 243);
    CHECK(ipow(Int(2), 0) == 1);
}

TEST_CASE("exact cap comparisons against integer-power oracles") {
    // count <= cap * 2^e with integral e
    CHECK(leq_cap_pow2(Int(8), Rat(1), Rat(3)));
    CHECK_FALSE(leq_cap_pow2(Int(9), Rat(1), Rat(3)));
    // 2^{7/2}: 11^2 = 121 <= 128 but 12^2 = 144 > 128
    CHECK(leq_cap_pow2(Int(11), Rat(1), Rat(7, 2)));
    CHECK_FALSE(leq_cap_pow2(Int(12), Rat(1), Rat(7, 2)));
    // rational cap: 3 <= (3/4) * 2^2 exactly
    CHECK(leq_cap_pow2(Int(3), Rat(3, 4), Rat(2)));
    CHECK_FALSE(leq_cap_pow2(Int(4), Rat(3, 4), Rat(2)));

    CHECK(cmp_pow2_products(Int(1), Rat(3), Int(8), Rat(0)) == 0);
    CHECK(cmp_pow2_products(Int(3), Rat(1, 2), Int(4), Rat(0)) > 0);   // 3*sqrt(2) > 4
    CHECK(cmp_pow2_products(Int(2), Rat(1, 2), Int(3), Rat(0)) < 0);   // 2*sqrt(2) < 3
    CHECK(cmp_pow2_products(Int(5), Rat(1, 3), Int(5), Rat(1, 2)) < 0);

    CHECK(pow_geq(Int(8), Rat(2, 3), Int(4), Rat(1)));        // 8^{2/3} = 4
    CHECK_FALSE(pow_geq(Int(8), Rat(2, 3), Int(5), Rat(1)));  // 4 < 5
    CHECK(pow_geq(Int(9), Rat(1, 2), Int(27), Rat(1, 3)));    // 3 >= 3
}

TEST_CASE("log2 bracket is exact on powers of two and tight otherwise") {
    auto b = log2_bracket(Int(64));
    CHECK(b.exact);
    CHECK(b.lo == 6);
    CHECK(b.hi == 6);

    auto c = log2_bracket(Int(5));
    CHECK_FALSE(c.exact);
    CHECK(c.hi - c.lo <= Rat(1, 32));
    // 2^{lo} <= 5 <= 2^{hi}, exactly
    CHECK(cmp_pow2_products(Int(1), c.lo, Int(5), Rat(0)) <= 0);
    CHECK(cmp_pow2_products(Int(1), c.hi, Int(5), Rat(0)) >= 0);
}

TEST_CASE("rational parsing, printing, floor and ceiling") {
    CHECK(parse_rational("3/4") == Rat(3, 4));
    CHECK(parse_rational("-7") == Rat(-7));
    CHECK(rat_string(Rat(22, 8)) == "11/4");
    CHECK(rat_floor(Rat(7, 2)) == 3);
    CHECK(rat_floor(Rat(-7, 2)) == -4);
    CHECK(rat_ceil(Rat(7, 2)) == 4);
    CHECK(rat_ceil(Rat(-7, 2)) == -3);
}

TEST_CASE("non-dyadic scales resolve to the next finer dyadic scale") {
    CHECK(resolve_scale(Rat(1)).k == 0);
    CHECK(resolve_scale(Rat(1, 4)).k == 2);
    CHECK(resolve_scale(Rat(3, 8)).k == 2);   // largest 2^-k <= 3/8 is 1/4
    CHECK(resolve_scale(Rat(5, 16)).k == 2);  // 1/4 <= 5/16 < 1/2
    CHECK(resolve_scale(Rat(1, 3)).k == 2);
}

TEST_CASE("covering numbers: identity, singleton, and hand-enumerated cases") {
    Set2 half{Scale{1}, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}};
    CHECK(covering_number(half, Scale{1}) == 4);
    CHECK(covering_number(half, Scale{0}) == 1);

    Set2 single{Scale{5}, {{7, 9}}};
    for (int k = 0; k <= 5; ++k) CHECK(covering_number(single, Scale{k}) == 1);

    // {0, 1/4, 1/2, 3/4} at scale 1/16, covered at 1/4: one cell each
    Set1 quarters{Scale{4}, {{0}, {4}, {8}, {12}}};
    CHECK(covering_number(quarters, Scale{2}) == 4);
    CHECK(covering_number(quarters, Scale{3}) == 4);
    CHECK(covering_number(quarters, Scale{0}) == 1);
}

TEST_CASE("renormalization maps a parent cell onto the unit square") {
    // The parent itself renormalizes to the single unit cell.
    Set2 self{Scale{3}, {{5, 2}}};
    Set2 r = renormalize(self, Cell2{5, 2}, Scale{3});
    CHECK(r.scale.k == 0);
    REQUIRE(r.size() == 1);
    CHECK(r.cells[0] == Cell2{0, 0});

    // All children of a parent give the full grid.
    Set2 parent{Scale{2}, {{1, 1}}};
    Set2 kids = refine(parent, Scale{4});
    Set2 grid = renormalize(kids, Cell2{1, 1}, Scale{2});
    CHECK(grid.scale.k == 2);
    CHECK(grid.size() == 16);

    // One child at half the parent side in the lower-left corner -> [0,1/2)^2.
    Set2 corner{Scale{3}, {{2, 2}}};
    Set2 rc = renormalize(corner, Cell2{1, 1}, Scale{2});
    CHECK(rc.scale.k == 1);
    REQUIRE(rc.size() == 1);
    CHECK(rc.cells[0] == Cell2{0, 0});
}

TEST_CASE("scale_set multiplies coordinates and preserves cardinality") {
    Set1 s{Scale{2}, {{0}, {2}}};  // {0, 1/2} at scale 1/4
    Set1 t = scale_set(s, 1);
    CHECK(t.scale.k == 3);
    REQUIRE(t.size() == 2);
    CHECK(t.cells[0] == Cell1{0});
    CHECK(t.cells[1] == Cell1{2});  // 1/4 at scale 1/8

    Set1 id = scale_set(s, 0);
    CHECK(id.scale.k == s.scale.k);
    CHECK(id.cells == s.cells);
}

TEST_CASE("neighborhood covers the stated interval") {
    // {1/2} at scale 1/8, r = 1/4 -> cells covering [1/4, 3/4 + 1/8)
    Set1 s{Scale{3}, {{4}}};
    Set1 n = neighborhood(s, Scale{2});
    REQUIRE(n.size() == 5);
    for (std::int64_t i = 2; i <= 6; ++i) CHECK(n.contains(Cell1{i}));

    Set1 empty{Scale{3}, {}};
    CHECK(neighborhood(empty, Scale{1}).size() == 0);

    // r = own scale -> S plus adjacent cells
    Set1 adj = neighborhood(s, Scale{3});
    REQUIRE(adj.size() == 3);
    CHECK(adj.contains(Cell1{3}));
    CHECK(adj.contains(Cell1{5}));
}

TEST_CASE("product and translate") {
    Set1 a{Scale{2}, {{0}, {3}}};
    Set2 p = product(a, a);
    CHECK(p.size() == 4);
    CHECK(p.contains(Cell2{3, 0}));

    Set1 t = translate(a, 1);
    CHECK(t.contains(Cell1{1}));
    CHECK(t.contains(Cell1{4}));
}

TEST_CASE("randomized invariants: monotone covering, scale coupling, refinement") {
    std::mt19937 rng(20240901);
    for (int iter = 0; iter < 200; ++iter) {
        Set2 P = testutil::random_set2(rng, 6, 40);

        Int prev = Int(P.size());
        for (int k = 5; k >= 0; --k) {
            Int cur = covering_number(P, Scale{k});
            CHECK(cur <= prev);  // coarser never larger
            prev = cur;
        }

        // |scale_set(P, rho)|_{rho r} = |P|_r
        Set2 S = scale_set(P, 2);
        for (int k = 0; k <= 6; ++k) CHECK(covering_number(S, Scale{k + 2}) == covering_number(P, Scale{k}));

        // coarsen o refine = identity on the cell set
        Set2 R = refine(P, Scale{8});
        Set2 back = coarsen(R, Scale{6});
        CHECK(back.cells == P.cells);
        CHECK(R.size() == P.size() * 16);

        // renormalize partitions the set among parents
        Set2 parents = coarsen(P, Scale{3});
        std::size_t total = 0;
        for (const auto& q : parents.cells) total += renormalize(P, q, Scale{3}).size();
        CHECK(total == P.size());
    }
}

TEST_CASE("set files round-trip bit-exactly") {
    std::mt19937 rng(7);
    for (int iter = 0; iter < 50; ++iter) {
        Set2 P = testutil::random_set2(rng, 7, 30);
        std::ostringstream out;
        write_set(out, P);
        std::istringstream in(out.str());
        Set1 s1;
        Set2 back;
        int dim = 0;
        REQUIRE(read_set(in, s1, back, dim));
        CHECK(dim == 2);
        CHECK(back.scale.k == P.scale.k);
        CHECK(back.cells == P.cells);
        std::ostringstream again;
        write_set(again, back);
        CHECK(again.str() == out.str());
    }
    Set1 A = testutil::random_set1(rng, 9, 20);
    std::ostringstream out;
    write_set(out, A);
    std::istringstream in(out.str());
    Set1 back;
    Set2 s2;
    int dim = 0;
    REQUIRE(read_set(in, back, s2, dim));
    CHECK(dim == 1);
    CHECK(back.cells == A.cells);
}
