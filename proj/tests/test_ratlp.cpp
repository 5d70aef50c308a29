// Exact-rational simplex tests.  Expected optima were computed
// independently by enumerating basic feasible points with exact fractions,
// so these values do not depend on the solver under test.
#include <catch2/catch_amalgamated.hpp>

#include "omlkit/ratlp.hpp"

using namespace omlkit;

namespace {

RationalLP make_lp(int n, std::vector<Rat> obj)
{
    RationalLP lp;
    lp.num_vars = n;
    lp.objective = std::move(obj);
    return lp;
}

}   // namespace

TEST_CASE("equality-constrained minimum lands on the cheap vertex", "[ratlp]")
{
    // min x1 + x2  s.t.  x1 + 2 x2 = 4, x >= 0   ->  2 at (0, 2)
    RationalLP lp = make_lp(2, {1, 1});
    lp.add_eq({1, 2}, 4);
    LpOutcome r = solve(lp);
    REQUIRE(r.status == LpOutcome::Status::Optimal);
    REQUIRE(r.value == 2);
    REQUIRE(r.point == std::vector<Rat>{0, 2});
}

TEST_CASE("inequalities and a negative objective", "[ratlp]")
{
    // min -x1 - 2 x2  s.t.  x1 + x2 <= 3, x1 <= 2   ->  -6 at (0, 3)
    RationalLP lp = make_lp(2, {-1, -2});
    lp.add_le({1, 1}, 3);
    lp.add_le({1, 0}, 2);
    LpOutcome r = solve(lp);
    REQUIRE(r.status == LpOutcome::Status::Optimal);
    REQUIRE(r.value == -6);
    REQUIRE(r.point == std::vector<Rat>{0, 3});
}

TEST_CASE("Beale's cycling example terminates at -1/20", "[ratlp]")
{
    // The classical degenerate program that cycles under naive pivoting:
    // min -3/4 x1 + 150 x2 - 1/50 x3 + 6 x4
    // s.t. 1/4 x1 - 60 x2 - 1/25 x3 + 9 x4 <= 0
    //      1/2 x1 - 90 x2 - 1/50 x3 + 3 x4 <= 0
    //      x3 <= 1
    RationalLP lp = make_lp(4, {Rat(-3, 4), 150, Rat(-1, 50), 6});
    lp.add_le({Rat(1, 4), -60, Rat(-1, 25), 9}, 0);
    lp.add_le({Rat(1, 2), -90, Rat(-1, 50), 3}, 0);
    lp.add_le({0, 0, 1, 0}, 1);
    LpOutcome r = solve(lp);
    REQUIRE(r.status == LpOutcome::Status::Optimal);
    REQUIRE(r.value == Rat(-1, 20));
    REQUIRE(r.point == std::vector<Rat>{Rat(1, 25), 0, 1, 0});
}

TEST_CASE("negative right-hand sides are handled", "[ratlp]")
{
    // min x1  s.t.  -x1 - x2 <= -2  (x1 + x2 >= 2)   ->  0, with x1 = 0
    RationalLP lp = make_lp(2, {1, 0});
    lp.add_le({-1, -1}, -2);
    LpOutcome r = solve(lp);
    REQUIRE(r.status == LpOutcome::Status::Optimal);
    REQUIRE(r.value == 0);
    REQUIRE(r.point[0] == 0);
    REQUIRE(r.point[1] >= 2);
}

TEST_CASE("redundant equality rows do not break phase two", "[ratlp]")
{
    // min x2  s.t.  x1 + x2 = 2 (stated twice), x1 <= 1   ->  1 at (1, 1)
    RationalLP lp = make_lp(2, {0, 1});
    lp.add_eq({1, 1}, 2);
    lp.add_eq({1, 1}, 2);
    lp.add_le({1, 0}, 1);
    LpOutcome r = solve(lp);
    REQUIRE(r.status == LpOutcome::Status::Optimal);
    REQUIRE(r.value == 1);
    REQUIRE(r.point == std::vector<Rat>{1, 1});
}

TEST_CASE("degenerate vertex with extra active constraints", "[ratlp]")
{
    // min -x2  s.t.  x1 + x2 <= 1, x2 <= 1, x1 + 2 x2 <= 2   ->  -1 at (0, 1)
    RationalLP lp = make_lp(2, {0, -1});
    lp.add_le({1, 1}, 1);
    lp.add_le({0, 1}, 1);
    lp.add_le({1, 2}, 2);
    LpOutcome r = solve(lp);
    REQUIRE(r.status == LpOutcome::Status::Optimal);
    REQUIRE(r.value == -1);
    REQUIRE(r.point == std::vector<Rat>{0, 1});
}

TEST_CASE("infeasible and unbounded programs are classified", "[ratlp]")
{
    SECTION("conflicting constraints")
    {
        RationalLP lp = make_lp(2, {0, 0});
        lp.add_eq({1, 1}, 2);
        lp.add_le({1, 1}, 1);
        REQUIRE(solve(lp).status == LpOutcome::Status::Infeasible);
    }
    SECTION("descent direction with no bound")
    {
        RationalLP lp = make_lp(2, {-1, 0});
        lp.add_le({0, 1}, 1);
        REQUIRE(solve(lp).status == LpOutcome::Status::Unbounded);
    }
}

TEST_CASE("objective offset shifts the reported value", "[ratlp]")
{
    // min 1 - x1  s.t.  x1 <= 1/3   ->  2/3
    RationalLP lp = make_lp(1, {-1});
    lp.objective_offset = 1;
    lp.add_le({1}, Rat(1, 3));
    LpOutcome r = solve(lp);
    REQUIRE(r.status == LpOutcome::Status::Optimal);
    REQUIRE(r.value == Rat(2, 3));
}

TEST_CASE("fractional pivots stay exact", "[ratlp]")
{
    // min x1/3 + x2/7  s.t.  x1/2 + x2/5 = 1, x1 = x2.  Substituting gives
    // x (1/2 + 1/5) = 1, so x = 10/7 and the value is 10/7 (1/3 + 1/7).
    RationalLP lp = make_lp(2, {Rat(1, 3), Rat(1, 7)});
    lp.add_eq({Rat(1, 2), Rat(1, 5)}, 1);
    lp.add_eq({1, -1}, 0);
    LpOutcome r = solve(lp);
    REQUIRE(r.status == LpOutcome::Status::Optimal);
    REQUIRE(r.value == Rat(10, 7) * (Rat(1, 3) + Rat(1, 7)));
    REQUIRE(r.point == std::vector<Rat>{Rat(10, 7), Rat(10, 7)});
}

TEST_CASE("text export lists objective then one constraint per line", "[ratlp]")
{
    RationalLP lp = make_lp(2, {0, -1});
    lp.objective_offset = 1;
    lp.add_eq({1, 1}, 1);
    lp.add_le({Rat(1, 2), -1}, Rat(3, 4));
    std::string text = to_lp_format(lp, {"m1", "m2"});
    REQUIRE(text ==
            "min: 1 - m2;\n"
            "m1 + m2 = 1;\n"
            "1/2 m1 - m2 <= 3/4;\n");
}
