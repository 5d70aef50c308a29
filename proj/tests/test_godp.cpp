// Value-set propagation scanner for the n-Go equations.
//
// Its oracle is the general equation checker: a first-fail at n means
// go_gamma(n) fails while go_gamma(n-1) holds, and that is asserted via an
// entirely different search strategy.
#include <catch2/catch_amalgamated.hpp>

#include "omlkit/checker.hpp"
#include "omlkit/families.hpp"
#include "omlkit/godp.hpp"
#include "omlkit/greechie.hpp"
#include "omlkit/lattice.hpp"

using namespace omlkit;

namespace {

OmlLattice build(const std::string& text) { return build_oml(parse_diagram(text)); }

const char* kPeterson = "123,345,567,789,9AB,BC1,2E8,4FA,6DC,DEF.";

}   // namespace

TEST_CASE("Boolean pastings converge with every equation passing", "[godp]")
{
    for (const char* text : {"12.", "123.", "1234.", "12,34.", "123,345."}) {
        INFO("diagram " << text);
        GoScanResult r = go_scan(build(text), 20);
        REQUIRE(r.outcome == GoScanResult::Outcome::ConvergedAllPass);
        // Convergence certifies every n at once; the checker agrees at 3 and 4.
        OmlLattice l = build(text);
        REQUIRE(check_equation(l, build_family(Family::GoGamma, 3), {true, 1}).holds);
        REQUIRE(check_equation(l, build_family(Family::GoGamma, 4), {true, 1}).holds);
    }
}

TEST_CASE("the reference lattice first fails at four", "[godp]")
{
    OmlLattice l = build(kPeterson);
    GoScanResult r = go_scan(l, 100);
    REQUIRE(r.outcome == GoScanResult::Outcome::FirstFail);
    REQUIRE(r.n == 4);
    // Pass p decides n = p + 1, so failing at n = 4 costs exactly two passes.
    REQUIRE(r.passes == 2);

    // Cross-check against the checker at the boundary.
    REQUIRE(check_equation(l, build_family(Family::GoGamma, 3), {true, 2}).holds);
    REQUIRE(!check_equation(l, build_family(Family::GoGamma, 4), {true, 2}).holds);
}

TEST_CASE("operation counts respect the documented bound", "[godp]")
{
    OmlLattice l = build(kPeterson);
    GoScanResult r = go_scan(l, 100);
    uint64_t m = static_cast<uint64_t>(l.size());
    REQUIRE(!r.ops_per_pass.empty());
    for (uint64_t ops : r.ops_per_pass) REQUIRE(ops <= m * m * m * m);
}

TEST_CASE("stepping past the first failure keeps failing", "[godp]")
{
    // Larger n only strengthens the equation, so the per-pass verdicts are
    // monotone after the first failure.
    OmlLattice l = build(kPeterson);
    GoDpScanner scan(l);
    auto s3 = scan.step();
    REQUIRE(s3.n_checked == 3);
    REQUIRE(!s3.failed);
    auto s4 = scan.step();
    REQUIRE(s4.n_checked == 4);
    REQUIRE(s4.failed);
    auto s5 = scan.step();
    REQUIRE(s5.n_checked == 5);
    REQUIRE(s5.failed);
}

TEST_CASE("the cutoff is reported when nothing converges in range", "[godp]")
{
    OmlLattice l = build(kPeterson);
    REQUIRE_THROWS_AS(go_scan(l, 2), std::invalid_argument);
    // With max_n = 3 the scanner can only check n = 3, which passes.
    GoScanResult r = go_scan(l, 3);
    REQUIRE(r.outcome == GoScanResult::Outcome::CutoffReached);
    REQUIRE(r.max_n == 3);
}

TEST_CASE("batch scanning preserves input order", "[godp]")
{
    std::vector<OmlLattice> ls;
    ls.push_back(build(kPeterson));
    ls.push_back(build("123."));
    ls.push_back(build(kPeterson));
    auto rs = go_batch(ls, 50, 3);
    REQUIRE(rs.size() == 3);
    REQUIRE(rs[0].outcome == GoScanResult::Outcome::FirstFail);
    REQUIRE(rs[0].n == 4);
    REQUIRE(rs[1].outcome == GoScanResult::Outcome::ConvergedAllPass);
    REQUIRE(rs[2].outcome == GoScanResult::Outcome::FirstFail);
    REQUIRE(rs[2].n == 4);
}
