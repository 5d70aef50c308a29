// Equation generation from a failed strong-state witness: relaxation,
// condensation, balancing, and emission.
//
// The end-to-end expectations below were frozen from the relaxation
// definition by hand: pinning blocks 345, 9AB, 2E8, 6DC of the reference
// lattice and zeroing the atoms orthogonal to atom 1 leaves exactly the
// condensed equation 45+9A+E8+6D=56+89+4A+DE.
#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "omlkit/checker.hpp"
#include "omlkit/corpus.hpp"
#include "omlkit/families.hpp"
#include "omlkit/greechie.hpp"
#include "omlkit/lattice.hpp"
#include "omlkit/mgegen.hpp"
#include "omlkit/states.hpp"

using namespace omlkit;

namespace {

OmlLattice build(const std::string& text) { return build_oml(parse_diagram(text)); }

const char* kPeterson = "123,345,567,789,9AB,BC1,2E8,4FA,6DC,DEF.";

}   // namespace

TEST_CASE("the reference lattice yields the frozen condensed equation", "[mgegen]")
{
    OmlLattice l = build(kPeterson);
    StrongCheckResult sc = strong_state_check(l);
    REQUIRE(!sc.strong);

    RelaxationRecord rec = relax_blocks(l, sc.witness_a, sc.witness_b);
    REQUIRE(rec.relaxed ==
            std::vector<bool>{true, false, true, true, false, true, false, true, false,
                              true});
    // Atoms orthogonal to atom 1: its block partners 2, 3 and B, C.
    REQUIRE(rec.forced_zero_atoms == std::vector<int>{1, 2, 10, 11});

    CondensedStateEquation c = build_condensed(l, rec);
    REQUIRE(c.lhs_groups == std::vector<std::string>{"45", "9A", "E8", "6D"});
    REQUIRE(c.rhs_groups == std::vector<std::string>{"56", "89", "4A", "DE"});
    REQUIRE(c.str() == "45+9A+E8+6D=56+89+4A+DE");

    // Variable counts already match, so balancing is the identity here.
    REQUIRE(balance_condensed(c) == c);
    REQUIRE(rename_condensed(c).str() == "ab+cd+ef+gh=bg+fc+ad+he");

    MgEquation mge = balance_and_emit(l, c);
    REQUIRE(mge.left_terms ==
            std::vector<std::vector<std::string>>{{"a", "b"}, {"c", "d"}, {"e", "f"}, {"g", "h"}});
    REQUIRE(mge.right_terms ==
            std::vector<std::vector<std::string>>{{"b", "g"}, {"f", "c"}, {"a", "d"}, {"h", "e"}});
    REQUIRE(mge.equation.hypotheses.size() == 8);

    // The emitted equation must fail in the generating lattice...
    Verdict v = check_equation(l, mge.equation, {true, 1});
    REQUIRE(!v.holds);
    // ...while holding in a Boolean algebra large enough for all 8 variables.
    REQUIRE(check_equation(build("12."), mge.equation, {true, 1}).holds);
}

TEST_CASE("witnesses whose minimum is not one are rejected", "[mgegen]")
{
    // A strong pasting: every pair minimum is below 1.
    OmlLattice strong = build("123,345.");
    REQUIRE_THROWS_MATCHES(
        relax_blocks(strong, strong.atom_element(0), strong.atom_element(1)), MgeGenError,
        Catch::Matchers::Predicate<MgeGenError>(
            [](const MgeGenError& e) { return e.code() == MgeGenErrc::WitnessNotTight; }));

    // A stateless pasting: the pair program is infeasible.
    OmlLattice none = build_oml(corpus_get("mayet-30-19").diagram());
    REQUIRE_THROWS_MATCHES(
        relax_blocks(none, none.one(), none.zero()), MgeGenError,
        Catch::Matchers::Predicate<MgeGenError>(
            [](const MgeGenError& e) { return e.code() == MgeGenErrc::WitnessNotTight; }));
}

TEST_CASE("balancing duplicates deficient groups in label order", "[mgegen]")
{
    CondensedStateEquation in;
    in.lhs_groups = {"ab", "cd"};
    in.rhs_groups = {"ac", "bd", "ac"};
    CondensedStateEquation out = balance_condensed(in);
    REQUIRE(out.lhs_groups == std::vector<std::string>{"ab", "cd", "ab", "cd"});
    REQUIRE(out.rhs_groups == std::vector<std::string>{"ac", "bd", "ac", "bd"});

    // Already balanced input comes back untouched.
    CondensedStateEquation even = parse_condensed("ab+cd=ac+bd");
    REQUIRE(balance_condensed(even) == even);
}

TEST_CASE("a label on only one side cannot be balanced", "[mgegen]")
{
    CondensedStateEquation c = parse_condensed("ab+cd+ae=ac+bd");
    REQUIRE_THROWS_MATCHES(balance_condensed(c), MgeGenError,
                           Catch::Matchers::Predicate<MgeGenError>([](const MgeGenError& e) {
                               return e.code() == MgeGenErrc::Unbalanceable;
                           }));
}

TEST_CASE("condensation fails loudly when nothing remains pinned", "[mgegen]")
{
    OmlLattice l = build("123.");
    RelaxationRecord all_relaxed;
    all_relaxed.relaxed = {true};
    REQUIRE_THROWS_MATCHES(build_condensed(l, all_relaxed), MgeGenError,
                           Catch::Matchers::Predicate<MgeGenError>([](const MgeGenError& e) {
                               return e.code() == MgeGenErrc::EmptyLeftSide;
                           }));

    RelaxationRecord all_zero;
    all_zero.relaxed = {false};
    all_zero.forced_zero_atoms = {0, 1, 2};
    REQUIRE_THROWS_MATCHES(build_condensed(l, all_zero), MgeGenError,
                           Catch::Matchers::Predicate<MgeGenError>([](const MgeGenError& e) {
                               return e.code() == MgeGenErrc::EmptyLeftSide;
                           }));
}

TEST_CASE("emission refuses an equation the input satisfies", "[mgegen]")
{
    OmlLattice l = build("12,34.");
    CondensedStateEquation trivial = parse_condensed("12+34=12+34");
    REQUIRE_THROWS_MATCHES(balance_and_emit(l, trivial), MgeGenError,
                           Catch::Matchers::Predicate<MgeGenError>([](const MgeGenError& e) {
                               return e.code() == MgeGenErrc::GeneratedEquationHoldsInInput;
                           }));
}
