// Diagram notation: parsing, validation, and round trips.
#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "omlkit/greechie.hpp"

using namespace omlkit;

TEST_CASE("atoms are numbered by first appearance", "[greechie]")
{
    GreechieDiagram d = parse_diagram("123,345.");
    REQUIRE(d.atom_count() == 5);
    REQUIRE(d.block_count() == 2);
    REQUIRE(d.labels == std::vector<char>{'1', '2', '3', '4', '5'});
    REQUIRE(d.blocks == std::vector<std::vector<int>>{{0, 1, 2}, {2, 3, 4}});
    REQUIRE(d.atom_of_label('3') == 2);
    REQUIRE(!d.atom_of_label('z').has_value());
}

TEST_CASE("whitespace is ignored and the terminator starts a comment", "[greechie]")
{
    GreechieDiagram d = parse_diagram("  1 2 3 ,\t3 4 5 .  anything at all");
    REQUIRE(d == parse_diagram("123,345."));
}

TEST_CASE("the label alphabet is digits, then upper, then lower", "[greechie]")
{
    REQUIRE(label_rank('1') == 0);
    REQUIRE(label_rank('9') == 8);
    REQUIRE(label_rank('A') == 9);
    REQUIRE(label_rank('Z') == 34);
    REQUIRE(label_rank('a') == 35);
    REQUIRE(label_rank('z') == 60);
    REQUIRE(label_rank('0') == -1);
    REQUIRE(label_rank('*') == -1);
}

TEST_CASE("parse errors carry codes and byte positions", "[greechie]")
{
    auto expect = [](const std::string& text, GreechieErrc code) {
        try {
            parse_diagram(text);
            FAIL("expected parse of \"" << text << "\" to throw");
        } catch (const GreechieError& e) {
            REQUIRE(e.code() == code);
        }
    };
    expect("12$.", GreechieErrc::UnknownLabelCharacter);
    expect("121.", GreechieErrc::DuplicateAtomInBlock);
    expect("123,124.", GreechieErrc::BlocksShareTwoAtoms);
    expect("123,345", GreechieErrc::MissingTerminator);
    expect("123,,345.", GreechieErrc::BlockTooSmall);
    expect("1.", GreechieErrc::BlockTooSmall);

    try {
        parse_diagram("12$.");
        FAIL("expected a throw");
    } catch (const GreechieError& e) {
        REQUIRE(e.position() == 2);
    }
}

TEST_CASE("validation rejects hand-built inconsistencies", "[greechie]")
{
    SECTION("atom outside every block")
    {
        GreechieDiagram d;
        d.labels = {'1', '2', '3'};
        d.blocks = {{0, 1}};
        try {
            validate(d);
            FAIL("expected validate to throw");
        } catch (const GreechieError& e) {
            REQUIRE(e.code() == GreechieErrc::AtomNotInAnyBlock);
        }
    }
    SECTION("more atoms than labels")
    {
        GreechieDiagram d;
        for (int i = 0; i < 62; ++i) d.blocks.push_back({2 * i, 2 * i + 1});
        d.labels.assign(124, '1');
        try {
            validate(d);
            FAIL("expected validate to throw");
        } catch (const GreechieError& e) {
            REQUIRE(e.code() == GreechieErrc::TooManyAtoms);
        }
    }
}

TEST_CASE("serialize re-parses to the same diagram", "[greechie]")
{
    for (const char* text :
         {"12.", "123.", "123,345.", "123,345,567,789,9AB,BC1,2E8,4FA,6DC,DEF."}) {
        GreechieDiagram d = parse_diagram(text);
        REQUIRE(serialize(d) == text);
        REQUIRE(parse_diagram(serialize(d)) == d);
    }
}

TEST_CASE("diagram files collect per-line results", "[greechie]")
{
    std::istringstream in(
        "# comment\n"
        "123,345.\n"
        "\n"
        "12$.\n"
        "   \t\n"
        "12,34.\n");
    auto lines = read_diagram_lines(in);
    REQUIRE(lines.size() == 3);

    REQUIRE(lines[0].line_no == 2);
    REQUIRE(lines[0].diagram.has_value());

    REQUIRE(lines[1].line_no == 4);
    REQUIRE(!lines[1].diagram.has_value());
    REQUIRE(lines[1].errc == GreechieErrc::UnknownLabelCharacter);
    REQUIRE(lines[1].error_position == 2);

    REQUIRE(lines[2].line_no == 6);
    REQUIRE(lines[2].diagram.has_value());
}
