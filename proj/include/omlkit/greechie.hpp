// Greechie diagram notation: parsing, validation and serialization.
//
// A diagram is a list of blocks over single-character atom labels, e.g.
// "123,345,567,789,9AB,BC1,2E8,4FA,6DC,DEF."  Blocks are comma-separated,
// the diagram ends at the first '.', and anything after the terminator is
// comment.  Labels come from the 61-character alphabet 1-9, A-Z, a-z; atoms
// are numbered by first appearance.  Two distinct blocks may share at most
// one atom.
#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace omlkit {

inline constexpr std::string_view kAtomAlphabet =
    "123456789ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz";

/** Index of a label in the atom alphabet, or -1 if it is not a label. */
inline int label_rank(char c)
{
    if (c >= '1' && c <= '9') return c - '1';
    if (c >= 'A' && c <= 'Z') return 9 + (c - 'A');
    if (c >= 'a' && c <= 'z') return 35 + (c - 'a');
    return -1;
}

enum class GreechieErrc {
    UnknownLabelCharacter,
    DuplicateAtomInBlock,
    BlocksShareTwoAtoms,
    MissingTerminator,
    TooManyAtoms,
    BlockTooSmall,
    AtomNotInAnyBlock,
};

inline const char* to_string(GreechieErrc c)
{
    switch (c) {
        case GreechieErrc::UnknownLabelCharacter: return "UnknownLabelCharacter";
        case GreechieErrc::DuplicateAtomInBlock:  return "DuplicateAtomInBlock";
        case GreechieErrc::BlocksShareTwoAtoms:   return "BlocksShareTwoAtoms";
        case GreechieErrc::MissingTerminator:     return "MissingTerminator";
        case GreechieErrc::TooManyAtoms:          return "TooManyAtoms";
        case GreechieErrc::BlockTooSmall:         return "BlockTooSmall";
        case GreechieErrc::AtomNotInAnyBlock:     return "AtomNotInAnyBlock";
    }
    return "?";
}

class GreechieError : public std::runtime_error {
  public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    GreechieError(GreechieErrc code, const std::string& what, std::size_t position = npos)
        : std::runtime_error(what), code_(code), position_(position)
    {
    }

    GreechieErrc code() const { return code_; }

    /** Byte offset of the offending character in the input, or npos. */
    std::size_t position() const { return position_; }

  private:
    GreechieErrc code_;
    std::size_t position_;
};

/**
 * An atomistic block structure: atoms carry labels, blocks are lists of
 * distinct atom indices.  Invariants (enforced by parse_diagram/validate):
 * every block has >= 2 atoms, distinct blocks share at most one atom, every
 * atom occurs in some block, labels are unique.
 */
struct GreechieDiagram {
    std::vector<char> labels;                 // atom index -> label
    std::vector<std::vector<int>> blocks;     // block -> atom indices

    int atom_count() const { return static_cast<int>(labels.size()); }
    int block_count() const { return static_cast<int>(blocks.size()); }

    std::optional<int> atom_of_label(char c) const
    {
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == c) return static_cast<int>(i);
        return std::nullopt;
    }

    bool operator==(const GreechieDiagram&) const = default;
};

/** Checks every structural invariant; throws GreechieError on violation. */
inline void validate(const GreechieDiagram& d)
{
    if (d.atom_count() > static_cast<int>(kAtomAlphabet.size()))
        throw GreechieError(GreechieErrc::TooManyAtoms,
                            "diagram has " + std::to_string(d.atom_count()) +
                                " atoms but only " + std::to_string(kAtomAlphabet.size()) +
                                " labels exist");
    std::vector<bool> seen_label(128, false);
    for (char c : d.labels) {
        if (label_rank(c) < 0)
            throw GreechieError(GreechieErrc::UnknownLabelCharacter,
                                std::string("invalid atom label '") + c + "'");
        if (seen_label[static_cast<unsigned char>(c)])
            throw GreechieError(GreechieErrc::DuplicateAtomInBlock,
                                std::string("label '") + c + "' used for two atoms");
        seen_label[static_cast<unsigned char>(c)] = true;
    }
    std::vector<bool> used(d.atom_count(), false);
    for (std::size_t b = 0; b < d.blocks.size(); ++b) {
        const auto& blk = d.blocks[b];
        if (blk.size() < 2)
            throw GreechieError(GreechieErrc::BlockTooSmall,
                                "block " + std::to_string(b) + " has fewer than two atoms");
        std::vector<bool> in_block(d.atom_count(), false);
        for (int a : blk) {
            if (a < 0 || a >= d.atom_count())
                throw GreechieError(GreechieErrc::UnknownLabelCharacter,
                                    "block " + std::to_string(b) + " references atom index " +
                                        std::to_string(a) + " out of range");
            if (in_block[a])
                throw GreechieError(GreechieErrc::DuplicateAtomInBlock,
                                    "block " + std::to_string(b) + " repeats atom '" +
                                        std::string(1, d.labels[a]) + "'");
            in_block[a] = true;
            used[a] = true;
        }
    }
    for (std::size_t b = 0; b < d.blocks.size(); ++b)
        for (std::size_t c = b + 1; c < d.blocks.size(); ++c) {
            int shared = 0;
            char first = 0, second = 0;
            for (int a : d.blocks[b])
                for (int a2 : d.blocks[c])
                    if (a == a2) {
                        ++shared;
                        (shared == 1 ? first : second) = d.labels[a];
                    }
            if (shared >= 2)
                throw GreechieError(GreechieErrc::BlocksShareTwoAtoms,
                                    "blocks " + std::to_string(b) + " and " + std::to_string(c) +
                                        " share atoms '" + std::string(1, first) + "' and '" +
                                        std::string(1, second) + "'");
        }
    for (int a = 0; a < d.atom_count(); ++a)
        if (!used[a])
            throw GreechieError(GreechieErrc::AtomNotInAnyBlock,
                                std::string("atom '") + d.labels[a] + "' occurs in no block");
}

/**
 * Parses one diagram.  Whitespace is ignored, the diagram must end with '.',
 * and anything after the terminator is ignored as comment.
 */
inline GreechieDiagram parse_diagram(std::string_view text)
{
    GreechieDiagram d;
    std::vector<int> atom_of(128, -1);
    std::vector<int> current;
    std::vector<bool> in_current(128, false);
    bool terminated = false;
    std::size_t block_start = 0;

    auto end_block = [&](std::size_t pos) {
        if (current.size() < 2)
            throw GreechieError(GreechieErrc::BlockTooSmall,
                                "block has fewer than two atoms", pos);
        for (const auto& blk : d.blocks) {
            int shared = 0;
            char first = 0, second = 0;
            for (int a : blk)
                for (int a2 : current)
                    if (a == a2) {
                        ++shared;
                        (shared == 1 ? first : second) = d.labels[a];
                    }
            if (shared >= 2)
                throw GreechieError(GreechieErrc::BlocksShareTwoAtoms,
                                    std::string("blocks share atoms '") + first + "' and '" +
                                        second + "'",
                                    pos);
        }
        d.blocks.push_back(current);
        for (int a : current) in_current[static_cast<unsigned char>(d.labels[a])] = false;
        current.clear();
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') continue;
        if (c == '.') {
            end_block(i);
            terminated = true;
            break;
        }
        if (c == ',') {
            end_block(i);
            block_start = i + 1;
            continue;
        }
        if (label_rank(c) < 0)
            throw GreechieError(GreechieErrc::UnknownLabelCharacter,
                                std::string("character '") + c + "' is not an atom label", i);
        if (in_current[static_cast<unsigned char>(c)])
            throw GreechieError(GreechieErrc::DuplicateAtomInBlock,
                                std::string("atom '") + c + "' repeated within a block", i);
        if (atom_of[static_cast<unsigned char>(c)] < 0) {
            atom_of[static_cast<unsigned char>(c)] = d.atom_count();
            d.labels.push_back(c);
        }
        current.push_back(atom_of[static_cast<unsigned char>(c)]);
        in_current[static_cast<unsigned char>(c)] = true;
    }
    if (!terminated)
        throw GreechieError(GreechieErrc::MissingTerminator,
                            "diagram does not end with '.'", text.size());
    (void)block_start;
    validate(d);
    return d;
}

/** Renders the diagram in block-list notation, terminated by '.'. */
inline std::string serialize(const GreechieDiagram& d)
{
    validate(d);
    std::string out;
    for (std::size_t b = 0; b < d.blocks.size(); ++b) {
        if (b) out += ',';
        for (int a : d.blocks[b]) out += d.labels[a];
    }
    out += '.';
    return out;
}

/** One line of a diagram file: either a diagram or a parse error. */
struct DiagramLine {
    int line_no = 0;                          // 1-based
    std::string text;                         // the raw line
    std::optional<GreechieDiagram> diagram;   // set on success
    std::string error;                        // set on failure
    std::optional<GreechieErrc> errc;
    std::size_t error_position = GreechieError::npos;   // byte offset in text
};

/**
 * Reads a diagram file: one diagram per line, blank lines and lines starting
 * with '#' skipped.  Errors are collected per line, not thrown.
 */
inline std::vector<DiagramLine> read_diagram_lines(std::istream& in)
{
    std::vector<DiagramLine> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        DiagramLine dl;
        dl.line_no = line_no;
        dl.text = line;
        try {
            dl.diagram = parse_diagram(line);
        } catch (const GreechieError& e) {
            dl.error = e.what();
            dl.errc = e.code();
            dl.error_position = e.position();
        }
        out.push_back(std::move(dl));
    }
    return out;
}

inline std::vector<DiagramLine> read_diagram_lines(const std::string& text)
{
    std::istringstream in(text);
    return read_diagram_lines(in);
}

}   // namespace omlkit
