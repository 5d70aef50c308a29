// Finite orthomodular lattices obtained by pasting the blocks of a Greechie
// diagram.
//
// Elements are 0, 1 and the canonical proper nonempty subsets of blocks:
// singletons are atoms (shared across blocks), co-singletons are coatoms
// (the orthocomplements of atoms), and everything in between belongs to a
// single block.  The order is generated block-locally by subset inclusion;
// meets/joins are computed from the order and every ortholattice and
// orthomodularity axiom is verified after construction, so malformed
// pastings (e.g. loops of 3 or 4 blocks, or ill-matched 2-atom blocks) are
// rejected with a diagnosis instead of yielding a broken structure.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bitset.hpp"
#include "greechie.hpp"

namespace omlkit {

enum class OmlErrc { NotALattice, NotAnOrtholattice, NotOrthomodular };

inline const char* to_string(OmlErrc c)
{
    switch (c) {
        case OmlErrc::NotALattice:       return "NotALattice";
        case OmlErrc::NotAnOrtholattice: return "NotAnOrtholattice";
        case OmlErrc::NotOrthomodular:   return "NotOrthomodular";
    }
    return "?";
}

class OmlBuildError : public std::runtime_error {
  public:
    OmlBuildError(OmlErrc code, const std::string& what, int x = -1, int y = -1)
        : std::runtime_error(what), code_(code), x_(x), y_(y)
    {
    }

    OmlErrc code() const { return code_; }

    /** The offending element pair, if the failure concerns one (-1 otherwise). */
    int x() const { return x_; }
    int y() const { return y_; }

  private:
    OmlErrc code_;
    int x_, y_;
};

struct OmlElement {
    enum class Kind : uint8_t { Zero, One, Atom, Coatom, BlockJoin };
    Kind kind = Kind::Zero;
    int atom = -1;          // Atom/Coatom: the diagram atom
    int block = -1;         // BlockJoin: owning block
    uint32_t subset = 0;    // BlockJoin: bitmask over the block's atom positions
};

class OmlLattice {
  public:
    // Construction guard: beyond this many elements the dense order/meet/join
    // tables stop being a sensible representation.
    static constexpr int kMaxElements = 2048;

    explicit OmlLattice(const GreechieDiagram& d) : diagram_(d)
    {
        validate(d);
        enumerate_elements();
        build_order();
        verify_partial_order();
        build_down_up();
        build_meet_join();
        build_ortho();
        verify_ortholattice();
        verify_orthomodular();
    }

    int size() const { return static_cast<int>(elements_.size()); }
    int zero() const { return 0; }
    int one() const { return 1; }

    bool leq(int x, int y) const { return leq_[x * size_ + y] != 0; }
    int meet(int x, int y) const { return meet_[x * size_ + y]; }
    int join(int x, int y) const { return join_[x * size_ + y]; }
    int ortho(int x) const { return ortho_[x]; }

    /** x is orthogonal to y, i.e. x <= y'. */
    bool is_ortho(int x, int y) const { return leq(x, ortho_[y]); }

    /** x commutes with y, i.e. x ^ (x' v y) <= y. */
    bool commutes(int x, int y) const
    {
        return leq(meet(x, join(ortho_[x], y)), y);
    }

    const OmlElement& element(int i) const { return elements_[i]; }
    const GreechieDiagram& source() const { return diagram_; }
    int atom_count() const { return diagram_.atom_count(); }

    /** Element index of diagram atom a. */
    int atom_element(int a) const { return atom_elem_[a]; }

    /** Element index of the orthocomplement of atom a (an Atom element when a
     * lives in a 2-atom block). */
    int coatom_element(int a) const { return coatom_elem_[a]; }

    const Bitset& down(int x) const { return down_[x]; }
    const Bitset& up(int x) const { return up_[x]; }

    /** Display name: "0", "1", "7", "7'", "4v7", ... */
    std::string element_name(int i) const
    {
        const OmlElement& e = elements_[i];
        switch (e.kind) {
            case OmlElement::Kind::Zero: return "0";
            case OmlElement::Kind::One: return "1";
            case OmlElement::Kind::Atom: return std::string(1, diagram_.labels[e.atom]);
            case OmlElement::Kind::Coatom:
                return std::string(1, diagram_.labels[e.atom]) + "'";
            case OmlElement::Kind::BlockJoin: {
                std::string s;
                const auto& blk = diagram_.blocks[e.block];
                for (std::size_t p = 0; p < blk.size(); ++p)
                    if (e.subset >> p & 1) {
                        if (!s.empty()) s += 'v';
                        s += diagram_.labels[blk[p]];
                    }
                return s;
            }
        }
        return "?";
    }

  private:
    GreechieDiagram diagram_;
    std::vector<OmlElement> elements_;
    int size_ = 0;
    std::vector<uint8_t> leq_;
    std::vector<int32_t> meet_, join_;
    std::vector<int> ortho_;
    std::vector<int> atom_elem_, coatom_elem_;
    std::vector<std::vector<int>> middle_elem_;   // block -> (mask -> element or -1)
    std::vector<Bitset> down_, up_;

    /** Canonical element for a nonempty proper subset (as mask) of block b. */
    int canon(int b, uint32_t mask) const
    {
        const auto& blk = diagram_.blocks[b];
        int k = static_cast<int>(blk.size());
        int pc = __builtin_popcount(mask);
        if (pc == 0) return 0;
        if (pc == k) return 1;
        if (pc == 1) return atom_elem_[blk[__builtin_ctz(mask)]];
        if (pc == k - 1) {
            uint32_t missing = ~mask & ((uint32_t{1} << k) - 1);
            return coatom_elem_[blk[__builtin_ctz(missing)]];
        }
        return middle_elem_[b][mask];
    }

    void enumerate_elements()
    {
        const int natoms = diagram_.atom_count();
        elements_.push_back({OmlElement::Kind::Zero});
        elements_.push_back({OmlElement::Kind::One});

        atom_elem_.assign(natoms, -1);
        for (int a = 0; a < natoms; ++a) {
            atom_elem_[a] = static_cast<int>(elements_.size());
            OmlElement e;
            e.kind = OmlElement::Kind::Atom;
            e.atom = a;
            elements_.push_back(e);
        }

        // Resolve each atom's orthocomplement: a co-singleton of a 2-atom
        // block is the partner atom itself; otherwise it is a fresh coatom.
        // Mixed resolutions mean the pasting cannot carry an orthocomplement.
        coatom_elem_.assign(natoms, -1);
        std::vector<int> partner(natoms, -1);   // -1 none, -2 fresh coatom
        for (std::size_t b = 0; b < diagram_.blocks.size(); ++b) {
            const auto& blk = diagram_.blocks[b];
            for (std::size_t p = 0; p < blk.size(); ++p) {
                int a = blk[p];
                int cand = blk.size() == 2 ? blk[1 - p] : -2;
                if (partner[a] == -1)
                    partner[a] = cand;
                else if (partner[a] != cand)
                    throw OmlBuildError(
                        OmlErrc::NotAnOrtholattice,
                        std::string("atom '") + diagram_.labels[a] +
                            "' has conflicting orthocomplements across blocks",
                        atom_elem_[a]);
            }
        }
        for (int a = 0; a < natoms; ++a) {
            if (partner[a] >= 0) {
                coatom_elem_[a] = atom_elem_[partner[a]];
            } else {
                coatom_elem_[a] = static_cast<int>(elements_.size());
                OmlElement e;
                e.kind = OmlElement::Kind::Coatom;
                e.atom = a;
                elements_.push_back(e);
            }
        }

        middle_elem_.resize(diagram_.blocks.size());
        for (std::size_t b = 0; b < diagram_.blocks.size(); ++b) {
            int k = static_cast<int>(diagram_.blocks[b].size());
            if (k > 16)
                throw std::length_error("block of " + std::to_string(k) +
                                        " atoms exceeds the construction limit");
            middle_elem_[b].assign(std::size_t{1} << k, -1);
            for (uint32_t mask = 0; mask < (uint32_t{1} << k); ++mask) {
                int pc = __builtin_popcount(mask);
                if (pc < 2 || pc > k - 2) continue;
                middle_elem_[b][mask] = static_cast<int>(elements_.size());
                OmlElement e;
                e.kind = OmlElement::Kind::BlockJoin;
                e.block = static_cast<int>(b);
                e.subset = mask;
                elements_.push_back(e);
                if (size() > kMaxElements)
                    throw std::length_error("pasted lattice exceeds " +
                                            std::to_string(kMaxElements) + " elements");
            }
        }
        size_ = size();
        if (size_ > kMaxElements)
            throw std::length_error("pasted lattice exceeds " +
                                    std::to_string(kMaxElements) + " elements");
    }

    void build_order()
    {
        leq_.assign(static_cast<std::size_t>(size_) * size_, 0);
        for (int x = 0; x < size_; ++x) {
            leq_[x * size_ + x] = 1;
            leq_[0 * size_ + x] = 1;
            leq_[x * size_ + 1] = 1;
        }
        // Block-local subset inclusion generates the rest of the order.
        for (std::size_t b = 0; b < diagram_.blocks.size(); ++b) {
            int k = static_cast<int>(diagram_.blocks[b].size());
            uint32_t full = (uint32_t{1} << k) - 1;
            for (uint32_t t = 1; t < full; ++t) {
                int te = canon(static_cast<int>(b), t);
                for (uint32_t s = t; s; s = (s - 1) & t)
                    leq_[canon(static_cast<int>(b), s) * size_ + te] = 1;
            }
        }
    }

    void verify_partial_order()
    {
        for (int x = 0; x < size_; ++x)
            for (int y = x + 1; y < size_; ++y)
                if (leq(x, y) && leq(y, x))
                    throw OmlBuildError(OmlErrc::NotALattice,
                                        "order is not antisymmetric between " +
                                            element_name(x) + " and " + element_name(y),
                                        x, y);
        for (int x = 0; x < size_; ++x)
            for (int y = 0; y < size_; ++y) {
                if (!leq(x, y)) continue;
                for (int z = 0; z < size_; ++z)
                    if (leq(y, z) && !leq(x, z))
                        throw OmlBuildError(OmlErrc::NotALattice,
                                            "order is not transitive at " + element_name(x) +
                                                " <= " + element_name(y) + " <= " +
                                                element_name(z),
                                            x, z);
            }
    }

    void build_down_up()
    {
        down_.assign(size_, Bitset(size_));
        up_.assign(size_, Bitset(size_));
        for (int x = 0; x < size_; ++x)
            for (int y = 0; y < size_; ++y)
                if (leq(x, y)) {
                    up_[x].set(y);
                    down_[y].set(x);
                }
    }

    void build_meet_join()
    {
        meet_.assign(static_cast<std::size_t>(size_) * size_, -1);
        join_.assign(static_cast<std::size_t>(size_) * size_, -1);
        for (int x = 0; x < size_; ++x)
            for (int y = x; y < size_; ++y) {
                int m = -1;
                if (leq(x, y))
                    m = x;
                else if (leq(y, x))
                    m = y;
                else {
                    Bitset cand = down_[x] & down_[y];
                    cand.for_each([&](int g) {
                        if (m < 0 && cand.subset_of(down_[g])) m = g;
                    });
                    if (m < 0)
                        throw OmlBuildError(OmlErrc::NotALattice,
                                            "elements " + element_name(x) + " and " +
                                                element_name(y) +
                                                " have no greatest lower bound",
                                            x, y);
                }
                int j = -1;
                if (leq(x, y))
                    j = y;
                else if (leq(y, x))
                    j = x;
                else {
                    Bitset cand = up_[x] & up_[y];
                    cand.for_each([&](int g) {
                        if (j < 0 && cand.subset_of(up_[g])) j = g;
                    });
                    if (j < 0)
                        throw OmlBuildError(OmlErrc::NotALattice,
                                            "elements " + element_name(x) + " and " +
                                                element_name(y) +
                                                " have no least upper bound",
                                            x, y);
                }
                meet_[x * size_ + y] = meet_[y * size_ + x] = m;
                join_[x * size_ + y] = join_[y * size_ + x] = j;
            }
    }

    void build_ortho()
    {
        ortho_.assign(size_, -1);
        ortho_[0] = 1;
        ortho_[1] = 0;
        for (std::size_t b = 0; b < diagram_.blocks.size(); ++b) {
            int k = static_cast<int>(diagram_.blocks[b].size());
            uint32_t full = (uint32_t{1} << k) - 1;
            for (uint32_t mask = 1; mask < full; ++mask) {
                int e = canon(static_cast<int>(b), mask);
                int o = canon(static_cast<int>(b), full & ~mask);
                if (ortho_[e] == -1)
                    ortho_[e] = o;
                else if (ortho_[e] != o)
                    throw OmlBuildError(OmlErrc::NotAnOrtholattice,
                                        "element " + element_name(e) +
                                            " has conflicting orthocomplements",
                                        e, o);
            }
        }
        for (int x = 0; x < size_; ++x)
            if (ortho_[x] < 0)
                throw OmlBuildError(OmlErrc::NotAnOrtholattice,
                                    "element " + element_name(x) + " has no orthocomplement",
                                    x);
    }

    void verify_ortholattice()
    {
        for (int x = 0; x < size_; ++x) {
            if (ortho_[ortho_[x]] != x)
                throw OmlBuildError(OmlErrc::NotAnOrtholattice,
                                    "orthocomplement is not an involution at " +
                                        element_name(x),
                                    x);
            if (meet(x, ortho_[x]) != 0 || join(x, ortho_[x]) != 1)
                throw OmlBuildError(OmlErrc::NotAnOrtholattice,
                                    element_name(x) + " and " + element_name(ortho_[x]) +
                                        " are not complements",
                                    x, ortho_[x]);
        }
        for (int x = 0; x < size_; ++x)
            for (int y = 0; y < size_; ++y)
                if (leq(x, y) && !leq(ortho_[y], ortho_[x]))
                    throw OmlBuildError(OmlErrc::NotAnOrtholattice,
                                        "orthocomplement does not reverse " +
                                            element_name(x) + " <= " + element_name(y),
                                        x, y);
    }

    void verify_orthomodular()
    {
        for (int x = 0; x < size_; ++x)
            for (int y = 0; y < size_; ++y)
                if (leq(x, y) && join(x, meet(y, ortho_[x])) != y)
                    throw OmlBuildError(OmlErrc::NotOrthomodular,
                                        "orthomodular law fails for " + element_name(x) +
                                            " <= " + element_name(y),
                                        x, y);
    }
};

inline OmlLattice build_oml(const GreechieDiagram& d) { return OmlLattice(d); }

/** Sasaki arrow x -> y = x' v (x ^ y). */
inline int sasaki_arrow(const OmlLattice& l, int x, int y)
{
    return l.join(l.ortho(x), l.meet(x, y));
}

/** All ordered pairs (a, b) with a not<= b, ascending by (a, b). */
inline std::vector<std::pair<int, int>> nonleq_pairs(const OmlLattice& l)
{
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < l.size(); ++a)
        for (int b = 0; b < l.size(); ++b)
            if (!l.leq(a, b)) out.emplace_back(a, b);
    return out;
}

}   // namespace omlkit
