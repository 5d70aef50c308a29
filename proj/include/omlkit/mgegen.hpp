// Deriving a Mayet-Godowski equation from a failed strong-state witness.
//
// Given a pair a not<= b whose minimization "min m(b) over states with
// m(a) = 1" is exactly 1, the generator relaxes block equalities to <= 1
// one at a time in diagram order, keeping a relaxation whenever the minimum
// stays 1.  Atoms orthogonal to a are forced to measure zero; the surviving
// (pinned) blocks contribute their non-zero atoms as the left side of a
// condensed state equation, each relaxed block contributes its atoms that
// appear on the left (empty groups dropped) as the right side.  After
// balancing variable counts by duplicating groups, the condensed equation
// expands to an MGE which, by construction, every state-rich lattice
// satisfies but the input lattice violates.
#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "checker.hpp"
#include "families.hpp"
#include "lattice.hpp"
#include "states.hpp"

namespace omlkit {

enum class MgeGenErrc {
    WitnessNotTight,
    EmptyLeftSide,
    Unbalanceable,
    GeneratedEquationHoldsInInput,
};

inline const char* to_string(MgeGenErrc c)
{
    switch (c) {
        case MgeGenErrc::WitnessNotTight: return "WitnessNotTight";
        case MgeGenErrc::EmptyLeftSide: return "EmptyLeftSide";
        case MgeGenErrc::Unbalanceable: return "Unbalanceable";
        case MgeGenErrc::GeneratedEquationHoldsInInput:
            return "GeneratedEquationHoldsInInput";
    }
    return "?";
}

class MgeGenError : public std::runtime_error {
  public:
    MgeGenError(MgeGenErrc code, const std::string& what)
        : std::runtime_error(what), code_(code)
    {
    }
    MgeGenErrc code() const { return code_; }

  private:
    MgeGenErrc code_;
};

struct RelaxationRecord {
    int witness_a = -1, witness_b = -1;
    std::vector<bool> relaxed;            // per diagram block
    std::vector<int> forced_zero_atoms;   // atoms orthogonal to witness_a
};

/**
 * Greedy relaxation for the witness pair; requires the pair minimum to be
 * exactly 1 (throws WitnessNotTight otherwise, including infeasible pairs).
 */
inline RelaxationRecord relax_blocks(const OmlLattice& l, int witness_a, int witness_b)
{
    RationalLP lp = strong_pair_lp(l, witness_a, witness_b);
    LpOutcome first = solve(lp);
    if (first.status != LpOutcome::Status::Optimal || first.value != 1)
        throw MgeGenError(MgeGenErrc::WitnessNotTight,
                          "witness pair (" + l.element_name(witness_a) + ", " +
                              l.element_name(witness_b) +
                              ") does not have minimum exactly 1");

    RelaxationRecord rec;
    rec.witness_a = witness_a;
    rec.witness_b = witness_b;
    rec.relaxed.assign(l.source().block_count(), false);
    for (int b = 0; b < l.source().block_count(); ++b) {
        lp.constraints[b].cmp = Cmp::LE;
        LpOutcome r = solve(lp);
        if (r.status == LpOutcome::Status::Optimal && r.value == 1)
            rec.relaxed[b] = true;
        else
            lp.constraints[b].cmp = Cmp::EQ;
    }
    for (int t = 0; t < l.atom_count(); ++t)
        if (l.is_ortho(l.atom_element(t), witness_a)) rec.forced_zero_atoms.push_back(t);
    return rec;
}

/**
 * Left side: each pinned block's atoms that are not forced zero, in block
 * order.  Right side: each relaxed block's atoms that occur on the left
 * (blocks left empty are dropped).
 */
inline CondensedStateEquation build_condensed(const OmlLattice& l,
                                              const RelaxationRecord& rec)
{
    const auto& d = l.source();
    std::vector<bool> zero(d.atom_count(), false);
    for (int t : rec.forced_zero_atoms) zero[t] = true;

    CondensedStateEquation c;
    std::vector<bool> on_left(d.atom_count(), false);
    for (int b = 0; b < d.block_count(); ++b) {
        if (rec.relaxed[b]) continue;
        std::string g;
        for (int a : d.blocks[b])
            if (!zero[a]) {
                g += d.labels[a];
                on_left[a] = true;
            }
        if (g.empty())
            throw MgeGenError(MgeGenErrc::EmptyLeftSide,
                              "pinned block " + std::to_string(b) +
                                  " has no non-zero atoms");
        c.lhs_groups.push_back(std::move(g));
    }
    if (c.lhs_groups.empty())
        throw MgeGenError(MgeGenErrc::EmptyLeftSide, "no pinned blocks remain");
    for (int b = 0; b < d.block_count(); ++b) {
        if (!rec.relaxed[b]) continue;
        std::string g;
        for (int a : d.blocks[b])
            if (on_left[a]) g += d.labels[a];
        if (!g.empty()) c.rhs_groups.push_back(std::move(g));
    }
    return c;
}

/**
 * Equalizes per-label occurrence counts between the sides by duplicating,
 * for the first unbalanced label in first-appearance order, the first group
 * on the deficient side containing it (appended at that side's end).  Gives
 * up once the group count exceeds four times the original total.
 */
inline CondensedStateEquation balance_condensed(const CondensedStateEquation& in)
{
    CondensedStateEquation c = in;
    std::size_t budget = 4 * (c.lhs_groups.size() + c.rhs_groups.size());
    while (true) {
        std::vector<char> order;
        std::map<char, int> lcount, rcount;
        for (const auto& g : c.lhs_groups)
            for (char ch : g) {
                if (std::find(order.begin(), order.end(), ch) == order.end())
                    order.push_back(ch);
                ++lcount[ch];
            }
        for (const auto& g : c.rhs_groups)
            for (char ch : g) {
                if (std::find(order.begin(), order.end(), ch) == order.end())
                    order.push_back(ch);
                ++rcount[ch];
            }
        char bad = 0;
        for (char ch : order)
            if (lcount[ch] != rcount[ch]) {
                bad = ch;
                break;
            }
        if (!bad) return c;
        auto& side = lcount[bad] < rcount[bad] ? c.lhs_groups : c.rhs_groups;
        const std::string* pick = nullptr;
        for (const auto& g : side)
            if (g.find(bad) != std::string::npos) {
                pick = &g;
                break;
            }
        if (!pick)
            throw MgeGenError(MgeGenErrc::Unbalanceable,
                              std::string("label '") + bad +
                                  "' occurs on only one side of " + c.str());
        side.push_back(*pick);
        if (c.lhs_groups.size() + c.rhs_groups.size() > budget)
            throw MgeGenError(MgeGenErrc::Unbalanceable,
                              "balancing exceeded the duplication budget for " + c.str());
    }
}

/**
 * Balances, expands to an MGE (group orthogonality comes from the lattice),
 * and verifies the result actually fails in the input lattice.
 */
inline MgEquation balance_and_emit(const OmlLattice& l, const CondensedStateEquation& c,
                                   int jobs = 1)
{
    CondensedStateEquation balanced = balance_condensed(c);
    const auto& d = l.source();
    auto orthogonal = [&](char x, char y) {
        auto ax = d.atom_of_label(x), ay = d.atom_of_label(y);
        if (!ax || !ay) return false;
        return l.is_ortho(l.atom_element(*ax), l.atom_element(*ay));
    };
    MgEquation mge = condensed_to_mge(balanced, orthogonal);
    Verdict v = check_equation(l, mge.equation, {true, jobs});
    if (v.holds)
        throw MgeGenError(MgeGenErrc::GeneratedEquationHoldsInInput,
                          "generated equation holds in the input lattice: " +
                              mge.equation.str());
    return mge;
}

}   // namespace omlkit
