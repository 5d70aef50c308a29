// Probability measures (states) on a pasted orthomodular lattice, computed
// exactly through rational linear programming.
//
// A state assigns each atom a nonnegative rational so that every block sums
// to 1; the measure of any element is then an affine expression in the atom
// values (coatoms are 1 - m(atom), block joins are sums).  A strong set of
// states exists iff for every pair a not<= b some state has m(a) = 1 and
// m(b) < 1; the check scans all such pairs in order and minimizes m(b)
// subject to m(a) = 1, reporting the first pair whose minimum is >= 1 or
// whose program is infeasible (minimum treated as +infinity).
#pragma once

#include <atomic>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "lattice.hpp"
#include "ratlp.hpp"

namespace omlkit {

/** constant + sum of atom_coeffs[i] * m(atom i). */
struct LinearExpr {
    Rat constant = 0;
    std::vector<Rat> atom_coeffs;
};

inline LinearExpr measure_expr(const OmlLattice& l, int e)
{
    LinearExpr ex;
    ex.atom_coeffs.assign(l.atom_count(), 0);
    const OmlElement& el = l.element(e);
    switch (el.kind) {
        case OmlElement::Kind::Zero: break;
        case OmlElement::Kind::One: ex.constant = 1; break;
        case OmlElement::Kind::Atom: ex.atom_coeffs[el.atom] = 1; break;
        case OmlElement::Kind::Coatom:
            ex.constant = 1;
            ex.atom_coeffs[el.atom] = -1;
            break;
        case OmlElement::Kind::BlockJoin: {
            const auto& blk = l.source().blocks[el.block];
            for (std::size_t p = 0; p < blk.size(); ++p)
                if (el.subset >> p & 1) ex.atom_coeffs[blk[p]] = 1;
            break;
        }
    }
    return ex;
}

/** The feasibility program every state satisfies: one equality per block. */
inline RationalLP base_state_lp(const OmlLattice& l)
{
    RationalLP lp;
    lp.num_vars = l.atom_count();
    lp.objective.assign(lp.num_vars, 0);
    for (const auto& blk : l.source().blocks) {
        std::vector<Rat> row(lp.num_vars, 0);
        for (int a : blk) row[a] = 1;
        lp.add_eq(std::move(row), 1);
    }
    return lp;
}

/** Variable names for LP export: m1, m2, ..., mF. */
inline std::vector<std::string> measure_names(const OmlLattice& l)
{
    std::vector<std::string> names;
    for (char c : l.source().labels) names.push_back(std::string("m") + c);
    return names;
}

struct StateVector {
    std::vector<Rat> atom_values;
};

inline Rat state_measure(const OmlLattice& l, const StateVector& s, int e)
{
    LinearExpr ex = measure_expr(l, e);
    Rat v = ex.constant;
    for (int a = 0; a < l.atom_count(); ++a) v += ex.atom_coeffs[a] * s.atom_values[a];
    return v;
}

/** Some state of the lattice, or nullopt if none exists. */
inline std::optional<StateVector> admits_state(const OmlLattice& l)
{
    LpOutcome r = solve(base_state_lp(l));
    if (r.status != LpOutcome::Status::Optimal) return std::nullopt;
    return StateVector{std::move(r.point)};
}

enum class UniqueStatus { NoState, Unique, Many };

struct UniqueVerdict {
    UniqueStatus status = UniqueStatus::NoState;
    std::optional<StateVector> state;                                // Unique
    std::optional<std::pair<StateVector, StateVector>> distinct;     // Many
};

/** No state / exactly one / more than one, with evidence. */
inline UniqueVerdict unique_state(const OmlLattice& l)
{
    auto first = admits_state(l);
    if (!first) return {};
    RationalLP lp = base_state_lp(l);
    for (int a = 0; a < l.atom_count(); ++a) {
        lp.objective.assign(lp.num_vars, 0);
        lp.objective[a] = 1;
        LpOutcome lo = solve(lp);
        lp.objective[a] = -1;
        LpOutcome hi = solve(lp);
        if (lo.value != -hi.value) {
            UniqueVerdict v;
            v.status = UniqueStatus::Many;
            v.distinct = {StateVector{std::move(lo.point)}, StateVector{std::move(hi.point)}};
            return v;
        }
    }
    UniqueVerdict v;
    v.status = UniqueStatus::Unique;
    v.state = std::move(first);
    return v;
}

/** The minimization "min m(b) subject to states with m(a) = 1". */
inline RationalLP strong_pair_lp(const OmlLattice& l, int a, int b)
{
    RationalLP lp = base_state_lp(l);
    LinearExpr ea = measure_expr(l, a);
    lp.add_eq(std::move(ea.atom_coeffs), Rat(1) - ea.constant);
    LinearExpr eb = measure_expr(l, b);
    lp.objective = std::move(eb.atom_coeffs);
    lp.objective_offset = eb.constant;
    return lp;
}

struct StrongCheckResult {
    bool strong = true;
    // Witness fields, set when strong is false:
    int witness_a = -1, witness_b = -1;
    bool infeasible = false;         // the pair LP had no state at all (min +inf)
    Rat min_value = 0;               // min m(b), valid when !infeasible
    RationalLP lp;                   // the witness program, for export
    std::size_t pairs_checked = 0;
};

/**
 * Scans nonleq_pairs in order; the reported witness is always the first
 * failing pair in that order, independent of jobs.
 */
inline StrongCheckResult strong_state_check(const OmlLattice& l, int jobs = 1)
{
    auto pairs = nonleq_pairs(l);
    StrongCheckResult res;

    struct PairOutcome {
        bool bad = false;
        bool infeasible = false;
        Rat min_value = 0;
    };
    auto eval_pair = [&](std::size_t i) {
        PairOutcome po;
        LpOutcome lo = solve(strong_pair_lp(l, pairs[i].first, pairs[i].second));
        if (lo.status != LpOutcome::Status::Optimal) {
            po.bad = true;
            po.infeasible = true;
        } else if (lo.value >= 1) {
            po.bad = true;
            po.min_value = lo.value;
        }
        return po;
    };
    auto report = [&](std::size_t i, const PairOutcome& po) {
        res.strong = false;
        res.witness_a = pairs[i].first;
        res.witness_b = pairs[i].second;
        res.infeasible = po.infeasible;
        res.min_value = po.min_value;
        res.lp = strong_pair_lp(l, pairs[i].first, pairs[i].second);
        res.pairs_checked = i + 1;
    };

    if (jobs <= 1) {
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            PairOutcome po = eval_pair(i);
            if (po.bad) {
                report(i, po);
                return res;
            }
        }
        res.pairs_checked = pairs.size();
        return res;
    }

    // Deterministic chunked scan: solve a chunk in parallel, then inspect it
    // in order; the first bad pair wins.
    std::size_t chunk = static_cast<std::size_t>(jobs) * 8;
    for (std::size_t base = 0; base < pairs.size(); base += chunk) {
        std::size_t end = std::min(pairs.size(), base + chunk);
        std::vector<PairOutcome> outcomes(end - base);
        std::atomic<std::size_t> next{base};
        auto worker = [&]() {
            while (true) {
                std::size_t i = next.fetch_add(1);
                if (i >= end) break;
                outcomes[i - base] = eval_pair(i);
            }
        };
        std::vector<std::thread> threads;
        for (int t = 0; t < jobs; ++t) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
        for (std::size_t i = base; i < end; ++i)
            if (outcomes[i - base].bad) {
                report(i, outcomes[i - base]);
                return res;
            }
    }
    res.pairs_checked = pairs.size();
    return res;
}

}   // namespace omlkit
