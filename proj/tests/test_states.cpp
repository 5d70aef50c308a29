// Exact state-space analysis: measures, the block-sum program, strongness
// scanning, and uniqueness.
//
// The oracle here is brute-force vertex enumeration: every basic solution of
// the equality system is computed by Gaussian elimination over rationals and
// filtered for nonnegativity.  The block polytope is bounded (every atom lies
// in some block, so 0 <= m(atom) <= 1), hence any nonempty face contains a
// vertex and minima are attained at vertices.  This shares no code with the
// simplex path under test.
#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "omlkit/corpus.hpp"
#include "omlkit/greechie.hpp"
#include "omlkit/lattice.hpp"
#include "omlkit/ratlp.hpp"
#include "omlkit/states.hpp"

using namespace omlkit;

namespace {

OmlLattice build(const std::string& text) { return build_oml(parse_diagram(text)); }

const char* kPeterson = "123,345,567,789,9AB,BC1,2E8,4FA,6DC,DEF.";

/** All vertices of {x >= 0 : constraints}, or nullopt when the equality
 * system is inconsistent over the rationals.  Requires equality-only rows. */
std::optional<std::vector<std::vector<Rat>>> enumerate_vertices(const RationalLP& lp)
{
    const int n = lp.num_vars;
    std::vector<std::vector<Rat>> m;
    for (const auto& c : lp.constraints) {
        REQUIRE(c.cmp == Cmp::EQ);
        std::vector<Rat> row = c.coeffs;
        row.push_back(c.rhs);
        m.push_back(std::move(row));
    }
    // Gauss-Jordan to echelon form; rank counts the independent rows.
    int rank = 0;
    for (int c = 0; c < n && rank < static_cast<int>(m.size()); ++c) {
        int piv = -1;
        for (int r = rank; r < static_cast<int>(m.size()); ++r)
            if (m[r][c] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(m[rank], m[piv]);
        for (int r = 0; r < static_cast<int>(m.size()); ++r) {
            if (r == rank || m[r][c] == 0) continue;
            Rat f = m[r][c] / m[rank][c];
            for (int j = 0; j <= n; ++j) m[r][j] -= f * m[rank][j];
        }
        ++rank;
    }
    for (int r = rank; r < static_cast<int>(m.size()); ++r)
        if (m[r][n] != 0) return std::nullopt;
    m.resize(rank);

    std::set<std::vector<Rat>> verts;
    std::vector<int> idx(rank);
    for (int i = 0; i < rank; ++i) idx[i] = i;
    auto advance = [&]() {
        int i = rank - 1;
        while (i >= 0 && idx[i] == n - rank + i) --i;
        if (i < 0) return false;
        ++idx[i];
        for (int j = i + 1; j < rank; ++j) idx[j] = idx[j - 1] + 1;
        return true;
    };
    if (rank == 0) return std::vector<std::vector<Rat>>{std::vector<Rat>(n, 0)};
    do {
        // Solve the square system restricted to columns idx.
        std::vector<std::vector<Rat>> a(rank, std::vector<Rat>(rank + 1));
        for (int r = 0; r < rank; ++r) {
            for (int c = 0; c < rank; ++c) a[r][c] = m[r][idx[c]];
            a[r][rank] = m[r][n];
        }
        bool singular = false;
        for (int c = 0; c < rank && !singular; ++c) {
            int piv = -1;
            for (int r = c; r < rank; ++r)
                if (a[r][c] != 0) {
                    piv = r;
                    break;
                }
            if (piv < 0) {
                singular = true;
                break;
            }
            std::swap(a[c], a[piv]);
            for (int r = 0; r < rank; ++r) {
                if (r == c || a[r][c] == 0) continue;
                Rat f = a[r][c] / a[c][c];
                for (int j = 0; j <= rank; ++j) a[r][j] -= f * a[c][j];
            }
        }
        if (singular) continue;
        std::vector<Rat> x(n, 0);
        bool ok = true;
        for (int c = 0; c < rank; ++c) {
            Rat v = a[c][rank] / a[c][c];
            if (v < 0) {
                ok = false;
                break;
            }
            x[idx[c]] = v;
        }
        if (ok) verts.insert(std::move(x));
    } while (advance());
    return std::vector<std::vector<Rat>>(verts.begin(), verts.end());
}

/** Minimum of the objective over the feasible vertices; nullopt = infeasible. */
std::optional<Rat> oracle_min(const RationalLP& lp)
{
    auto vs = enumerate_vertices(lp);
    if (!vs || vs->empty()) return std::nullopt;
    std::optional<Rat> best;
    for (const auto& v : *vs) {
        Rat val = lp.objective_offset;
        for (int j = 0; j < lp.num_vars; ++j)
            if (!lp.objective.empty()) val += lp.objective[j] * v[j];
        if (!best || val < *best) best = val;
    }
    return best;
}

void require_is_state(const OmlLattice& l, const StateVector& s)
{
    REQUIRE(static_cast<int>(s.atom_values.size()) == l.atom_count());
    for (const Rat& v : s.atom_values) REQUIRE(v >= 0);
    for (const auto& blk : l.source().blocks) {
        Rat sum = 0;
        for (int a : blk) sum += s.atom_values[a];
        REQUIRE(sum == 1);
    }
}

}   // namespace

TEST_CASE("measures follow the affine expressions of elements", "[states]")
{
    OmlLattice l = build("123,345.");
    StateVector s{{Rat(1, 2), Rat(1, 2), 0, Rat(1, 3), Rat(2, 3)}};
    require_is_state(l, s);
    REQUIRE(state_measure(l, s, l.zero()) == 0);
    REQUIRE(state_measure(l, s, l.one()) == 1);
    REQUIRE(state_measure(l, s, l.atom_element(0)) == Rat(1, 2));
    REQUIRE(state_measure(l, s, l.atom_element(2)) == 0);
    REQUIRE(state_measure(l, s, l.coatom_element(0)) == Rat(1, 2));
    REQUIRE(state_measure(l, s, l.coatom_element(3)) == Rat(2, 3));

    // Joins of two atoms inside a four-atom block add their measures.
    OmlLattice q = build("1234.");
    StateVector u{{Rat(1, 4), Rat(1, 4), Rat(1, 4), Rat(1, 4)}};
    int pair = -1;
    for (int e = 0; e < q.size(); ++e)
        if (q.element_name(e) == "1v2") pair = e;
    REQUIRE(pair >= 0);
    REQUIRE(state_measure(q, u, pair) == Rat(1, 2));
}

TEST_CASE("the base program is one unit equality per block", "[states]")
{
    OmlLattice l = build("123,345.");
    RationalLP lp = base_state_lp(l);
    REQUIRE(lp.num_vars == 5);
    REQUIRE(lp.constraints.size() == 2);
    REQUIRE(lp.constraints[0].coeffs == std::vector<Rat>{1, 1, 1, 0, 0});
    REQUIRE(lp.constraints[1].coeffs == std::vector<Rat>{0, 0, 1, 1, 1});
    for (const auto& c : lp.constraints) {
        REQUIRE(c.cmp == Cmp::EQ);
        REQUIRE(c.rhs == 1);
    }
    REQUIRE(measure_names(l) == std::vector<std::string>{"m1", "m2", "m3", "m4", "m5"});
}

TEST_CASE("pair programs pin the first measure and minimize the second", "[states]")
{
    OmlLattice l = build("123,345.");
    RationalLP lp = strong_pair_lp(l, l.atom_element(0), l.coatom_element(3));
    REQUIRE(lp.constraints.size() == 3);
    REQUIRE(lp.constraints[2].coeffs == std::vector<Rat>{1, 0, 0, 0, 0});
    REQUIRE(lp.constraints[2].rhs == 1);
    REQUIRE(lp.objective == std::vector<Rat>{0, 0, 0, -1, 0});
    REQUIRE(lp.objective_offset == 1);
}

TEST_CASE("a two block pasting has exactly five extreme states", "[states]")
{
    OmlLattice l = build("123,345.");
    auto vs = enumerate_vertices(base_state_lp(l));
    REQUIRE(vs.has_value());
    std::vector<std::vector<Rat>> expect = {
        {0, 0, 1, 0, 0}, {0, 1, 0, 0, 1}, {0, 1, 0, 1, 0},
        {1, 0, 0, 0, 1}, {1, 0, 0, 1, 0},
    };
    REQUIRE(*vs == expect);
}

TEST_CASE("every pair minimum agrees with vertex enumeration", "[states]")
{
    OmlLattice l = build("123,345.");
    auto pairs = nonleq_pairs(l);
    REQUIRE(pairs.size() == 99);
    for (auto [a, b] : pairs) {
        INFO("pair " << l.element_name(a) << " , " << l.element_name(b));
        RationalLP lp = strong_pair_lp(l, a, b);
        LpOutcome lo = solve(lp);
        auto om = oracle_min(lp);
        REQUIRE(om.has_value());
        REQUIRE(lo.status == LpOutcome::Status::Optimal);
        REQUIRE(lo.value == *om);
        // Every minimum stays below one: the set of states is strong here.
        REQUIRE(lo.value < 1);
    }
    StrongCheckResult r = strong_state_check(l);
    REQUIRE(r.strong);
    REQUIRE(r.pairs_checked == pairs.size());
}

TEST_CASE("the reference lattice fails strongness at a frozen witness", "[states]")
{
    OmlLattice l = build(kPeterson);
    auto st = admits_state(l);
    REQUIRE(st.has_value());
    require_is_state(l, *st);

    StrongCheckResult r = strong_state_check(l);
    REQUIRE(!r.strong);
    REQUIRE(!r.infeasible);
    REQUIRE(r.min_value == 1);
    REQUIRE(r.witness_a == l.atom_element(*l.source().atom_of_label('1')));
    REQUIRE(r.witness_b == l.coatom_element(*l.source().atom_of_label('7')));
    REQUIRE(l.element_name(r.witness_b) == "7'");

    // Independent check: enumerate the face m(witness_a) = 1 and minimize
    // there directly.
    auto om = oracle_min(r.lp);
    REQUIRE(om.has_value());
    REQUIRE(*om == 1);

    // The witness is the first bad pair in scan order whatever the job count.
    StrongCheckResult r4 = strong_state_check(l, 4);
    REQUIRE(r4.strong == r.strong);
    REQUIRE(r4.witness_a == r.witness_a);
    REQUIRE(r4.witness_b == r.witness_b);
    REQUIRE(r4.min_value == r.min_value);
    REQUIRE(r4.pairs_checked == r.pairs_checked);
}

TEST_CASE("a pasting that admits no states at all", "[states]")
{
    OmlLattice l = build_oml(corpus_get("mayet-30-19").diagram());
    REQUIRE(l.atom_count() == 30);

    // Hand-checkable infeasibility certificate: weight the first ten blocks
    // +1 and the last nine -1.  Each atom lies in exactly one block of each
    // group, so the weighted coefficient sum is zero in every column while
    // the weighted right-hand sides add to 10 - 9 = 1.  No nonnegative
    // solution can satisfy the block equalities.
    RationalLP lp = base_state_lp(l);
    REQUIRE(lp.constraints.size() == 19);
    for (int j = 0; j < lp.num_vars; ++j) {
        Rat col = 0;
        for (std::size_t i = 0; i < lp.constraints.size(); ++i)
            col += (i < 10 ? 1 : -1) * lp.constraints[i].coeffs[j];
        REQUIRE(col == 0);
    }
    Rat rhs = 0;
    for (std::size_t i = 0; i < lp.constraints.size(); ++i)
        rhs += (i < 10 ? 1 : -1) * lp.constraints[i].rhs;
    REQUIRE(rhs == 1);

    REQUIRE(!admits_state(l).has_value());
    REQUIRE(unique_state(l).status == UniqueStatus::NoState);

    StrongCheckResult r = strong_state_check(l);
    REQUIRE(!r.strong);
    REQUIRE(r.infeasible);
    REQUIRE(r.witness_a == l.one());
    REQUIRE(r.witness_b == l.zero());
    REQUIRE(r.pairs_checked == 1);
}

TEST_CASE("lattices with many states yield a separating pair", "[states]")
{
    for (const char* text : {"123.", kPeterson}) {
        INFO("diagram " << text);
        OmlLattice l = build(text);
        UniqueVerdict v = unique_state(l);
        REQUIRE(v.status == UniqueStatus::Many);
        REQUIRE(v.distinct.has_value());
        require_is_state(l, v.distinct->first);
        require_is_state(l, v.distinct->second);
        bool differ = false;
        for (int a = 0; a < l.atom_count(); ++a)
            if (v.distinct->first.atom_values[a] != v.distinct->second.atom_values[a])
                differ = true;
        REQUIRE(differ);
    }
}
