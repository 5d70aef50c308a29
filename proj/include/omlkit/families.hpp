// Builders for the equation families handled by the checker, plus the
// condensed state-equation notation and its expansion into Mayet-Godowski
// equations.
#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "greechie.hpp"   // label_rank for condensed notation
#include "term.hpp"

namespace omlkit {

enum class Family {
    GoGamma,         // n-variable gamma identity
    Go2n,            // 2n-variable inequality form
    Mge3Go,          // the 3-Go equality with orthogonality hypotheses
    Noa,             // generalized orthoarguesian laws
    Oa3FourVar,      // 4-variable form of the 3-variable orthoarguesian law
    Ea3,             // 5-variable strengthening of the 4-variable form
    En,              // E_n inequality
    EStarN,          // E*_n inequality with the extra r variable
    EPrimeN,         // E'_n variant using the arrow
    EStar2Commute,   // E*_2 with commutation hypotheses
};

enum class FamilyErrc { UnknownFamily, NOutOfRange };

class FamilyError : public std::runtime_error {
  public:
    FamilyError(FamilyErrc code, const std::string& what)
        : std::runtime_error(what), code_(code)
    {
    }
    FamilyErrc code() const { return code_; }

  private:
    FamilyErrc code_;
};

inline std::optional<Family> family_from_string(std::string_view s)
{
    if (s == "go_gamma") return Family::GoGamma;
    if (s == "go_2n") return Family::Go2n;
    if (s == "mge_3go") return Family::Mge3Go;
    if (s == "noa") return Family::Noa;
    if (s == "oa3_4var") return Family::Oa3FourVar;
    if (s == "ea3") return Family::Ea3;
    if (s == "en") return Family::En;
    if (s == "estarn") return Family::EStarN;
    if (s == "eprimen") return Family::EPrimeN;
    if (s == "estar2c" || s == "estar2_commute") return Family::EStar2Commute;
    return std::nullopt;
}

inline const char* to_string(Family f)
{
    switch (f) {
        case Family::GoGamma: return "go_gamma";
        case Family::Go2n: return "go_2n";
        case Family::Mge3Go: return "mge_3go";
        case Family::Noa: return "noa";
        case Family::Oa3FourVar: return "oa3_4var";
        case Family::Ea3: return "ea3";
        case Family::En: return "en";
        case Family::EStarN: return "estarn";
        case Family::EPrimeN: return "eprimen";
        case Family::EStar2Commute: return "estar2_commute";
    }
    return "?";
}

namespace detail {

inline Term meet_chain(const std::vector<Term>& ts)
{
    Term acc = ts.front();
    for (std::size_t i = 1; i < ts.size(); ++i) acc = meet(acc, ts[i]);
    return acc;
}

inline Term join_chain(const std::vector<Term>& ts)
{
    Term acc = ts.front();
    for (std::size_t i = 1; i < ts.size(); ++i) acc = join(acc, ts[i]);
    return acc;
}

inline Term gamma_chain(const std::vector<Term>& vs)
{
    std::vector<Term> arrows;
    for (std::size_t i = 0; i + 1 < vs.size(); ++i) arrows.push_back(arrow(vs[i], vs[i + 1]));
    arrows.push_back(arrow(vs.back(), vs.front()));
    return meet_chain(arrows);
}

}   // namespace detail

/**
 * Builds family member n.  Families oa3_4var, ea3, mge_3go and
 * estar2_commute take no n (pass 0); the others require n within their
 * range (go_gamma and noa from 3, the rest from 2).
 */
inline ConditionalEquation build_family(Family f, int n = 0)
{
    using detail::gamma_chain;
    using detail::join_chain;
    using detail::meet_chain;

    constexpr int kMaxN = 32;   // keeps shared-subterm construction sane
    auto need_n = [&](int lo) {
        if (n < lo || n > kMaxN)
            throw FamilyError(FamilyErrc::NOutOfRange,
                              std::string(to_string(f)) + " requires n in [" +
                                  std::to_string(lo) + ", " + std::to_string(kMaxN) +
                                  "], got " + std::to_string(n));
    };
    auto no_n = [&]() {
        if (n != 0)
            throw FamilyError(FamilyErrc::NOutOfRange,
                              std::string(to_string(f)) + " takes no n");
    };
    auto av = [](int i) { return Term::var("a" + std::to_string(i)); };
    auto bv = [](int i) { return Term::var("b" + std::to_string(i)); };

    ConditionalEquation eq;
    switch (f) {
        case Family::GoGamma: {
            need_n(3);
            std::vector<Term> fwd, rev;
            for (int i = 1; i <= n; ++i) fwd.push_back(av(i));
            rev.assign(fwd.rbegin(), fwd.rend());
            eq.relation = Relation::EQ;
            eq.lhs = gamma_chain(fwd);
            eq.rhs = gamma_chain(rev);
            break;
        }
        case Family::Go2n: {
            need_n(2);
            for (int i = 1; i <= n; ++i) {
                eq.hypotheses.push_back({Hypothesis::Kind::Orthogonal, av(i), bv(i)});
                eq.hypotheses.push_back(
                    {Hypothesis::Kind::Orthogonal, bv(i), av(i % n + 1)});
            }
            std::vector<Term> factors;
            for (int i = 1; i <= n; ++i) factors.push_back(join(av(i), bv(i)));
            eq.relation = Relation::LE;
            eq.lhs = meet_chain(factors);
            eq.rhs = join(bv(1), av(2));
            break;
        }
        case Family::Mge3Go:
            no_n();
            eq = parse_equation("a # d, d # b, b # e, e # c, c # f, f # a |- "
                                "(a v d) ^ (b v e) ^ (c v f) == "
                                "(d v b) ^ (e v c) ^ (f v a)");
            break;
        case Family::Noa: {
            need_n(3);
            // equiv(k, x, y) is the k-th relational identity; subterms are
            // shared through memoization so the checker's compiled form stays
            // polynomial even though the printed tree is exponential.
            std::map<std::tuple<int, const void*, const void*>, Term> memo;
            std::function<Term(int, const Term&, const Term&)> equiv =
                [&](int k, const Term& x, const Term& y) -> Term {
                auto key = std::make_tuple(k, x.id(), y.id());
                auto it = memo.find(key);
                if (it != memo.end()) return it->second;
                Term r;
                if (k == 3) {
                    Term a3 = av(3);
                    r = join(meet(arrow(x, a3), arrow(y, a3)),
                             meet(arrow(x.comp(), a3), arrow(y.comp(), a3)));
                } else {
                    Term ak = av(k);
                    r = join(equiv(k - 1, x, y),
                             meet(equiv(k - 1, x, ak), equiv(k - 1, y, ak)));
                }
                memo.emplace(key, r);
                return r;
            };
            eq.relation = Relation::LE;
            eq.lhs = meet(arrow(av(1), av(3)), equiv(n, av(1), av(2)));
            eq.rhs = arrow(av(2), av(3));
            break;
        }
        case Family::Oa3FourVar:
            no_n();
            eq = parse_equation("a # b, c # d |- (a v b) ^ (c v d) <= "
                                "a v (b ^ (c v ((a v d) ^ (b v c))))");
            break;
        case Family::Ea3:
            no_n();
            eq = parse_equation(
                "a # b, c # d, d # e, c # e |- (a v b) ^ (c v d v e) <= "
                "a v (b ^ (e v ((a v c v d) ^ (b v e)))"
                " ^ (d v ((a v c v e) ^ (b v d)))"
                " ^ (c v ((a v d v e) ^ (b v c))))");
            break;
        case Family::En:
        case Family::EStarN:
        case Family::EPrimeN: {
            need_n(2);
            for (int i = 1; i <= n; ++i)
                for (int j = i + 1; j <= n; ++j)
                    eq.hypotheses.push_back({Hypothesis::Kind::Orthogonal, av(i), av(j)});
            for (int i = 1; i <= n; ++i)
                eq.hypotheses.push_back({Hypothesis::Kind::Orthogonal, av(i), bv(i)});
            std::vector<Term> as, bs, qs;
            for (int i = 1; i <= n; ++i) {
                as.push_back(av(i));
                bs.push_back(bv(i));
                qs.push_back(join(av(i), bv(i)));
            }
            Term a = join_chain(as), b = join_chain(bs), q = meet_chain(qs);
            Term r = Term::var("r");
            eq.relation = Relation::LE;
            if (f == Family::En) {
                eq.lhs = meet(a, q);
                eq.rhs = b;
            } else if (f == Family::EStarN) {
                eq.hypotheses.push_back({Hypothesis::Kind::Orthogonal, r, a});
                eq.lhs = meet(join(a, r), q);
                eq.rhs = join(b, r);
            } else {
                eq.hypotheses.push_back({Hypothesis::Kind::Orthogonal, r, a});
                eq.lhs = meet(meet(q, arrow(q, r.comp())), join(a, r));
                eq.rhs = b;
            }
            break;
        }
        case Family::EStar2Commute:
            no_n();
            eq = parse_equation("a1 C b1, a2 C b2, r C a1, a1 # a2, a2 C r |- "
                                "(a1 v a2 v r) ^ (a1 v b1) ^ (a2 v b2) <= b1 v b2 v r");
            break;
    }
    eq.recompute_variables();
    return eq;
}

inline ConditionalEquation build_family(std::string_view name, int n = 0)
{
    auto f = family_from_string(name);
    if (!f)
        throw FamilyError(FamilyErrc::UnknownFamily,
                          "unknown family '" + std::string(name) + "'");
    return build_family(*f, n);
}

// ---------------------------------------------------------------------------
// Condensed state equations and Mayet-Godowski equations.

/**
 * A condensed state equation: each side is a sum of products of atom labels,
 * e.g. "45+9A+E8+6D=56+89+4A+DE".  '+' separates groups; juxtaposed labels
 * form a group.  As a lattice equation a group becomes the join of its
 * members and each side the meet of its groups.
 */
struct CondensedStateEquation {
    std::vector<std::string> lhs_groups, rhs_groups;

    bool operator==(const CondensedStateEquation&) const = default;

    std::string str() const
    {
        auto side = [](const std::vector<std::string>& gs) {
            std::string s;
            for (std::size_t i = 0; i < gs.size(); ++i) {
                if (i) s += '+';
                s += gs[i];
            }
            return s;
        };
        return side(lhs_groups) + "=" + side(rhs_groups);
    }
};

/** Parses "45+9A+E8=56+89" style text (whitespace ignored). */
inline CondensedStateEquation parse_condensed(std::string_view text)
{
    CondensedStateEquation c;
    std::vector<std::string>* side = &c.lhs_groups;
    std::string cur;
    bool saw_eq = false;
    auto flush = [&](std::size_t pos) {
        if (cur.empty())
            throw TermParseError(TermErrc::SyntaxError, "empty group in condensed equation",
                                 pos);
        side->push_back(cur);
        cur.clear();
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        char ch = text[i];
        if (ch == ' ' || ch == '\t') continue;
        if (ch == '+') {
            flush(i);
        } else if (ch == '=') {
            if (saw_eq)
                throw TermParseError(TermErrc::SyntaxError, "second '=' in condensed equation",
                                     i);
            flush(i);
            side = &c.rhs_groups;
            saw_eq = true;
        } else if (label_rank(ch) >= 0) {
            cur += ch;
        } else {
            throw TermParseError(TermErrc::SyntaxError,
                                 std::string("character '") + ch +
                                     "' is not an atom label",
                                 i);
        }
    }
    if (!saw_eq)
        throw TermParseError(TermErrc::SyntaxError, "condensed equation has no '='",
                             text.size());
    flush(text.size());
    return c;
}

enum class MgeErrc { GroupNotOrthogonal, UnbalancedVariableCounts, TooFewConjuncts };

class MgeError : public std::runtime_error {
  public:
    MgeError(MgeErrc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    MgeErrc code() const { return code_; }

  private:
    MgeErrc code_;
};

/**
 * A Mayet-Godowski equation: an equality between meets of joins of groups of
 * variables, where each group is mutually orthogonal and every variable
 * occurs equally often on both sides.
 */
struct MgEquation {
    std::vector<std::vector<std::string>> left_terms, right_terms;
    ConditionalEquation equation;

    bool operator==(const MgEquation&) const = default;
};

/**
 * Renaming used when a condensed equation's atom labels become variables:
 * identity if every label is already a usable variable letter, otherwise
 * fresh letters by first appearance ('v' is never used; with more than 25
 * distinct labels the names continue a1, b1, ...).
 */
inline std::map<char, std::string> condensed_rename_map(const CondensedStateEquation& c)
{
    std::vector<char> order;
    bool all_plain = true;
    auto visit = [&](const std::vector<std::string>& gs) {
        for (const auto& g : gs)
            for (char ch : g) {
                if (std::find(order.begin(), order.end(), ch) == order.end())
                    order.push_back(ch);
                if (!(ch >= 'a' && ch <= 'z') || ch == 'v') all_plain = false;
            }
    };
    visit(c.lhs_groups);
    visit(c.rhs_groups);
    std::map<char, std::string> m;
    if (all_plain) {
        for (char ch : order) m[ch] = std::string(1, ch);
        return m;
    }
    static constexpr std::string_view fresh = "abcdefghijklmnopqrstuwxyz";   // no 'v'
    for (std::size_t i = 0; i < order.size(); ++i) {
        std::string name(1, fresh[i % fresh.size()]);
        if (i >= fresh.size()) name += std::to_string(i / fresh.size());
        m[order[i]] = name;
    }
    return m;
}

/** Applies the renaming rule to the condensed equation itself (for display). */
inline CondensedStateEquation rename_condensed(const CondensedStateEquation& c)
{
    auto m = condensed_rename_map(c);
    CondensedStateEquation out;
    auto conv = [&](const std::vector<std::string>& gs) {
        std::vector<std::string> r;
        for (const auto& g : gs) {
            std::string s;
            for (char ch : g) s += m.at(ch);
            r.push_back(s);
        }
        return r;
    };
    out.lhs_groups = conv(c.lhs_groups);
    out.rhs_groups = conv(c.rhs_groups);
    return out;
}

/**
 * Expands a condensed state equation into a Mayet-Godowski equation.
 * `orthogonal(x, y)` must say whether two distinct atom labels are
 * orthogonal.  Throws MgeError if a side has fewer than two groups, if a
 * group is not mutually orthogonal, or if variable counts are unbalanced.
 */
inline MgEquation condensed_to_mge(const CondensedStateEquation& c,
                                   const std::function<bool(char, char)>& orthogonal)
{
    if (c.lhs_groups.size() < 2 || c.rhs_groups.size() < 2)
        throw MgeError(MgeErrc::TooFewConjuncts,
                       "each side needs at least two groups, got \"" + c.str() + "\"");
    std::map<char, int> lcount, rcount;
    for (const auto& g : c.lhs_groups)
        for (char ch : g) ++lcount[ch];
    for (const auto& g : c.rhs_groups)
        for (char ch : g) ++rcount[ch];
    if (lcount != rcount) {
        std::string detail;
        for (const auto& [ch, n] : lcount)
            if (rcount[ch] != n)
                detail += std::string(detail.empty() ? "" : ", ") + "'" + ch + "' " +
                          std::to_string(n) + " vs " + std::to_string(rcount[ch]);
        for (const auto& [ch, n] : rcount)
            if (!lcount.count(ch))
                detail += std::string(detail.empty() ? "" : ", ") + "'" + ch + "' 0 vs " +
                          std::to_string(n);
        throw MgeError(MgeErrc::UnbalancedVariableCounts,
                       "variable counts differ between sides: " + detail);
    }
    auto check_groups = [&](const std::vector<std::string>& gs) {
        for (const auto& g : gs)
            for (std::size_t i = 0; i < g.size(); ++i)
                for (std::size_t j = i + 1; j < g.size(); ++j)
                    if (g[i] == g[j] || !orthogonal(g[i], g[j]))
                        throw MgeError(MgeErrc::GroupNotOrthogonal,
                                       "group \"" + g + "\" is not mutually orthogonal");
    };
    check_groups(c.lhs_groups);
    check_groups(c.rhs_groups);

    auto names = condensed_rename_map(c);
    MgEquation mge;
    auto conv = [&](const std::vector<std::string>& gs) {
        std::vector<std::vector<std::string>> out;
        for (const auto& g : gs) {
            std::vector<std::string> vars;
            for (char ch : g) vars.push_back(names.at(ch));
            out.push_back(std::move(vars));
        }
        return out;
    };
    mge.left_terms = conv(c.lhs_groups);
    mge.right_terms = conv(c.rhs_groups);

    std::set<std::pair<std::string, std::string>> seen;
    auto add_hyps = [&](const std::vector<std::vector<std::string>>& side) {
        for (const auto& g : side)
            for (std::size_t i = 0; i < g.size(); ++i)
                for (std::size_t j = i + 1; j < g.size(); ++j) {
                    auto key = std::minmax(g[i], g[j]);
                    if (seen.insert(key).second)
                        mge.equation.hypotheses.push_back({Hypothesis::Kind::Orthogonal,
                                                           Term::var(g[i]),
                                                           Term::var(g[j])});
                }
    };
    add_hyps(mge.left_terms);
    add_hyps(mge.right_terms);

    auto side_term = [&](const std::vector<std::vector<std::string>>& side) {
        std::vector<Term> factors;
        for (const auto& g : side) {
            std::vector<Term> vars;
            for (const auto& v : g) vars.push_back(Term::var(v));
            factors.push_back(detail::join_chain(vars));
        }
        return detail::meet_chain(factors);
    };
    mge.equation.relation = Relation::EQ;
    mge.equation.lhs = side_term(mge.left_terms);
    mge.equation.rhs = side_term(mge.right_terms);
    mge.equation.recompute_variables();
    return mge;
}

/**
 * True if two Mayet-Godowski equations coincide up to a bijective renaming
 * of variables, reordering of groups and group members, and swapping the
 * two sides.  Brute-forces renamings, so limited to 10 variables (beyond
 * that it falls back to exact comparison).
 */
inline bool mge_equivalent(const MgEquation& a, const MgEquation& b)
{
    auto vars_of = [](const MgEquation& m) {
        std::vector<std::string> vs;
        for (const auto* side : {&m.left_terms, &m.right_terms})
            for (const auto& g : *side)
                for (const auto& v : g)
                    if (std::find(vs.begin(), vs.end(), v) == vs.end()) vs.push_back(v);
        return vs;
    };
    auto va = vars_of(a), vb = vars_of(b);
    if (va.size() != vb.size()) return false;
    if (va.size() > 10) return a.left_terms == b.left_terms && a.right_terms == b.right_terms;

    auto canonical = [](const MgEquation& m, const std::vector<std::string>& vars) {
        std::vector<int> perm(vars.size());
        for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
        std::map<std::string, int> slot;
        for (std::size_t i = 0; i < vars.size(); ++i) slot[vars[i]] = static_cast<int>(i);
        std::string best;
        do {
            auto side_key = [&](const std::vector<std::vector<std::string>>& side) {
                std::vector<std::string> groups;
                for (const auto& g : side) {
                    std::vector<int> ids;
                    for (const auto& v : g) ids.push_back(perm[slot.at(v)]);
                    std::sort(ids.begin(), ids.end());
                    std::string s;
                    for (int id : ids) s += static_cast<char>('A' + id);
                    groups.push_back(s);
                }
                std::sort(groups.begin(), groups.end());
                std::string s;
                for (const auto& g : groups) s += g + ".";
                return s;
            };
            std::string l = side_key(m.left_terms), r = side_key(m.right_terms);
            std::string key = l <= r ? l + "|" + r : r + "|" + l;
            if (best.empty() || key < best) best = key;
        } while (std::next_permutation(perm.begin(), perm.end()));
        return best;
    };
    return canonical(a, va) == canonical(b, vb);
}

}   // namespace omlkit
