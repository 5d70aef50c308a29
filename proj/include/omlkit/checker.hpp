// Exhaustive equation checking over a finite orthomodular lattice.
//
// check_equation enumerates assignments of lattice elements to the
// equation's variables in a planned order.  With pruning enabled (the
// default) a branch is abandoned as soon as a fully-bound hypothesis fails,
// candidate values are narrowed through orthogonality/commutation
// hypotheses against already-bound variables, and for <= conclusions a
// subtree is skipped once the running meet of known left-side factors is
// below the running join of known right-side factors (the conclusion then
// holds on every extension).  All pruning is verdict- and
// counterexample-preserving: the reported counterexample is the
// lexicographically first one in iteration order, with or without pruning
// and regardless of the number of jobs.
#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "lattice.hpp"
#include "term.hpp"

namespace omlkit {

enum class CheckErrc { UnboundVariable };

class CheckError : public std::runtime_error {
  public:
    CheckError(CheckErrc code, const std::string& what) : std::runtime_error(what), code_(code)
    {
    }
    CheckErrc code() const { return code_; }

  private:
    CheckErrc code_;
};

/** Evaluates a term under an assignment of element indices to variables. */
inline int evaluate_term(const OmlLattice& l, const Term& t,
                         const std::map<std::string, int>& assignment)
{
    switch (t.op()) {
        case Term::Op::Var: {
            auto it = assignment.find(t.var_name());
            if (it == assignment.end())
                throw CheckError(CheckErrc::UnboundVariable,
                                 "variable '" + t.var_name() + "' is not bound");
            return it->second;
        }
        case Term::Op::Zero: return l.zero();
        case Term::Op::One: return l.one();
        case Term::Op::Comp: return l.ortho(evaluate_term(l, t.left(), assignment));
        case Term::Op::Meet:
            return l.meet(evaluate_term(l, t.left(), assignment),
                          evaluate_term(l, t.right(), assignment));
        case Term::Op::Join:
            return l.join(evaluate_term(l, t.left(), assignment),
                          evaluate_term(l, t.right(), assignment));
        case Term::Op::Arrow: {
            int x = evaluate_term(l, t.left(), assignment);
            int y = evaluate_term(l, t.right(), assignment);
            return l.join(l.ortho(x), l.meet(x, y));
        }
    }
    throw CheckError(CheckErrc::UnboundVariable, "malformed term");
}

inline bool hypothesis_holds(const OmlLattice& l, const Hypothesis& h,
                             const std::map<std::string, int>& assignment)
{
    int a = evaluate_term(l, h.lhs, assignment);
    int b = evaluate_term(l, h.rhs, assignment);
    return h.kind == Hypothesis::Kind::Orthogonal ? l.is_ortho(a, b) : l.commutes(a, b);
}

/** True if the implication holds at this assignment (hypothesis failure
 * makes it vacuously true). */
inline bool equation_satisfied_at(const OmlLattice& l, const ConditionalEquation& eq,
                                  const std::map<std::string, int>& assignment)
{
    for (const auto& h : eq.hypotheses)
        if (!hypothesis_holds(l, h, assignment)) return true;
    int a = evaluate_term(l, eq.lhs, assignment);
    int b = evaluate_term(l, eq.rhs, assignment);
    return eq.relation == Relation::LE ? l.leq(a, b) : a == b;
}

/**
 * Variable binding order: repeatedly pick the variable occurring in the
 * most hypotheses whose other variables are already ordered; ties go to the
 * earlier variable in first-occurrence order.
 */
inline std::vector<std::string> plan_variable_order(const ConditionalEquation& eq)
{
    std::vector<std::string> vars;
    for (const auto& h : eq.hypotheses) {
        h.lhs.collect_variables(vars);
        h.rhs.collect_variables(vars);
    }
    eq.lhs.collect_variables(vars);
    eq.rhs.collect_variables(vars);

    std::vector<std::set<std::string>> hyp_vars;
    for (const auto& h : eq.hypotheses) {
        std::vector<std::string> hv;
        h.lhs.collect_variables(hv);
        h.rhs.collect_variables(hv);
        hyp_vars.emplace_back(hv.begin(), hv.end());
    }

    std::vector<std::string> ordered;
    std::set<std::string> done;
    while (ordered.size() < vars.size()) {
        const std::string* best = nullptr;
        int best_count = -1;
        for (const auto& v : vars) {
            if (done.count(v)) continue;
            int c = 0;
            for (const auto& hv : hyp_vars) {
                if (!hv.count(v)) continue;
                bool rest_done = true;
                for (const auto& u : hv)
                    if (u != v && !done.count(u)) rest_done = false;
                if (rest_done) ++c;
            }
            if (c > best_count) {
                best = &v;
                best_count = c;
            }
        }
        ordered.push_back(*best);
        done.insert(*best);
    }
    return ordered;
}

struct Verdict {
    bool holds = true;
    std::optional<std::map<std::string, int>> counterexample;
    // Number of conclusion evaluations.  Diagnostic only: subtree pruning
    // and parallel early exit change it; holds/counterexample do not vary.
    uint64_t assignments_tested = 0;
};

struct CheckOptions {
    bool prune = true;
    int jobs = 1;
};

namespace detail {

struct CompiledEquation {
    struct Node {
        Term::Op op;
        int a = -1, b = -1;
    };
    struct Hyp {
        Hypothesis::Kind kind;
        int l = -1, r = -1;
    };
    // Candidate narrowing: when binding this level's variable, values can be
    // drawn from the partner's orthogonality down-set or commutation list.
    struct Restrict {
        Hypothesis::Kind kind;
        int other_node = -1;
        bool var_is_lhs = true;
    };

    std::vector<Node> nodes;                    // children precede parents
    std::vector<int> ready;                     // node -> level it becomes computable
    std::vector<std::vector<int>> nodes_at;     // level -> non-variable nodes
    std::vector<std::vector<Hyp>> hyps_at;      // level -> newly testable hypotheses
    std::vector<Hyp> all_hyps;
    std::vector<std::optional<Restrict>> restrict_at;
    std::vector<int> var_node;                  // level (1-based) -> variable node
    std::vector<std::string> order;             // binding order
    Relation relation = Relation::LE;
    int lhs_root = -1, rhs_root = -1;           // EQ conclusions
    std::vector<std::vector<int>> lfac_at, rfac_at;   // LE: top-level factors
    int K = 0;
};

class EquationCompiler {
  public:
    CompiledEquation compile(const ConditionalEquation& eq)
    {
        ce_.order = plan_variable_order(eq);
        ce_.K = static_cast<int>(ce_.order.size());
        for (int i = 0; i < ce_.K; ++i) slot_[ce_.order[i]] = i + 1;
        ce_.nodes_at.resize(ce_.K + 1);
        ce_.hyps_at.resize(ce_.K + 1);
        ce_.lfac_at.resize(ce_.K + 1);
        ce_.rfac_at.resize(ce_.K + 1);
        ce_.restrict_at.resize(ce_.K + 1);
        ce_.var_node.assign(ce_.K + 1, -1);

        for (const auto& h : eq.hypotheses) {
            CompiledEquation::Hyp ch;
            ch.kind = h.kind;
            ch.l = add(h.lhs);
            ch.r = add(h.rhs);
            int lvl = std::max(ce_.ready[ch.l], ce_.ready[ch.r]);
            ce_.hyps_at[lvl].push_back(ch);
            ce_.all_hyps.push_back(ch);
        }
        ce_.relation = eq.relation;
        if (eq.relation == Relation::LE) {
            std::vector<int> lf, rf;
            flatten(eq.lhs, Term::Op::Meet, lf);
            flatten(eq.rhs, Term::Op::Join, rf);
            for (int n : lf) ce_.lfac_at[ce_.ready[n]].push_back(n);
            for (int n : rf) ce_.rfac_at[ce_.ready[n]].push_back(n);
        } else {
            ce_.lhs_root = add(eq.lhs);
            ce_.rhs_root = add(eq.rhs);
        }

        // A hypothesis "var_k (#|C) u" with u bound earlier narrows level k.
        for (int k = 1; k <= ce_.K; ++k) {
            for (const auto& ch : ce_.hyps_at[k]) {
                bool l_is_k = node_is_var_at(ch.l, k);
                bool r_is_k = node_is_var_at(ch.r, k);
                if (l_is_k && ce_.ready[ch.r] < k) {
                    ce_.restrict_at[k] = {ch.kind, ch.r, true};
                    break;
                }
                if (r_is_k && ce_.ready[ch.l] < k) {
                    ce_.restrict_at[k] = {ch.kind, ch.l, false};
                    break;
                }
            }
        }
        return std::move(ce_);
    }

  private:
    CompiledEquation ce_;
    std::map<std::string, int> slot_;
    std::map<std::string, int> var_idx_;
    std::map<const void*, int> ptr_idx_;

    bool node_is_var_at(int n, int k) const
    {
        return ce_.nodes[n].op == Term::Op::Var && ce_.ready[n] == k;
    }

    int add(const Term& t)
    {
        if (t.op() == Term::Op::Var) {
            auto it = var_idx_.find(t.var_name());
            if (it != var_idx_.end()) return it->second;
        } else {
            auto it = ptr_idx_.find(t.id());
            if (it != ptr_idx_.end()) return it->second;
        }
        int a = -1, b = -1, level = 0;
        switch (t.op()) {
            case Term::Op::Var: level = slot_.at(t.var_name()); break;
            case Term::Op::Zero:
            case Term::Op::One: break;
            case Term::Op::Comp:
                a = add(t.left());
                level = ce_.ready[a];
                break;
            default:
                a = add(t.left());
                b = add(t.right());
                level = std::max(ce_.ready[a], ce_.ready[b]);
        }
        int idx = static_cast<int>(ce_.nodes.size());
        ce_.nodes.push_back({t.op(), a, b});
        ce_.ready.push_back(level);
        if (t.op() == Term::Op::Var) {
            var_idx_[t.var_name()] = idx;
            ce_.var_node[level] = idx;
        } else {
            ptr_idx_[t.id()] = idx;
            ce_.nodes_at[level].push_back(idx);
        }
        return idx;
    }

    void flatten(const Term& t, Term::Op op, std::vector<int>& out)
    {
        if (t.op() == op) {
            flatten(t.left(), op, out);
            flatten(t.right(), op, out);
        } else {
            out.push_back(add(t));
        }
    }
};

class CheckEngine {
  public:
    CheckEngine(const OmlLattice& l, const CompiledEquation& ce, bool prune)
        : l_(l), ce_(ce), prune_(prune), values_(ce.nodes.size(), 0),
          lrun_(ce.K + 1, l.one()), rrun_(ce.K + 1, l.zero())
    {
        eval_level(0);
        if (ce_.relation == Relation::LE) {
            accumulate_bounds(0);
        }
    }

    /** Hypotheses with no variables; if one fails the equation is vacuous. */
    bool constant_hypotheses_ok() const
    {
        for (const auto& h : ce_.hyps_at[0])
            if (!test_hyp(h)) return false;
        return true;
    }

    uint64_t tested() const { return tested_; }
    const std::map<std::string, int>& counterexample() const { return cex_; }

    /** Full serial search; true if a counterexample was found. */
    bool search_all()
    {
        if (ce_.K == 0) return leaf_conclusion_fails();
        return descend(1);
    }

    /** Searches the subtree with the level-1 variable fixed to v. */
    bool search_fixed_first(int v)
    {
        return try_value(1, v);
    }

  private:
    const OmlLattice& l_;
    const CompiledEquation& ce_;
    bool prune_;
    std::vector<int> values_;
    std::vector<int> lrun_, rrun_;   // running LE-conclusion bounds per level
    uint64_t tested_ = 0;
    std::map<std::string, int> cex_;

    void eval_level(int k)
    {
        for (int n : ce_.nodes_at[k]) {
            const auto& nd = ce_.nodes[n];
            switch (nd.op) {
                case Term::Op::Zero: values_[n] = l_.zero(); break;
                case Term::Op::One: values_[n] = l_.one(); break;
                case Term::Op::Comp: values_[n] = l_.ortho(values_[nd.a]); break;
                case Term::Op::Meet: values_[n] = l_.meet(values_[nd.a], values_[nd.b]); break;
                case Term::Op::Join: values_[n] = l_.join(values_[nd.a], values_[nd.b]); break;
                case Term::Op::Arrow: {
                    int x = values_[nd.a], y = values_[nd.b];
                    values_[n] = l_.join(l_.ortho(x), l_.meet(x, y));
                    break;
                }
                case Term::Op::Var: break;
            }
        }
    }

    bool test_hyp(const CompiledEquation::Hyp& h) const
    {
        int a = values_[h.l], b = values_[h.r];
        return h.kind == Hypothesis::Kind::Orthogonal ? l_.is_ortho(a, b)
                                                      : l_.commutes(a, b);
    }

    void accumulate_bounds(int k)
    {
        int L = k ? lrun_[k - 1] : l_.one();
        int R = k ? rrun_[k - 1] : l_.zero();
        for (int n : ce_.lfac_at[k]) L = l_.meet(L, values_[n]);
        for (int n : ce_.rfac_at[k]) R = l_.join(R, values_[n]);
        lrun_[k] = L;
        rrun_[k] = R;
    }

    void record_cex()
    {
        cex_.clear();
        for (int k = 1; k <= ce_.K; ++k) cex_[ce_.order[k - 1]] = values_[ce_.var_node[k]];
    }

    bool leaf_conclusion_fails()
    {
        if (!prune_) {
            for (const auto& h : ce_.all_hyps)
                if (!test_hyp(h)) return false;
        }
        ++tested_;
        bool ok;
        if (ce_.relation == Relation::LE)
            ok = l_.leq(lrun_[ce_.K], rrun_[ce_.K]);
        else
            ok = values_[ce_.lhs_root] == values_[ce_.rhs_root];
        if (ok) return false;
        record_cex();
        return true;
    }

    // Binds level k to v, updates state, and explores below; true = found.
    bool try_value(int k, int v)
    {
        values_[ce_.var_node[k]] = v;
        eval_level(k);
        if (prune_) {
            for (const auto& h : ce_.hyps_at[k])
                if (!test_hyp(h)) return false;
        }
        if (ce_.relation == Relation::LE) {
            accumulate_bounds(k);
            if (prune_ && k < ce_.K && l_.leq(lrun_[k], rrun_[k]))
                return false;   // conclusion holds on the whole subtree
        }
        if (k == ce_.K) return leaf_conclusion_fails();
        return descend(k + 1);
    }

    bool descend(int k)
    {
        if (prune_ && ce_.restrict_at[k]) {
            const auto& r = *ce_.restrict_at[k];
            int other = values_[r.other_node];
            if (r.kind == Hypothesis::Kind::Orthogonal) {
                // v must satisfy v <= other'; scan that down-set in order.
                return l_.down(l_.ortho(other)).for_each_until(
                    [&](int v) { return try_value(k, v); });
            }
            // v must commute with other (or other with v).
            for (int v = 0; v < l_.size(); ++v) {
                bool ok = r.var_is_lhs ? l_.commutes(v, other) : l_.commutes(other, v);
                if (ok && try_value(k, v)) return true;
            }
            return false;
        }
        for (int v = 0; v < l_.size(); ++v)
            if (try_value(k, v)) return true;
        return false;
    }
};

}   // namespace detail

inline Verdict check_equation(const OmlLattice& l, const ConditionalEquation& eq,
                              CheckOptions opts = {})
{
    detail::CompiledEquation ce = detail::EquationCompiler().compile(eq);
    int jobs = std::max(1, opts.jobs);

    if (jobs == 1 || ce.K == 0 || l.size() < 2) {
        detail::CheckEngine engine(l, ce, opts.prune);
        if (!engine.constant_hypotheses_ok())
            return {true, std::nullopt, 0};
        Verdict v;
        if (engine.search_all()) {
            v.holds = false;
            v.counterexample = engine.counterexample();
        }
        v.assignments_tested = engine.tested();
        return v;
    }

    // Parallel mode: split the level-1 candidate values across workers; the
    // minimal failing value index wins, so the counterexample matches the
    // serial one.
    {
        detail::CheckEngine probe(l, ce, opts.prune);
        if (!probe.constant_hypotheses_ok()) return {true, std::nullopt, 0};
    }
    std::atomic<int> next{0};
    std::atomic<int> best{l.size()};
    std::atomic<uint64_t> total_tested{0};
    std::mutex mu;
    std::map<int, std::map<std::string, int>> found;
    auto worker = [&]() {
        detail::CheckEngine engine(l, ce, opts.prune);
        while (true) {
            int v = next.fetch_add(1);
            if (v >= l.size()) break;
            if (v > best.load(std::memory_order_relaxed)) continue;
            if (engine.search_fixed_first(v)) {
                std::lock_guard<std::mutex> lock(mu);
                found[v] = engine.counterexample();
                int cur = best.load();
                while (v < cur && !best.compare_exchange_weak(cur, v)) {}
            }
        }
        total_tested.fetch_add(engine.tested());
    };
    std::vector<std::thread> threads;
    for (int t = 0; t < jobs; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();

    Verdict v;
    v.assignments_tested = total_tested.load();
    int b = best.load();
    if (b < l.size()) {
        v.holds = false;
        v.counterexample = found.at(b);
    }
    return v;
}

}   // namespace omlkit
