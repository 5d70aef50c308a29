// Exact linear programming over the rationals.
//
// A small dense two-phase primal simplex using Bland's anti-cycling rule
// (always the lowest-index candidate column, ties in the ratio test broken
// by the lowest-index basic variable), so the solver is deterministic and
// terminates on every input.  Variables are implicitly >= 0; constraints
// are equalities or <= inequalities; the objective c.x + c0 is minimized.
#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <vector>

namespace omlkit {

using Rat = boost::multiprecision::mpq_rational;

enum class Cmp { EQ, LE };

struct LinearConstraint {
    std::vector<Rat> coeffs;
    Cmp cmp = Cmp::EQ;
    Rat rhs = 0;
};

struct RationalLP {
    int num_vars = 0;
    std::vector<Rat> objective;   // size num_vars (zero-filled if empty)
    Rat objective_offset = 0;
    std::vector<LinearConstraint> constraints;

    void add_eq(std::vector<Rat> coeffs, Rat rhs)
    {
        constraints.push_back({std::move(coeffs), Cmp::EQ, std::move(rhs)});
    }
    void add_le(std::vector<Rat> coeffs, Rat rhs)
    {
        constraints.push_back({std::move(coeffs), Cmp::LE, std::move(rhs)});
    }
};

struct LpOutcome {
    enum class Status { Optimal, Infeasible, Unbounded };
    Status status = Status::Infeasible;
    Rat value = 0;                // c.x + c0 at the optimum
    std::vector<Rat> point;       // optimal vertex (structural variables)
};

namespace detail {

class Simplex {
  public:
    explicit Simplex(const RationalLP& lp) : lp_(lp), nstruct_(lp.num_vars)
    {
        build();
    }

    LpOutcome run()
    {
        // Phase 1: minimize the sum of artificials.
        set_costs(phase1_costs_);
        pivot_until_optimal(/*bar_artificials=*/false);
        if (obj_value() != 0) return {LpOutcome::Status::Infeasible, 0, {}};
        drive_out_artificials();

        // Phase 2: the real objective.
        set_costs(phase2_costs_);
        if (!pivot_until_optimal(/*bar_artificials=*/true))
            return {LpOutcome::Status::Unbounded, 0, {}};

        LpOutcome out;
        out.status = LpOutcome::Status::Optimal;
        out.point.assign(nstruct_, 0);
        for (int i = 0; i < rows_; ++i)
            if (basis_[i] < nstruct_) out.point[basis_[i]] = tab_[i][cols_];
        out.value = lp_.objective_offset;
        for (int j = 0; j < nstruct_ && j < static_cast<int>(lp_.objective.size()); ++j)
            out.value += lp_.objective[j] * out.point[j];
        return out;
    }

  private:
    const RationalLP& lp_;
    int nstruct_;
    int rows_ = 0, cols_ = 0;           // cols_ excludes the rhs column
    int art_begin_ = 0;                 // first artificial column
    std::vector<std::vector<Rat>> tab_; // rows_ x (cols_ + 1)
    std::vector<Rat> obj_;              // reduced costs + objective value at [cols_]
    std::vector<int> basis_;
    std::vector<bool> dead_;            // redundant rows parked after phase 1
    std::vector<Rat> phase1_costs_, phase2_costs_;

    void build()
    {
        rows_ = static_cast<int>(lp_.constraints.size());
        // Count columns: structural + one slack/surplus per inequality +
        // artificials for equalities and >= rows (after sign normalization).
        int nslack = 0, nart = 0;
        std::vector<int> kind(rows_);   // 0 = LE, 1 = GE, 2 = EQ (post-normalization)
        for (int i = 0; i < rows_; ++i) {
            const auto& c = lp_.constraints[i];
            bool flip = c.rhs < 0;
            if (c.cmp == Cmp::EQ)
                kind[i] = 2, ++nart;
            else if (!flip)
                kind[i] = 0, ++nslack;
            else
                kind[i] = 1, ++nslack, ++nart;
        }
        art_begin_ = nstruct_ + nslack;
        cols_ = nstruct_ + nslack + nart;
        tab_.assign(rows_, std::vector<Rat>(cols_ + 1, 0));
        basis_.assign(rows_, -1);
        dead_.assign(rows_, false);

        int slack_at = nstruct_, art_at = art_begin_;
        for (int i = 0; i < rows_; ++i) {
            const auto& c = lp_.constraints[i];
            bool flip = c.rhs < 0;
            for (int j = 0; j < nstruct_ && j < static_cast<int>(c.coeffs.size()); ++j)
                tab_[i][j] = flip ? -c.coeffs[j] : c.coeffs[j];
            tab_[i][cols_] = flip ? -c.rhs : c.rhs;
            if (kind[i] == 0) {
                tab_[i][slack_at] = 1;
                basis_[i] = slack_at++;
            } else if (kind[i] == 1) {
                tab_[i][slack_at] = -1;
                ++slack_at;
                tab_[i][art_at] = 1;
                basis_[i] = art_at++;
            } else {
                tab_[i][art_at] = 1;
                basis_[i] = art_at++;
            }
        }

        phase1_costs_.assign(cols_, 0);
        for (int j = art_begin_; j < cols_; ++j) phase1_costs_[j] = 1;
        phase2_costs_.assign(cols_, 0);
        for (int j = 0; j < nstruct_ && j < static_cast<int>(lp_.objective.size()); ++j)
            phase2_costs_[j] = lp_.objective[j];
    }

    void set_costs(const std::vector<Rat>& costs)
    {
        obj_.assign(cols_ + 1, 0);
        for (int j = 0; j < cols_; ++j) obj_[j] = costs[j];
        for (int i = 0; i < rows_; ++i) {
            if (costs[basis_[i]] == 0) continue;
            const Rat cb = costs[basis_[i]];
            for (int j = 0; j <= cols_; ++j) obj_[j] -= cb * tab_[i][j];
        }
    }

    Rat obj_value() const { return -obj_[cols_]; }

    /** Bland pivoting to optimality; false means unbounded. */
    bool pivot_until_optimal(bool bar_artificials)
    {
        int limit = bar_artificials ? art_begin_ : cols_;
        while (true) {
            int enter = -1;
            for (int j = 0; j < limit; ++j)
                if (obj_[j] < 0) {
                    enter = j;
                    break;
                }
            if (enter < 0) return true;
            int leave = -1;
            Rat best_ratio = 0;
            for (int i = 0; i < rows_; ++i) {
                if (dead_[i] || tab_[i][enter] <= 0) continue;
                Rat ratio = tab_[i][cols_] / tab_[i][enter];
                if (leave < 0 || ratio < best_ratio ||
                    (ratio == best_ratio && basis_[i] < basis_[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (leave < 0) return false;
            pivot(leave, enter);
        }
    }

    void pivot(int r, int c)
    {
        const Rat p = tab_[r][c];
        for (int j = 0; j <= cols_; ++j) tab_[r][j] /= p;
        for (int i = 0; i < rows_; ++i) {
            if (i == r || tab_[i][c] == 0) continue;
            const Rat f = tab_[i][c];
            for (int j = 0; j <= cols_; ++j) tab_[i][j] -= f * tab_[r][j];
        }
        if (obj_[c] != 0) {
            const Rat f = obj_[c];
            for (int j = 0; j <= cols_; ++j) obj_[j] -= f * tab_[r][j];
        }
        basis_[r] = c;
    }

    /** Pivot basic artificials onto real columns; all-zero rows are redundant. */
    void drive_out_artificials()
    {
        for (int i = 0; i < rows_; ++i) {
            if (basis_[i] < art_begin_) continue;
            int col = -1;
            for (int j = 0; j < art_begin_; ++j)
                if (tab_[i][j] != 0) {
                    col = j;
                    break;
                }
            if (col >= 0)
                pivot(i, col);
            else
                dead_[i] = true;
        }
    }
};

}   // namespace detail

inline LpOutcome solve(const RationalLP& lp) { return detail::Simplex(lp).run(); }

/** Renders "min: 1 - m7; m1 = 1; m1 + m2 + m3 = 1; ..." style text, one
 * statement per line. */
inline std::string to_lp_format(const RationalLP& lp, const std::vector<std::string>& names)
{
    auto rat_str = [](const Rat& r) { return r.str(); };
    auto expr = [&](const Rat& constant, const std::vector<Rat>& coeffs) {
        std::string s;
        auto append = [&](const Rat& c, const std::string& atom) {
            if (c == 0) return;
            Rat mag = c < 0 ? Rat(-c) : c;
            std::string body = atom.empty() ? rat_str(mag)
                               : mag == 1   ? atom
                                            : rat_str(mag) + " " + atom;
            if (s.empty())
                s = (c < 0 ? "-" : "") + body;
            else
                s += (c < 0 ? " - " : " + ") + body;
        };
        append(constant, "");
        for (std::size_t j = 0; j < coeffs.size(); ++j)
            append(coeffs[j], j < names.size() ? names[j] : "x" + std::to_string(j));
        return s.empty() ? std::string("0") : s;
    };
    std::string out = "min: " + expr(lp.objective_offset, lp.objective) + ";\n";
    for (const auto& c : lp.constraints)
        out += expr(0, c.coeffs) + (c.cmp == Cmp::EQ ? " = " : " <= ") + rat_str(c.rhs) +
               ";\n";
    return out;
}

}   // namespace omlkit
