// Term language for conditional lattice equations.
//
// Concrete syntax: variables are a lowercase letter followed by digits
// ("a", "b2"); constants 0 and 1; postfix ' is orthocomplement; ^ is meet,
// v is join, -> is the Sasaki arrow; precedence ' > ^ > v > ->, with ->
// right-associative.  An equation is
//     [hyp, hyp, ... |-] term <= term       or      ... term == term
// where a hypothesis is either "t # u" (t orthogonal to u) or "t C u"
// (t commutes with u).  Note that bare `v` always lexes as the join
// operator, so `v` itself is not usable as a variable name.
#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace omlkit {

enum class TermErrc { SyntaxError, EmptyConclusion };

class TermParseError : public std::runtime_error {
  public:
    TermParseError(TermErrc code, const std::string& what, std::size_t position)
        : std::runtime_error(what + " at position " + std::to_string(position)),
          code_(code), position_(position)
    {
    }

    TermErrc code() const { return code_; }
    std::size_t position() const { return position_; }

  private:
    TermErrc code_;
    std::size_t position_;
};

class Term {
  public:
    enum class Op : uint8_t { Var, Zero, One, Comp, Meet, Join, Arrow };

    Term() : Term(zero()) {}

    static Term var(std::string name)
    {
        Term t;
        t.n_ = std::make_shared<Node>(Node{Op::Var, std::move(name), nullptr, nullptr});
        return t;
    }
    static Term zero()
    {
        static const Term t = make(Op::Zero, Term(nullptr), Term(nullptr));
        return t;
    }
    static Term one()
    {
        static const Term t = make(Op::One, Term(nullptr), Term(nullptr));
        return t;
    }

    Term comp() const { return make(Op::Comp, *this, Term(nullptr)); }
    friend Term meet(const Term& a, const Term& b) { return make(Op::Meet, a, b); }
    friend Term join(const Term& a, const Term& b) { return make(Op::Join, a, b); }
    friend Term arrow(const Term& a, const Term& b) { return make(Op::Arrow, a, b); }

    Op op() const { return n_->op; }
    const std::string& var_name() const { return n_->name; }
    Term left() const { return Term(n_->left); }
    Term right() const { return Term(n_->right); }

    /** Stable identity of the underlying node (shared subterms compare equal). */
    const void* id() const { return n_.get(); }

    bool operator==(const Term& o) const
    {
        if (n_ == o.n_) return true;
        if (!n_ || !o.n_) return false;
        if (n_->op != o.n_->op) return false;
        switch (n_->op) {
            case Op::Var: return n_->name == o.n_->name;
            case Op::Zero:
            case Op::One: return true;
            case Op::Comp: return left() == o.left();
            default: return left() == o.left() && right() == o.right();
        }
    }

    int node_count() const
    {
        switch (n_->op) {
            case Op::Var:
            case Op::Zero:
            case Op::One: return 1;
            case Op::Comp: return 1 + left().node_count();
            default: return 1 + left().node_count() + right().node_count();
        }
    }

    /** Appends variable names in first-occurrence order. */
    void collect_variables(std::vector<std::string>& order) const
    {
        switch (n_->op) {
            case Op::Var:
                if (std::find(order.begin(), order.end(), n_->name) == order.end())
                    order.push_back(n_->name);
                return;
            case Op::Zero:
            case Op::One: return;
            case Op::Comp: left().collect_variables(order); return;
            default:
                left().collect_variables(order);
                right().collect_variables(order);
        }
    }

    std::string str() const { return print(kPrecArrow); }

  private:
    struct Node {
        Op op;
        std::string name;
        std::shared_ptr<const Node> left, right;
    };

    explicit Term(std::shared_ptr<const Node> n) : n_(std::move(n)) {}

    static Term make(Op op, const Term& a, const Term& b)
    {
        Term t(nullptr);
        t.n_ = std::make_shared<Node>(Node{op, {}, a.n_, b.n_});
        return t;
    }

    // Precedence levels, loosest to tightest.
    static constexpr int kPrecArrow = 0, kPrecJoin = 1, kPrecMeet = 2, kPrecAtom = 3;

    std::string print(int context) const
    {
        auto wrap = [&](int mine, const std::string& s) {
            return mine < context ? "(" + s + ")" : s;
        };
        switch (n_->op) {
            case Op::Var: return n_->name;
            case Op::Zero: return "0";
            case Op::One: return "1";
            case Op::Comp: {
                // The operand of ' must be atomic.
                return left().print(kPrecAtom) + "'";
            }
            case Op::Meet:
                return wrap(kPrecMeet, left().print(kPrecMeet) + " ^ " +
                                           right().print(kPrecMeet + 1));
            case Op::Join:
                return wrap(kPrecJoin, left().print(kPrecJoin) + " v " +
                                           right().print(kPrecJoin + 1));
            case Op::Arrow:
                // Right-associative: parenthesize a left-nested arrow.
                return wrap(kPrecArrow, left().print(kPrecArrow + 1) + " -> " +
                                            right().print(kPrecArrow));
        }
        return "?";
    }

    std::shared_ptr<const Node> n_;
};

struct Hypothesis {
    enum class Kind : uint8_t { Orthogonal, Commutes };
    Kind kind;
    Term lhs, rhs;

    bool operator==(const Hypothesis&) const = default;

    std::string str() const
    {
        return lhs.str() + (kind == Kind::Orthogonal ? " # " : " C ") + rhs.str();
    }
};

enum class Relation : uint8_t { LE, EQ };

struct ConditionalEquation {
    std::vector<Hypothesis> hypotheses;
    Relation relation = Relation::LE;
    Term lhs, rhs;
    std::vector<std::string> variables;   // first-occurrence order

    void recompute_variables()
    {
        variables.clear();
        for (const auto& h : hypotheses) {
            h.lhs.collect_variables(variables);
            h.rhs.collect_variables(variables);
        }
        lhs.collect_variables(variables);
        rhs.collect_variables(variables);
    }

    bool operator==(const ConditionalEquation&) const = default;

    std::string str() const
    {
        std::string s;
        for (std::size_t i = 0; i < hypotheses.size(); ++i) {
            if (i) s += ", ";
            s += hypotheses[i].str();
        }
        if (!hypotheses.empty()) s += " |- ";
        s += lhs.str() + (relation == Relation::LE ? " <= " : " == ") + rhs.str();
        return s;
    }
};

namespace detail {

class EquationParser {
  public:
    explicit EquationParser(std::string_view text) : text_(text) {}

    ConditionalEquation parse()
    {
        ConditionalEquation eq;
        // The input is hypotheses "|-" conclusion, or just a conclusion.
        // Parse terms speculatively: each clause is term (#|C) term or the
        // conclusion term (<=|==) term.
        std::size_t turnstile = find_turnstile();
        if (turnstile != std::string_view::npos) {
            pos_ = 0;
            while (pos_ < turnstile) {
                skip_ws();
                if (pos_ >= turnstile) break;
                Term l = parse_term();
                skip_ws();
                Hypothesis h;
                if (take('#'))
                    h.kind = Hypothesis::Kind::Orthogonal;
                else if (take('C'))
                    h.kind = Hypothesis::Kind::Commutes;
                else
                    fail("expected '#' or 'C' in hypothesis");
                h.lhs = l;
                h.rhs = parse_term();
                eq.hypotheses.push_back(std::move(h));
                skip_ws();
                if (pos_ >= turnstile) break;
                if (!take(','))
                    fail("expected ',' or '|-' after hypothesis");
            }
            pos_ = turnstile + 2;
        } else {
            pos_ = 0;
        }

        skip_ws();
        if (pos_ >= text_.size())
            throw TermParseError(TermErrc::EmptyConclusion, "equation has no conclusion",
                                 pos_);
        eq.lhs = parse_term();
        skip_ws();
        if (take_str("<="))
            eq.relation = Relation::LE;
        else if (take_str("=="))
            eq.relation = Relation::EQ;
        else
            fail("expected '<=' or '==' in conclusion");
        skip_ws();
        if (pos_ >= text_.size())
            throw TermParseError(TermErrc::EmptyConclusion,
                                 "conclusion has no right-hand side", pos_);
        eq.rhs = parse_term();
        skip_ws();
        if (pos_ < text_.size()) fail("unexpected trailing input");
        eq.recompute_variables();
        return eq;
    }

  private:
    std::string_view text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg)
    {
        throw TermParseError(TermErrc::SyntaxError, msg, pos_);
    }

    std::size_t find_turnstile() const
    {
        for (std::size_t i = 0; i + 1 < text_.size(); ++i)
            if (text_[i] == '|' && text_[i + 1] == '-') return i;
        return std::string_view::npos;
    }

    void skip_ws()
    {
        while (pos_ < text_.size() &&
               (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\r' ||
                text_[pos_] == '\n'))
            ++pos_;
    }

    bool take(char c)
    {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    bool take_str(std::string_view s)
    {
        skip_ws();
        if (text_.substr(pos_, s.size()) == s) {
            pos_ += s.size();
            return true;
        }
        return false;
    }

    bool peek_is(char c)
    {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    Term parse_term() { return parse_arrow(); }

    Term parse_arrow()
    {
        Term l = parse_join();
        skip_ws();
        if (text_.substr(pos_, 2) == "->") {
            pos_ += 2;
            return arrow(l, parse_arrow());
        }
        return l;
    }

    Term parse_join()
    {
        Term l = parse_meet();
        while (true) {
            skip_ws();
            // Bare 'v' is the join operator; 'v' followed by a digit would be
            // a variable, which can only appear where an operand is expected.
            if (pos_ < text_.size() && text_[pos_] == 'v' &&
                (pos_ + 1 >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
                ++pos_;
                l = join(l, parse_meet());
            } else {
                return l;
            }
        }
    }

    Term parse_meet()
    {
        Term l = parse_postfix();
        while (take('^')) l = meet(l, parse_postfix());
        return l;
    }

    Term parse_postfix()
    {
        Term t = parse_primary();
        while (true) {
            skip_ws();
            if (pos_ < text_.size() && text_[pos_] == '\'') {
                ++pos_;
                t = t.comp();
            } else {
                return t;
            }
        }
    }

    Term parse_primary()
    {
        skip_ws();
        if (pos_ >= text_.size()) fail("expected a term");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Term t = parse_term();
            if (!take(')')) fail("expected ')'");
            return t;
        }
        if (c == '0') {
            ++pos_;
            return Term::zero();
        }
        if (c == '1') {
            ++pos_;
            return Term::one();
        }
        if (c >= 'a' && c <= 'z') {
            // 'v' alone is always the join operator, never a variable.
            bool is_var = c != 'v' ||
                          (pos_ + 1 < text_.size() &&
                           std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])));
            if (!is_var) fail("'v' is the join operator, not a variable");
            std::string name(1, c);
            ++pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                name += text_[pos_++];
            return Term::var(std::move(name));
        }
        fail(std::string("unexpected character '") + c + "'");
    }
};

}   // namespace detail

/** Parses a conditional equation; throws TermParseError on bad input. */
inline ConditionalEquation parse_equation(std::string_view text)
{
    return detail::EquationParser(text).parse();
}

}   // namespace omlkit
