#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "accretion/interval_set.hpp"
#include "accretion/rational.hpp"

namespace accretion {

// Expression language for functions of one variable:
//
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := '-' factor | base ('^' factor)?
//   base   := number | var | '(' expr ')' | func '(' expr ')'
//           | 'piecewise' '{' (set '->' expr ';')+ ('else' '->' expr [';'])? '}'
//   func   := 'sin' | 'cos' | 'abs' | 'indicatorQ' | 'thomae'
//
// Numbers are unsigned integers or decimals; fractions like 22/7 arrive via
// the '/' operator and evaluate to the same exact value. Exponents are
// arbitrary subexpressions syntactically but must evaluate to integers.
// Piecewise guards are interval sets in the usual text form and must be
// pairwise disjoint; the optional 'else' branch catches everything else.

enum class NodeKind {
    Number, Var,
    Add, Sub, Mul, Div, Pow,
    Neg, Abs, Sin, Cos, IndicatorQ, Thomae,
    Piecewise,
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct PiecewiseBranch {
    IntervalSet guard;
    ExprPtr body;
};

struct Expr {
    NodeKind kind;
    Rational number;                        // Number
    ExprPtr a, b;                           // operands: a unary, a/b binary
    std::vector<PiecewiseBranch> branches;  // Piecewise
    ExprPtr otherwise;                      // optional else branch
};

inline ExprPtr make_number(Rational v) {
    return std::make_shared<Expr>(Expr{NodeKind::Number, std::move(v), nullptr, nullptr, {}, nullptr});
}
inline ExprPtr make_var() {
    return std::make_shared<Expr>(Expr{NodeKind::Var, Rational(0), nullptr, nullptr, {}, nullptr});
}
inline ExprPtr make_unary(NodeKind k, ExprPtr a) {
    return std::make_shared<Expr>(Expr{k, Rational(0), std::move(a), nullptr, {}, nullptr});
}
inline ExprPtr make_binary(NodeKind k, ExprPtr a, ExprPtr b) {
    return std::make_shared<Expr>(Expr{k, Rational(0), std::move(a), std::move(b), {}, nullptr});
}
inline ExprPtr make_piecewise(std::vector<PiecewiseBranch> branches, ExprPtr otherwise) {
    return std::make_shared<Expr>(
        Expr{NodeKind::Piecewise, Rational(0), nullptr, nullptr, std::move(branches), std::move(otherwise)});
}

inline bool equal(const ExprPtr& x, const ExprPtr& y) {
    if (!x || !y) return !x && !y;
    if (x->kind != y->kind) return false;
    switch (x->kind) {
    case NodeKind::Number: return x->number == y->number;
    case NodeKind::Var: return true;
    case NodeKind::Piecewise: {
        if (x->branches.size() != y->branches.size()) return false;
        for (std::size_t i = 0; i < x->branches.size(); ++i) {
            if (!(x->branches[i].guard == y->branches[i].guard)) return false;
            if (!equal(x->branches[i].body, y->branches[i].body)) return false;
        }
        return equal(x->otherwise, y->otherwise);
    }
    default: return equal(x->a, y->a) && equal(x->b, y->b);
    }
}

// Does any Var occur under e?
inline bool depends_on_var(const ExprPtr& e) {
    if (!e) return false;
    switch (e->kind) {
    case NodeKind::Var: return true;
    case NodeKind::Number: return false;
    case NodeKind::Piecewise: {
        for (const auto& br : e->branches)
            if (depends_on_var(br.body)) return true;
        return depends_on_var(e->otherwise);
    }
    default: return depends_on_var(e->a) || depends_on_var(e->b);
    }
}

// A function: expression, domain, and the variable's display name.
struct FuncDef {
    ExprPtr root;
    IntervalSet domain = IntervalSet::whole_line();
    std::string var = "x";

    FuncDef restricted_to(IntervalSet d) const {
        FuncDef g = *this;
        g.domain = std::move(d);
        return g;
    }
    std::string str() const;
};

// --- printing --------------------------------------------------------------

namespace detail {

// precedence: additive 1, multiplicative 2, power 3, atoms 4
inline void print_expr(std::string& out, const ExprPtr& e, const std::string& var, int parent) {
    auto wrap = [&](int prec, auto&& body) {
        bool parens = prec < parent;
        if (parens) out += "(";
        body();
        if (parens) out += ")";
    };
    switch (e->kind) {
    case NodeKind::Number:
        if (e->number < 0) {
            wrap(0, [&] { out += format_rational(e->number); });
        } else {
            out += format_rational(e->number);
        }
        break;
    case NodeKind::Var: out += var; break;
    case NodeKind::Add:
        wrap(1, [&] {
            print_expr(out, e->a, var, 1);
            out += " + ";
            print_expr(out, e->b, var, 2);
        });
        break;
    case NodeKind::Sub:
        wrap(1, [&] {
            print_expr(out, e->a, var, 1);
            out += " - ";
            print_expr(out, e->b, var, 2);
        });
        break;
    case NodeKind::Mul:
        wrap(2, [&] {
            print_expr(out, e->a, var, 2);
            out += "*";
            print_expr(out, e->b, var, 3);
        });
        break;
    case NodeKind::Div:
        wrap(2, [&] {
            print_expr(out, e->a, var, 2);
            out += "/";
            print_expr(out, e->b, var, 3);
        });
        break;
    case NodeKind::Pow:
        wrap(3, [&] {
            print_expr(out, e->a, var, 4);
            out += "^";
            if (e->b->kind == NodeKind::Number || e->b->kind == NodeKind::Var) {
                print_expr(out, e->b, var, 4);
            } else {
                out += "(";
                print_expr(out, e->b, var, 0);
                out += ")";
            }
        });
        break;
    case NodeKind::Neg:
        wrap(2, [&] {
            out += "-";
            print_expr(out, e->a, var, 3);
        });
        break;
    case NodeKind::Abs:
    case NodeKind::Sin:
    case NodeKind::Cos:
    case NodeKind::IndicatorQ:
    case NodeKind::Thomae: {
        const char* name = e->kind == NodeKind::Abs          ? "abs"
                           : e->kind == NodeKind::Sin        ? "sin"
                           : e->kind == NodeKind::Cos        ? "cos"
                           : e->kind == NodeKind::IndicatorQ ? "indicatorQ"
                                                             : "thomae";
        out += name;
        out += "(";
        print_expr(out, e->a, var, 0);
        out += ")";
        break;
    }
    case NodeKind::Piecewise:
        out += "piecewise{ ";
        for (const auto& br : e->branches) {
            out += br.guard.str();
            out += " -> ";
            print_expr(out, br.body, var, 0);
            out += " ; ";
        }
        if (e->otherwise) {
            out += "else -> ";
            print_expr(out, e->otherwise, var, 0);
            out += " ";
        }
        out += "}";
        break;
    }
}

} // namespace detail

inline std::string FuncDef::str() const {
    std::string out;
    detail::print_expr(out, root, var, 0);
    return out;
}

// --- parsing ---------------------------------------------------------------

namespace detail {

struct FuncScanner {
    std::string_view s;
    std::string var;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t' || s[pos] == '\n')) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool eat(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c))
            throw ParseError(std::string("expected '") + c + "' in expression", pos);
    }

    std::string ident() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && ((s[pos] >= 'a' && s[pos] <= 'z') || (s[pos] >= 'A' && s[pos] <= 'Z') ||
                                  (s[pos] >= '0' && s[pos] <= '9') || s[pos] == '_'))
            ++pos;
        return std::string(s.substr(start, pos - start));
    }

    ExprPtr expr() {
        ExprPtr left = term();
        for (;;) {
            char c = peek();
            if (c == '+' || c == '-') {
                ++pos;
                left = make_binary(c == '+' ? NodeKind::Add : NodeKind::Sub, left, term());
            } else {
                return left;
            }
        }
    }

    ExprPtr term() {
        ExprPtr left = factor();
        for (;;) {
            char c = peek();
            if (c == '*' || c == '/') {
                ++pos;
                left = make_binary(c == '*' ? NodeKind::Mul : NodeKind::Div, left, factor());
            } else {
                return left;
            }
        }
    }

    ExprPtr factor() {
        if (eat('-')) return make_unary(NodeKind::Neg, factor());
        ExprPtr b = base();
        if (eat('^')) return make_binary(NodeKind::Pow, b, factor());
        return b;
    }

    ExprPtr base() {
        char c = peek();
        if (c == '(') {
            ++pos;
            ExprPtr e = expr();
            expect(')');
            return e;
        }
        if ((c >= '0' && c <= '9') || c == '.') return number();
        std::size_t at = pos;
        std::string name = ident();
        if (name.empty()) throw ParseError("expected a value in expression", pos);
        if (name == var) return make_var();
        if (name == "piecewise") return piecewise();
        NodeKind k;
        if (name == "sin") k = NodeKind::Sin;
        else if (name == "cos") k = NodeKind::Cos;
        else if (name == "abs") k = NodeKind::Abs;
        else if (name == "indicatorQ") k = NodeKind::IndicatorQ;
        else if (name == "thomae") k = NodeKind::Thomae;
        else throw ParseError("unknown name '" + name + "' in expression", at);
        expect('(');
        ExprPtr arg = expr();
        expect(')');
        return make_unary(k, arg);
    }

    ExprPtr number() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && ((s[pos] >= '0' && s[pos] <= '9') || s[pos] == '.')) ++pos;
        try {
            return make_number(parse_rational(s.substr(start, pos - start)));
        } catch (const ParseError&) {
            throw ParseError("bad number '" + std::string(s.substr(start, pos - start)) + "'", start);
        }
    }

    ExprPtr piecewise() {
        expect('{');
        std::vector<PiecewiseBranch> branches;
        ExprPtr otherwise;
        for (;;) {
            skip_ws();
            if (eat('}')) break;
            std::size_t arrow = s.find("->", pos);
            if (arrow == std::string_view::npos)
                throw ParseError("piecewise branch without '->'", pos);
            std::string_view head = s.substr(pos, arrow - pos);
            // trim
            std::size_t hb = head.find_first_not_of(" \t\n");
            std::size_t he = head.find_last_not_of(" \t\n");
            if (hb == std::string_view::npos)
                throw ParseError("empty piecewise guard", pos);
            head = head.substr(hb, he - hb + 1);
            pos = arrow + 2;
            ExprPtr body = expr();
            if (head == "else") {
                if (otherwise) throw ParseError("duplicate else branch", pos);
                otherwise = body;
            } else {
                IntervalSet guard;
                try {
                    guard = IntervalSet::parse(head);
                } catch (const ParseError& pe) {
                    throw ParseError(std::string("bad piecewise guard: ") + pe.what(), pos);
                }
                for (const auto& prev : branches)
                    if (!prev.guard.intersect(guard).is_empty())
                        throw ParseError("piecewise guards overlap", pos);
                if (otherwise)
                    throw ParseError("guarded branch after else", pos);
                branches.push_back({std::move(guard), std::move(body)});
            }
            if (!eat(';')) {
                expect('}');
                break;
            }
        }
        if (branches.empty())
            throw ParseError("piecewise needs at least one guarded branch", pos);
        return make_piecewise(std::move(branches), std::move(otherwise));
    }
};

} // namespace detail

inline FuncDef parse_func(std::string_view text, std::string var = "x") {
    detail::FuncScanner sc{text, var};
    FuncDef f;
    f.var = var;
    f.root = sc.expr();
    if (!sc.done())
        throw ParseError("trailing input after expression", sc.pos);
    return f;
}

} // namespace accretion
