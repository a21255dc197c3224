#pragma once

#include <cctype>
#include <algorithm>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "prt/bigint.hpp"

namespace prt {

// ---------------------------------------------------------------------------
// AST
// ---------------------------------------------------------------------------

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Expression node. `Pow` raises its child to a natural number; `Exp` is an
/// integer base raised to a variable.
struct Expr {
    enum class Kind { Num, Var, Pow, Exp, Add, Sub, Mul, Neg };

    Kind kind = Kind::Num;
    BigRat value;          // Num
    std::string name;      // Var, Exp (exponent variable)
    BigInt base;           // Exp
    unsigned power = 0;    // Pow
    ExprPtr lhs, rhs;      // Add/Sub/Mul use both, Neg/Pow use lhs

    static ExprPtr num(BigRat v) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Num;
        e->value = std::move(v);
        return e;
    }
    static ExprPtr var(std::string n) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Var;
        e->name = std::move(n);
        return e;
    }
    static ExprPtr pow(ExprPtr child, unsigned k) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Pow;
        e->lhs = std::move(child);
        e->power = k;
        return e;
    }
    static ExprPtr exp(BigInt b, std::string v) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Exp;
        e->base = std::move(b);
        e->name = std::move(v);
        return e;
    }
    static ExprPtr binary(Kind k, ExprPtr a, ExprPtr b) {
        auto e = std::make_shared<Expr>();
        e->kind = k;
        e->lhs = std::move(a);
        e->rhs = std::move(b);
        return e;
    }
    static ExprPtr neg(ExprPtr a) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Neg;
        e->lhs = std::move(a);
        return e;
    }
};

inline bool same_tree(const ExprPtr& a, const ExprPtr& b) {
    if (!a || !b) return a == b;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
    case Expr::Kind::Num: return a->value == b->value;
    case Expr::Kind::Var: return a->name == b->name;
    case Expr::Kind::Exp: return a->base == b->base && a->name == b->name;
    case Expr::Kind::Pow: return a->power == b->power && same_tree(a->lhs, b->lhs);
    case Expr::Kind::Neg: return same_tree(a->lhs, b->lhs);
    default: return same_tree(a->lhs, b->lhs) && same_tree(a->rhs, b->rhs);
    }
}

struct Equation {
    ExprPtr left;
    ExprPtr right;
};

struct EquationAST {
    std::vector<Equation> equations;

    /// Variables in order of first appearance.
    std::vector<std::string> variables() const;
};

inline bool same_ast(const EquationAST& a, const EquationAST& b) {
    if (a.equations.size() != b.equations.size()) return false;
    for (std::size_t i = 0; i < a.equations.size(); ++i)
        if (!same_tree(a.equations[i].left, b.equations[i].left) ||
            !same_tree(a.equations[i].right, b.equations[i].right))
            return false;
    return true;
}

namespace detail {

inline void collect_vars(const ExprPtr& e, std::vector<std::string>& out) {
    if (!e) return;
    auto add = [&](const std::string& v) {
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    };
    switch (e->kind) {
    case Expr::Kind::Var:
    case Expr::Kind::Exp: add(e->name); break;
    default:
        collect_vars(e->lhs, out);
        collect_vars(e->rhs, out);
    }
}

}  // namespace detail

inline std::vector<std::string> EquationAST::variables() const {
    std::vector<std::string> out;
    for (const auto& eq : equations) {
        detail::collect_vars(eq.left, out);
        detail::collect_vars(eq.right, out);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace detail {

inline bool is_additive(const ExprPtr& e) {
    return e->kind == Expr::Kind::Add || e->kind == Expr::Kind::Sub;
}

inline std::string print_expr(const ExprPtr& e);

inline std::string print_factor(const ExprPtr& e) {
    // anything that is not a term-level product
    if (is_additive(e)) return "(" + print_expr(e) + ")";
    return print_expr(e);
}

inline std::string print_expr(const ExprPtr& e) {
    using K = Expr::Kind;
    switch (e->kind) {
    case K::Num: return to_string(e->value);
    case K::Var: return e->name;
    case K::Exp:
        return (e->base < 0 ? "(" + to_string(e->base) + ")" : to_string(e->base)) + "^" + e->name;
    case K::Pow: {
        std::string inner = e->lhs->kind == K::Var ? e->lhs->name : "(" + print_expr(e->lhs) + ")";
        return inner + "^" + std::to_string(e->power);
    }
    case K::Neg: {
        const auto& c = e->lhs;
        bool wrap = is_additive(c) || c->kind == K::Mul || c->kind == K::Neg;
        return "-" + (wrap ? "(" + print_expr(c) + ")" : print_expr(c));
    }
    case K::Add:
    case K::Sub: {
        std::string r = is_additive(e->rhs) ? "(" + print_expr(e->rhs) + ")" : print_expr(e->rhs);
        return print_expr(e->lhs) + (e->kind == K::Add ? " + " : " - ") + r;
    }
    case K::Mul: {
        std::string r = (is_additive(e->rhs) || e->rhs->kind == K::Mul) ? "(" + print_expr(e->rhs) + ")"
                                                                         : print_expr(e->rhs);
        return print_factor(e->lhs) + "*" + r;
    }
    }
    return {};
}

}  // namespace detail

inline std::string print_expr(const ExprPtr& e) { return detail::print_expr(e); }

inline std::string print_equation(const Equation& eq) {
    return print_expr(eq.left) + " = " + print_expr(eq.right);
}

/// Canonical text; parse_equation_text(print_ast(a)) reproduces a.
inline std::string print_ast(const EquationAST& ast) {
    std::string out;
    for (std::size_t i = 0; i < ast.equations.size(); ++i) {
        if (i) out += "; ";
        out += print_equation(ast.equations[i]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

struct ParseErrorInfo {
    std::size_t line = 1;
    std::size_t column = 1;
    std::set<std::string> expected;
    std::string message;
};

class ParseError : public Error {
public:
    explicit ParseError(ParseErrorInfo info)
        : Error(ErrorKind::Parse, format(info)), info_(std::move(info)) {}

    const ParseErrorInfo& info() const { return info_; }

private:
    static std::string format(const ParseErrorInfo& i) {
        std::string s = "line " + std::to_string(i.line) + ", column " + std::to_string(i.column) +
                        ": " + i.message;
        if (!i.expected.empty()) {
            s += " (expected one of:";
            for (const auto& t : i.expected) s += " " + t;
            s += ")";
        }
        return s;
    }

    ParseErrorInfo info_;
};

namespace detail {

struct Token {
    enum class Type { Number, Ident, Op, End };
    Type type;
    std::string text;
    std::size_t line, column;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_space();
            if (pos_ >= src_.size()) {
                out.push_back({Token::Type::End, "<end>", line_, col_});
                return out;
            }
            char c = src_[pos_];
            std::size_t l = line_, co = col_;
            if (std::isdigit(static_cast<unsigned char>(c))) {
                std::string t;
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) t += take();
                if (pos_ < src_.size() &&
                    (std::isalpha(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                    fail(line_, col_, "implicit multiplication is not allowed; write '" + t + "*" +
                                          std::string(1, src_[pos_]) + "...'");
                out.push_back({Token::Type::Number, t, l, co});
            } else if (std::isalpha(static_cast<unsigned char>(c))) {
                std::string t;
                while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                              src_[pos_] == '_'))
                    t += take();
                out.push_back({Token::Type::Ident, t, l, co});
            } else if (std::string_view("+-*^()=;/").find(c) != std::string_view::npos) {
                out.push_back({Token::Type::Op, std::string(1, take()), l, co});
            } else {
                fail(l, co, std::string("unexpected character '") + c + "'");
            }
        }
    }

private:
    char take() {
        char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }
    void skip_space() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) take();
    }
    [[noreturn]] static void fail(std::size_t l, std::size_t c, std::string msg) {
        throw ParseError(ParseErrorInfo{l, c, {}, std::move(msg)});
    }

    std::string_view src_;
    std::size_t pos_ = 0, line_ = 1, col_ = 1;
};

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

    EquationAST system() {
        EquationAST ast;
        ast.equations.push_back(equation());
        while (is_op(";")) {
            ++i_;
            ast.equations.push_back(equation());
        }
        if (peek().type != Token::Type::End) fail({"';'", "<end>"}, "unexpected '" + peek().text + "'");
        return ast;
    }

private:
    const Token& peek(std::size_t ahead = 0) const {
        return t_[std::min(i_ + ahead, t_.size() - 1)];
    }
    bool is_op(const char* s, std::size_t ahead = 0) const {
        const auto& t = peek(ahead);
        return t.type == Token::Type::Op && t.text == s;
    }
    [[noreturn]] void fail(std::set<std::string> expected, std::string msg) const {
        const auto& t = peek();
        throw ParseError(ParseErrorInfo{t.line, t.column, std::move(expected), std::move(msg)});
    }
    void expect(const char* op) {
        if (!is_op(op)) fail({std::string("'") + op + "'"}, "unexpected '" + peek().text + "'");
        ++i_;
    }

    Equation equation() {
        ExprPtr l = expr();
        if (!is_op("=")) fail({"'='", "'+'", "'-'", "'*'"}, "unexpected '" + peek().text + "'");
        ++i_;
        ExprPtr r = expr();
        return {l, r};
    }

    ExprPtr expr() {
        ExprPtr e = term();
        while (is_op("+") || is_op("-")) {
            auto k = peek().text == "+" ? Expr::Kind::Add : Expr::Kind::Sub;
            ++i_;
            e = Expr::binary(k, e, term());
        }
        return e;
    }

    ExprPtr term() {
        ExprPtr e = factor();
        while (is_op("*")) {
            ++i_;
            e = Expr::binary(Expr::Kind::Mul, e, factor());
        }
        return e;
    }

    unsigned natural_exponent() {
        if (is_op("-")) fail({"<natural number>"}, "negative polynomial exponent");
        if (peek().type != Token::Type::Number) fail({"<natural number>", "<variable>"}, "bad exponent '" + peek().text + "'");
        BigInt v(peek().text);
        if (v > 1000) fail({"<natural number <= 1000>"}, "exponent too large");
        ++i_;
        return static_cast<unsigned>(v);
    }

    ExprPtr exponential(const BigRat& base) {
        // positioned on the identifier after '^'
        if (!is_integer(base)) fail({}, "exponential base must be an integer, got " + to_string(base));
        if (base == 0) fail({}, "exponential base must be nonzero");
        std::string v = peek().text;
        ++i_;
        return Expr::exp(num(base), v);
    }

    static std::optional<BigRat> literal_value(const ExprPtr& e) {
        if (e->kind == Expr::Kind::Num) return e->value;
        if (e->kind == Expr::Kind::Neg && e->lhs->kind == Expr::Kind::Num) return BigRat(-e->lhs->value);
        return std::nullopt;
    }

    ExprPtr factor() {
        const Token& t = peek();
        if (t.type == Token::Type::Number) {
            ++i_;
            BigRat v{BigInt(t.text)};
            if (is_op("/")) {
                ++i_;
                if (peek().type != Token::Type::Number) fail({"<natural number>"}, "bad denominator");
                BigInt q(peek().text);
                if (q == 0) fail({}, "zero denominator");
                ++i_;
                v = BigRat(num(v), q);
            }
            if (is_op("^")) {
                ++i_;
                if (peek().type == Token::Type::Ident) return exponential(v);
                return Expr::pow(Expr::num(v), natural_exponent());
            }
            return Expr::num(v);
        }
        if (t.type == Token::Type::Ident) {
            ++i_;
            ExprPtr v = Expr::var(t.text);
            if (is_op("^")) {
                ++i_;
                if (peek().type == Token::Type::Ident)
                    fail({"<natural number>"}, "variable raised to a variable is not supported");
                return Expr::pow(v, natural_exponent());
            }
            return v;
        }
        if (is_op("(")) {
            ++i_;
            ExprPtr inner = expr();
            expect(")");
            if (is_op("^")) {
                ++i_;
                if (peek().type == Token::Type::Ident) {
                    auto lit = literal_value(inner);
                    if (!lit) fail({}, "exponential base must be an integer literal");
                    return exponential(*lit);
                }
                return Expr::pow(inner, natural_exponent());
            }
            return inner;
        }
        if (is_op("-")) {
            ++i_;
            return Expr::neg(factor());
        }
        fail({"<number>", "<variable>", "'('", "'-'"}, "unexpected '" + t.text + "'");
    }

    std::vector<Token> t_;
    std::size_t i_ = 0;
};

}  // namespace detail

/// Parse "lhs = rhs ; lhs = rhs ..." into an AST. Throws ParseError with the
/// position and the set of tokens that would have been accepted.
inline EquationAST parse_equation_text(std::string_view src) {
    detail::Lexer lex(src);
    detail::Parser p(lex.run());
    return p.system();
}

}  // namespace prt
