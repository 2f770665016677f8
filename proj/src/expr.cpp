#include "orlicz/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

namespace orlicz {
namespace {

ExprPtr node(ExprNode::Op op, double v, ExprPtr a = nullptr, ExprPtr b = nullptr) {
    auto n = std::make_shared<ExprNode>();
    n->op = op;
    n->value = v;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

struct Parser {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool at_end() {
        skip_ws();
        return pos >= text.size();
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    bool consume(char c) {
        if (peek() == c) { ++pos; return true; }
        return false;
    }

    void expect(char c, const char* what) {
        if (!consume(c)) throw ParseError(std::string("expected ") + what, pos);
    }

    double number() {
        skip_ws();
        const std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) throw ParseError("expected number", pos);
        if (pos < text.size() && text[pos] == '.') {
            ++pos;
            const std::size_t frac = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            if (pos == frac) throw ParseError("expected digits after decimal point", pos);
        }
        return std::strtod(std::string(text.substr(start, pos - start)).c_str(), nullptr);
    }

    std::string_view word() {
        skip_ws();
        const std::size_t start = pos;
        while (pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos]))) ++pos;
        return text.substr(start, pos - start);
    }

    ExprPtr base() {
        skip_ws();
        if (pos >= text.size()) throw ParseError("unexpected end of expression", pos);
        const char c = text[pos];
        if (std::isdigit(static_cast<unsigned char>(c)))
            return node(ExprNode::Op::Const, number());
        if (c == '(') {
            ++pos;
            ExprPtr e = expr();
            expect(')', "')'");
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = pos;
            const std::string_view w = word();
            if (w == "t") return node(ExprNode::Op::Var, 0.0);
            if (w == "ln" || w == "exp") {
                expect('(', "'(' after function name");
                ExprPtr e = expr();
                expect(')', "')'");
                return node(w == "ln" ? ExprNode::Op::Ln : ExprNode::Op::Exp, 0.0, e);
            }
            throw ParseError("unknown identifier '" + std::string(w) + "'", start);
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos);
    }

    ExprPtr factor() {
        ExprPtr b = base();
        if (consume('^')) {
            const double e = number();
            return node(ExprNode::Op::Pow, e, b);
        }
        return b;
    }

    ExprPtr term() {
        ExprPtr lhs = factor();
        for (;;) {
            if (consume('*')) lhs = node(ExprNode::Op::Mul, 0.0, lhs, factor());
            else if (consume('/')) lhs = node(ExprNode::Op::Div, 0.0, lhs, factor());
            else return lhs;
        }
    }

    ExprPtr expr() {
        ExprPtr lhs = term();
        for (;;) {
            if (consume('+')) lhs = node(ExprNode::Op::Add, 0.0, lhs, term());
            else if (consume('-')) lhs = node(ExprNode::Op::Sub, 0.0, lhs, term());
            else return lhs;
        }
    }
};

} // namespace

ExprPtr parse_expression(std::string_view text) {
    Parser p{text};
    ExprPtr e = p.expr();
    if (!p.at_end()) throw ParseError("trailing input after expression", p.pos);
    return e;
}

double eval(const ExprNode& n, double t) {
    switch (n.op) {
        case ExprNode::Op::Const: return n.value;
        case ExprNode::Op::Var:   return t;
        case ExprNode::Op::Add:   return eval(*n.a, t) + eval(*n.b, t);
        case ExprNode::Op::Sub:   return eval(*n.a, t) - eval(*n.b, t);
        case ExprNode::Op::Mul:   return eval(*n.a, t) * eval(*n.b, t);
        case ExprNode::Op::Div:   return eval(*n.a, t) / eval(*n.b, t);
        case ExprNode::Op::Pow:   return std::pow(eval(*n.a, t), n.value);
        case ExprNode::Op::Ln:    return std::log(eval(*n.a, t));
        case ExprNode::Op::Exp:   return std::exp(eval(*n.a, t));
    }
    throw Error("corrupt expression node");
}

LogReal eval_log(const ExprNode& n, const LogReal& t) {
    switch (n.op) {
        case ExprNode::Op::Const: return LogReal::from_double(n.value);
        case ExprNode::Op::Var:   return t;
        case ExprNode::Op::Add:   return eval_log(*n.a, t).add(eval_log(*n.b, t));
        case ExprNode::Op::Sub:   return eval_log(*n.a, t).sub(eval_log(*n.b, t));
        case ExprNode::Op::Mul:   return eval_log(*n.a, t).mul(eval_log(*n.b, t));
        case ExprNode::Op::Div:   return eval_log(*n.a, t).div(eval_log(*n.b, t));
        case ExprNode::Op::Pow:   return eval_log(*n.a, t).pow(n.value);
        case ExprNode::Op::Ln:    return eval_log(*n.a, t).ln();
        case ExprNode::Op::Exp:   return eval_log(*n.a, t).exp_of();
    }
    throw Error("corrupt expression node");
}

} // namespace orlicz
