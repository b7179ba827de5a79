#include "solgeo/curvedsl.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace solgeo::curvedsl {

namespace {

std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += ", ";
        out += items[i];
    }
    return out;
}

const std::vector<std::string> kOperandStart = {"'-'", "number", "'u'", "function", "'('"};

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    Expr parse_all() {
        Expr e = parse_expr();
        skip_ws();
        if (pos_ != src_.size()) fail({"'+'", "'-'", "'*'", "'/'", "end of input"});
        return e;
    }

private:
    std::string_view src_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    [[noreturn]] void fail(std::vector<std::string> expected) {
        skip_ws();
        std::string found = pos_ < src_.size() ? "'" + std::string(1, src_[pos_]) + "'" : "end of input";
        std::string msg = "syntax error at offset " + std::to_string(pos_) + ": found " + found + ", expected " +
                          join(expected);
        throw SyntaxError(pos_, std::move(expected), msg);
    }

    Expr parse_expr() {
        Expr lhs = parse_term();
        for (;;) {
            const char c = peek();
            if (c != '+' && c != '-') return lhs;
            ++pos_;
            lhs = binary(c == '+' ? Op::Add : Op::Sub, lhs, parse_term());
        }
    }

    Expr parse_term() {
        Expr lhs = parse_unary();
        for (;;) {
            const char c = peek();
            if (c != '*' && c != '/') return lhs;
            ++pos_;
            lhs = binary(c == '*' ? Op::Mul : Op::Div, lhs, parse_unary());
        }
    }

    Expr parse_unary() {
        if (peek() == '-') {
            ++pos_;
            return unary(Op::Neg, parse_unary());
        }
        return parse_power();
    }

    Expr parse_power() {
        Expr base = parse_primary();
        if (peek() != '^') return base;
        ++pos_;
        bool negative = false;
        if (peek() == '-') {
            negative = true;
            ++pos_;
        }
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (pos_ == start) fail({"integer exponent"});
        if (pos_ - start > 4) {
            pos_ = start;
            fail({"integer exponent below 10000"});
        }
        int n = std::atoi(std::string(src_.substr(start, pos_ - start)).c_str());
        return pow(base, negative ? -n : n);
    }

    Expr parse_number() {
        const std::size_t start = pos_;
        auto digits = [&] {
            std::size_t n = 0;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_, ++n;
            return n;
        };
        std::size_t count = digits();
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            count += digits();
        }
        if (count == 0) {
            pos_ = start;
            fail({"number"});
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t look = pos_ + 1;
            if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
            if (look < src_.size() && std::isdigit(static_cast<unsigned char>(src_[look]))) {
                pos_ = look;
                digits();
            }
        }
        const std::string text(src_.substr(start, pos_ - start));
        const double v = std::strtod(text.c_str(), nullptr);
        if (!std::isfinite(v)) {
            pos_ = start;
            fail({"finite number"});
        }
        return num(v);
    }

    Expr parse_primary() {
        const char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (c == '(') {
            ++pos_;
            Expr inner = parse_expr();
            if (peek() != ')') fail({"')'", "'+'", "'-'", "'*'", "'/'"});
            ++pos_;
            return inner;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < src_.size() && std::isalnum(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            const std::string_view name = src_.substr(start, pos_ - start);
            if (name == "u") return var();
            Op op;
            if (name == "sin") op = Op::Sin;
            else if (name == "cos") op = Op::Cos;
            else if (name == "exp") op = Op::Exp;
            else if (name == "log") op = Op::Log;
            else {
                pos_ = start;
                fail({"'u'", "sin", "cos", "exp", "log"});
            }
            if (peek() != '(') fail({"'('"});
            ++pos_;
            Expr arg = parse_expr();
            if (peek() != ')') fail({"')'", "'+'", "'-'", "'*'", "'/'"});
            ++pos_;
            return unary(op, arg);
        }
        fail(kOperandStart);
    }
};

bool is_num(const Expr& e, double v) { return e->op == Op::Num && e->value == v; }
bool is_num(const Expr& e) { return e->op == Op::Num; }

Expr fold_if_finite(double v, const Expr& fallback) { return std::isfinite(v) ? num(v) : fallback; }

double apply_binary(Op op, double a, double b) {
    switch (op) {
        case Op::Add: return a + b;
        case Op::Sub: return a - b;
        case Op::Mul: return a * b;
        case Op::Div: return a / b;
        default: return NAN;
    }
}

double ipow(double base, int n) {
    if (n < 0) {
        if (base == 0.0) throw EvalError("division by zero: 0 raised to negative power");
        return 1.0 / ipow(base, -n);
    }
    double result = 1.0;
    while (n) {
        if (n & 1) result *= base;
        base *= base;
        n >>= 1;
    }
    return result;
}

}  // namespace

SyntaxError::SyntaxError(std::size_t offset, std::vector<std::string> expected, const std::string& message)
    : std::runtime_error(message), offset_(offset), expected_(std::move(expected)) {}

Expr num(double v) { return std::make_shared<const Node>(Node{Op::Num, v == 0.0 ? 0.0 : v, 0, nullptr, nullptr}); }
Expr var() { return std::make_shared<const Node>(Node{Op::Var, 0.0, 0, nullptr, nullptr}); }
Expr binary(Op op, Expr a, Expr b) {
    return std::make_shared<const Node>(Node{op, 0.0, 0, std::move(a), std::move(b)});
}
Expr unary(Op op, Expr a) { return std::make_shared<const Node>(Node{op, 0.0, 0, std::move(a), nullptr}); }
Expr pow(Expr base, int exponent) {
    return std::make_shared<const Node>(Node{Op::Pow, 0.0, exponent, std::move(base), nullptr});
}

Expr parse(std::string_view src) { return Parser(src).parse_all(); }

double eval(const Expr& e, double u) {
    switch (e->op) {
        case Op::Num: return e->value;
        case Op::Var: return u;
        case Op::Add: return eval(e->lhs, u) + eval(e->rhs, u);
        case Op::Sub: return eval(e->lhs, u) - eval(e->rhs, u);
        case Op::Mul: return eval(e->lhs, u) * eval(e->rhs, u);
        case Op::Div: {
            const double d = eval(e->rhs, u);
            if (d == 0.0) throw EvalError("division by zero at u = " + std::to_string(u));
            return eval(e->lhs, u) / d;
        }
        case Op::Neg: return -eval(e->lhs, u);
        case Op::Pow: return ipow(eval(e->lhs, u), e->exponent);
        case Op::Sin: return std::sin(eval(e->lhs, u));
        case Op::Cos: return std::cos(eval(e->lhs, u));
        case Op::Exp: return std::exp(eval(e->lhs, u));
        case Op::Log: {
            const double a = eval(e->lhs, u);
            if (!(a > 0.0)) throw EvalError("log of non-positive value at u = " + std::to_string(u));
            return std::log(a);
        }
    }
    throw EvalError("corrupt expression tree");
}

Expr simplify(const Expr& e) {
    switch (e->op) {
        case Op::Num:
        case Op::Var: return e;
        case Op::Add:
        case Op::Sub:
        case Op::Mul:
        case Op::Div: {
            const Expr a = simplify(e->lhs);
            const Expr b = simplify(e->rhs);
            const Expr rebuilt = (a == e->lhs && b == e->rhs) ? e : binary(e->op, a, b);
            if (is_num(a) && is_num(b) && !(e->op == Op::Div && b->value == 0.0))
                return fold_if_finite(apply_binary(e->op, a->value, b->value), rebuilt);
            switch (e->op) {
                case Op::Add:
                    if (is_num(a, 0.0)) return b;
                    if (is_num(b, 0.0)) return a;
                    break;
                case Op::Sub:
                    if (is_num(b, 0.0)) return a;
                    if (is_num(a, 0.0)) return simplify(unary(Op::Neg, b));
                    break;
                case Op::Mul:
                    if (is_num(a, 0.0) || is_num(b, 0.0)) return num(0.0);
                    if (is_num(a, 1.0)) return b;
                    if (is_num(b, 1.0)) return a;
                    break;
                case Op::Div:
                    if (is_num(a, 0.0) && !is_num(b, 0.0)) return num(0.0);
                    if (is_num(b, 1.0)) return a;
                    break;
                default: break;
            }
            return rebuilt;
        }
        case Op::Neg: {
            const Expr a = simplify(e->lhs);
            if (is_num(a)) return num(-a->value);
            if (a->op == Op::Neg) return a->lhs;
            return a == e->lhs ? e : unary(Op::Neg, a);
        }
        case Op::Pow: {
            const Expr a = simplify(e->lhs);
            if (e->exponent == 0) return num(1.0);
            if (e->exponent == 1) return a;
            const Expr rebuilt = a == e->lhs ? e : pow(a, e->exponent);
            if (is_num(a) && !(a->value == 0.0 && e->exponent < 0))
                return fold_if_finite(ipow(a->value, e->exponent), rebuilt);
            return rebuilt;
        }
        case Op::Sin:
        case Op::Cos:
        case Op::Exp:
        case Op::Log: {
            const Expr a = simplify(e->lhs);
            const Expr rebuilt = a == e->lhs ? e : unary(e->op, a);
            if (!is_num(a)) return rebuilt;
            const double v = a->value;
            switch (e->op) {
                case Op::Sin: return fold_if_finite(std::sin(v), rebuilt);
                case Op::Cos: return fold_if_finite(std::cos(v), rebuilt);
                case Op::Exp: return fold_if_finite(std::exp(v), rebuilt);
                default: return v > 0.0 ? fold_if_finite(std::log(v), rebuilt) : rebuilt;
            }
        }
    }
    return e;
}

Expr differentiate(const Expr& e) {
    auto d = [](const Expr& x) { return differentiate(x); };
    Expr out;
    switch (e->op) {
        case Op::Num: out = num(0.0); break;
        case Op::Var: out = num(1.0); break;
        case Op::Add:
        case Op::Sub: out = binary(e->op, d(e->lhs), d(e->rhs)); break;
        case Op::Mul:
            out = binary(Op::Add, binary(Op::Mul, d(e->lhs), e->rhs), binary(Op::Mul, e->lhs, d(e->rhs)));
            break;
        case Op::Div:
            out = binary(Op::Div,
                         binary(Op::Sub, binary(Op::Mul, d(e->lhs), e->rhs), binary(Op::Mul, e->lhs, d(e->rhs))),
                         pow(e->rhs, 2));
            break;
        case Op::Neg: out = unary(Op::Neg, d(e->lhs)); break;
        case Op::Pow:
            out = binary(Op::Mul, binary(Op::Mul, num(e->exponent), pow(e->lhs, e->exponent - 1)), d(e->lhs));
            break;
        case Op::Sin: out = binary(Op::Mul, d(e->lhs), unary(Op::Cos, e->lhs)); break;
        case Op::Cos: out = unary(Op::Neg, binary(Op::Mul, d(e->lhs), unary(Op::Sin, e->lhs))); break;
        case Op::Exp: out = binary(Op::Mul, d(e->lhs), e); break;
        case Op::Log: out = binary(Op::Div, d(e->lhs), e->lhs); break;
    }
    return simplify(out);
}

std::string print(const Expr& e) {
    auto bin = [&](const char* sym) { return "(" + print(e->lhs) + sym + print(e->rhs) + ")"; };
    switch (e->op) {
        case Op::Num: {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", e->value);
            return e->value < 0 || std::signbit(e->value) ? "(" + std::string(buf) + ")" : std::string(buf);
        }
        case Op::Var: return "u";
        case Op::Add: return bin("+");
        case Op::Sub: return bin("-");
        case Op::Mul: return bin("*");
        case Op::Div: return bin("/");
        case Op::Neg: return "(-" + print(e->lhs) + ")";
        case Op::Pow: return "(" + print(e->lhs) + "^" + std::to_string(e->exponent) + ")";
        case Op::Sin: return "sin(" + print(e->lhs) + ")";
        case Op::Cos: return "cos(" + print(e->lhs) + ")";
        case Op::Exp: return "exp(" + print(e->lhs) + ")";
        case Op::Log: return "log(" + print(e->lhs) + ")";
    }
    return "?";
}

bool equal(const Expr& a, const Expr& b) {
    if (a == b) return true;
    if (!a || !b || a->op != b->op) return false;
    switch (a->op) {
        case Op::Num: return a->value == b->value;
        case Op::Var: return true;
        case Op::Pow: return a->exponent == b->exponent && equal(a->lhs, b->lhs);
        case Op::Add:
        case Op::Sub:
        case Op::Mul:
        case Op::Div: return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
        default: return equal(a->lhs, b->lhs);
    }
}

CurveSpec make_curve(std::string_view first, std::string_view second, double lo, double hi) {
    if (!(lo < hi)) throw std::invalid_argument("curve interval must satisfy lo < hi");
    CurveSpec spec{parse(first), parse(second), lo, hi};
    constexpr int kChecks = 33;
    for (int k = 0; k < kChecks; ++k) {
        const double u = lo + (hi - lo) * k / (kChecks - 1);
        for (const Expr& e : {spec.first, spec.second}) {
            const double v = eval(e, u);
            if (!std::isfinite(v)) throw EvalError("curve component not finite at u = " + std::to_string(u));
        }
    }
    return spec;
}

}  // namespace solgeo::curvedsl
