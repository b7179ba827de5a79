#pragma once

// A small expression language in one variable `u`, used to enter plane
// curves on the command line and in config files.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' ['-'] integer)?
//   primary := number | 'u' | func '(' expr ')' | '(' expr ')'
//   func    := 'sin' | 'cos' | 'exp' | 'log'
//
// Exponents are integer literals. Trees are immutable and shared.

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace solgeo::curvedsl {

enum class Op { Num, Var, Add, Sub, Mul, Div, Neg, Pow, Sin, Cos, Exp, Log };

struct Node;
using Expr = std::shared_ptr<const Node>;

struct Node {
    Op op = Op::Num;
    double value = 0.0;  // Num
    int exponent = 0;    // Pow
    Expr lhs;            // unary operand or left operand
    Expr rhs;            // right operand
};

class SyntaxError : public std::runtime_error {
public:
    SyntaxError(std::size_t offset, std::vector<std::string> expected, const std::string& message);

    std::size_t offset() const noexcept { return offset_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

class EvalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Constructors. These do not simplify.
Expr num(double v);
Expr var();
Expr binary(Op op, Expr a, Expr b);
Expr unary(Op op, Expr a);
Expr pow(Expr base, int exponent);

/// Throws SyntaxError with the byte offset of the offending token.
Expr parse(std::string_view src);

/// Throws EvalError on division by zero or log of a non-positive value.
double eval(const Expr& e, double u);

/// Exact derivative with respect to u, lightly simplified.
Expr differentiate(const Expr& e);

/// Constant folding and 0/1 absorption. Never rewrites beyond that.
Expr simplify(const Expr& e);

/// Fully parenthesized text; parse(print(e)) is structurally equal to e for
/// any tree the parser can produce.
std::string print(const Expr& e);

bool equal(const Expr& a, const Expr& b);

/// A plane curve t -> (x(t), y(t)) with its symbolic derivatives.
struct CurveSpec {
    Expr first;
    Expr second;
    double lo = 0.0;
    double hi = 1.0;
};

CurveSpec make_curve(std::string_view first, std::string_view second, double lo, double hi);

}  // namespace solgeo::curvedsl
