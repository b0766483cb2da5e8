#pragma once

#include "fauto/rational.hpp"
#include "fauto/series.hpp"

#include <map>
#include <memory>
#include <string>
#include <string_view>

namespace fauto {

enum class ExprKind { T, Z, Dt, Dz, Literal, Param, Add, Sub, Mul, Pow, Neg };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Operator expression over t, z, dt, dz. Products keep their factor order.
struct Expr {
    ExprKind kind;
    Rational value;        // Literal
    std::string name;      // Param
    SeriesTZ series;       // Param, resolved at parse time
    ExprPtr lhs;           // Add, Sub, Mul, Pow (base), Neg
    ExprPtr rhs;           // Add, Sub, Mul
    unsigned exponent = 0; // Pow

    static ExprPtr atom(ExprKind k);
    static ExprPtr literal(const Rational& v);
    static ExprPtr param(std::string name, SeriesTZ s);
    static ExprPtr binary(ExprKind k, ExprPtr a, ExprPtr b);
    static ExprPtr power(ExprPtr base, unsigned e);
    static ExprPtr negate(ExprPtr a);
};

using ParamMap = std::map<std::string, SeriesTZ>;

/// Grammar (whitespace-insensitive, '*' mandatory):
///   expr   := ['-'] term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := base ('^' uint)?
///   base   := 't' | 'z' | 'dt' | 'dz' | rational | ident | '(' expr ')'
/// Throws ParseError with line and column.
ExprPtr parse(std::string_view source, const ParamMap& params = {});

/// Inverse of parse up to whitespace: parse(to_string(e)) is structurally e.
std::string to_string(const ExprPtr& e);

/// Structural equality; parameters compare by name.
bool same_tree(const ExprPtr& a, const ExprPtr& b);

/// Largest total number of dt (first) and dz (second) factors in any
/// monomial of the expanded expression.
std::pair<int, int> derivative_degree(const ExprPtr& e);

}  // namespace fauto
