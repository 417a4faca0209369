#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "relcheck/lexer.hpp"
#include "relcheck/relcore.hpp"

namespace relcheck {

// Integer expressions over state variables. `slot` indexes the flat value
// array of the (possibly block-extended) space the expression was bound to.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { Lit, Var, Neg, Add, Sub, Mul, Div, Mod, CeilSqrt };
    Kind kind;
    Int lit = 0;
    std::string name;
    bool primed = false;
    int slot = -1;
    ExprPtr a, b;
    int line = 0, col = 0;
};

// Boolean expressions. Comparisons over undefined arithmetic (division by
// zero, ceil_sqrt of a negative, 64-bit overflow) evaluate to false, which
// keeps conditions total; negation of such an atom is therefore true.
struct BoolExpr;
using BoolPtr = std::shared_ptr<const BoolExpr>;

struct BoolExpr {
    enum class Kind { Lit, Cmp, PerfectSquare, And, Or, Not };
    enum class CmpOp { Eq, Ne, Lt, Le, Gt, Ge };
    Kind kind;
    bool lit = false;
    CmpOp op = CmpOp::Eq;
    ExprPtr ea, eb;
    BoolPtr ba, bb;
    int line = 0, col = 0;
};

// Name resolution hook for the parsers: returns the slot for a variable name,
// or -1 when the name is not in scope.
struct VarScope {
    virtual int resolve(const std::string& name) const = 0;
    virtual ~VarScope() = default;
};

// Scope over a state space's variables in declaration order.
struct SpaceScope final : VarScope {
    explicit SpaceScope(const StateSpace& s) : space(s) {}
    int resolve(const std::string& name) const override { return space.slot_of(name); }
    const StateSpace& space;
};

ExprPtr parse_expr(TokenStream& ts, const VarScope& scope, bool primed_ok);
BoolPtr parse_bool(TokenStream& ts, const VarScope& scope, bool primed_ok);

// `pre` holds unprimed variable values; `post` holds primed ones and may be
// null when the expression was parsed with primed_ok = false.
std::optional<Int> eval_expr(const Expr& e, const Int* pre, const Int* post);
bool eval_bool(const BoolExpr& b, const Int* pre, const Int* post);

std::string to_string(const Expr& e);
std::string to_string(const BoolExpr& b);
bool ast_equal(const Expr& x, const Expr& y);
bool ast_equal(const BoolExpr& x, const BoolExpr& y);

// Variable occurrence scan (names, deduplicated, in first-occurrence order).
void collect_vars(const BoolExpr& b, std::vector<std::string>& unprimed,
                  std::vector<std::string>& primed);

// Exact integer helpers shared by the evaluator and the corpus programs'
// semantics: ceil_sqrt(n) is the least k with k*k >= n; both reject n < 0.
std::optional<Int> checked_ceil_sqrt(Int n);
bool is_perfect_square(Int n);

} // namespace relcheck
