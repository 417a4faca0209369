#pragma once

#include <optional>
#include <string>
#include <vector>

#include "relcheck/expr.hpp"
#include "relcheck/relcore.hpp"

namespace relcheck {

struct Stmt;
using StmtPtr = std::shared_ptr<const Stmt>;

struct Stmt {
    enum class Kind { Abort, Skip, Assign, Seq, If, IfElse, While, Block };
    Kind kind;
    // Assign: target variable; lo/hi are its declared range (filled at bind).
    std::string var;
    int slot = -1;
    Int lo = 0, hi = 0;
    ExprPtr rhs;
    // If / IfElse / While:
    BoolPtr cond;
    StmtPtr body, els;
    // Seq:
    std::vector<StmtPtr> stmts;
    // Block locals; hi < lo marks "range omitted", resolved at bind time.
    std::vector<VarDecl> locals;
    int line = 0, col = 0;
};

struct Program {
    std::string name;
    std::string space_name;
    StmtPtr body;  // unbound: variable slots unresolved
};

// Concrete syntax:
//   program <name> over <space-name> {
//     v = <expr>; skip; abort;
//     if (<bool>) { ... } [else { ... }]
//     while (<bool>) { ... }
//     { nat r : 0..100; int w : -5..5; ... }   -- locals extend the space
//   }
// `nat r;` omits the range (supplied at bind time); nat ranges must start
// at 0 or above. Comments: // and # to end of line.
Program parse_program(const std::string& text);

struct BoundProgram {
    Program prog;  // body cloned with slots and local ranges resolved
    SpacePtr space;
    // Largest block-extended state count, saturated at 2^64-1. Interpretation
    // only needs variable values, so this may exceed what denote() can index.
    std::uint64_t max_extension = 0;
    std::vector<std::string> warnings;  // e.g. local read before assignment
};

// Resolves names against the space (plus enclosing blocks), rejecting
// undeclared variables and shadowing. `default_range` fills in rangeless
// local declarations; without it they are an error.
BoundProgram bind_program(const Program& p, SpacePtr space,
                          std::optional<std::pair<Int, Int>> default_range = std::nullopt);

struct Outcome {
    enum class Kind { Final, Aborted, Undefined, FuelExhausted };
    Kind kind;
    StateIndex state = 0;  // meaningful for Final only
    friend bool operator==(const Outcome& a, const Outcome& b) {
        return a.kind == b.kind && (a.kind != Kind::Final || a.state == b.state);
    }
};

// Exhaustive denotational semantics. Every block extension (and the space
// itself) must stay within `cap` states.
Relation denote(const BoundProgram& p, std::uint64_t cap = kDefaultExhaustiveCap);

// Big-step interpreter. `fuel` bounds the iteration count of each while-loop
// activation separately. Assignments that divide by zero, overflow, or leave
// the target's range yield Undefined; abort yields Aborted.
Outcome interpret(const BoundProgram& p, StateIndex s, std::uint64_t fuel);

// Interpreter core working directly on variable values: `values` holds one
// value per space variable on entry and the final state on a Final return.
Outcome::Kind run_values(const BoundProgram& p, std::vector<Int>& values,
                         std::uint64_t fuel);

// One more iteration than the largest extended space holds: a deterministic
// loop that runs longer is provably cycling, so exhausting this much fuel is
// divergence, not an unknown.
std::uint64_t sufficient_fuel(const BoundProgram& p);

struct AgreementReport {
    std::uint64_t checked = 0;
    std::vector<StateIndex> mismatches;
    std::vector<StateIndex> inconclusive;  // fuel ran out below the sufficient bound
    bool ok() const { return mismatches.empty() && inconclusive.empty(); }
};

// Cross-validates the two semantics state by state: a Final outcome must be a
// pair of denote(p), a failed one must start outside its domain. Fuel
// exhaustion counts as divergence when fuel reaches the sufficient bound and
// as inconclusive otherwise.
AgreementReport agreement_check(const BoundProgram& p, std::uint64_t fuel,
                                std::uint64_t cap = kDefaultExhaustiveCap);

} // namespace relcheck
