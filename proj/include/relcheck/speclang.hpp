#pragma once

#include <string>
#include <vector>

#include "relcheck/expr.hpp"
#include "relcheck/relcore.hpp"

namespace relcheck {

// A parsed .spec file: a state space, a relation predicate over unprimed and
// primed variables, and an optional closed-form domain predicate.
struct SpecFile {
    SpacePtr space;
    BoolPtr relation;
    BoolPtr domain_clause;                   // null when the file has none
    std::vector<std::string> unprimed_vars;  // mentioned in `relation`
    std::vector<std::string> primed_vars;    // mentioned in `relation`
};

// Grammar:
//   space [name]:
//     var <name> : <lo>..<hi>;
//     ...
//   spec: <bool-expr over v and v'>;
//   domain: <bool-expr over v only>;      -- optional
// Comments run from '#' or '//' to end of line.
SpecFile parse_spec(const std::string& text,
                    std::uint64_t dense_budget_bits = kDefaultDenseBudgetBits);

// Membership oracle: does (s, s2) satisfy the relation predicate?
bool holds(const SpecFile& spec, StateIndex s, StateIndex s2);
bool holds_values(const SpecFile& spec, const Int* pre, const Int* post);

// Domain clause at one state. Requires the clause to be present.
bool domain_holds(const SpecFile& spec, const Int* pre);
bool domain_holds(const SpecFile& spec, StateIndex s);

// {(s,s') | holds(spec, s, s')} over the spec's own space.
Relation materialize(const SpecFile& spec,
                     std::uint64_t cap = kDefaultExhaustiveCap);

// Rows of the materialization restricted to the given start states; the
// column space is still swept exhaustively, so only |rows|*|S| evaluations run.
Relation materialize_rows(const SpecFile& spec, const StateSet& rows);

struct DomainValidation {
    bool has_clause = false;
    std::uint64_t checked = 0;
    // Clause true but no witness in bounds / clause false but witness exists.
    std::vector<StateIndex> violations;
    // Clause true, no witness found, and the witness bound clips the search:
    // cannot tell a missing witness from an out-of-bounds one.
    std::vector<StateIndex> inconclusive;
    bool ok() const { return violations.empty() && inconclusive.empty(); }
};

// Checks the domain clause against witness search over the primed variables
// the relation actually mentions (unmentioned ones cannot affect the truth of
// the predicate and are pinned to their lower bounds). `witness_hi` caps each
// searched variable's value; 0 means the variable's full declared range.
DomainValidation validate_domain_clause(const SpecFile& spec, const StateSet& region,
                                        Int witness_hi = 0);

// dom(R) membership for one state by witness search (same search space as
// validate_domain_clause). `clipped` is set when the bound cut the search
// short, making a negative answer inconclusive.
bool domain_by_witness(const SpecFile& spec, const Int* pre, Int witness_hi,
                       bool* clipped = nullptr);

} // namespace relcheck
