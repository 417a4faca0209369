#pragma once

#include <optional>

#include "relcheck/relcore.hpp"

namespace relcheck {

// One verdict with enough evidence to re-check it independently: the
// competence domains that were compared, the residual set a subset test ran
// on, and the least violating state or pair when the answer is no.
struct Judgment {
    enum class Kind {
        Refines,
        Correct,
        PartiallyCorrect,
        MoreCorrectDet,
        StrictlyMoreCorrectDet,
        MoreCorrectNondet,
    };
    Kind kind;
    bool verdict = false;
    std::optional<StateSet> cd1, cd2;       // domains compared (see each op)
    std::optional<Relation> clause2_set;    // nondet judgment's residual set
    std::optional<Pair> counter_pair;       // least pair violating the verdict
    std::optional<StateIndex> counter_state;  // least state violating inclusion
};

const char* kind_name(Judgment::Kind k);

// Does r2 refine r1? True when r2 extends r1's domain and, on r1's domain,
// allows at most r1's behavior wherever both are defined.
Judgment refines(const Relation& r2, const Relation& r1);

// Initial states on which p's behavior satisfies r.
StateSet competence_domain(const Relation& p, const Relation& r);

// Absolute correctness: p refines r. For deterministic p this is equivalent
// to the competence domain covering all of r's domain; both routes are
// computed and must agree. cd1 = competence domain, cd2 = r's domain.
Judgment is_correct(const Relation& p, const Relation& r);

// Partial correctness: p refines r restricted to p's own domain.
Judgment is_partially_correct(const Relation& p, const Relation& r);

// Competence-domain inclusion for deterministic programs: is p2 at least as
// correct as p1 with respect to r? Rejects non-deterministic arguments.
// cd1 = p1's competence domain, cd2 = p2's.
Judgment more_correct_det(const Relation& p2, const Relation& p1, const Relation& r);
Judgment strictly_more_correct_det(const Relation& p2, const Relation& p1,
                                   const Relation& r);

// The two-clause judgment for arbitrary relations: the competence domain must
// grow, and on p1's competence domain p2 may only produce an r-violating
// output if p1 also produces it.
Judgment more_correct_nondet(const Relation& p2, const Relation& p1,
                             const Relation& r);

} // namespace relcheck
