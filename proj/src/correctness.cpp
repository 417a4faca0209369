#include "relcheck/correctness.hpp"

namespace relcheck {

namespace {

// Least pair (in index order) on which the two relations disagree.
std::optional<Pair> least_disagreement(const Relation& a, const Relation& b) {
    std::optional<Pair> best;
    auto consider = [&](const Relation& lhs, const Relation& rhs) {
        Relation extra = difference(lhs, rhs);
        auto p = extra.first_pair();
        if (p && (!best || p->first < best->first ||
                  (p->first == best->first && p->second < best->second))) {
            best = p;
        }
    };
    consider(a, b);
    consider(b, a);
    return best;
}

std::optional<StateIndex> least_excluded(const StateSet& inner, const StateSet& outer) {
    StateSet extra = set_difference(inner, outer);
    if (extra.size() == 0) return std::nullopt;
    return extra.indices().front();
}

} // namespace

const char* kind_name(Judgment::Kind k) {
    switch (k) {
        case Judgment::Kind::Refines: return "refines";
        case Judgment::Kind::Correct: return "correct";
        case Judgment::Kind::PartiallyCorrect: return "partially-correct";
        case Judgment::Kind::MoreCorrectDet: return "more-correct";
        case Judgment::Kind::StrictlyMoreCorrectDet: return "strictly-more-correct";
        case Judgment::Kind::MoreCorrectNondet: return "more-correct-nondet";
    }
    return "unknown";
}

Judgment refines(const Relation& r2, const Relation& r1) {
    ensure_same_space(r2.space(), r1.space(), "refines");
    Judgment j;
    j.kind = Judgment::Kind::Refines;
    StateSet shared = set_intersect(domain(r1), domain(r2));
    Relation lhs = restrict_domain(union_of(r1, r2), shared);
    j.verdict = (lhs == r1);
    if (!j.verdict) j.counter_pair = least_disagreement(lhs, r1);
    return j;
}

StateSet competence_domain(const Relation& p, const Relation& r) {
    ensure_same_space(p.space(), r.space(), "competence_domain");
    return domain(intersect(r, p));
}

Judgment is_correct(const Relation& p, const Relation& r) {
    Judgment ref = refines(p, r);
    Judgment j;
    j.kind = Judgment::Kind::Correct;
    j.verdict = ref.verdict;
    j.counter_pair = ref.counter_pair;
    StateSet cd = competence_domain(p, r);
    StateSet dr = domain(r);
    j.cd1 = cd;
    j.cd2 = dr;
    if (is_deterministic(p)) {
        // For a deterministic candidate the domain characterization must agree
        // with the definition; a mismatch would mean a bug in the set algebra.
        bool covers = subset_of(dr, cd);
        if (covers != ref.verdict) {
            throw Error("internal inconsistency: domain characterization of "
                        "correctness disagrees with the refinement route");
        }
    }
    if (!j.verdict && !j.counter_pair) {
        // Refinement failed only through domain shrinkage; report the least
        // state r serves that p's competent part does not.
        j.counter_state = least_excluded(dr, cd);
    }
    return j;
}

Judgment is_partially_correct(const Relation& p, const Relation& r) {
    ensure_same_space(p.space(), r.space(), "is_partially_correct");
    Relation r_on_p = restrict_domain(r, domain(p));
    Judgment ref = refines(p, r_on_p);
    Judgment j;
    j.kind = Judgment::Kind::PartiallyCorrect;
    j.verdict = ref.verdict;
    j.counter_pair = ref.counter_pair;
    j.cd1 = competence_domain(p, r);
    j.cd2 = domain(r_on_p);
    return j;
}

namespace {

Judgment cd_inclusion(const Relation& p2, const Relation& p1, const Relation& r,
                      Judgment::Kind kind, bool strict) {
    ensure_same_space(p2.space(), p1.space(), "more_correct");
    ensure_same_space(p2.space(), r.space(), "more_correct");
    if (!is_deterministic(p1) || !is_deterministic(p2)) {
        throw InputError("more-correct comparison of deterministic programs "
                         "given a non-deterministic relation; use the "
                         "non-deterministic judgment instead");
    }
    Judgment j;
    j.kind = kind;
    StateSet cd1 = competence_domain(p1, r);
    StateSet cd2 = competence_domain(p2, r);
    j.cd1 = cd1;
    j.cd2 = cd2;
    bool included = subset_of(cd1, cd2);
    j.verdict = strict ? (included && !(cd1 == cd2)) : included;
    if (!included) j.counter_state = least_excluded(cd1, cd2);
    return j;
}

} // namespace

Judgment more_correct_det(const Relation& p2, const Relation& p1, const Relation& r) {
    return cd_inclusion(p2, p1, r, Judgment::Kind::MoreCorrectDet, false);
}

Judgment strictly_more_correct_det(const Relation& p2, const Relation& p1,
                                   const Relation& r) {
    return cd_inclusion(p2, p1, r, Judgment::Kind::StrictlyMoreCorrectDet, true);
}

Judgment more_correct_nondet(const Relation& p2, const Relation& p1,
                             const Relation& r) {
    ensure_same_space(p2.space(), p1.space(), "more_correct_nondet");
    ensure_same_space(p2.space(), r.space(), "more_correct_nondet");
    Judgment j;
    j.kind = Judgment::Kind::MoreCorrectNondet;
    StateSet cd1 = competence_domain(p1, r);
    StateSet cd2 = competence_domain(p2, r);
    j.cd1 = cd1;
    j.cd2 = cd2;
    bool clause1 = subset_of(cd1, cd2);
    // On p1's competence domain, any output of p2 that violates r must be an
    // output p1 could produce as well.
    Relation residual = difference(restrict_domain(p2, cd1), r);
    j.clause2_set = residual;
    bool clause2 = subset_of(residual, p1);
    j.verdict = clause1 && clause2;
    if (!clause1) {
        j.counter_state = least_excluded(cd1, cd2);
    } else if (!clause2) {
        j.counter_pair = difference(residual, p1).first_pair();
    }
    return j;
}

} // namespace relcheck
