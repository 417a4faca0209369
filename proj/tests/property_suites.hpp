#pragma once

// The seven randomized property suites, shared by the unit tests (one doctest
// case per suite) and the acceptance runner (one line for the lot). Each
// suite runs kPropertyCases cases from a fixed seed and reports the first
// violated law; a passing suite has zero violations.

#include <sstream>
#include <string>
#include <vector>

#include "generators.hpp"
#include "relcheck/correctness.hpp"
#include "relcheck/derivation.hpp"

namespace relcheck::testgen {

constexpr int kPropertyCases = 500;

struct SuiteResult {
    explicit SuiteResult(std::string suite_name) : name(std::move(suite_name)) {}

    std::string name;
    int cases = 0;
    int violations = 0;
    std::string first;

    void expect(bool ok, int case_no, const char* law) {
        if (ok || violations++) return;
        std::ostringstream msg;
        msg << law << " violated at case " << case_no;
        first = msg.str();
    }
};

inline SuiteResult suite_algebra_laws() {
    SuiteResult t{"relation algebra laws"};
    std::mt19937 rng(0xA11CE001);
    std::uniform_real_distribution<double> dens(0.0, 1.0);
    for (int i = 0; i < kPropertyCases; ++i) {
        SpacePtr sp = tiny_space(rng);
        Relation a = random_relation(rng, sp, dens(rng));
        Relation b = random_relation(rng, sp, dens(rng));
        Relation c = random_relation(rng, sp, dens(rng));

        t.expect(compose(compose(a, b), c) == compose(a, compose(b, c)), i,
                 "compose associativity");
        t.expect(union_of(union_of(a, b), c) == union_of(a, union_of(b, c)), i,
                 "union associativity");
        t.expect(intersect(a, b) == intersect(b, a), i,
                 "intersection commutativity");
        t.expect(converse(converse(a)) == a, i, "converse involution");
        t.expect(converse(compose(a, b)) == compose(converse(b), converse(a)),
                 i, "converse antidistributivity");

        Relation star = rt_closure(a);
        t.expect(rt_closure(star) == star, i, "closure idempotence");
        t.expect(subset_of(Relation::identity(sp), star), i,
                 "closure reflexivity");
        t.expect(subset_of(compose(star, star), star), i,
                 "closure transitivity");

        t.expect(domain(a) == range_of(converse(a)), i,
                 "domain is the converse's range");
        t.expect(complement(complement(a)) == a, i, "complement involution");
        t.expect(complement(union_of(a, b)) ==
                     intersect(complement(a), complement(b)),
                 i, "De Morgan");
        ++t.cases;
    }
    return t;
}

inline SuiteResult suite_det_coherence() {
    SuiteResult t{"two relative-correctness definitions on deterministic candidates"};
    std::mt19937 rng(0xA11CE002);
    std::uniform_real_distribution<double> dens(0.0, 1.0);
    for (int i = 0; i < kPropertyCases; ++i) {
        SpacePtr sp = tiny_space(rng);
        Relation p1 = random_deterministic(rng, sp, dens(rng));
        Relation p2 = random_deterministic(rng, sp, dens(rng));
        Relation r = random_relation(rng, sp, dens(rng));
        bool by_domains = more_correct_det(p2, p1, r).verdict;
        bool by_clauses = more_correct_nondet(p2, p1, r).verdict;
        t.expect(by_domains == by_clauses, i,
                 "domain-inclusion vs two-clause verdict");
        ++t.cases;
    }
    return t;
}

inline SuiteResult suite_reflexive_transitive() {
    SuiteResult t{"more-correct reflexivity and transitivity"};
    std::mt19937 rng(0xA11CE003);
    std::uniform_real_distribution<double> dens(0.0, 1.0);
    int non_vacuous = 0;
    for (int i = 0; i < kPropertyCases; ++i) {
        SpacePtr sp = tiny_space(rng);
        Relation r = random_relation(rng, sp, dens(rng));

        Relation p = random_deterministic(rng, sp, dens(rng));
        t.expect(more_correct_det(p, p, r).verdict, i, "reflexivity (det)");
        Relation q = random_relation(rng, sp, dens(rng));
        t.expect(more_correct_nondet(q, q, r).verdict, i,
                 "reflexivity (two-clause)");

        // Restricting a candidate to nested start sets yields a guaranteed
        // chain; transitivity must close it.
        Relation p3 = random_deterministic(rng, sp, dens(rng));
        StateSet b_set = random_subset(rng, sp, 0.7);
        StateSet a_set = set_intersect(b_set, random_subset(rng, sp, 0.7));
        Relation p2 = restrict_domain(p3, b_set);
        Relation p1 = restrict_domain(p3, a_set);
        bool step1 = more_correct_det(p2, p1, r).verdict;
        bool step2 = more_correct_det(p3, p2, r).verdict;
        t.expect(step1 && step2, i, "constructed chain steps");
        if (step1 && step2) {
            ++non_vacuous;
            t.expect(more_correct_det(p3, p1, r).verdict, i, "transitivity");
        }
        ++t.cases;
    }
    t.expect(non_vacuous >= kPropertyCases / 2, kPropertyCases,
             "constructed chains mostly vacuous");
    return t;
}

inline SuiteResult suite_refinement_implies_relative() {
    SuiteResult t{"refinement implies relative correctness (deterministic)"};
    std::mt19937 rng(0xA11CE004);
    std::uniform_real_distribution<double> dens(0.0, 1.0);
    for (int i = 0; i < kPropertyCases; ++i) {
        SpacePtr sp = tiny_space(rng);
        Relation p = random_deterministic(rng, sp, dens(rng));
        Relation pr = det_refining_extension(rng, sp, p);
        t.expect(refines(pr, p).verdict, i, "refining construction");
        Relation spec = random_relation(rng, sp, dens(rng));
        t.expect(more_correct_det(pr, p, spec).verdict, i,
                 "relative correctness under a sampled spec");
        ++t.cases;
    }
    return t;
}

inline SuiteResult suite_nonrefinement_witness() {
    SuiteResult t{"non-refinement has a witness spec on up to three states"};
    std::mt19937 rng(0xA11CE005);
    std::uniform_real_distribution<double> dens(0.0, 1.0);
    int guard = 0;
    while (t.cases < kPropertyCases && guard++ < 50 * kPropertyCases) {
        SpacePtr sp = tiny_space(rng, 3);
        Relation p = random_relation(rng, sp, dens(rng));
        Relation pr = random_relation(rng, sp, dens(rng));
        if (refines(pr, p).verdict) continue;
        ++t.cases;
        const StateIndex n = sp->size();
        bool witness = false;
        for (std::uint64_t mask = 0; mask < (1ull << (n * n)); ++mask) {
            if (!more_correct_nondet(pr, p, relation_from_mask(sp, mask))
                     .verdict) {
                witness = true;
                break;
            }
        }
        t.expect(witness, t.cases, "witness spec for non-refinement");
    }
    t.expect(t.cases == kPropertyCases, t.cases,
             "not enough non-refining samples");
    return t;
}

inline SuiteResult suite_correct_dominates() {
    SuiteResult t{"correct programs dominate every sampled candidate"};
    std::mt19937 rng(0xA11CE006);
    std::uniform_real_distribution<double> dens(0.2, 1.0);
    for (int i = 0; i < kPropertyCases; ++i) {
        SpacePtr sp = tiny_space(rng);
        Relation r = random_relation(rng, sp, dens(rng));
        Relation p = correct_choice(rng, sp, r);
        t.expect(is_correct(p, r).verdict, i, "correct construction");
        Relation q = random_relation(rng, sp, dens(rng));
        t.expect(more_correct_nondet(p, q, r).verdict, i,
                 "correct dominates sampled candidate");
        ++t.cases;
    }
    return t;
}

inline SuiteResult suite_reliability_monotone() {
    SuiteResult t{"reliability is monotone along verified chain steps"};
    std::mt19937 rng(0xA11CE007);
    std::uniform_real_distribution<double> dens(0.0, 1.0);
    std::uniform_int_distribution<std::uint64_t> wdist(0, 3);
    auto weight_in = [](const ReliabilityModel& m, const StateSet& ss) {
        std::uint64_t w = 0;
        for (StateIndex s : ss.indices()) w += m.weight_of(s);
        return w;
    };
    int guard = 0;
    while (t.cases < kPropertyCases && guard++ < 50 * kPropertyCases) {
        SpacePtr sp = tiny_space(rng);
        Relation r = random_relation(rng, sp, dens(rng));
        StateSet dom_r = domain(r);
        if (dom_r.empty_set()) continue;

        ReliabilityModel model;
        for (StateIndex s = 0; s < sp->size(); ++s) {
            std::uint64_t w = wdist(rng);
            if (w > 0) model.weights.emplace_back(s, w);
        }
        std::uint64_t denom = weight_in(model, dom_r);
        if (denom == 0) continue;
        ++t.cases;

        Relation p2 = random_relation(rng, sp, dens(rng));
        Relation p1 = restrict_domain(p2, random_subset(rng, sp, 0.6));
        t.expect(more_correct_nondet(p2, p1, r).verdict, t.cases,
                 "restriction chain step");

        Ratio before = Ratio::of(
            weight_in(model, set_intersect(competence_domain(p1, r), dom_r)),
            denom);
        Ratio after = Ratio::of(
            weight_in(model, set_intersect(competence_domain(p2, r), dom_r)),
            denom);
        t.expect(before <= after, t.cases, "reliability monotonicity");
    }
    t.expect(t.cases == kPropertyCases, t.cases, "not enough valid samples");
    return t;
}

inline std::vector<SuiteResult> all_property_suites() {
    return {suite_algebra_laws(),
            suite_det_coherence(),
            suite_reflexive_transitive(),
            suite_refinement_implies_relative(),
            suite_nonrefinement_witness(),
            suite_correct_dominates(),
            suite_reliability_monotone()};
}

} // namespace relcheck::testgen
