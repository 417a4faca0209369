#include <doctest.h>

#include "property_suites.hpp"

using namespace relcheck;
using namespace relcheck::testgen;

namespace {

void check_suite(const SuiteResult& r) {
    INFO(r.name);
    CHECK(r.cases == kPropertyCases);
    if (r.violations > 0) FAIL_CHECK(r.first);
    CHECK(r.violations == 0);
}

} // namespace

TEST_CASE("relation algebra laws hold on sampled relations") {
    check_suite(suite_algebra_laws());
}

TEST_CASE("the two relative-correctness definitions agree on deterministic candidates") {
    check_suite(suite_det_coherence());
}

TEST_CASE("more-correct is reflexive and transitive") {
    check_suite(suite_reflexive_transitive());
}

TEST_CASE("refinement implies relative correctness against every sampled spec") {
    check_suite(suite_refinement_implies_relative());

    // The implication is a fact of the deterministic theory only: a
    // non-deterministic refinement may shed exactly the output some spec
    // wanted. Pinned so nobody "generalizes" the suite above.
    SpacePtr two = StateSpace::make("two", {{"v", 0, 1}});
    Relation loose = Relation::from_pairs(two, {{0, 0}, {0, 1}});
    Relation tight = Relation::from_pairs(two, {{0, 0}});
    Relation wants_one = Relation::from_pairs(two, {{0, 1}});
    CHECK(refines(tight, loose).verdict);
    CHECK(!more_correct_nondet(tight, loose, wants_one).verdict);
}

TEST_CASE("non-refinement always has a witness spec on three states or fewer") {
    check_suite(suite_nonrefinement_witness());
}

TEST_CASE("correct programs are more correct than every sampled candidate") {
    check_suite(suite_correct_dominates());
}

TEST_CASE("reliability never decreases along verified chain steps") {
    check_suite(suite_reliability_monotone());
}
