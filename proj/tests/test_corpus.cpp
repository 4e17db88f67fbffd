#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "revisekit/corpus.hpp"

using namespace revisekit;
using K = SelectionStrategy::Kind;

TEST_CASE("corpus sizes and types") {
    auto one = load_corpus(1);
    auto two = load_corpus(2);
    REQUIRE(one.size() == 9);
    REQUIRE(two.size() == 6);
    const ProblemType want1[] = {ProblemType::I,  ProblemType::I,   ProblemType::I,
                                 ProblemType::II, ProblemType::II,  ProblemType::II,
                                 ProblemType::III, ProblemType::III, ProblemType::III};
    for (std::size_t i = 0; i < 9; ++i) {
        CHECK(one[i].scenario.type == want1[i]);
        CHECK_FALSE(one[i].scenario.explanation);
    }
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(two[i].scenario.type == want1[i + 3]);
        REQUIRE(two[i].scenario.explanation);
        // same statements as the corresponding experiment 1 scenario
        CHECK(two[i].scenario.statements == one[i + 3].scenario.statements);
        auto rep = validate_explanation(*two[i].scenario.explanation, two[i].scenario.fact);
        CHECK(rep.valid());
    }
}

TEST_CASE("experiment 2 under protect-explanation") {
    auto rep = run_corpus(2, SelectionStrategy::of(K::ProtectExplanation));
    REQUIRE(rep.rows.size() == 6);
    for (const auto& row : rep.rows) {
        CAPTURE(row.id);
        CHECK(row.run.result.entails_explanandum == true);
        CHECK(row.run.classification.label != RevisionLabel::Unclassified);
        CHECK_FALSE(row.comparison.empty());
    }
    CHECK(rep.minimal + rep.non_minimal == 6);
}

TEST_CASE("experiment 1 minimal reference pattern") {
    auto rep = run_corpus(1, SelectionStrategy{});
    for (const auto& row : rep.rows) {
        REQUIRE(row.minimal);
        CHECK(row.minimal->classification.label == RevisionLabel::Minimal);
        CHECK(row.minimal->admissible);
        REQUIRE(row.non_minimal);
        CHECK(row.non_minimal->classification.label == RevisionLabel::NonMinimal);
    }
}

TEST_CASE("worry scenario measures are computed, not assumed") {
    auto rep = run_corpus(2, SelectionStrategy::of(K::ProtectExplanation));
    const auto& row = rep.rows[1];
    REQUIRE(row.non_minimal);
    REQUIRE(row.minimal);
    // Retracting the categorical also drops it from the explanation, so the
    // explanandum is lost and every consequence of B changes.
    CHECK_FALSE(row.minimal->admissible);
    CHECK(row.minimal->measure == ChangeMeasure{1, 1});
    CHECK(row.non_minimal->measure == ChangeMeasure{3, 5});
    CHECK_FALSE(row.verified);
    CHECK(row.comparison == "exception 3/5 vs 5/5");
}
