#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "revisekit/corpus.hpp"
#include "revisekit/dsl.hpp"

using namespace revisekit;

TEST_CASE("labels and statements") {
    auto b = parse_base("S1: Wor(X) -> Ins(X).\nWor(charlie).\n// trailing comment\n");
    REQUIRE(b.size() == 2);
    CHECK(b.statements()[0].label == "S1");
    CHECK(b.statements()[0].explicit_label);
    CHECK_FALSE(b.statements()[1].explicit_label);
}

TEST_CASE("parse errors carry spans") {
    try {
        parse_base("Wor(charlie).\nWor(charlie -> Ins(charlie).");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.span().line == 2);
        CHECK(e.span().column > 1);
        CHECK_FALSE(e.expected().empty());
    }
}

TEST_CASE("non-ground facts and unsafe rules are parse errors") {
    CHECK_THROWS_AS(parse_base("Wor(X)."), ParseError);
    CHECK_THROWS_AS(parse_base("Wor(X) -> Ins(Y)."), ParseError);
    CHECK_THROWS_AS(parse_base("Wor(a). Wor(a)."), ParseError);
}

TEST_CASE("arity mismatch across statements") {
    CHECK_THROWS_AS(parse_base("P(a). P(a, b)."), ArityMismatch);
}

TEST_CASE("explanandum parsing") {
    auto phi = parse_explanandum("!Likes(kristen, jocko) & !Reciprocates(kristen, jocko)");
    CHECK(phi.size() == 2);
    CHECK(to_string(phi) == "!Likes(kristen, jocko) & !Reciprocates(kristen, jocko)");
    CHECK_THROWS_AS(parse_explanandum("P(X)"), ParseError);
}

TEST_CASE("base round trip is canonical") {
    auto b = parse_base("Wor(X) -> Ins(X). b1: Wor(diana). Wor(charlie).");
    auto text = render(b);
    CHECK(text == "Wor(charlie).\nb1: Wor(diana).\nWor(X) -> Ins(X).\n");
    CHECK(parse_base(text) == b);
    CHECK(render(parse_base(text)) == text);
}

namespace {

const char* kScenario = R"([meta]
id = t
type = II

[statements]
conditional: S1: Worried(X) -> DifficultConcentrate(X).
conditional: S2: Worried(X) -> Insomnia(X).
categorical: S3: Worried(alice).

[fact]
!DifficultConcentrate(alice).
)";

} // namespace

TEST_CASE("scenario parsing") {
    auto sc = parse_scenario(kScenario);
    CHECK(sc.id == "t");
    CHECK(sc.type == ProblemType::II);
    CHECK(sc.kind_of("S3") == StatementKind::Categorical);
    CHECK(sc.labels_of(StatementKind::Conditional) == std::vector<std::string>{"S1", "S2"});
    CHECK_THROWS_AS(sc.kind_of("S9"), UnknownLabel);
    CHECK(parse_scenario(render(sc)) == sc);
    CHECK(looks_like_scenario(kScenario));
    CHECK_FALSE(looks_like_scenario("P(a)."));
}

TEST_CASE("scenario invariants") {
    std::string consistent = kScenario;
    consistent.replace(consistent.find("!DifficultConcentrate(alice)"), 1, "");
    try {
        parse_scenario(consistent);
        FAIL("expected invariant violation");
    } catch (const ScenarioInvalid& e) {
        CHECK(e.invariant() == "fact-conflicts");
    }
    std::string wrong_type = kScenario;
    wrong_type.replace(wrong_type.find("type = II"), 9, "type = I");
    CHECK_THROWS_AS(parse_scenario(wrong_type), ScenarioInvalid);
    std::string kind = kScenario;
    kind.replace(kind.find("categorical: S3"), 11, "conditional");
    CHECK_THROWS_AS(parse_scenario(kind), ScenarioInvalid);
}

TEST_CASE("scenario syntax errors") {
    CHECK_THROWS_AS(parse_scenario("[meta]\nid = x\n"), ParseError);
    CHECK_THROWS_AS(parse_scenario("[bogus]\n"), ParseError);
}

TEST_CASE("bundled corpus round trips") {
    for (int x : {1, 2}) {
        for (const auto& e : load_corpus(x)) {
            CAPTURE(e.path);
            CHECK(parse_scenario(render(e.scenario)) == e.scenario);
        }
    }
}
