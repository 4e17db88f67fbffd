#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace revisekit;
using testsupport::signature_of;

namespace {

Literal lit(const std::string& text) { return parse_explanandum(text).literals()[0]; }

std::vector<Formula> grounded(const BeliefBase& b) {
    Signature sig;
    sig.add(b);
    return ground(b, sig).formulas;
}

} // namespace

TEST_CASE("rendering of literals and rules") {
    auto b = parse_base("Wor(X) & Cop(X) -> !Ins(X).\nKindTo(jocko, kristen).");
    CHECK(b.statements()[0].text() == "Wor(X) & Cop(X) -> !Ins(X)");
    CHECK(b.statements()[1].text() == "KindTo(jocko, kristen)");
}

TEST_CASE("worried friends entail insomnia") {
    auto b = parse_base("Wor(charlie). Wor(diana). Wor(X) -> Ins(X).");
    auto g = grounded(b);
    CHECK(is_consistent(g));
    CHECK(entails(g, lit("Ins(charlie)")));
    CHECK(entails(g, lit("Ins(diana)")));
    CHECK_FALSE(entails(g, lit("!Ins(charlie)")));
}

TEST_CASE("grounding instantiates rules over every constant") {
    auto b = parse_base("Wor(charlie). Wor(diana). Wor(X) -> Ins(X).");
    Signature sig;
    sig.add(b);
    auto gb = ground(b, sig);
    CHECK(gb.formulas.size() == 4);
    CHECK(gb.origin == std::vector<std::size_t>{0, 1, 2, 2});
}

TEST_CASE("a rule without constants cannot be grounded") {
    BeliefBase b;
    b.add(Formula{parse_base("P(X) -> Q(X).").statements()[0].formula});
    Signature sig;
    sig.add(b);
    CHECK_THROWS_AS(ground(b, sig), EmptyUniverse);
}

TEST_CASE("belief base invariants") {
    BeliefBase b;
    b.add(Formula{lit("P(a)")});
    CHECK_THROWS_AS(b.add(Formula{lit("P(a)")}), InvalidFormula);
    Literal open{{"P", {Term::variable("X")}}, false};
    CHECK_THROWS_AS(b.add(Formula{open}), InvalidFormula);
    Rule unsafe{{lit("Q(a)")}, open};
    CHECK_THROWS_AS(b.add(Formula{unsafe}), InvalidFormula);
    CHECK_THROWS_AS(b.add(Statement{"f1", lit("R(a)"), true}), InvalidFormula);
}

TEST_CASE("signature rejects arity clashes") {
    Signature sig;
    sig.add_predicate("P", 1);
    CHECK_THROWS_AS(sig.add_predicate("P", 2), ArityMismatch);
}

TEST_CASE("explanandum invariants") {
    CHECK_THROWS_AS(Explanandum(std::vector<Literal>{}), InvalidFormula);
    CHECK_THROWS_AS(Explanandum({lit("P(a)"), lit("!P(a)")}), InvalidFormula);
    CHECK_THROWS_AS(Explanandum({lit("P(a)"), lit("P(a)")}), InvalidFormula);
    CHECK(Explanandum({lit("P(a)"), lit("Q(a)")}).size() == 2);
}

TEST_CASE("consequences include derived negative literals") {
    // Contraposition: the rule and !Q(a) force !P(a).
    auto b = parse_base("P(a) -> Q(a). !Q(a).");
    Signature sig;
    sig.add(b);
    std::vector<std::string> got;
    for (const auto& l : consequences(b, sig)) {
        got.push_back(to_string(l));
    }
    CHECK(got == std::vector<std::string>{"!P(a)", "!Q(a)"});
    CHECK(testsupport::tt_consequences(b, sig) == std::set<std::string>(got.begin(), got.end()));
}

TEST_CASE("consequences of an inconsistent base are refused") {
    auto b = parse_base("P(a). !P(a) .");
    Signature sig;
    sig.add(b);
    CHECK_THROWS_AS(consequences(b, sig), InconsistentBase);
}

TEST_CASE("truth table enumerates in binary counting order") {
    auto b = parse_base("P(a) -> Q(a).");
    Signature sig;
    sig.add(b);
    auto models = enumerate_models(ground(b, sig).formulas, sig);
    // atoms P(a), Q(a); the assignment P=1,Q=0 is excluded
    REQUIRE(models.size() == 3);
    CHECK(models[0].values == std::vector<bool>{false, false});
    CHECK(models[1].values == std::vector<bool>{false, true});
    CHECK(models[2].values == std::vector<bool>{true, true});
}

TEST_CASE("truth table refuses large signatures") {
    Signature sig;
    sig.add_predicate("P", 1);
    for (int i = 0; i < 25; ++i) {
        sig.add_constant("c" + std::to_string(i));
    }
    CHECK_THROWS_AS(enumerate_models({}, sig), CapExceeded);
}

TEST_CASE("clausal search agrees with the truth table on small random sets") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        testsupport::GroundGen gen(seed, 2, 3);
        auto b = gen.base(5);
        auto g = grounded(b);
        auto q = gen.literal();
        auto sig = signature_of(g, std::span<const Literal>(&q, 1));
        CHECK(is_consistent(g) == testsupport::tt_consistent(g, sig));
        CHECK(entails(g, q) == testsupport::tt_entails(g, std::span<const Literal>(&q, 1), sig));
    }
}
