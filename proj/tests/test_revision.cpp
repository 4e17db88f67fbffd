#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace revisekit;
using K = SelectionStrategy::Kind;
using Sets = std::vector<std::vector<std::string>>;

namespace {

const std::string kWc = "Wor(charlie)";
const std::string kRule = "Wor(charlie) -> Ins(charlie)";
const std::string kNotIns = "!Ins(charlie)";

struct Ex3 {
    BeliefBase b = parse_base("Wor(charlie). Wor(charlie) -> Ins(charlie).");
    BeliefBase e = parse_base("!Ins(charlie).");
    Explanandum phi = parse_explanandum("!Ins(charlie)");
};

std::set<std::string> texts_of(const BeliefBase& b) {
    std::set<std::string> out;
    for (const auto& s : b.statements()) {
        out.insert(s.text());
    }
    return out;
}

} // namespace

TEST_CASE("correction kernel of the single-rule instance") {
    Ex3 x;
    auto k = correction_kernel(x.b, x.e);
    CHECK(testsupport::texts(k) == Sets{{kNotIns}, {kWc}, {kRule}, {kNotIns, kWc}, {kNotIns, kRule}, {kWc, kRule}});
    CHECK(testsupport::texts(k) == testsupport::brute_force_kernel(x.b, x.e));
}

TEST_CASE("explanandum-preserving selections") {
    Ex3 x;
    auto a = admissible_selections(x.b, x.e, x.phi);
    CHECK(testsupport::texts(a) == Sets{{kWc}, {kRule}, {kWc, kRule}});
    for (const auto& s : a) {
        CHECK(s.preserves_explanandum);
        CHECK_FALSE(s.contains(kNotIns));
    }
}

TEST_CASE("both listed revisions are reachable") {
    Ex3 x;
    std::vector<std::string> rule{kRule};
    auto r1 = revise_with(x.b, x.e, x.phi, rule);
    CHECK(texts_of(r1.revised) == std::set<std::string>{kWc, kNotIns});
    std::vector<std::string> both{kWc, kRule};
    auto r2 = revise_with(x.b, x.e, x.phi, both);
    CHECK(texts_of(r2.revised) == std::set<std::string>{kNotIns});

    auto pick = SelectionStrategy::of(K::Interactive);
    pick.chooser = [](std::span<const CorrectionSet> cs) {
        for (std::size_t i = 0; i < cs.size(); ++i) {
            if (cs[i].texts() == std::vector<std::string>{kRule}) {
                return i;
            }
        }
        return cs.size();
    };
    CHECK(texts_of(revise(x.b, x.e, x.phi, pick).revised) == std::set<std::string>{kWc, kNotIns});

    std::vector<std::string> bad{kNotIns};
    CHECK_THROWS_AS(revise_with(x.b, x.e, x.phi, bad), Error);
}

TEST_CASE("strategies pick from the canonical candidate list") {
    Ex3 x;
    CHECK(revise(x.b, x.e, x.phi, SelectionStrategy::of(K::MinCardinality)).retracted.texts() ==
          std::vector<std::string>{kWc});
    CHECK(revise(x.b, x.e, x.phi, SelectionStrategy::of(K::MaxCardinality)).retracted.texts() ==
          std::vector<std::string>{kWc, kRule});
    auto w = SelectionStrategy::of(K::Weighted);
    w.weights[kWc] = 5;
    CHECK(revise(x.b, x.e, x.phi, w).retracted.texts() == std::vector<std::string>{kRule});
    auto r = revise(x.b, x.e, x.phi, SelectionStrategy::seeded(7));
    CHECK(r.seed == 7u);
    CHECK(revise(x.b, x.e, x.phi, SelectionStrategy::seeded(7)).retracted == r.retracted);
}

TEST_CASE("protect-explanation avoids explanation elements") {
    auto b = parse_base("Worried(X) -> DifficultConcentrate(X). Worried(alice).");
    auto e = parse_base("Worried(X) & Coping(X) -> !DifficultConcentrate(X). Coping(alice). Worried(alice).");
    auto phi = parse_explanandum("!DifficultConcentrate(alice)");
    auto r = revise(b, e, phi, SelectionStrategy::of(K::ProtectExplanation));
    CHECK(r.retracted.texts() == std::vector<std::string>{"Worried(X) -> DifficultConcentrate(X)"});
}

TEST_CASE("consistent union is returned unchanged") {
    auto b = parse_base("Wor(diana).");
    auto e = parse_base("Cop(charlie).");
    auto r = revise(b, e, parse_explanandum("Cop(charlie)"), SelectionStrategy{});
    CHECK(r.retracted.empty());
    CHECK(r.revised.size() == 2);
    CHECK(correction_kernel(b, e).empty());
}

TEST_CASE("selection edge cases") {
    CHECK_THROWS_AS(select({}, SelectionStrategy{}), NoCandidates);
    Ex3 x;
    auto a = admissible_selections(x.b, x.e, x.phi);
    auto pick = SelectionStrategy::of(K::Interactive);
    CHECK_THROWS_AS(select(a, pick), Error);
    pick.chooser = [](std::span<const CorrectionSet> cs) { return cs.size(); };
    CHECK_THROWS_AS(select(a, pick), Error);
    CHECK(parse_strategy_kind("protect-explanation") == K::ProtectExplanation);
    CHECK_FALSE(parse_strategy_kind("nope"));
}

TEST_CASE("explanation validation") {
    auto phi = parse_explanandum("!Ins(charlie)");
    CHECK(validate_explanation(parse_base("!Ins(charlie)."), phi).valid());

    auto redundant = parse_base("!Ins(charlie). Cop(charlie).");
    auto rep = validate_explanation(redundant, phi);
    CHECK(rep.entails_explanandum);
    CHECK_FALSE(rep.minimal);
    CHECK_FALSE(rep.failing_subsets.empty());
    CHECK_FALSE(minimal_by_all_subsets(redundant, phi));

    auto weak = parse_base("Cop(charlie).");
    CHECK_FALSE(validate_explanation(weak, phi).entails_explanandum);

    auto contradictory = parse_base("P(a). !P(a).");
    CHECK_FALSE(validate_explanation(contradictory, phi).consistent);

    Ex3 x;
    CHECK_THROWS_AS(revise(x.b, redundant, phi, SelectionStrategy{}), InvalidExplanation);
}

TEST_CASE("single-removal minimality matches the all-subsets check") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        testsupport::GroundGen gen(seed, 2, 2);
        auto e = gen.base(1 + seed % 4);
        Explanandum phi({gen.literal()});
        Signature ctx;
        ctx.add(e);
        ctx.add(phi);
        auto rep = validate_explanation(e, phi, &ctx);
        if (rep.entails_explanandum && rep.consistent) {
            CHECK(rep.minimal == minimal_by_all_subsets(e, phi, &ctx));
        }
    }
}

TEST_CASE("shared elements keep both origins") {
    auto b = parse_base("S1: Worried(alice).");
    auto e = parse_base("E1: Worried(alice).");
    RevisionProblem p(b, e);
    REQUIRE(p.size() == 1);
    CHECK(p.elements()[0].from_base());
    CHECK(p.elements()[0].from_explanation());
    CHECK(p.elements()[0].primary_label() == "S1");
    CHECK(p.elements()[0].label_in(Side::Explanation) == "E1");
}

TEST_CASE("ground cap") {
    auto b = parse_base("P(a). P(b). P(c). P(X) & P(Y) -> Q(X, Y).");
    auto e = parse_base("R(a).");
    CHECK_NOTHROW(RevisionProblem(b, e, nullptr, Limits{24}));
    CHECK_THROWS_AS(RevisionProblem(b, e, nullptr, Limits{8}), CapExceeded);
}

TEST_CASE("canonical subset order") {
    std::vector<std::uint64_t> seen;
    for_each_subset(3, 1, 2, [&](std::uint64_t m) {
        seen.push_back(m);
        return true;
    });
    CHECK(seen == std::vector<std::uint64_t>{0b001, 0b010, 0b100, 0b011, 0b101, 0b110});
}
