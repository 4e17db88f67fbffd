#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace revisekit;

// Smaller versions of the acceptance sweeps, so failures show up with doctest context.

TEST_CASE("clausal search against the truth table") {
    for (std::uint64_t seed = 1000; seed < 1100; ++seed) {
        testsupport::GroundGen gen(seed, 3, 4);
        auto b = gen.base(2 + seed % 7);
        Signature sig;
        sig.add(b);
        auto g = ground(b, sig).formulas;
        std::vector<Literal> phi{gen.literal(), gen.literal()};
        if (phi[0].atom == phi[1].atom) {
            phi.pop_back();
        }
        for (const auto& l : phi) {
            sig.add(l);
        }
        CAPTURE(seed);
        CHECK(is_consistent(g) == testsupport::tt_consistent(g, sig));
        CHECK(entails(g, phi) == testsupport::tt_entails(g, phi, sig));
    }
}

TEST_CASE("correction kernel against the subset filter") {
    for (std::uint64_t seed = 2000; seed < 2050; ++seed) {
        testsupport::GroundGen gen(seed, 2, 3);
        auto b = gen.base(2 + seed % 5);
        auto e = gen.base(1 + seed % 3);
        CAPTURE(seed);
        CHECK(testsupport::texts(correction_kernel(b, e)) == testsupport::brute_force_kernel(b, e));
    }
}

TEST_CASE("every guided result entails the explanandum") {
    for (std::uint64_t seed = 3000; seed < 3040; ++seed) {
        testsupport::GroundGen gen(seed, 2, 2);
        auto b = gen.base(4);
        auto phi = Explanandum({gen.literal()});
        BeliefBase e;
        e.add(Formula{phi.literals()[0]});
        Signature sig;
        sig.add(b);
        sig.add(e);
        for (const auto& cs : admissible_selections(b, e, phi)) {
            auto r = revise_with(b, e, phi, cs.texts());
            auto g = ground(r.revised, sig).formulas;
            CHECK(testsupport::tt_entails(g, phi.literals(), sig));
            CHECK(testsupport::tt_consistent(g, sig));
        }
    }
}
