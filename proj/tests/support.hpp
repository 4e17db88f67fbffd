#pragma once

// Independent oracles and generators shared by the tests. Entailment here goes
// through the truth table (enumerate_models), never through the clausal solver.

#include "revisekit/dsl.hpp"
#include "revisekit/logic.hpp"
#include "revisekit/revision.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace testsupport {

using namespace revisekit;

inline Signature signature_of(std::span<const Formula> g, std::span<const Literal> extra = {}) {
    Signature sig;
    for (const auto& f : g) {
        sig.add(f);
    }
    for (const auto& l : extra) {
        sig.add(l);
    }
    return sig;
}

inline bool tt_consistent(std::span<const Formula> g, const Signature& sig) {
    return !enumerate_models(g, sig).empty();
}

inline bool tt_entails(std::span<const Formula> g, std::span<const Literal> phi, const Signature& sig) {
    for (const auto& m : enumerate_models(g, sig)) {
        if (!std::all_of(phi.begin(), phi.end(), [&](const Literal& l) { return m.satisfies(l); })) {
            return false;
        }
    }
    return true;
}

/// Ground literals true in every model, as text.
inline std::set<std::string> tt_consequences(const BeliefBase& b, const Signature& sig) {
    auto g = ground(b, sig).formulas;
    auto models = enumerate_models(g, sig);
    std::set<std::string> out;
    for (const auto& atom : sig.herbrand_base()) {
        for (bool neg : {false, true}) {
            Literal l{atom, neg};
            if (std::all_of(models.begin(), models.end(), [&](const Interpretation& m) { return m.satisfies(l); })) {
                out.insert(to_string(l));
            }
        }
    }
    return out;
}

/// Random ground literals and rules over unary predicates P0..P{p-1} and
/// constants a0..a{c-1}; p * c atoms in total.
struct GroundGen {
    std::mt19937_64 rng;
    std::size_t predicates;
    std::size_t constants;

    GroundGen(std::uint64_t seed, std::size_t p, std::size_t c) : rng(seed), predicates(p), constants(c) {}

    std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

    Literal literal() {
        Atom a{"P" + std::to_string(below(predicates)), {Term::constant("a" + std::to_string(below(constants)))}};
        return {a, below(2) == 1};
    }

    Formula formula() {
        if (below(2) == 0) {
            return literal();
        }
        Rule r;
        const auto len = 1 + below(2);
        for (std::size_t i = 0; i < len; ++i) {
            r.body.push_back(literal());
        }
        r.head = literal();
        return r;
    }

    /// n distinct formulas as a belief base.
    BeliefBase base(std::size_t n) {
        BeliefBase b;
        for (std::size_t tries = 0; b.size() < n && tries < 50 * n; ++tries) {
            auto f = formula();
            if (!b.contains(f)) {
                b.add(f);
            }
        }
        return b;
    }
};

/// Every S subset of the union with S and the remainder nonempty and the
/// remainder consistent, by truth table. Sorted canonically.
inline std::vector<std::vector<std::string>> brute_force_kernel(const BeliefBase& b, const BeliefBase& e) {
    std::map<std::string, Formula> uni;
    for (const auto* base : {&b, &e}) {
        for (const auto& s : base->statements()) {
            uni.emplace(s.text(), s.formula);
        }
    }
    std::vector<std::pair<std::string, Formula>> elems(uni.begin(), uni.end());
    Signature sig;
    for (const auto& [_, f] : elems) {
        sig.add(f);
    }
    const std::size_t n = elems.size();
    std::vector<std::vector<std::string>> out;
    std::vector<Formula> all;
    for (const auto& [_, f] : elems) {
        for (auto& g : ground_statement(Statement{"x", f, false}, sig)) {
            all.push_back(g);
        }
    }
    if (tt_consistent(all, sig)) {
        return out;
    }
    for (std::uint64_t m = 1; m + 1 < (std::uint64_t{1} << n); ++m) {
        std::vector<Formula> rest;
        std::vector<std::string> picked;
        for (std::size_t i = 0; i < n; ++i) {
            if ((m >> i) & 1U) {
                picked.push_back(elems[i].first);
            } else {
                for (auto& g : ground_statement(Statement{"x", elems[i].second, false}, sig)) {
                    rest.push_back(g);
                }
            }
        }
        if (tt_consistent(rest, sig)) {
            out.push_back(picked);
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        return x.size() != y.size() ? x.size() < y.size() : x < y;
    });
    return out;
}

inline std::vector<std::vector<std::string>> texts(const std::vector<CorrectionSet>& sets) {
    std::vector<std::vector<std::string>> out;
    for (const auto& s : sets) {
        out.push_back(s.texts());
    }
    return out;
}

} // namespace testsupport
