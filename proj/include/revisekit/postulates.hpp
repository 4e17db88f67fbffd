#pragma once

#include "revisekit/falappa.hpp"
#include "revisekit/revision.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace revisekit {

enum class Postulate {
    Inclusion,
    Vacuity,
    Consistency,
    Reversion,
    ConstrainedAcceptance,
    UnconstrainedAcceptance,
    StrongAcceptance,
};

inline constexpr std::array<Postulate, 7> kAllPostulates = {
    Postulate::Inclusion,          Postulate::Vacuity,
    Postulate::Consistency,        Postulate::Reversion,
    Postulate::ConstrainedAcceptance, Postulate::UnconstrainedAcceptance,
    Postulate::StrongAcceptance,
};

/// "inclusion", "strong-acceptance", ...
std::string to_string(Postulate p);

/// Enough to replay a failing check.
struct Witness {
    std::string base;        // rendered B
    std::string explanation; // rendered E
    std::string explanandum;
    std::string strategy;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> retracted;
    std::string remainder; // rendered B (.) E
    std::string note;
};

struct PostulateCheck {
    bool evaluated = true;
    bool antecedent = true;
    bool holds = true;
    std::optional<Witness> witness; // set on failure
};

struct PostulateReport {
    std::array<PostulateCheck, 7> checks;

    PostulateCheck& operator[](Postulate p) { return checks[static_cast<std::size_t>(p)]; }
    const PostulateCheck& operator[](Postulate p) const { return checks[static_cast<std::size_t>(p)]; }
    bool all_hold() const;
    std::vector<Postulate> violations() const;
};

Witness make_witness(const BeliefBase& base, const BeliefBase& explanation, const Explanandum& phi,
                     const RevisionResult& result);

/// Evaluates every postulate except reversion on a concrete revision, recomputing
/// entailment from the revised base rather than trusting the result's flags.
/// Reversion is left unevaluated; see check_reversion.
PostulateReport check_postulates(const BeliefBase& base, const BeliefBase& explanation, const Explanandum& phi,
                                 const RevisionResult& result, Limits limits = {});

/// Restricted reversion: when B u E and B u E' coincide and have the same
/// correction kernel, both revisions must retract the same elements. Vacuously
/// true otherwise. Throws NonDeterministicStrategy.
bool check_reversion(const BeliefBase& base, const BeliefBase& explanation, const BeliefBase& explanation_prime,
                     const Explanandum& phi, const SelectionStrategy& strategy, Limits limits = {});

/// Explanations E' with B u E' = B u E: E reordered, and (E \ B) u Y for subsets Y of
/// B that form valid explanations. E itself is not included.
std::vector<BeliefBase> reversion_probes(const BeliefBase& base, const BeliefBase& explanation,
                                         const Explanandum& phi, std::size_t max_probes = 16);

// ---------------------------------------------------------------------------
// Random instances

struct GeneratorParams {
    std::size_t predicates = 3;
    std::size_t max_arity = 2; // at most 2
    std::size_t constants = 2;
    double fact_probability = 0.35;
    std::size_t rules = 3;
    std::size_t body_length = 2;
    std::size_t max_ground = kDefaultGroundCap;
    std::uint64_t seed = 0;
};

struct Instance {
    BeliefBase base;
    BeliefBase explanation;
    Explanandum phi;
};

/// Deterministic per params. B is consistent and E is a valid explanation of phi.
/// Throws GenerationFailed after a bounded number of retries.
Instance random_instance(const GeneratorParams& params);

// ---------------------------------------------------------------------------
// Suites

struct SuiteFailure {
    std::string postulate; // a postulate name, "proposition-1" or "proposition-2"
    std::uint64_t seed = 0;
    Witness witness;
};

struct SuiteReport {
    std::size_t trials = 0;
    std::size_t inconsistent_unions = 0;
    std::vector<SuiteFailure> failures;            // guided operator
    std::vector<SuiteFailure> baseline_violations; // falappa operator, informational

    bool ok() const noexcept { return failures.empty(); }
};

enum class SuiteOperator { Guided, Falappa, Both };

struct SuiteOptions {
    std::size_t trials = 1000;
    std::uint64_t seed = 1;
    GeneratorParams params;
    SuiteOperator op = SuiteOperator::Guided;
    /// Also run the baseline over the fixed worried-friends fixture.
    bool baseline_fixture = true;
};

/// Only the proposition implications, on fresh instances: vacuity's antecedent
/// implies consistency and strong acceptance; strong acceptance implies both
/// acceptance variants.
SuiteReport check_propositions(const GeneratorParams& params, std::size_t trials);

/// Trial i uses seed options.seed + i. Every deterministic selection strategy and
/// one seeded-random strategy are checked against all postulates and both
/// propositions; reversion is probed with reversion_probes.
SuiteReport run_suite(const SuiteOptions& options);

/// The B, E and phi of the baseline contrast fixture: a worried person who
/// normally has insomnia, with an explanation built on coping.
Instance falappa_fixture();

} // namespace revisekit
