#pragma once

#include "revisekit/dsl.hpp"
#include "revisekit/logic.hpp"
#include "revisekit/revision.hpp"

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace revisekit {

/// |G(B) sym-diff G(B')| / |G(B) u G(B')| as an exact fraction. The fields hold
/// the raw counts; reduced() divides out the gcd.
struct ChangeMeasure {
    std::uint64_t numerator = 0;
    std::uint64_t denominator = 0; // 0 only when both consequence sets are empty

    double value() const noexcept;
    ChangeMeasure reduced() const noexcept;
    /// Fixed-point rendering, e.g. "0.667" for 2/3.
    std::string decimal(int places = 3) const;
    /// "3/6"
    std::string fraction() const;

    /// Exact comparison of the values.
    std::strong_ordering operator<=>(const ChangeMeasure& o) const noexcept;
    bool operator==(const ChangeMeasure& o) const noexcept { return (*this <=> o) == 0; }
};

/// Throws InconsistentBase if either base is inconsistent under the signature.
ChangeMeasure change_measure(const BeliefBase& b, const BeliefBase& b_prime, const Signature& sig);
/// Uses the combined signature of both bases.
ChangeMeasure change_measure(const BeliefBase& b, const BeliefBase& b_prime);

/// Statements of B that the revision discarded or altered.
std::size_t statement_changes(const BeliefBase& base, const RevisionResult& result);

enum class RevisionLabel { Minimal, NonMinimal, Unclassified };
std::string to_string(RevisionLabel l);

struct RevisionClassification {
    RevisionLabel label = RevisionLabel::Unclassified;
    std::vector<std::string> retained;
    std::vector<std::string> discarded;
    std::vector<std::string> altered; // retracted and replaced by a primed label
};

/// Minimal: only categorical statements touched, fewer than `threshold` of them.
/// Non-minimal: a conditional touched, or at least `threshold` statements.
/// Throws UnknownLabel when the result's retracted base elements are not scenario
/// statements.
RevisionClassification classify_revision(const Scenario& sc, const RevisionResult& result,
                                         std::size_t threshold = 2);

} // namespace revisekit
