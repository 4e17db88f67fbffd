#pragma once

#include "revisekit/revision.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace revisekit {

/// Minimal unsatisfiable subsets of B u E, each in canonical element order,
/// listed by cardinality then lexicographically.
struct KernelSet {
    std::vector<std::vector<UnionElement>> kernels;

    bool empty() const noexcept { return kernels.empty(); }
    std::size_t size() const noexcept { return kernels.size(); }
    /// Elements occurring in some kernel, canonical order.
    std::vector<UnionElement> support() const;
};

struct IncisionPolicy {
    enum class Kind { MinHittingSet, CanonicalFirst, SeededRandom };

    Kind kind = Kind::MinHittingSet;
    std::uint64_t seed = 0;

    std::string name() const;
};

std::optional<IncisionPolicy::Kind> parse_incision_kind(std::string_view name);

std::vector<std::vector<UnionElement>> minimal_unsatisfiable_subsets(const RevisionProblem& problem);

KernelSet kernel_set(const BeliefBase& base, const BeliefBase& explanation, Limits limits = {});

/// Picks elements of the kernels so that every nonempty kernel is hit.
std::vector<UnionElement> incise(const KernelSet& ks, const IncisionPolicy& policy);

/// Every subset of the kernel support that hits each kernel, canonical order.
std::vector<std::vector<UnionElement>> all_incisions(const KernelSet& ks);

/// (B u E) minus an incision chosen by the policy. phi, when given, is only used
/// to report whether the result entails it; the operator itself ignores it.
RevisionResult revise_falappa(const BeliefBase& base, const BeliefBase& explanation, const IncisionPolicy& policy,
                              const Explanandum* phi = nullptr, Limits limits = {});

/// Same operator with an explicit incision given by element texts. Throws Error
/// when the texts do not form a valid incision.
RevisionResult revise_falappa_with(const BeliefBase& base, const BeliefBase& explanation,
                                   std::span<const std::string> incision_texts, const Explanandum* phi = nullptr,
                                   Limits limits = {});

} // namespace revisekit
