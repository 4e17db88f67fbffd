#pragma once

#include "revisekit/error.hpp"
#include "revisekit/logic.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace revisekit {

inline constexpr std::size_t kDefaultGroundCap = 24;

struct Limits {
    /// Upper bound on the number of ground formulas in B u E.
    std::size_t max_ground = kDefaultGroundCap;
};

enum class Side { Base, Explanation };

struct Origin {
    Side side;
    std::string label;
    bool explicit_label = false;

    bool operator==(const Origin&) const = default;
};

/// "base:S1" / "explanation:f2"
std::string qualified(const Origin& o);

/// One element of B u E. An element present in both inputs carries both origins.
struct UnionElement {
    Formula formula;
    std::string text;
    std::vector<Origin> origins;

    bool from_base() const;
    bool from_explanation() const;
    /// Base label when the element comes from B, else the explanation label.
    const std::string& primary_label() const;
    std::optional<std::string> label_in(Side side) const;

    bool operator==(const UnionElement& o) const { return text == o.text; }
};

/// A set of union elements whose removal restores consistency.
struct CorrectionSet {
    std::vector<UnionElement> elements; // canonical order
    bool preserves_explanandum = false;

    std::size_t size() const noexcept { return elements.size(); }
    bool empty() const noexcept { return elements.empty(); }
    std::vector<std::string> texts() const;
    bool contains(std::string_view text) const;
    /// "{a, b}" in canonical order.
    std::string to_string() const;

    bool operator==(const CorrectionSet& o) const { return texts() == o.texts(); }
};

/// B u E, deduplicated by canonical text, ordered canonically, with every element
/// grounded over the combined signature of B, E and the explanandum.
class RevisionProblem {
public:
    using Mask = std::uint64_t;

    /// Throws CapExceeded when the grounded union is larger than limits.max_ground,
    /// ArityMismatch / EmptyUniverse from signature collection and grounding.
    RevisionProblem(const BeliefBase& base, const BeliefBase& explanation, const Explanandum* phi = nullptr,
                    Limits limits = {});

    std::span<const UnionElement> elements() const noexcept { return elements_; }
    std::size_t size() const noexcept { return elements_.size(); }
    const Signature& signature() const noexcept { return signature_; }
    std::size_t ground_size() const noexcept { return ground_size_; }

    Mask all() const noexcept;
    Mask explanation_mask() const noexcept { return explanation_mask_; }
    Mask base_mask() const noexcept { return base_mask_; }

    bool consistent(Mask keep) const;
    bool entails(Mask keep, std::span<const Literal> phi) const;
    bool entails_negation(Mask keep, std::span<const Literal> phi) const;

    std::vector<Formula> ground_formulas(Mask keep) const;
    std::vector<UnionElement> pick(Mask m) const;
    /// Throws UnknownLabel if some text is not a union element.
    Mask mask_of(std::span<const std::string> texts) const;
    Mask mask_of(const CorrectionSet& set) const;
    /// The kept elements as a belief base. Labels are preserved; an explanation
    /// label clashing with a base label gets an "_e" suffix.
    BeliefBase to_base(Mask keep) const;

private:
    std::vector<std::vector<int>> clauses_of(Mask keep) const;
    // Variable for l's atom; atoms outside the union get fresh numbers from `extra`.
    int literal_code(const Literal& l, std::map<std::string, int>& extra) const;

    std::vector<UnionElement> elements_;
    Signature signature_;
    std::vector<std::vector<std::vector<int>>> clauses_; // per element
    std::vector<std::vector<Formula>> ground_;           // per element
    int num_vars_ = 0;
    std::map<std::string, int> atom_var_;
    std::size_t ground_size_ = 0;
    Mask explanation_mask_ = 0;
    Mask base_mask_ = 0;
};

/// Enumerates subsets of the union in canonical order: by cardinality, then
/// lexicographically by the sorted element texts. fn returns false to stop.
void for_each_subset(std::size_t n, std::size_t min_size, std::size_t max_size,
                     const std::function<bool(RevisionProblem::Mask)>& fn);

// ---------------------------------------------------------------------------
// Explanations

struct ExplanationReport {
    bool entails_explanandum = false;
    bool consistent = false;
    bool minimal = false;
    /// Proper subsets that still entail the explanandum (single-removal witnesses).
    std::vector<BeliefBase> failing_subsets;

    bool valid() const noexcept { return entails_explanandum && consistent && minimal; }
    std::string summary() const;
};

class InvalidExplanation : public Error {
public:
    explicit InvalidExplanation(ExplanationReport report)
        : Error("invalid explanation: " + report.summary()), report_(std::move(report)) {}

    const ExplanationReport& report() const noexcept { return report_; }

private:
    ExplanationReport report_;
};

/// Checks entailment, consistency and subset-minimality of E for phi. Minimality is
/// decided by removing one element at a time, which suffices because classical
/// entailment is monotone. `context` widens the grounding signature.
ExplanationReport validate_explanation(const BeliefBase& explanation, const Explanandum& phi,
                                       const Signature* context = nullptr);

/// Minimality over every proper subset of E. Exponential; a cross-check for
/// validate_explanation.
bool minimal_by_all_subsets(const BeliefBase& explanation, const Explanandum& phi,
                            const Signature* context = nullptr);

// ---------------------------------------------------------------------------
// Correction kernel and selection

/// Streams every S subset of B u E with a consistent, nonempty remainder, in
/// canonical order. Nothing is produced when B u E is already consistent.
/// When phi is given, preserves_explanandum is filled in.
void enumerate_correction_kernel(const RevisionProblem& problem, const Explanandum* phi,
                                 const std::function<bool(const CorrectionSet&)>& fn);

std::vector<CorrectionSet> correction_kernel(const BeliefBase& base, const BeliefBase& explanation,
                                             Limits limits = {});

/// The correction sets whose remainder still entails phi.
std::vector<CorrectionSet> admissible_selections(const BeliefBase& base, const BeliefBase& explanation,
                                                 const Explanandum& phi, Limits limits = {});
std::vector<CorrectionSet> admissible_selections(const RevisionProblem& problem, const Explanandum& phi);

struct SelectionStrategy {
    enum class Kind { MinCardinality, MaxCardinality, ProtectExplanation, Weighted, SeededRandom, Interactive };

    Kind kind = Kind::MinCardinality;
    /// Weighted: keyed by element text or by a label of the element. Missing keys weigh default_weight.
    std::map<std::string, double> weights;
    double default_weight = 1.0;
    std::uint64_t seed = 0;
    /// Interactive: returns an index into the candidate list.
    std::function<std::size_t(std::span<const CorrectionSet>)> chooser;

    static SelectionStrategy of(Kind k) {
        SelectionStrategy s;
        s.kind = k;
        return s;
    }
    static SelectionStrategy seeded(std::uint64_t seed) {
        SelectionStrategy s;
        s.kind = Kind::SeededRandom;
        s.seed = seed;
        return s;
    }

    /// The kinds whose choice is a pure function of the candidate list.
    bool deterministic() const noexcept;
    std::string name() const;
};

std::optional<SelectionStrategy::Kind> parse_strategy_kind(std::string_view name);
std::string to_string(SelectionStrategy::Kind k);

/// Throws NoCandidates on an empty list; Error when an interactive chooser is
/// missing or returns an out-of-range index.
CorrectionSet select(std::span<const CorrectionSet> candidates, const SelectionStrategy& strategy);

// ---------------------------------------------------------------------------
// Revision

struct RevisionResult {
    std::string operator_name; // "guided" or "falappa"
    BeliefBase revised;
    CorrectionSet retracted;
    std::vector<UnionElement> union_before;
    bool union_consistent = true;
    std::optional<Explanandum> explanandum;
    std::optional<bool> entails_explanandum;
    bool revised_consistent = true;
    std::string strategy;
    std::optional<std::uint64_t> seed;
};

/// (B u E) minus the given retraction, with bookkeeping filled in. Does not check
/// that the retraction is admissible.
RevisionResult apply_retraction(const RevisionProblem& problem, RevisionProblem::Mask retract,
                                const Explanandum* phi);

/// B (.) E: add the explanation, then remove one phi-preserving correction set
/// chosen by the strategy. A consistent union is returned unchanged.
/// Throws InvalidExplanation, CapExceeded.
RevisionResult revise(const BeliefBase& base, const BeliefBase& explanation, const Explanandum& phi,
                      const SelectionStrategy& strategy, Limits limits = {});

/// Revision with a caller-chosen retraction given by element texts. Throws
/// InvalidExplanation, or Error when the retraction is not an admissible
/// correction set.
RevisionResult revise_with(const BeliefBase& base, const BeliefBase& explanation, const Explanandum& phi,
                           std::span<const std::string> retract_texts, Limits limits = {});

} // namespace revisekit
