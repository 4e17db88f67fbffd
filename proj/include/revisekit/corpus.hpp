#pragma once

#include "revisekit/dsl.hpp"
#include "revisekit/metrics.hpp"
#include "revisekit/revision.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace revisekit {

namespace detail {
/// (relative path, file text) for every bundled scenario, sorted by path.
const std::vector<std::pair<std::string_view, std::string_view>>& embedded_corpus();
} // namespace detail

struct CorpusEntry {
    std::string path; // "exp1/s4.scn"
    std::string source;
    Scenario scenario;
    int experiment = 1;

    /// The bundled explanation, or the fact literals as facts for experiment 1.
    BeliefBase explanation() const;
};

/// Parses every bundled scenario of one experiment (1 or 2), in scenario order.
std::vector<CorpusEntry> load_corpus(int experiment);

/// One revision of a scenario together with its coding.
struct CorpusRun {
    std::string pattern; // strategy name, "minimal" or "non-minimal"
    RevisionResult result;
    RevisionClassification classification;
    std::size_t changes = 0;
    ChangeMeasure measure;
    bool admissible = true; // retraction is a phi-preserving correction set
};

struct CorpusRow {
    std::string id;
    ProblemType type = ProblemType::I;
    CorpusRun run;                        // the selection strategy
    std::optional<CorpusRun> minimal;     // retract the categorical statement
    std::optional<CorpusRun> non_minimal; // smallest admissible set of conditionals
    /// D(non-minimal) > D(minimal) held.
    bool verified = false;
    /// "verified 1/2 > 1/3" or "exception 3/5 vs 1/1".
    std::string comparison;
};

struct CorpusReport {
    int experiment = 1;
    std::string strategy;
    std::vector<CorpusRow> rows;
    std::size_t minimal = 0;
    std::size_t non_minimal = 0;
    std::size_t unclassified = 0;
    std::size_t verified = 0;
    std::size_t exceptions = 0;
};

CorpusReport run_corpus(int experiment, const SelectionStrategy& strategy, Limits limits = {});

} // namespace revisekit
