#pragma once

#include "revisekit/error.hpp"
#include "revisekit/logic.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace revisekit {

struct SourceSpan {
    std::size_t line = 1;   // 1-based
    std::size_t column = 1; // 1-based
    std::size_t length = 0;
};

class ParseError : public Error {
public:
    ParseError(SourceSpan span, std::string message, std::vector<std::string> expected = {});

    const SourceSpan& span() const noexcept { return span_; }
    const std::string& message() const noexcept { return message_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    SourceSpan span_;
    std::string message_;
    std::vector<std::string> expected_;
};

/// A scenario violates one of its structural invariants. invariant() names it.
class ScenarioInvalid : public Error {
public:
    ScenarioInvalid(std::string invariant, const std::string& detail)
        : Error(invariant + ": " + detail), invariant_(std::move(invariant)) {}

    const std::string& invariant() const noexcept { return invariant_; }

private:
    std::string invariant_;
};

enum class ProblemType { I, II, III };
enum class StatementKind { Conditional, Categorical };

std::string to_string(ProblemType t);
std::string to_string(StatementKind k);

struct Scenario {
    std::string id;
    ProblemType type = ProblemType::I;
    /// Statements in source order; labels are S1, S2, ... unless given.
    BeliefBase statements;
    /// Parallel to statements.statements().
    std::vector<StatementKind> kinds;
    Explanandum fact;
    std::optional<BeliefBase> explanation;

    StatementKind kind_of(std::string_view label) const;
    std::vector<std::string> labels_of(StatementKind k) const;

    bool operator==(const Scenario&) const = default;
};

/// base := { [label ":"] (literal | literal {"&" literal} "->" literal) "." }
/// Throws ParseError (syntax, non-ground fact, unsafe rule, duplicates) or ArityMismatch.
BeliefBase parse_base(std::string_view text);

/// A conjunction of ground literals separated by "&", optionally terminated by ".".
Explanandum parse_explanandum(std::string_view text);

/// Parses the sectioned scenario format and validates the scenario invariants.
/// Throws ParseError, ArityMismatch or ScenarioInvalid.
Scenario parse_scenario(std::string_view text);

/// Checks the invariants of an already constructed scenario. Throws ScenarioInvalid.
void validate_scenario(const Scenario& sc);

/// True when the text's first section header is a scenario section.
bool looks_like_scenario(std::string_view text);

/// Canonical text: facts before rules, each group ordered by formula text, one
/// statement per line. Only explicit labels are written.
std::string render(const BeliefBase& base);
std::string render(const Scenario& sc);

} // namespace revisekit
