#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace revisekit {

// ---------------------------------------------------------------------------
// Terms, atoms, literals, rules

struct Term {
    enum class Kind { Constant, Variable };

    Kind kind = Kind::Constant;
    std::string name;

    static Term constant(std::string name) { return {Kind::Constant, std::move(name)}; }
    static Term variable(std::string name) { return {Kind::Variable, std::move(name)}; }

    bool is_variable() const noexcept { return kind == Kind::Variable; }

    auto operator<=>(const Term&) const = default;
};

struct Atom {
    std::string predicate;
    std::vector<Term> args;

    bool is_ground() const;
    std::size_t arity() const noexcept { return args.size(); }

    auto operator<=>(const Atom&) const = default;
};

struct Literal {
    Atom atom;
    bool negated = false;

    Literal complement() const { return {atom, !negated}; }
    bool is_ground() const { return atom.is_ground(); }

    auto operator<=>(const Literal&) const = default;
};

/// Conjunction of literals implying a single literal. Variables are implicitly
/// universally quantified and every head variable must occur in the body.
struct Rule {
    std::vector<Literal> body;
    Literal head;

    bool is_ground() const;
    /// Distinct variable names in order of first occurrence.
    std::vector<std::string> variables() const;
    bool range_restricted() const;

    auto operator<=>(const Rule&) const = default;
};

using Formula = std::variant<Literal, Rule>;

bool is_ground(const Formula& f);
bool is_rule(const Formula& f);

std::string to_string(const Term& t);
std::string to_string(const Atom& a);
std::string to_string(const Literal& l);
std::string to_string(const Rule& r);
std::string to_string(const Formula& f);

/// Apply a variable substitution. Unbound variables are left in place.
Literal substitute(const Literal& l, const std::map<std::string, std::string>& binding);
Rule substitute(const Rule& r, const std::map<std::string, std::string>& binding);

// ---------------------------------------------------------------------------
// Belief bases

/// A labeled element of a belief base.
struct Statement {
    std::string label;
    Formula formula;
    /// Label came from the source text rather than from automatic numbering.
    bool explicit_label = false;

    bool is_rule() const { return revisekit::is_rule(formula); }
    std::string text() const { return to_string(formula); }
};

/// Facts (ground literals) and range-restricted rules, each carrying a label.
/// No two elements share a canonical form and no two share a label.
class BeliefBase {
public:
    BeliefBase() = default;

    /// Throws InvalidFormula on a non-ground fact, a rule violating range
    /// restriction, a duplicate element, or a duplicate label.
    void add(Statement s);

    /// Add with an automatically chosen label (f<n> for facts, r<n> for rules).
    void add(Formula f);

    std::span<const Statement> statements() const noexcept { return statements_; }
    std::vector<const Statement*> facts() const;
    std::vector<const Statement*> rules() const;

    const Statement* find_label(std::string_view label) const;
    const Statement* find(const Formula& f) const;
    bool contains(const Formula& f) const { return find(f) != nullptr; }

    std::size_t size() const noexcept { return statements_.size(); }
    bool empty() const noexcept { return statements_.empty(); }

    /// Statements sorted facts-first, each group by canonical text.
    std::vector<const Statement*> canonical_order() const;

    /// Equality under canonical form: same formulas, same explicit labels.
    bool operator==(const BeliefBase& other) const;

private:
    std::string next_label(bool rule) const;

    std::vector<Statement> statements_;
};

/// A nonempty conjunction of ground literals without repeats or complementary pairs.
class Explanandum {
public:
    Explanandum() = default;
    /// Throws InvalidFormula if the conjunction violates the invariants.
    explicit Explanandum(std::vector<Literal> literals);

    std::span<const Literal> literals() const noexcept { return literals_; }
    std::size_t size() const noexcept { return literals_.size(); }
    bool empty() const noexcept { return literals_.empty(); }

    bool operator==(const Explanandum&) const = default;

private:
    std::vector<Literal> literals_;
};

std::string to_string(const Explanandum& phi);

// ---------------------------------------------------------------------------
// Signature and grounding

class Signature {
public:
    void add_constant(const std::string& name) { constants_.insert(name); }
    /// Throws ArityMismatch.
    void add_predicate(const std::string& name, std::size_t arity);
    void add(const Atom& a);
    void add(const Literal& l) { add(l.atom); }
    void add(const Formula& f);
    void add(const BeliefBase& b);
    void add(const Explanandum& phi);
    void merge(const Signature& other);

    const std::set<std::string>& constants() const noexcept { return constants_; }
    const std::map<std::string, std::size_t>& predicates() const noexcept { return predicates_; }

    bool empty() const noexcept { return constants_.empty() && predicates_.empty(); }

    /// Every ground atom over the signature, ordered by predicate then arguments.
    std::vector<Atom> herbrand_base() const;
    std::size_t herbrand_size() const;

    bool operator==(const Signature&) const = default;

private:
    std::set<std::string> constants_;
    std::map<std::string, std::size_t> predicates_;
};

Signature collect_signature(std::span<const BeliefBase> bases, std::span<const Formula> formulas = {});

struct GroundBeliefBase {
    std::vector<Formula> formulas;
    /// origin[i] indexes the statement of the source base that produced formulas[i].
    std::vector<std::size_t> origin;
};

/// Ground instances of one statement: the fact itself, or one rule instance per
/// assignment of signature constants to the rule's variables.
std::vector<Formula> ground_statement(const Statement& s, const Signature& sig);

GroundBeliefBase ground(const BeliefBase& base, const Signature& sig);

// ---------------------------------------------------------------------------
// Consistency and entailment (clausal search)

bool is_consistent(std::span<const Formula> ground_formulas);

/// g |= l1 & ... & lk. True for every phi when g is inconsistent.
bool entails(std::span<const Formula> ground_formulas, std::span<const Literal> phi);
bool entails(std::span<const Formula> ground_formulas, const Literal& l);

/// g |= !(l1 & ... & lk), i.e. g together with every li is unsatisfiable.
bool entails_negation(std::span<const Formula> ground_formulas, std::span<const Literal> phi);

/// Every ground literal over sig's Herbrand base entailed by the grounded base,
/// in canonical order. Throws InconsistentBase.
std::vector<Literal> consequences(const BeliefBase& base, const Signature& sig);

// ---------------------------------------------------------------------------
// Truth-table oracle

struct Interpretation {
    std::vector<Atom> atoms;
    std::vector<bool> values;

    std::optional<bool> value(const Atom& a) const;
    bool satisfies(const Literal& l) const;
    bool satisfies(const Formula& f) const;
};

inline constexpr std::size_t kDefaultAtomCap = 24;

/// All models of g over sig's Herbrand base, in binary counting order with the
/// first Herbrand atom most significant. Throws CapExceeded.
std::vector<Interpretation> enumerate_models(std::span<const Formula> ground_formulas, const Signature& sig,
                                             std::size_t atom_cap = kDefaultAtomCap);

} // namespace revisekit
