#include "revisekit/logic.hpp"

#include "revisekit/error.hpp"
#include "sat.hpp"

#include <algorithm>
#include <sstream>

namespace revisekit {

// ---------------------------------------------------------------------------
// Formulas

bool Atom::is_ground() const {
    return std::none_of(args.begin(), args.end(), [](const Term& t) { return t.is_variable(); });
}

bool Rule::is_ground() const {
    return head.is_ground() &&
           std::all_of(body.begin(), body.end(), [](const Literal& l) { return l.is_ground(); });
}

namespace {

void collect_vars(const Literal& l, std::vector<std::string>& out) {
    for (const auto& t : l.atom.args) {
        if (t.is_variable() && std::find(out.begin(), out.end(), t.name) == out.end()) {
            out.push_back(t.name);
        }
    }
}

} // namespace

std::vector<std::string> Rule::variables() const {
    std::vector<std::string> out;
    for (const auto& b : body) {
        collect_vars(b, out);
    }
    collect_vars(head, out);
    return out;
}

bool Rule::range_restricted() const {
    std::vector<std::string> in_body;
    for (const auto& b : body) {
        collect_vars(b, in_body);
    }
    std::vector<std::string> in_head;
    collect_vars(head, in_head);
    return std::all_of(in_head.begin(), in_head.end(), [&](const std::string& v) {
        return std::find(in_body.begin(), in_body.end(), v) != in_body.end();
    });
}

bool is_ground(const Formula& f) {
    return std::visit([](const auto& x) { return x.is_ground(); }, f);
}

bool is_rule(const Formula& f) { return std::holds_alternative<Rule>(f); }

std::string to_string(const Term& t) { return t.name; }

std::string to_string(const Atom& a) {
    std::string out = a.predicate;
    if (!a.args.empty()) {
        out += '(';
        for (std::size_t i = 0; i < a.args.size(); ++i) {
            if (i > 0) {
                out += ", ";
            }
            out += a.args[i].name;
        }
        out += ')';
    }
    return out;
}

std::string to_string(const Literal& l) { return (l.negated ? "!" : "") + to_string(l.atom); }

std::string to_string(const Rule& r) {
    std::string out;
    for (std::size_t i = 0; i < r.body.size(); ++i) {
        if (i > 0) {
            out += " & ";
        }
        out += to_string(r.body[i]);
    }
    out += " -> ";
    out += to_string(r.head);
    return out;
}

std::string to_string(const Formula& f) {
    return std::visit([](const auto& x) { return to_string(x); }, f);
}

Literal substitute(const Literal& l, const std::map<std::string, std::string>& binding) {
    Literal out = l;
    for (auto& t : out.atom.args) {
        if (t.is_variable()) {
            if (auto it = binding.find(t.name); it != binding.end()) {
                t = Term::constant(it->second);
            }
        }
    }
    return out;
}

Rule substitute(const Rule& r, const std::map<std::string, std::string>& binding) {
    Rule out;
    out.body.reserve(r.body.size());
    for (const auto& b : r.body) {
        out.body.push_back(substitute(b, binding));
    }
    out.head = substitute(r.head, binding);
    return out;
}

// ---------------------------------------------------------------------------
// BeliefBase

std::string BeliefBase::next_label(bool rule) const {
    std::size_t n = 1;
    for (const auto& s : statements_) {
        if (s.is_rule() == rule) {
            ++n;
        }
    }
    const char prefix = rule ? 'r' : 'f';
    for (;; ++n) {
        std::string candidate = prefix + std::to_string(n);
        if (find_label(candidate) == nullptr) {
            return candidate;
        }
    }
}

void BeliefBase::add(Statement s) {
    if (const auto* l = std::get_if<Literal>(&s.formula); l != nullptr && !l->is_ground()) {
        throw InvalidFormula("fact '" + s.text() + "' is not ground");
    }
    if (const auto* r = std::get_if<Rule>(&s.formula)) {
        if (r->body.empty()) {
            throw InvalidFormula("rule '" + s.text() + "' has an empty body");
        }
        if (!r->range_restricted()) {
            throw InvalidFormula("rule '" + s.text() + "' has a head variable not occurring in its body");
        }
    }
    if (contains(s.formula)) {
        throw InvalidFormula("duplicate element '" + s.text() + "'");
    }
    if (s.label.empty()) {
        s.label = next_label(s.is_rule());
        s.explicit_label = false;
    } else if (find_label(s.label) != nullptr) {
        throw InvalidFormula("duplicate label '" + s.label + "'");
    }
    statements_.push_back(std::move(s));
}

void BeliefBase::add(Formula f) { add(Statement{"", std::move(f), false}); }

std::vector<const Statement*> BeliefBase::facts() const {
    std::vector<const Statement*> out;
    for (const auto& s : statements_) {
        if (!s.is_rule()) {
            out.push_back(&s);
        }
    }
    return out;
}

std::vector<const Statement*> BeliefBase::rules() const {
    std::vector<const Statement*> out;
    for (const auto& s : statements_) {
        if (s.is_rule()) {
            out.push_back(&s);
        }
    }
    return out;
}

const Statement* BeliefBase::find_label(std::string_view label) const {
    for (const auto& s : statements_) {
        if (s.label == label) {
            return &s;
        }
    }
    return nullptr;
}

const Statement* BeliefBase::find(const Formula& f) const {
    for (const auto& s : statements_) {
        if (s.formula == f) {
            return &s;
        }
    }
    return nullptr;
}

std::vector<const Statement*> BeliefBase::canonical_order() const {
    std::vector<std::pair<std::string, const Statement*>> keyed;
    keyed.reserve(statements_.size());
    for (const auto& s : statements_) {
        keyed.emplace_back(s.text(), &s);
    }
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
        bool ra = a.second->is_rule();
        bool rb = b.second->is_rule();
        if (ra != rb) {
            return !ra;
        }
        return a.first < b.first;
    });
    std::vector<const Statement*> out;
    out.reserve(keyed.size());
    for (const auto& [_, s] : keyed) {
        out.push_back(s);
    }
    return out;
}

bool BeliefBase::operator==(const BeliefBase& other) const {
    auto key = [](const BeliefBase& b) {
        std::vector<std::string> out;
        for (const auto& s : b.statements_) {
            out.push_back((s.explicit_label ? s.label + ": " : std::string{}) + s.text());
        }
        std::sort(out.begin(), out.end());
        return out;
    };
    return key(*this) == key(other);
}

// ---------------------------------------------------------------------------
// Explanandum

Explanandum::Explanandum(std::vector<Literal> literals) : literals_(std::move(literals)) {
    if (literals_.empty()) {
        throw InvalidFormula("explanandum must contain at least one literal");
    }
    for (std::size_t i = 0; i < literals_.size(); ++i) {
        if (!literals_[i].is_ground()) {
            throw InvalidFormula("explanandum literal '" + to_string(literals_[i]) + "' is not ground");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (literals_[j] == literals_[i]) {
                throw InvalidFormula("explanandum repeats '" + to_string(literals_[i]) + "'");
            }
            if (literals_[j] == literals_[i].complement()) {
                throw InvalidFormula("explanandum contains '" + to_string(literals_[i]) + "' and its negation");
            }
        }
    }
}

std::string to_string(const Explanandum& phi) {
    std::string out;
    for (std::size_t i = 0; i < phi.literals().size(); ++i) {
        if (i > 0) {
            out += " & ";
        }
        out += to_string(phi.literals()[i]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Signature

void Signature::add_predicate(const std::string& name, std::size_t arity) {
    auto [it, inserted] = predicates_.emplace(name, arity);
    if (!inserted && it->second != arity) {
        throw ArityMismatch(name, it->second, arity);
    }
}

void Signature::add(const Atom& a) {
    add_predicate(a.predicate, a.arity());
    for (const auto& t : a.args) {
        if (!t.is_variable()) {
            add_constant(t.name);
        }
    }
}

void Signature::add(const Formula& f) {
    if (const auto* l = std::get_if<Literal>(&f)) {
        add(*l);
        return;
    }
    const auto& r = std::get<Rule>(f);
    for (const auto& b : r.body) {
        add(b);
    }
    add(r.head);
}

void Signature::add(const BeliefBase& b) {
    for (const auto& s : b.statements()) {
        add(s.formula);
    }
}

void Signature::add(const Explanandum& phi) {
    for (const auto& l : phi.literals()) {
        add(l);
    }
}

void Signature::merge(const Signature& other) {
    for (const auto& c : other.constants_) {
        add_constant(c);
    }
    for (const auto& [p, n] : other.predicates_) {
        add_predicate(p, n);
    }
}

namespace {

// Calls fn for every tuple of `width` constants, last position varying fastest.
template <class Fn>
void for_each_tuple(const std::vector<std::string>& constants, std::size_t width, Fn&& fn) {
    if (width > 0 && constants.empty()) {
        return;
    }
    std::vector<std::size_t> idx(width, 0);
    std::vector<std::string> tuple(width);
    while (true) {
        for (std::size_t i = 0; i < width; ++i) {
            tuple[i] = constants[idx[i]];
        }
        fn(tuple);
        std::size_t pos = width;
        while (pos > 0) {
            --pos;
            if (++idx[pos] < constants.size()) {
                break;
            }
            idx[pos] = 0;
            if (pos == 0) {
                return;
            }
        }
        if (width == 0) {
            return;
        }
    }
}

} // namespace

std::vector<Atom> Signature::herbrand_base() const {
    std::vector<std::string> consts(constants_.begin(), constants_.end());
    std::vector<Atom> out;
    for (const auto& [pred, arity] : predicates_) {
        for_each_tuple(consts, arity, [&](const std::vector<std::string>& tuple) {
            Atom a{pred, {}};
            for (const auto& c : tuple) {
                a.args.push_back(Term::constant(c));
            }
            out.push_back(std::move(a));
        });
    }
    return out;
}

std::size_t Signature::herbrand_size() const {
    std::size_t total = 0;
    for (const auto& [_, arity] : predicates_) {
        std::size_t n = 1;
        for (std::size_t i = 0; i < arity; ++i) {
            n *= constants_.size();
        }
        total += n;
    }
    return total;
}

Signature collect_signature(std::span<const BeliefBase> bases, std::span<const Formula> formulas) {
    Signature sig;
    for (const auto& b : bases) {
        sig.add(b);
    }
    for (const auto& f : formulas) {
        sig.add(f);
    }
    return sig;
}

// ---------------------------------------------------------------------------
// Grounding

std::vector<Formula> ground_statement(const Statement& s, const Signature& sig) {
    if (!s.is_rule()) {
        return {s.formula};
    }
    const auto& rule = std::get<Rule>(s.formula);
    auto vars = rule.variables();
    if (vars.empty()) {
        return {rule};
    }
    if (sig.constants().empty()) {
        throw EmptyUniverse("rule '" + s.text() + "' has variables but the signature has no constants");
    }
    std::vector<std::string> consts(sig.constants().begin(), sig.constants().end());
    std::vector<Formula> out;
    for_each_tuple(consts, vars.size(), [&](const std::vector<std::string>& tuple) {
        std::map<std::string, std::string> binding;
        for (std::size_t i = 0; i < vars.size(); ++i) {
            binding[vars[i]] = tuple[i];
        }
        out.emplace_back(substitute(rule, binding));
    });
    return out;
}

GroundBeliefBase ground(const BeliefBase& base, const Signature& sig) {
    GroundBeliefBase g;
    std::set<std::string> seen;
    auto stmts = base.statements();
    for (std::size_t i = 0; i < stmts.size(); ++i) {
        for (auto& f : ground_statement(stmts[i], sig)) {
            if (seen.insert(to_string(f)).second) {
                g.formulas.push_back(std::move(f));
                g.origin.push_back(i);
            }
        }
    }
    return g;
}

// ---------------------------------------------------------------------------
// Consistency and entailment

bool is_consistent(std::span<const Formula> ground_formulas) {
    sat::Encoder enc;
    auto clauses = enc.encode(ground_formulas);
    return sat::satisfiable(clauses, enc.num_vars());
}

bool entails(std::span<const Formula> ground_formulas, std::span<const Literal> phi) {
    sat::Encoder enc;
    auto clauses = enc.encode(ground_formulas);
    sat::Clause negated;
    for (const auto& l : phi) {
        negated.push_back(-enc.lit(l));
    }
    clauses.push_back(std::move(negated));
    return !sat::satisfiable(clauses, enc.num_vars());
}

bool entails(std::span<const Formula> ground_formulas, const Literal& l) {
    return entails(ground_formulas, std::span<const Literal>(&l, 1));
}

bool entails_negation(std::span<const Formula> ground_formulas, std::span<const Literal> phi) {
    sat::Encoder enc;
    auto clauses = enc.encode(ground_formulas);
    for (const auto& l : phi) {
        clauses.push_back({enc.lit(l)});
    }
    return !sat::satisfiable(clauses, enc.num_vars());
}

std::vector<Literal> consequences(const BeliefBase& base, const Signature& sig) {
    auto g = ground(base, sig);
    sat::Encoder enc;
    auto clauses = enc.encode(g.formulas);
    if (!sat::satisfiable(clauses, enc.num_vars())) {
        throw InconsistentBase("consequences are undefined for an inconsistent base");
    }
    std::vector<Literal> out;
    for (auto& atom : sig.herbrand_base()) {
        for (bool neg : {false, true}) {
            Literal l{atom, neg};
            auto probe = clauses;
            probe.push_back({-enc.lit(l)});
            if (!sat::satisfiable(probe, enc.num_vars())) {
                out.push_back(std::move(l));
            }
        }
    }
    std::sort(out.begin(), out.end(),
              [](const Literal& a, const Literal& b) { return to_string(a) < to_string(b); });
    return out;
}

// ---------------------------------------------------------------------------
// Truth-table oracle

std::optional<bool> Interpretation::value(const Atom& a) const {
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (atoms[i] == a) {
            return values[i];
        }
    }
    return std::nullopt;
}

bool Interpretation::satisfies(const Literal& l) const {
    auto v = value(l.atom);
    if (!v) {
        throw InvalidFormula("atom '" + to_string(l.atom) + "' is outside the interpretation's Herbrand base");
    }
    return *v != l.negated;
}

bool Interpretation::satisfies(const Formula& f) const {
    if (const auto* l = std::get_if<Literal>(&f)) {
        return satisfies(*l);
    }
    const auto& r = std::get<Rule>(f);
    for (const auto& b : r.body) {
        if (!satisfies(b)) {
            return true;
        }
    }
    return satisfies(r.head);
}

std::vector<Interpretation> enumerate_models(std::span<const Formula> ground_formulas, const Signature& sig,
                                             std::size_t atom_cap) {
    auto atoms = sig.herbrand_base();
    if (atoms.size() > atom_cap) {
        throw CapExceeded("Herbrand base atom", atoms.size(), atom_cap);
    }
    const std::size_t n = atoms.size();
    std::map<std::string, std::size_t> position;
    for (std::size_t i = 0; i < n; ++i) {
        position.emplace(to_string(atoms[i]), i);
    }
    // Each formula as (body, head) over Herbrand positions; facts have an empty body.
    struct Slot {
        std::size_t pos;
        bool negated;
    };
    auto slot = [&](const Literal& l) {
        auto it = position.find(to_string(l.atom));
        if (it == position.end()) {
            throw InvalidFormula("atom '" + to_string(l.atom) + "' is outside the signature's Herbrand base");
        }
        return Slot{it->second, l.negated};
    };
    std::vector<std::pair<std::vector<Slot>, Slot>> compiled;
    for (const auto& f : ground_formulas) {
        if (const auto* l = std::get_if<Literal>(&f)) {
            compiled.push_back({{}, slot(*l)});
        } else {
            const auto& r = std::get<Rule>(f);
            std::vector<Slot> body;
            for (const auto& b : r.body) {
                body.push_back(slot(b));
            }
            compiled.push_back({std::move(body), slot(r.head)});
        }
    }

    std::vector<Interpretation> models;
    std::vector<bool> values(n, false);
    auto holds = [&](const Slot& s) { return values[s.pos] != s.negated; };
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t bits = 0; bits < total; ++bits) {
        for (std::size_t i = 0; i < n; ++i) {
            values[i] = ((bits >> (n - 1 - i)) & 1U) != 0;
        }
        bool ok = std::all_of(compiled.begin(), compiled.end(), [&](const auto& c) {
            bool body = std::all_of(c.first.begin(), c.first.end(), holds);
            return !body || holds(c.second);
        });
        if (ok) {
            models.push_back(Interpretation{atoms, values});
        }
    }
    return models;
}

} // namespace revisekit
