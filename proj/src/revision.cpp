#include "revisekit/revision.hpp"

#include "sat.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <set>

namespace revisekit {

std::string qualified(const Origin& o) {
    return (o.side == Side::Base ? "base:" : "explanation:") + o.label;
}

bool UnionElement::from_base() const {
    return std::any_of(origins.begin(), origins.end(), [](const Origin& o) { return o.side == Side::Base; });
}

bool UnionElement::from_explanation() const {
    return std::any_of(origins.begin(), origins.end(),
                       [](const Origin& o) { return o.side == Side::Explanation; });
}

const std::string& UnionElement::primary_label() const {
    for (const auto& o : origins) {
        if (o.side == Side::Base) {
            return o.label;
        }
    }
    return origins.front().label;
}

std::optional<std::string> UnionElement::label_in(Side side) const {
    for (const auto& o : origins) {
        if (o.side == side) {
            return o.label;
        }
    }
    return std::nullopt;
}

std::vector<std::string> CorrectionSet::texts() const {
    std::vector<std::string> out;
    out.reserve(elements.size());
    for (const auto& e : elements) {
        out.push_back(e.text);
    }
    return out;
}

bool CorrectionSet::contains(std::string_view text) const {
    return std::any_of(elements.begin(), elements.end(), [&](const UnionElement& e) { return e.text == text; });
}

std::string CorrectionSet::to_string() const {
    std::string out = "{";
    for (std::size_t i = 0; i < elements.size(); ++i) {
        if (i > 0) {
            out += ", ";
        }
        out += elements[i].text;
    }
    return out + "}";
}

// ---------------------------------------------------------------------------
// RevisionProblem

RevisionProblem::RevisionProblem(const BeliefBase& base, const BeliefBase& explanation, const Explanandum* phi,
                                 Limits limits) {
    signature_.add(base);
    signature_.add(explanation);
    if (phi != nullptr) {
        signature_.add(*phi);
    }

    std::map<std::string, UnionElement> merged;
    auto absorb = [&](const BeliefBase& b, Side side) {
        for (const auto& s : b.statements()) {
            auto text = s.text();
            auto [it, inserted] = merged.try_emplace(text, UnionElement{s.formula, text, {}});
            it->second.origins.push_back(Origin{side, s.label, s.explicit_label});
        }
    };
    absorb(base, Side::Base);
    absorb(explanation, Side::Explanation);
    for (auto& [_, e] : merged) {
        elements_.push_back(std::move(e));
    }
    if (elements_.size() > 63) {
        throw CapExceeded("union element", elements_.size(), 63);
    }

    std::set<std::string> distinct;
    for (const auto& e : elements_) {
        ground_.push_back(ground_statement(Statement{e.primary_label(), e.formula, false}, signature_));
        for (const auto& g : ground_.back()) {
            distinct.insert(to_string(g));
        }
    }
    ground_size_ = distinct.size();
    if (ground_size_ > limits.max_ground) {
        throw CapExceeded("ground formula", ground_size_, limits.max_ground);
    }

    sat::Encoder enc;
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        std::vector<sat::Clause> cs;
        for (const auto& g : ground_[i]) {
            enc.add(g, cs);
        }
        clauses_.push_back(std::move(cs));
        if (elements_[i].from_base()) {
            base_mask_ |= Mask{1} << i;
        }
        if (elements_[i].from_explanation()) {
            explanation_mask_ |= Mask{1} << i;
        }
    }
    // Atom numbering mirrors the encoder; rebuild it for lookups of outside literals.
    for (const auto& e : ground_) {
        for (const auto& g : e) {
            auto note = [&](const Literal& l) {
                atom_var_.try_emplace(to_string(l.atom), enc.var(l.atom));
            };
            if (const auto* l = std::get_if<Literal>(&g)) {
                note(*l);
            } else {
                const auto& r = std::get<Rule>(g);
                for (const auto& b : r.body) {
                    note(b);
                }
                note(r.head);
            }
        }
    }
    num_vars_ = enc.num_vars();
}

RevisionProblem::Mask RevisionProblem::all() const noexcept {
    return elements_.empty() ? 0 : (Mask{1} << elements_.size()) - 1;
}

std::vector<std::vector<int>> RevisionProblem::clauses_of(Mask keep) const {
    std::vector<std::vector<int>> out;
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        if ((keep >> i) & 1U) {
            out.insert(out.end(), clauses_[i].begin(), clauses_[i].end());
        }
    }
    return out;
}

int RevisionProblem::literal_code(const Literal& l, std::map<std::string, int>& extra) const {
    auto key = to_string(l.atom);
    int v;
    if (auto it = atom_var_.find(key); it != atom_var_.end()) {
        v = it->second;
    } else {
        auto [e, _] = extra.try_emplace(key, num_vars_ + static_cast<int>(extra.size()) + 1);
        v = e->second;
    }
    return l.negated ? -v : v;
}

bool RevisionProblem::consistent(Mask keep) const { return sat::satisfiable(clauses_of(keep), num_vars_); }

bool RevisionProblem::entails(Mask keep, std::span<const Literal> phi) const {
    auto cs = clauses_of(keep);
    std::map<std::string, int> extra;
    sat::Clause negated;
    for (const auto& l : phi) {
        negated.push_back(-literal_code(l, extra));
    }
    cs.push_back(std::move(negated));
    return !sat::satisfiable(cs, num_vars_ + static_cast<int>(extra.size()));
}

bool RevisionProblem::entails_negation(Mask keep, std::span<const Literal> phi) const {
    auto cs = clauses_of(keep);
    std::map<std::string, int> extra;
    for (const auto& l : phi) {
        cs.push_back({literal_code(l, extra)});
    }
    return !sat::satisfiable(cs, num_vars_ + static_cast<int>(extra.size()));
}

std::vector<Formula> RevisionProblem::ground_formulas(Mask keep) const {
    std::vector<Formula> out;
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        if ((keep >> i) & 1U) {
            out.insert(out.end(), ground_[i].begin(), ground_[i].end());
        }
    }
    return out;
}

std::vector<UnionElement> RevisionProblem::pick(Mask m) const {
    std::vector<UnionElement> out;
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        if ((m >> i) & 1U) {
            out.push_back(elements_[i]);
        }
    }
    return out;
}

RevisionProblem::Mask RevisionProblem::mask_of(std::span<const std::string> texts) const {
    Mask m = 0;
    for (const auto& t : texts) {
        auto it = std::find_if(elements_.begin(), elements_.end(), [&](const UnionElement& e) { return e.text == t; });
        if (it == elements_.end()) {
            throw UnknownLabel("'" + t + "' is not an element of the union");
        }
        m |= Mask{1} << static_cast<std::size_t>(it - elements_.begin());
    }
    return m;
}

RevisionProblem::Mask RevisionProblem::mask_of(const CorrectionSet& set) const {
    auto texts = set.texts();
    return mask_of(texts);
}

BeliefBase RevisionProblem::to_base(Mask keep) const {
    BeliefBase out;
    std::set<std::string> used;
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        if ((keep >> i) & 1U) {
            for (const auto& o : elements_[i].origins) {
                if (o.side == Side::Base) {
                    used.insert(o.label);
                }
            }
        }
    }
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        if (((keep >> i) & 1U) == 0) {
            continue;
        }
        const auto& e = elements_[i];
        const Origin* origin = &e.origins.front();
        for (const auto& o : e.origins) {
            if (o.side == Side::Base) {
                origin = &o;
                break;
            }
        }
        std::string label = origin->label;
        if (origin->side == Side::Explanation) {
            while (used.count(label) != 0) {
                label += "_e";
            }
            used.insert(label);
        }
        out.add(Statement{label, e.formula, origin->explicit_label});
    }
    return out;
}

void for_each_subset(std::size_t n, std::size_t min_size, std::size_t max_size,
                     const std::function<bool(RevisionProblem::Mask)>& fn) {
    max_size = std::min(max_size, n);
    for (std::size_t k = min_size; k <= max_size; ++k) {
        if (k == 0) {
            if (!fn(0)) {
                return;
            }
            continue;
        }
        std::vector<std::size_t> idx(k);
        for (std::size_t i = 0; i < k; ++i) {
            idx[i] = i;
        }
        while (true) {
            RevisionProblem::Mask m = 0;
            for (auto i : idx) {
                m |= RevisionProblem::Mask{1} << i;
            }
            if (!fn(m)) {
                return;
            }
            // next combination in lexicographic order
            std::size_t pos = k;
            while (pos > 0 && idx[pos - 1] == n - k + pos - 1) {
                --pos;
            }
            if (pos == 0) {
                break;
            }
            ++idx[pos - 1];
            for (std::size_t j = pos; j < k; ++j) {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Explanations

std::string ExplanationReport::summary() const {
    std::string out;
    auto add = [&](const char* s) {
        if (!out.empty()) {
            out += "; ";
        }
        out += s;
    };
    if (!entails_explanandum) {
        add("does not entail the explanandum");
    }
    if (!consistent) {
        add("is inconsistent");
    }
    if (!minimal) {
        add("is not minimal");
    }
    return out.empty() ? "valid" : out;
}

namespace {

struct GroundedExplanation {
    std::vector<std::vector<Formula>> per_statement;

    std::vector<Formula> subset(std::uint64_t keep) const {
        std::vector<Formula> out;
        for (std::size_t i = 0; i < per_statement.size(); ++i) {
            if ((keep >> i) & 1U) {
                out.insert(out.end(), per_statement[i].begin(), per_statement[i].end());
            }
        }
        return out;
    }
};

GroundedExplanation ground_explanation(const BeliefBase& e, const Explanandum& phi, const Signature* context) {
    Signature sig;
    sig.add(e);
    sig.add(phi);
    if (context != nullptr) {
        sig.merge(*context);
    }
    GroundedExplanation g;
    for (const auto& s : e.statements()) {
        g.per_statement.push_back(ground_statement(s, sig));
    }
    return g;
}

BeliefBase sub_base(const BeliefBase& e, std::uint64_t keep) {
    BeliefBase out;
    auto stmts = e.statements();
    for (std::size_t i = 0; i < stmts.size(); ++i) {
        if ((keep >> i) & 1U) {
            out.add(stmts[i]);
        }
    }
    return out;
}

} // namespace

ExplanationReport validate_explanation(const BeliefBase& explanation, const Explanandum& phi,
                                       const Signature* context) {
    if (explanation.size() > 63) {
        throw CapExceeded("explanation element", explanation.size(), 63);
    }
    auto g = ground_explanation(explanation, phi, context);
    const std::size_t n = explanation.size();
    const std::uint64_t full = n == 0 ? 0 : (std::uint64_t{1} << n) - 1;

    ExplanationReport r;
    auto all = g.subset(full);
    r.entails_explanandum = entails(all, phi.literals());
    r.consistent = is_consistent(all);
    r.minimal = true;
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t keep = full & ~(std::uint64_t{1} << i);
        if (entails(g.subset(keep), phi.literals())) {
            r.minimal = false;
            r.failing_subsets.push_back(sub_base(explanation, keep));
        }
    }
    return r;
}

bool minimal_by_all_subsets(const BeliefBase& explanation, const Explanandum& phi, const Signature* context) {
    if (explanation.size() > 63) {
        throw CapExceeded("explanation element", explanation.size(), 63);
    }
    auto g = ground_explanation(explanation, phi, context);
    const std::size_t n = explanation.size();
    const std::uint64_t full = n == 0 ? 0 : (std::uint64_t{1} << n) - 1;
    for (std::uint64_t keep = 0; keep < full; ++keep) {
        if (entails(g.subset(keep), phi.literals())) {
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Kernel

void enumerate_correction_kernel(const RevisionProblem& problem, const Explanandum* phi,
                                 const std::function<bool(const CorrectionSet&)>& fn) {
    const auto full = problem.all();
    if (problem.size() == 0 || problem.consistent(full)) {
        return;
    }
    for_each_subset(problem.size(), 1, problem.size() - 1, [&](RevisionProblem::Mask m) {
        auto keep = full & ~m;
        if (!problem.consistent(keep)) {
            return true;
        }
        CorrectionSet cs{problem.pick(m), false};
        if (phi != nullptr) {
            cs.preserves_explanandum = problem.entails(keep, phi->literals());
        }
        return fn(cs);
    });
}

std::vector<CorrectionSet> correction_kernel(const BeliefBase& base, const BeliefBase& explanation, Limits limits) {
    RevisionProblem problem(base, explanation, nullptr, limits);
    std::vector<CorrectionSet> out;
    enumerate_correction_kernel(problem, nullptr, [&](const CorrectionSet& cs) {
        out.push_back(cs);
        return true;
    });
    return out;
}

std::vector<CorrectionSet> admissible_selections(const RevisionProblem& problem, const Explanandum& phi) {
    std::vector<CorrectionSet> out;
    enumerate_correction_kernel(problem, &phi, [&](const CorrectionSet& cs) {
        if (cs.preserves_explanandum) {
            out.push_back(cs);
        }
        return true;
    });
    return out;
}

std::vector<CorrectionSet> admissible_selections(const BeliefBase& base, const BeliefBase& explanation,
                                                 const Explanandum& phi, Limits limits) {
    RevisionProblem problem(base, explanation, &phi, limits);
    return admissible_selections(problem, phi);
}

// ---------------------------------------------------------------------------
// Selection

bool SelectionStrategy::deterministic() const noexcept {
    return kind != Kind::SeededRandom && kind != Kind::Interactive;
}

std::string to_string(SelectionStrategy::Kind k) {
    using K = SelectionStrategy::Kind;
    switch (k) {
    case K::MinCardinality:
        return "min-cardinality";
    case K::MaxCardinality:
        return "max-cardinality";
    case K::ProtectExplanation:
        return "protect-explanation";
    case K::Weighted:
        return "weighted";
    case K::SeededRandom:
        return "seeded-random";
    case K::Interactive:
        return "interactive";
    }
    return "?";
}

std::string SelectionStrategy::name() const { return to_string(kind); }

std::optional<SelectionStrategy::Kind> parse_strategy_kind(std::string_view name) {
    using K = SelectionStrategy::Kind;
    for (auto k : {K::MinCardinality, K::MaxCardinality, K::ProtectExplanation, K::Weighted, K::SeededRandom,
                   K::Interactive}) {
        if (to_string(k) == name) {
            return k;
        }
    }
    return std::nullopt;
}

namespace {

bool canonical_less(const CorrectionSet& a, const CorrectionSet& b) {
    if (a.size() != b.size()) {
        return a.size() < b.size();
    }
    return a.texts() < b.texts();
}

double weight_of(const UnionElement& e, const SelectionStrategy& s) {
    if (auto it = s.weights.find(e.text); it != s.weights.end()) {
        return it->second;
    }
    for (const auto& o : e.origins) {
        if (auto it = s.weights.find(o.label); it != s.weights.end()) {
            return it->second;
        }
    }
    return s.default_weight;
}

// Uniform index below n by rejection sampling, stable across standard libraries.
std::size_t uniform_below(std::mt19937_64& gen, std::size_t n) {
    const std::uint64_t bound = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t r;
    do {
        r = gen();
    } while (r >= limit);
    return static_cast<std::size_t>(r % bound);
}

const CorrectionSet& smallest(const std::vector<const CorrectionSet*>& sorted) {
    return **std::min_element(sorted.begin(), sorted.end(),
                              [](const CorrectionSet* a, const CorrectionSet* b) { return a->size() < b->size(); });
}

} // namespace

CorrectionSet select(std::span<const CorrectionSet> candidates, const SelectionStrategy& strategy) {
    using K = SelectionStrategy::Kind;
    if (candidates.empty()) {
        throw NoCandidates("no correction set to select from");
    }
    std::vector<const CorrectionSet*> sorted;
    for (const auto& c : candidates) {
        sorted.push_back(&c);
    }
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const CorrectionSet* a, const CorrectionSet* b) { return canonical_less(*a, *b); });

    switch (strategy.kind) {
    case K::MinCardinality:
        return *sorted.front();
    case K::MaxCardinality: {
        // first of the largest size in canonical order
        std::size_t best = sorted.back()->size();
        for (const auto* c : sorted) {
            if (c->size() == best) {
                return *c;
            }
        }
        return *sorted.back();
    }
    case K::ProtectExplanation: {
        std::vector<const CorrectionSet*> disjoint;
        for (const auto* c : sorted) {
            if (std::none_of(c->elements.begin(), c->elements.end(),
                             [](const UnionElement& e) { return e.from_explanation(); })) {
                disjoint.push_back(c);
            }
        }
        return disjoint.empty() ? smallest(sorted) : smallest(disjoint);
    }
    case K::Weighted: {
        const CorrectionSet* best = nullptr;
        double best_w = 0;
        for (const auto* c : sorted) {
            double w = 0;
            for (const auto& e : c->elements) {
                w += weight_of(e, strategy);
            }
            if (best == nullptr || w < best_w) {
                best = c;
                best_w = w;
            }
        }
        return *best;
    }
    case K::SeededRandom: {
        std::mt19937_64 gen(strategy.seed);
        return *sorted[uniform_below(gen, sorted.size())];
    }
    case K::Interactive: {
        if (!strategy.chooser) {
            throw Error("interactive selection needs a chooser");
        }
        std::vector<CorrectionSet> ordered;
        for (const auto* c : sorted) {
            ordered.push_back(*c);
        }
        std::size_t pick = strategy.chooser(ordered);
        if (pick >= ordered.size()) {
            throw Error("selection index " + std::to_string(pick) + " is out of range");
        }
        return ordered[pick];
    }
    }
    throw Error("unknown selection strategy");
}

// ---------------------------------------------------------------------------
// Revision

RevisionResult apply_retraction(const RevisionProblem& problem, RevisionProblem::Mask retract,
                                const Explanandum* phi) {
    const auto full = problem.all();
    const auto keep = full & ~retract;
    RevisionResult r;
    r.operator_name = "guided";
    r.union_before.assign(problem.elements().begin(), problem.elements().end());
    r.union_consistent = problem.consistent(full);
    r.revised = problem.to_base(keep);
    r.retracted.elements = problem.pick(retract);
    r.revised_consistent = problem.consistent(keep);
    if (phi != nullptr) {
        r.explanandum = *phi;
        bool ok = problem.entails(keep, phi->literals());
        r.entails_explanandum = ok;
        r.retracted.preserves_explanandum = ok;
    }
    return r;
}

namespace {

RevisionProblem checked_problem(const BeliefBase& base, const BeliefBase& explanation, const Explanandum& phi,
                                Limits limits) {
    RevisionProblem problem(base, explanation, &phi, limits);
    auto report = validate_explanation(explanation, phi, &problem.signature());
    if (!report.valid()) {
        throw InvalidExplanation(std::move(report));
    }
    return problem;
}

} // namespace

RevisionResult revise(const BeliefBase& base, const BeliefBase& explanation, const Explanandum& phi,
                      const SelectionStrategy& strategy, Limits limits) {
    auto problem = checked_problem(base, explanation, phi, limits);
    RevisionProblem::Mask retract = 0;
    if (!problem.consistent(problem.all())) {
        auto candidates = admissible_selections(problem, phi);
        retract = problem.mask_of(select(candidates, strategy));
    }
    auto r = apply_retraction(problem, retract, &phi);
    r.strategy = strategy.name();
    if (strategy.kind == SelectionStrategy::Kind::SeededRandom) {
        r.seed = strategy.seed;
    }
    return r;
}

RevisionResult revise_with(const BeliefBase& base, const BeliefBase& explanation, const Explanandum& phi,
                           std::span<const std::string> retract_texts, Limits limits) {
    auto problem = checked_problem(base, explanation, phi, limits);
    auto mask = problem.mask_of(retract_texts);
    const auto full = problem.all();
    bool ok;
    if (problem.consistent(full)) {
        ok = mask == 0;
    } else {
        auto keep = full & ~mask;
        ok = mask != 0 && keep != 0 && problem.consistent(keep) && problem.entails(keep, phi.literals());
    }
    if (!ok) {
        std::string listed;
        for (const auto& t : retract_texts) {
            listed += (listed.empty() ? "" : ", ") + t;
        }
        throw Error("{" + listed + "} is not an admissible correction set");
    }
    auto r = apply_retraction(problem, mask, &phi);
    r.strategy = "forced";
    return r;
}

} // namespace revisekit
