#include "revisekit/postulates.hpp"

#include "revisekit/dsl.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <set>

namespace revisekit {

std::string to_string(Postulate p) {
    switch (p) {
    case Postulate::Inclusion:
        return "inclusion";
    case Postulate::Vacuity:
        return "vacuity";
    case Postulate::Consistency:
        return "consistency";
    case Postulate::Reversion:
        return "reversion";
    case Postulate::ConstrainedAcceptance:
        return "constrained-acceptance";
    case Postulate::UnconstrainedAcceptance:
        return "unconstrained-acceptance";
    case Postulate::StrongAcceptance:
        return "strong-acceptance";
    }
    return "?";
}

bool PostulateReport::all_hold() const {
    return std::all_of(checks.begin(), checks.end(), [](const PostulateCheck& c) { return c.holds; });
}

std::vector<Postulate> PostulateReport::violations() const {
    std::vector<Postulate> out;
    for (auto p : kAllPostulates) {
        if (!(*this)[p].holds) {
            out.push_back(p);
        }
    }
    return out;
}

Witness make_witness(const BeliefBase& base, const BeliefBase& explanation, const Explanandum& phi,
                     const RevisionResult& result) {
    Witness w;
    w.base = render(base);
    w.explanation = render(explanation);
    w.explanandum = to_string(phi);
    w.strategy = result.operator_name + "/" + result.strategy;
    w.seed = result.seed;
    w.retracted = result.retracted.texts();
    w.remainder = render(result.revised);
    return w;
}

namespace {

std::set<std::string> texts_of(const BeliefBase& b) {
    std::set<std::string> out;
    for (const auto& s : b.statements()) {
        out.insert(s.text());
    }
    return out;
}

std::vector<Formula> grounded(const BeliefBase& b, const Signature& sig) { return ground(b, sig).formulas; }

} // namespace

PostulateReport check_postulates(const BeliefBase& base, const BeliefBase& explanation, const Explanandum& phi,
                                 const RevisionResult& result, Limits) {
    Signature sig;
    sig.add(base);
    sig.add(explanation);
    sig.add(phi);
    sig.add(result.revised);

    auto uni = texts_of(base);
    uni.merge(texts_of(explanation));
    const auto revised = texts_of(result.revised);

    std::vector<Formula> union_ground;
    {
        auto gb = grounded(base, sig);
        auto ge = grounded(explanation, sig);
        union_ground = gb;
        union_ground.insert(union_ground.end(), ge.begin(), ge.end());
    }
    const auto revised_ground = grounded(result.revised, sig);
    const bool union_consistent = is_consistent(union_ground);
    const bool revised_entails = entails(revised_ground, phi.literals());
    const bool base_rejects = entails_negation(grounded(base, sig), phi.literals());

    PostulateReport rep;
    auto set = [&](Postulate p, bool antecedent, bool consequent) {
        auto& c = rep[p];
        c.antecedent = antecedent;
        c.holds = !antecedent || consequent;
        if (!c.holds) {
            c.witness = make_witness(base, explanation, phi, result);
            c.witness->note = to_string(p) + " violated";
        }
    };

    set(Postulate::Inclusion, true,
        std::includes(uni.begin(), uni.end(), revised.begin(), revised.end()));
    set(Postulate::Vacuity, union_consistent, revised == uni);
    set(Postulate::Consistency, !union_consistent, is_consistent(revised_ground));
    rep[Postulate::Reversion].evaluated = false;
    set(Postulate::ConstrainedAcceptance, !base_rejects, revised_entails);
    set(Postulate::UnconstrainedAcceptance, base_rejects, revised_entails);
    set(Postulate::StrongAcceptance, true, revised_entails);
    return rep;
}

bool check_reversion(const BeliefBase& base, const BeliefBase& explanation, const BeliefBase& explanation_prime,
                     const Explanandum& phi, const SelectionStrategy& strategy, Limits limits) {
    if (!strategy.deterministic()) {
        throw NonDeterministicStrategy("reversion needs a deterministic strategy, got " + strategy.name());
    }
    auto u1 = texts_of(base);
    u1.merge(texts_of(explanation));
    auto u2 = texts_of(base);
    u2.merge(texts_of(explanation_prime));
    if (u1 != u2) {
        return true;
    }
    if (correction_kernel(base, explanation, limits) != correction_kernel(base, explanation_prime, limits)) {
        return true;
    }
    auto r1 = revise(base, explanation, phi, strategy, limits);
    auto r2 = revise(base, explanation_prime, phi, strategy, limits);
    return r1.retracted.texts() == r2.retracted.texts();
}

std::vector<BeliefBase> reversion_probes(const BeliefBase& base, const BeliefBase& explanation,
                                         const Explanandum& phi, std::size_t max_probes) {
    std::vector<BeliefBase> out;
    if (max_probes == 0) {
        return out;
    }
    BeliefBase reordered;
    auto st = explanation.statements();
    for (auto it = st.rbegin(); it != st.rend(); ++it) {
        reordered.add(*it);
    }
    out.push_back(std::move(reordered));

    Signature ctx;
    ctx.add(base);
    ctx.add(explanation);
    ctx.add(phi);

    const auto base_texts = texts_of(base);
    const auto e_texts = texts_of(explanation);
    std::vector<const Statement*> rest; // E \ B
    for (const auto& s : explanation.statements()) {
        if (base_texts.count(s.text()) == 0) {
            rest.push_back(&s);
        }
    }
    const auto bst = base.statements();
    const std::size_t n = std::min<std::size_t>(bst.size(), 63);
    const std::size_t max_y = std::min<std::size_t>(n, 2);
    for_each_subset(n, 0, max_y, [&](RevisionProblem::Mask m) {
        std::set<std::string> texts;
        BeliefBase candidate;
        for (const auto* s : rest) {
            candidate.add(s->formula);
            texts.insert(s->text());
        }
        for (std::size_t i = 0; i < n; ++i) {
            if ((m >> i) & 1U) {
                candidate.add(bst[i].formula);
                texts.insert(bst[i].text());
            }
        }
        if (candidate.empty() || texts == e_texts) {
            return true;
        }
        if (validate_explanation(candidate, phi, &ctx).valid()) {
            out.push_back(std::move(candidate));
        }
        return out.size() < max_probes;
    });
    return out;
}

// ---------------------------------------------------------------------------
// Generator

namespace {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform in [0, n), by rejection so the stream is portable.
    std::size_t below(std::size_t n) {
        const std::uint64_t bound = n;
        const std::uint64_t limit =
            std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
        std::uint64_t r;
        do {
            r = gen_();
        } while (r >= limit);
        return static_cast<std::size_t>(r % bound);
    }

    bool chance(double p) {
        // 53 random bits, as in generate_canonical
        const double u = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
        return u < p;
    }

private:
    std::mt19937_64 gen_;
};

struct Vocabulary {
    std::vector<std::string> constants;
    std::vector<std::pair<std::string, std::size_t>> predicates;
};

Vocabulary vocabulary(const GeneratorParams& p, Rng& rng) {
    Vocabulary v;
    for (std::size_t i = 0; i < std::max<std::size_t>(p.constants, 1); ++i) {
        v.constants.push_back("c" + std::to_string(i));
    }
    const std::size_t max_arity = std::clamp<std::size_t>(p.max_arity, 1, 2);
    for (std::size_t i = 0; i < std::max<std::size_t>(p.predicates, 1); ++i) {
        v.predicates.emplace_back("P" + std::to_string(i), 1 + rng.below(max_arity));
    }
    return v;
}

Literal ground_literal(const Vocabulary& v, Rng& rng) {
    const auto& [name, arity] = v.predicates[rng.below(v.predicates.size())];
    Atom a{name, {}};
    for (std::size_t i = 0; i < arity; ++i) {
        a.args.push_back(Term::constant(v.constants[rng.below(v.constants.size())]));
    }
    return {a, rng.chance(0.5)};
}

// Literal whose arguments are drawn from `vars`, with an occasional constant.
Literal open_literal(const Vocabulary& v, const std::vector<std::string>& vars, Rng& rng) {
    const auto& [name, arity] = v.predicates[rng.below(v.predicates.size())];
    Atom a{name, {}};
    for (std::size_t i = 0; i < arity; ++i) {
        if (vars.empty() || rng.chance(0.2)) {
            a.args.push_back(Term::constant(v.constants[rng.below(v.constants.size())]));
        } else {
            a.args.push_back(Term::variable(vars[rng.below(vars.size())]));
        }
    }
    return {a, rng.chance(0.3)};
}

std::set<std::string> vars_of(const Literal& l) {
    std::set<std::string> out;
    for (const auto& t : l.atom.args) {
        if (t.is_variable()) {
            out.insert(t.name);
        }
    }
    return out;
}

// A range-restricted rule over variables X, Y.
Rule random_rule(const Vocabulary& v, std::size_t body_length, Rng& rng) {
    const std::vector<std::string> vars = {"X", "Y"};
    Rule r;
    const std::size_t len = 1 + rng.below(std::max<std::size_t>(body_length, 1));
    std::set<std::string> bound;
    for (std::size_t i = 0; i < len; ++i) {
        r.body.push_back(open_literal(v, vars, rng));
        bound.merge(vars_of(r.body.back()));
    }
    std::vector<std::string> head_vars(bound.begin(), bound.end());
    r.head = open_literal(v, head_vars, rng);
    return r;
}

void try_add(BeliefBase& b, Formula f) {
    if (!b.contains(f)) {
        b.add(std::move(f));
    }
}

// E for phi: per literal, either the literal itself, a ground rule with its
// body facts, or a lifted rule with the body facts for the phi constants.
BeliefBase random_explanation(const Vocabulary& v, const Explanandum& phi, std::size_t body_length, Rng& rng) {
    BeliefBase e;
    for (const auto& l : phi.literals()) {
        const auto mode = rng.below(3);
        if (mode == 0) {
            try_add(e, l);
            continue;
        }
        std::map<std::string, std::string> to_var; // constant -> variable
        std::map<std::string, std::string> binding;
        Literal head = l;
        if (mode == 2) {
            for (auto& t : head.atom.args) {
                if (!to_var.count(t.name)) {
                    std::string var = to_var.empty() ? "X" : "Y";
                    to_var[t.name] = var;
                    binding[var] = t.name;
                }
                t = Term::variable(to_var[t.name]);
            }
        }
        std::vector<std::string> vars;
        for (const auto& [var, _] : binding) {
            vars.push_back(var);
        }
        Rule r;
        r.head = head;
        const std::size_t len = 1 + rng.below(std::max<std::size_t>(body_length, 1));
        std::set<std::string> covered;
        for (std::size_t i = 0; i < len; ++i) {
            Literal b = vars.empty() ? ground_literal(v, rng) : open_literal(v, vars, rng);
            covered.merge(vars_of(b));
            r.body.push_back(b);
        }
        for (const auto& var : vars) {
            if (!covered.count(var)) {
                // Cover the variable with a unary literal, or any predicate padded with it.
                const auto& [name, arity] = v.predicates[rng.below(v.predicates.size())];
                Atom a{name, {}};
                for (std::size_t i = 0; i < arity; ++i) {
                    a.args.push_back(Term::variable(var));
                }
                r.body.push_back({a, false});
            }
        }
        for (const auto& b : r.body) {
            try_add(e, substitute(b, binding));
        }
        try_add(e, r);
    }
    return e;
}

} // namespace

Instance random_instance(const GeneratorParams& params) {
    Rng rng(params.seed);
    const auto v = vocabulary(params, rng);
    constexpr int kRetries = 200;
    for (int attempt = 0; attempt < kRetries; ++attempt) {
        try {
            std::vector<Literal> lits;
            const std::size_t want = 1 + rng.below(2);
            for (std::size_t tries = 0; lits.size() < want && tries < 8; ++tries) {
                auto l = ground_literal(v, rng);
                if (std::none_of(lits.begin(), lits.end(), [&](const Literal& o) { return o.atom == l.atom; })) {
                    lits.push_back(l);
                }
            }
            Explanandum phi(lits);

            BeliefBase base;
            Signature sig;
            for (const auto& [name, arity] : v.predicates) {
                sig.add_predicate(name, arity);
            }
            for (const auto& c : v.constants) {
                sig.add_constant(c);
            }
            for (const auto& atom : sig.herbrand_base()) {
                if (rng.chance(params.fact_probability)) {
                    try_add(base, Literal{atom, rng.chance(0.5)});
                }
            }
            for (const auto& l : phi.literals()) {
                // Push toward conflicts with the explanandum.
                if (rng.chance(0.5)) {
                    const Literal c = l.complement();
                    if (!base.contains(l)) {
                        try_add(base, c);
                    }
                }
            }
            for (std::size_t i = 0; i < params.rules; ++i) {
                try_add(base, random_rule(v, params.body_length, rng));
            }
            if (base.empty()) {
                continue;
            }
            auto e = random_explanation(v, phi, params.body_length, rng);

            Signature all = sig;
            all.add(base);
            all.add(e);
            if (!is_consistent(ground(base, all).formulas)) {
                continue;
            }
            if (!validate_explanation(e, phi, &all).valid()) {
                continue;
            }
            RevisionProblem probe(base, e, &phi, Limits{params.max_ground});
            (void)probe;
            return {std::move(base), std::move(e), std::move(phi)};
        } catch (const CapExceeded&) {
        } catch (const InvalidFormula&) {
        }
    }
    throw GenerationFailed("no instance after " + std::to_string(kRetries) + " attempts for seed " +
                           std::to_string(params.seed));
}

// ---------------------------------------------------------------------------
// Suites

namespace {

std::vector<SelectionStrategy> suite_strategies(std::uint64_t seed, const BeliefBase& base,
                                                const BeliefBase& explanation) {
    using K = SelectionStrategy::Kind;
    std::vector<SelectionStrategy> out = {SelectionStrategy::of(K::MinCardinality),
                                          SelectionStrategy::of(K::MaxCardinality),
                                          SelectionStrategy::of(K::ProtectExplanation)};
    auto w = SelectionStrategy::of(K::Weighted);
    Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
    for (const auto* b : {&base, &explanation}) {
        for (const auto& s : b->statements()) {
            w.weights[s.text()] = static_cast<double>(1 + rng.below(5));
        }
    }
    out.push_back(std::move(w));
    out.push_back(SelectionStrategy::seeded(seed));
    return out;
}

void record(std::vector<SuiteFailure>& sink, const PostulateReport& rep, std::uint64_t seed) {
    for (auto p : rep.violations()) {
        sink.push_back({to_string(p), seed, *rep[p].witness});
    }
}

void check_implications(std::vector<SuiteFailure>& sink, const PostulateReport& rep, const BeliefBase& base,
                        const BeliefBase& explanation, const Explanandum& phi, const RevisionResult& r,
                        std::uint64_t seed) {
    const auto& vac = rep[Postulate::Vacuity];
    if (vac.antecedent && vac.holds && !(r.revised_consistent && rep[Postulate::StrongAcceptance].holds)) {
        auto w = make_witness(base, explanation, phi, r);
        w.note = "vacuity without consistency or strong acceptance";
        sink.push_back({"proposition-1", seed, std::move(w)});
    }
    if (rep[Postulate::StrongAcceptance].holds &&
        !(rep[Postulate::ConstrainedAcceptance].holds && rep[Postulate::UnconstrainedAcceptance].holds)) {
        auto w = make_witness(base, explanation, phi, r);
        w.note = "strong acceptance without constrained or unconstrained acceptance";
        sink.push_back({"proposition-2", seed, std::move(w)});
    }
}

void baseline_trial(SuiteReport& report, const Instance& inst, std::uint64_t seed, Limits limits) {
    using K = IncisionPolicy::Kind;
    for (auto kind : {K::MinHittingSet, K::CanonicalFirst, K::SeededRandom}) {
        IncisionPolicy pol{kind, seed};
        auto r = revise_falappa(inst.base, inst.explanation, pol, &inst.phi, limits);
        record(report.baseline_violations, check_postulates(inst.base, inst.explanation, inst.phi, r, limits), seed);
    }
}

void guided_trial(SuiteReport& report, const Instance& inst, std::uint64_t seed, Limits limits) {
    // Same checks as check_reversion, with the kernels and the E-side revisions
    // computed once per trial instead of once per (strategy, probe) pair.
    const auto probes = reversion_probes(inst.base, inst.explanation, inst.phi, 4);
    const auto kernel = correction_kernel(inst.base, inst.explanation, limits);
    std::vector<bool> same_kernel;
    for (const auto& p : probes) {
        same_kernel.push_back(correction_kernel(inst.base, p, limits) == kernel);
    }
    for (const auto& strategy : suite_strategies(seed, inst.base, inst.explanation)) {
        auto r = revise(inst.base, inst.explanation, inst.phi, strategy, limits);
        auto rep = check_postulates(inst.base, inst.explanation, inst.phi, r, limits);
        if (strategy.deterministic()) {
            auto& rev = rep[Postulate::Reversion];
            rev.evaluated = true;
            // protect-explanation reads E itself, so only reorderings of E qualify.
            const std::size_t count =
                strategy.kind == SelectionStrategy::Kind::ProtectExplanation ? 1 : probes.size();
            for (std::size_t i = 0; i < count && rev.holds; ++i) {
                if (!same_kernel[i]) {
                    continue;
                }
                auto r2 = revise(inst.base, probes[i], inst.phi, strategy, limits);
                if (r2.retracted.texts() != r.retracted.texts()) {
                    rev.holds = false;
                    rev.witness = make_witness(inst.base, inst.explanation, inst.phi, r);
                    rev.witness->note = "E' =\n" + render(probes[i]);
                }
            }
        }
        record(report.failures, rep, seed);
        check_implications(report.failures, rep, inst.base, inst.explanation, inst.phi, r, seed);
    }
}

} // namespace

SuiteReport check_propositions(const GeneratorParams& params, std::size_t trials) {
    SuiteReport report;
    report.trials = trials;
    const Limits limits{params.max_ground};
    for (std::size_t i = 0; i < trials; ++i) {
        auto p = params;
        p.seed = params.seed + i;
        auto inst = random_instance(p);
        for (const auto& strategy : suite_strategies(p.seed, inst.base, inst.explanation)) {
            auto r = revise(inst.base, inst.explanation, inst.phi, strategy, limits);
            auto rep = check_postulates(inst.base, inst.explanation, inst.phi, r, limits);
            check_implications(report.failures, rep, inst.base, inst.explanation, inst.phi, r, p.seed);
        }
    }
    return report;
}

Instance falappa_fixture() {
    auto base = parse_base("Wor(charlie).\n"
                           "Wor(diana).\n"
                           "Wor(charlie) -> Ins(charlie).\n"
                           "Wor(diana) -> Ins(diana).\n");
    auto e = parse_base("Wor(diana).\n"
                        "Cop(charlie).\n"
                        "Wor(charlie) & Cop(charlie) -> !Ins(charlie).\n");
    return {std::move(base), std::move(e), parse_explanandum("!Ins(charlie)")};
}

SuiteReport run_suite(const SuiteOptions& options) {
    SuiteReport report;
    report.trials = options.trials;
    const Limits limits{options.params.max_ground};
    const bool guided = options.op != SuiteOperator::Falappa;
    const bool baseline = options.op != SuiteOperator::Guided;
    for (std::size_t i = 0; i < options.trials; ++i) {
        auto p = options.params;
        p.seed = options.seed + i;
        auto inst = random_instance(p);
        RevisionProblem probe(inst.base, inst.explanation, &inst.phi, limits);
        if (!probe.consistent(probe.all())) {
            ++report.inconsistent_unions;
        }
        if (guided) {
            guided_trial(report, inst, p.seed, limits);
        }
        if (baseline) {
            baseline_trial(report, inst, p.seed, limits);
        }
    }
    if (baseline && options.baseline_fixture && options.trials > 0) {
        baseline_trial(report, falappa_fixture(), 0, limits);
    }
    return report;
}

} // namespace revisekit
