// One line per acceptance criterion: PASS or FAIL, with elapsed time.

#include "revisekit/corpus.hpp"
#include "revisekit/falappa.hpp"
#include "revisekit/metrics.hpp"
#include "revisekit/postulates.hpp"
#include "support.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace revisekit;
using Sets = std::vector<std::vector<std::string>>;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
};

std::set<std::string> texts_of(const BeliefBase& b) {
    std::set<std::string> out;
    for (const auto& s : b.statements()) {
        out.insert(s.text());
    }
    return out;
}

const std::string kWc = "Wor(charlie)";
const std::string kRule = "Wor(charlie) -> Ins(charlie)";
const std::string kNotIns = "!Ins(charlie)";

BeliefBase ex3_base() { return parse_base("Wor(charlie). Wor(charlie) -> Ins(charlie)."); }
BeliefBase ex3_expl() { return parse_base("!Ins(charlie)."); }

Outcome entailment() {
    Outcome o;
    auto b = parse_base("Wor(charlie). Wor(diana). Wor(X) -> Ins(X).");
    Signature sig;
    sig.add(b);
    auto g = ground(b, sig).formulas;
    auto q = parse_explanandum("Ins(charlie)");
    o.require(entails(g, q.literals()), "B does not entail Ins(charlie)");
    o.require(testsupport::tt_entails(g, q.literals(), sig), "truth table disagrees");
    return o;
}

Outcome kernel() {
    Outcome o;
    auto got = testsupport::texts(correction_kernel(ex3_base(), ex3_expl()));
    Sets want{{kNotIns}, {kWc}, {kRule}, {kNotIns, kWc}, {kNotIns, kRule}, {kWc, kRule}};
    o.require(got == want, "kernel differs from the six listed sets");
    o.require(got == testsupport::brute_force_kernel(ex3_base(), ex3_expl()), "brute force disagrees");
    return o;
}

Outcome admissibility() {
    Outcome o;
    auto a = admissible_selections(ex3_base(), ex3_expl(), parse_explanandum("!Ins(charlie)"));
    o.require(testsupport::texts(a) == Sets{{kWc}, {kRule}, {kWc, kRule}}, "admissible sets differ");
    for (const auto& s : a) {
        o.require(!s.contains(kNotIns), "a selection retracts the explanandum");
    }
    return o;
}

Outcome revisions() {
    Outcome o;
    auto b = ex3_base();
    auto e = ex3_expl();
    auto phi = parse_explanandum("!Ins(charlie)");
    auto r1 = revise_with(b, e, phi, std::vector<std::string>{kRule});
    o.require(texts_of(r1.revised) == std::set<std::string>{kWc, kNotIns}, "first listed result not reached");
    auto pick = SelectionStrategy::of(SelectionStrategy::Kind::Interactive);
    pick.chooser = [](std::span<const CorrectionSet> cs) {
        for (std::size_t i = 0; i < cs.size(); ++i) {
            if (cs[i].size() == 2) {
                return i;
            }
        }
        return cs.size();
    };
    auto r2 = revise(b, e, phi, pick);
    o.require(texts_of(r2.revised) == std::set<std::string>{kNotIns}, "second listed result not reached");
    Signature sig;
    sig.add(b);
    sig.add(e);
    for (const auto& cs : admissible_selections(b, e, phi)) {
        auto r = revise_with(b, e, phi, cs.texts());
        o.require(testsupport::tt_entails(ground(r.revised, sig).formulas, phi.literals(), sig),
                  "a reachable result misses the explanandum");
    }
    return o;
}

Outcome measure() {
    Outcome o;
    auto b = parse_base("Wor(charlie). Wor(diana). Wor(charlie) -> Ins(charlie). Wor(diana) -> Ins(diana).");
    auto e = parse_base("Wor(charlie). Cop(charlie). Wor(charlie) & Cop(charlie) -> !Ins(charlie).");
    auto phi = parse_explanandum("!Ins(charlie)");
    auto b1 = revise_with(b, e, phi, std::vector<std::string>{kRule}).revised;
    auto b2 = revise_with(b, e, phi, std::vector<std::string>{kRule, "Wor(diana) -> Ins(diana)"}).revised;
    auto d1 = change_measure(b, b1);
    auto d2 = change_measure(b, b2);
    o.require(d1 == ChangeMeasure{1, 2}, "D(B, B') = " + d1.fraction());
    o.require(d2 == ChangeMeasure{2, 3}, "D(B, B'') = " + d2.fraction());
    o.require(d2 > d1, "non-minimal change is not larger");
    return o;
}

Outcome falappa() {
    Outcome o;
    auto f = falappa_fixture();
    auto ks = kernel_set(f.base, f.explanation);
    o.require(ks.size() == 1, "expected exactly one kernel");
    if (ks.size() == 1) {
        std::vector<std::string> t;
        for (const auto& e : ks.kernels[0]) {
            t.push_back(e.text);
        }
        o.require(t == std::vector<std::string>{"Cop(charlie)", kWc, "Wor(charlie) & Cop(charlie) -> !Ins(charlie)",
                                                kRule},
                  "kernel differs");
    }
    bool witness = false;
    for (const auto& cut : all_incisions(ks)) {
        std::vector<std::string> t;
        for (const auto& e : cut) {
            t.push_back(e.text);
            o.require(e.text != "Wor(diana) -> Ins(diana)", "an incision retracts the unrelated rule");
        }
        auto r = revise_falappa_with(f.base, f.explanation, t, &f.phi);
        o.require(texts_of(r.revised).count("Wor(diana) -> Ins(diana)") == 1, "unrelated rule lost");
        if (!*r.entails_explanandum) {
            witness = witness || !check_postulates(f.base, f.explanation, f.phi, r)[Postulate::StrongAcceptance].holds;
        }
    }
    o.require(witness, "no strong-acceptance violation found");
    return o;
}

Outcome suite() {
    Outcome o;
    SuiteOptions s;
    s.trials = 1000;
    s.seed = 1;
    s.op = SuiteOperator::Guided;
    auto r = run_suite(s);
    o.require(r.trials == 1000, "trial count");
    if (!r.failures.empty()) {
        const auto& f = r.failures.front();
        o.require(false, std::to_string(r.failures.size()) + " violations, first " + f.postulate + " at seed " +
                             std::to_string(f.seed));
    }
    auto p = check_propositions(GeneratorParams{}, 200);
    o.require(p.failures.empty(), "proposition counterexample");
    return o;
}

Outcome oracle() {
    Outcome o;
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        testsupport::GroundGen gen(seed, 3, 4); // 12 atoms
        auto b = gen.base(2 + seed % 9);
        Signature sig;
        sig.add(b);
        auto g = ground(b, sig).formulas;
        std::vector<Literal> phi{gen.literal(), gen.literal()};
        if (phi[0].atom == phi[1].atom) {
            phi.pop_back();
        }
        for (const auto& l : phi) {
            sig.add(l);
        }
        o.require(sig.herbrand_size() <= 12, "instance exceeds 12 atoms");
        const auto tag = " at seed " + std::to_string(seed);
        o.require(is_consistent(g) == testsupport::tt_consistent(g, sig), "is_consistent" + tag);
        o.require(entails(g, phi) == testsupport::tt_entails(g, phi, sig), "entails" + tag);
        for (const auto& l : phi) {
            o.require(entails(g, l) == testsupport::tt_entails(g, std::span<const Literal>(&l, 1), sig),
                      "entails literal" + tag);
        }
    }
    return o;
}

Outcome brute_kernel() {
    Outcome o;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        testsupport::GroundGen gen(10'000 + seed, 2, 3);
        auto b = gen.base(2 + seed % 6);
        auto e = gen.base(1 + seed % 3);
        RevisionProblem p(b, e);
        o.require(p.size() <= 10, "instance exceeds 10 formulas");
        o.require(testsupport::texts(correction_kernel(b, e)) == testsupport::brute_force_kernel(b, e),
                  "kernel mismatch at seed " + std::to_string(seed));
    }
    return o;
}

Outcome corpus() {
    Outcome o;
    auto one = load_corpus(1);
    auto two = load_corpus(2);
    o.require(one.size() == 9 && two.size() == 6, "corpus size");
    for (const auto* set : {&one, &two}) {
        for (const auto& e : *set) {
            try {
                validate_scenario(e.scenario);
            } catch (const ScenarioInvalid& ex) {
                o.require(false, e.path + ": " + ex.what());
            }
        }
    }
    for (const auto& entry : two) {
        const auto& sc = entry.scenario;
        auto e = entry.explanation();
        for (const auto& cs : admissible_selections(sc.statements, e, sc.fact)) {
            auto r = revise_with(sc.statements, e, sc.fact, cs.texts());
            auto c = classify_revision(sc, r);
            bool conditional = false;
            std::size_t touched = 0;
            for (const auto& el : cs.elements) {
                if (auto l = el.label_in(Side::Base)) {
                    ++touched;
                    conditional = conditional || sc.kind_of(*l) == StatementKind::Conditional;
                }
            }
            if (conditional) {
                o.require(c.label == RevisionLabel::NonMinimal, sc.id + ": conditional retraction not non-minimal");
            } else if (touched == 1) {
                o.require(c.label == RevisionLabel::Minimal, sc.id + ": categorical retraction not minimal");
            }
        }
    }
    auto rep = run_corpus(2, SelectionStrategy::of(SelectionStrategy::Kind::ProtectExplanation));
    for (const auto& row : rep.rows) {
        o.require(row.run.result.entails_explanandum == true, row.id + ": explanandum lost");
        o.require(row.minimal && row.non_minimal, row.id + ": missing reference revision");
        const bool reported = row.comparison.rfind("verified ", 0) == 0 || row.comparison.rfind("exception ", 0) == 0;
        o.require(reported, row.id + ": comparison not reported");
        if (row.minimal && row.non_minimal) {
            const bool gt = row.non_minimal->measure > row.minimal->measure;
            o.require(gt == row.verified, row.id + ": verdict does not match the computed measures");
        }
        std::cout << "    " << row.id << ": " << row.comparison << "\n";
    }
    return o;
}

} // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Outcome()> fn;
        double budget_ms;
    };
    const std::vector<Criterion> criteria = {
        {"worried-friends entailment", entailment, 1000},
        {"correction kernel, six sets", kernel, 1000},
        {"explanandum-preserving selections", admissibility, 1000},
        {"listed revisions reachable", revisions, 1000},
        {"change measure 1/2 and 2/3", measure, 1000},
        {"baseline kernel set and incisions", falappa, 1000},
        {"postulate suite, 1000 instances", suite, 60000},
        {"truth-table oracle, 500 instances", oracle, 60000},
        {"kernel brute force, 200 instances", brute_kernel, 60000},
        {"scenario corpus", corpus, 60000},
    };
    int failed = 0;
    int index = 0;
    for (const auto& c : criteria) {
        ++index;
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.fn();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        if (ms > c.budget_ms) {
            o.require(false, "over time budget");
        }
        std::ostringstream line;
        line << (o.pass ? "PASS" : "FAIL") << " [" << index << "] " << c.name << " (" << std::fixed
             << std::setprecision(1) << ms << " ms)";
        if (!o.pass) {
            line << ": " << o.detail;
            ++failed;
        }
        std::cout << line.str() << std::endl;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}
