#include "revisekit/corpus.hpp"

#include <algorithm>

namespace revisekit {

BeliefBase CorpusEntry::explanation() const {
    if (scenario.explanation) {
        return *scenario.explanation;
    }
    BeliefBase e;
    for (const auto& l : scenario.fact.literals()) {
        e.add(l);
    }
    return e;
}

std::vector<CorpusEntry> load_corpus(int experiment) {
    const std::string prefix = "exp" + std::to_string(experiment) + "/";
    std::vector<CorpusEntry> out;
    for (const auto& [path, text] : detail::embedded_corpus()) {
        if (path.substr(0, prefix.size()) != prefix) {
            continue;
        }
        CorpusEntry e;
        e.path = std::string(path);
        e.source = std::string(text);
        e.scenario = parse_scenario(text);
        e.experiment = experiment;
        out.push_back(std::move(e));
    }
    // s1 .. s9 sort correctly as text; keep it numeric anyway.
    auto number = [](const CorpusEntry& e) {
        auto slash = e.path.rfind("/s");
        return std::stoi(e.path.substr(slash + 2));
    };
    std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) { return number(a) < number(b); });
    return out;
}

namespace {

CorpusRun code_run(std::string pattern, const Scenario& sc, RevisionResult r, bool admissible) {
    CorpusRun run;
    run.pattern = std::move(pattern);
    run.classification = classify_revision(sc, r);
    run.changes = statement_changes(sc.statements, r);
    run.admissible = admissible;
    if (r.revised_consistent) {
        run.measure = change_measure(sc.statements, r.revised);
    }
    run.result = std::move(r);
    return run;
}

bool only_conditionals(const Scenario& sc, const CorrectionSet& cs) {
    return std::all_of(cs.elements.begin(), cs.elements.end(), [&](const UnionElement& e) {
        auto label = e.label_in(Side::Base);
        return label && sc.kind_of(*label) == StatementKind::Conditional;
    });
}

} // namespace

CorpusReport run_corpus(int experiment, const SelectionStrategy& strategy, Limits limits) {
    CorpusReport report;
    report.experiment = experiment;
    report.strategy = strategy.name();
    for (const auto& entry : load_corpus(experiment)) {
        const auto& sc = entry.scenario;
        const auto e = entry.explanation();
        CorpusRow row;
        row.id = sc.id;
        row.type = sc.type;
        row.run = code_run(strategy.name(), sc, revise(sc.statements, e, sc.fact, strategy, limits), true);

        RevisionProblem problem(sc.statements, e, &sc.fact, limits);
        {
            auto texts = std::vector<std::string>{};
            for (const auto& label : sc.labels_of(StatementKind::Categorical)) {
                texts.push_back(sc.statements.find_label(label)->text());
            }
            auto r = apply_retraction(problem, problem.mask_of(texts), &sc.fact);
            r.strategy = "reference";
            const bool ok = r.revised_consistent && r.entails_explanandum.value_or(false);
            row.minimal = code_run("minimal", sc, std::move(r), ok);
        }
        for (const auto& cs : admissible_selections(problem, sc.fact)) {
            if (only_conditionals(sc, cs)) {
                auto r = apply_retraction(problem, problem.mask_of(cs), &sc.fact);
                r.strategy = "reference";
                row.non_minimal = code_run("non-minimal", sc, std::move(r), true);
                break;
            }
        }

        if (row.minimal && row.non_minimal && row.minimal->result.revised_consistent) {
            const auto& lo = row.minimal->measure;
            const auto& hi = row.non_minimal->measure;
            row.verified = hi > lo;
            row.comparison = row.verified ? "verified " + hi.fraction() + " > " + lo.fraction()
                                          : "exception " + hi.fraction() + " vs " + lo.fraction();
        } else {
            row.comparison = "exception: a reference revision is undefined";
        }
        (row.verified ? report.verified : report.exceptions)++;
        switch (row.run.classification.label) {
        case RevisionLabel::Minimal:
            ++report.minimal;
            break;
        case RevisionLabel::NonMinimal:
            ++report.non_minimal;
            break;
        case RevisionLabel::Unclassified:
            ++report.unclassified;
            break;
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

} // namespace revisekit
