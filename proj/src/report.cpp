#include "revisekit/report.hpp"

#include "revisekit/dsl.hpp"

#include <map>
#include <sstream>

namespace revisekit {

using nlohmann::json;

namespace {

json args_of(const Atom& a) {
    json out = json::array();
    for (const auto& t : a.args) {
        out.push_back(t.name);
    }
    return out;
}

std::string indent(const std::string& text, const std::string& pad) {
    std::string out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        out += pad + line + "\n";
    }
    return out;
}

} // namespace

json to_json(const Literal& l) {
    return {{"predicate", l.atom.predicate}, {"args", args_of(l.atom)}, {"negated", l.negated}};
}

json to_json(const BeliefBase& b) {
    json facts = json::array();
    json rules = json::array();
    for (const auto* s : b.canonical_order()) {
        if (const auto* l = std::get_if<Literal>(&s->formula)) {
            json f = to_json(*l);
            f["label"] = s->label;
            facts.push_back(std::move(f));
        } else {
            const auto& r = std::get<Rule>(s->formula);
            json body = json::array();
            for (const auto& l : r.body) {
                body.push_back(to_json(l));
            }
            rules.push_back({{"label", s->label}, {"body", std::move(body)}, {"head", to_json(r.head)}});
        }
    }
    return {{"facts", std::move(facts)}, {"rules", std::move(rules)}};
}

json to_json(const ChangeMeasure& m) {
    return {{"numerator", m.numerator}, {"denominator", m.denominator}, {"value", m.decimal(3)}};
}

json to_json(const CorrectionSet& s) {
    json out = json::array();
    for (const auto& e : s.elements) {
        json labels = json::array();
        for (const auto& o : e.origins) {
            labels.push_back(qualified(o));
        }
        out.push_back({{"formula", e.text}, {"labels", std::move(labels)}});
    }
    return out;
}

json to_json(const RevisionResult& r, const PostulateReport* postulates, const std::optional<ChangeMeasure>& measure) {
    json out;
    out["operator"] = r.operator_name;
    out["revised"] = to_json(r.revised);
    out["retracted"] = to_json(r.retracted);
    out["strategy"] = r.strategy;
    out["seed"] = r.seed ? json(*r.seed) : json(nullptr);
    out["union_consistent"] = r.union_consistent;
    out["entails_explanandum"] = r.entails_explanandum ? json(*r.entails_explanandum) : json(nullptr);
    json p = json::object();
    if (postulates != nullptr) {
        for (auto k : kAllPostulates) {
            if ((*postulates)[k].evaluated) {
                p[to_string(k)] = (*postulates)[k].holds;
            }
        }
    }
    out["postulates"] = std::move(p);
    out["change_measure"] = measure ? to_json(*measure) : json(nullptr);
    return out;
}

json to_json(const Witness& w) {
    return {{"base", w.base},
            {"explanation", w.explanation},
            {"explanandum", w.explanandum},
            {"strategy", w.strategy},
            {"seed", w.seed ? json(*w.seed) : json(nullptr)},
            {"retracted", w.retracted},
            {"remainder", w.remainder},
            {"note", w.note}};
}

json to_json(const SuiteReport& r) {
    auto list = [](const std::vector<SuiteFailure>& fs) {
        json out = json::array();
        for (const auto& f : fs) {
            out.push_back({{"postulate", f.postulate}, {"seed", f.seed}, {"witness", to_json(f.witness)}});
        }
        return out;
    };
    return {{"trials", r.trials},
            {"inconsistent_unions", r.inconsistent_unions},
            {"failures", list(r.failures)},
            {"baseline_violations", list(r.baseline_violations)}};
}

namespace {

json run_json(const CorpusRun& run) {
    return {{"pattern", run.pattern},
            {"retracted", to_json(run.result.retracted)},
            {"classification", to_string(run.classification.label)},
            {"discarded", run.classification.discarded},
            {"altered", run.classification.altered},
            {"statement_changes", run.changes},
            {"admissible", run.admissible},
            {"entails_explanandum", run.result.entails_explanandum.value_or(false)},
            {"change_measure", run.result.revised_consistent ? to_json(run.measure) : json(nullptr)}};
}

} // namespace

json to_json(const CorpusReport& r) {
    json rows = json::array();
    for (const auto& row : r.rows) {
        rows.push_back({{"id", row.id},
                        {"type", to_string(row.type)},
                        {"run", run_json(row.run)},
                        {"minimal", row.minimal ? run_json(*row.minimal) : json(nullptr)},
                        {"non_minimal", row.non_minimal ? run_json(*row.non_minimal) : json(nullptr)},
                        {"verified", row.verified},
                        {"comparison", row.comparison}});
    }
    return {{"experiment", r.experiment},
            {"strategy", r.strategy},
            {"rows", std::move(rows)},
            {"aggregate",
             {{"minimal", r.minimal},
              {"non_minimal", r.non_minimal},
              {"unclassified", r.unclassified},
              {"verified", r.verified},
              {"exceptions", r.exceptions}}}};
}

std::string describe(const RevisionResult& r, const PostulateReport* postulates,
                     const std::optional<ChangeMeasure>& measure) {
    std::ostringstream out;
    out << "operator: " << r.operator_name << "\n";
    out << "strategy: " << r.strategy;
    if (r.seed) {
        out << " (seed " << *r.seed << ")";
    }
    out << "\n";
    out << "retracted: " << r.retracted.to_string() << "\n";
    out << "revised:\n" << indent(render(r.revised), "  ");
    if (r.entails_explanandum) {
        out << "entails-explanandum: " << (*r.entails_explanandum ? "true" : "false") << "\n";
    }
    if (measure) {
        out << "change: " << measure->fraction() << " (" << measure->decimal(3) << ")\n";
    }
    if (postulates != nullptr) {
        for (auto k : kAllPostulates) {
            const auto& c = (*postulates)[k];
            if (c.evaluated) {
                out << to_string(k) << ": " << (c.holds ? "true" : "false") << "\n";
            }
        }
    }
    return out.str();
}

std::string describe(const SuiteReport& r) {
    std::ostringstream out;
    out << "trials: " << r.trials << "\n";
    out << "inconsistent unions: " << r.inconsistent_unions << "\n";
    out << "failures: " << r.failures.size() << "\n";
    for (const auto& f : r.failures) {
        out << "  " << f.postulate << " seed=" << f.seed << " strategy=" << f.witness.strategy << "\n";
    }
    std::map<std::string, std::size_t> by_name;
    for (const auto& f : r.baseline_violations) {
        ++by_name[f.postulate];
    }
    out << "baseline violations: " << r.baseline_violations.size() << "\n";
    for (const auto& [name, n] : by_name) {
        out << "  " << name << ": " << n << "\n";
    }
    return out.str();
}

std::string describe(const CorpusReport& r) {
    std::ostringstream out;
    out << "experiment " << r.experiment << ", strategy " << r.strategy << "\n";
    for (const auto& row : r.rows) {
        out << row.id << " (type " << to_string(row.type) << ")\n";
        auto line = [&](const CorpusRun& run) {
            out << "  " << run.pattern << ": retract " << run.result.retracted.to_string() << " -> "
                << to_string(run.classification.label) << ", changes " << run.changes << ", D ";
            if (run.result.revised_consistent) {
                out << run.measure.fraction() << " (" << run.measure.decimal(3) << ")";
            } else {
                out << "undefined";
            }
            if (!run.admissible) {
                out << ", not admissible";
            }
            out << "\n";
        };
        line(row.run);
        if (row.minimal) {
            line(*row.minimal);
        }
        if (row.non_minimal) {
            line(*row.non_minimal);
        }
        out << "  D comparison: " << row.comparison << "\n";
    }
    out << "aggregate: " << r.minimal << " minimal, " << r.non_minimal << " non-minimal, " << r.unclassified
        << " unclassified; D verified " << r.verified << ", exceptions " << r.exceptions << "\n";
    return out.str();
}

} // namespace revisekit
