#include "cli.hpp"

#include "revisekit/corpus.hpp"
#include "revisekit/dsl.hpp"
#include "revisekit/falappa.hpp"
#include "revisekit/metrics.hpp"
#include "revisekit/postulates.hpp"
#include "revisekit/report.hpp"
#include "revisekit/revision.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <variant>

namespace revisekit::cli {

namespace {

struct Options {
    std::string format = "text";
    std::optional<std::size_t> max_ground;
    std::uint64_t seed = 0;
};

class Usage : public Error {
public:
    using Error::Error;
};

// A ParseError tagged with the file it came from.
struct FileParseError {
    std::string path;
    ParseError error;
};

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw Usage("cannot read '" + path + "'");
    }
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

using Input = std::variant<BeliefBase, Scenario>;

Input load(const std::string& path) {
    auto text = read_file(path);
    try {
        if (looks_like_scenario(text)) {
            return parse_scenario(text);
        }
        return parse_base(text);
    } catch (const ParseError& e) {
        throw FileParseError{path, e};
    }
}

void report_parse_error(const FileParseError& fe, std::ostream& err) {
    const auto& e = fe.error;
    err << fe.path << ":" << e.span().line << ":" << e.span().column << ": error: " << e.message();
    if (!e.expected().empty()) {
        err << " (expected ";
        for (std::size_t i = 0; i < e.expected().size(); ++i) {
            err << (i ? ", " : "") << e.expected()[i];
        }
        err << ")";
    }
    err << "\n";
}

Limits limits_of(const Options& o) {
    if (o.max_ground) {
        return {*o.max_ground};
    }
    if (const char* env = std::getenv("REVISEKIT_MAX_GROUND"); env != nullptr && *env != '\0') {
        try {
            std::size_t pos = 0;
            auto v = std::stoull(env, &pos);
            if (pos != std::string(env).size()) {
                throw std::invalid_argument("trailing characters");
            }
            return {static_cast<std::size_t>(v)};
        } catch (const std::exception&) {
            throw Usage(std::string("REVISEKIT_MAX_GROUND is not a number: '") + env + "'");
        }
    }
    return {};
}

bool json_out(const Options& o) { return o.format == "json"; }

void emit(std::ostream& out, const nlohmann::json& j) { out << j.dump(2) << "\n"; }

// ---------------------------------------------------------------------------

int cmd_check(const Options& o, const std::string& path, std::ostream& out) {
    auto input = load(path);
    if (const auto* sc = std::get_if<Scenario>(&input)) {
        if (json_out(o)) {
            emit(out, {{"kind", "scenario"},
                       {"id", sc->id},
                       {"type", to_string(sc->type)},
                       {"statements", sc->statements.size()},
                       {"explanation", sc->explanation.has_value()}});
        } else {
            out << "ok: scenario " << sc->id << ", type " << to_string(sc->type) << ", " << sc->statements.size()
                << " statements" << (sc->explanation ? ", with explanation" : "") << "\n";
        }
        return kOk;
    }
    const auto& b = std::get<BeliefBase>(input);
    Signature sig;
    sig.add(b);
    if (json_out(o)) {
        emit(out, {{"kind", "base"},
                   {"facts", b.facts().size()},
                   {"rules", b.rules().size()},
                   {"consistent", is_consistent(ground(b, sig).formulas)}});
    } else {
        out << "ok: base, " << b.facts().size() << " facts, " << b.rules().size() << " rules"
            << (is_consistent(ground(b, sig).formulas) ? "" : ", inconsistent") << "\n";
    }
    return kOk;
}

struct RevisionInputs {
    BeliefBase base;
    BeliefBase explanation;
    std::optional<Explanandum> phi;
};

RevisionInputs resolve(const std::string& base_path, const std::string& expl_path, const std::string& phi_text,
                       bool need_phi) {
    RevisionInputs r;
    std::optional<Scenario> sc;
    auto b = load(base_path);
    if (auto* s = std::get_if<Scenario>(&b)) {
        r.base = s->statements;
        sc = std::move(*s);
    } else {
        r.base = std::get<BeliefBase>(std::move(b));
    }
    if (!expl_path.empty()) {
        auto e = load(expl_path);
        if (auto* s = std::get_if<Scenario>(&e)) {
            if (!s->explanation) {
                throw Usage("scenario '" + expl_path + "' has no explanation section");
            }
            r.explanation = *s->explanation;
        } else {
            r.explanation = std::get<BeliefBase>(std::move(e));
        }
    } else if (sc && sc->explanation) {
        r.explanation = *sc->explanation;
    } else {
        throw Usage("an explanation file is required");
    }
    if (!phi_text.empty()) {
        try {
            r.phi = parse_explanandum(phi_text);
        } catch (const ParseError& e) {
            throw FileParseError{"<explanandum>", e};
        }
    } else if (sc) {
        r.phi = sc->fact;
    } else if (need_phi) {
        throw Usage("an explanandum is required");
    }
    return r;
}

std::optional<ChangeMeasure> measure_of(const BeliefBase& before, const RevisionResult& r) {
    try {
        return change_measure(before, r.revised);
    } catch (const InconsistentBase&) {
        return std::nullopt;
    }
}

struct ReviseArgs {
    std::string base;
    std::string explanation;
    std::string explanandum;
    std::string op = "guided";
    std::string strategy = "min-cardinality";
    std::string incision = "min-hitting-set";
    std::vector<std::string> weights;
    bool interactive = false;
};

SelectionStrategy strategy_of(const ReviseArgs& a, const Options& o, std::istream& in, std::ostream& err) {
    SelectionStrategy s;
    if (a.interactive) {
        s.kind = SelectionStrategy::Kind::Interactive;
        s.chooser = [&in, &err](std::span<const CorrectionSet> cs) -> std::size_t {
            err << "admissible correction sets:\n";
            for (std::size_t i = 0; i < cs.size(); ++i) {
                err << "  " << i + 1 << ". " << cs[i].to_string() << "\n";
            }
            err << "select [1-" << cs.size() << "]: " << std::flush;
            std::string line;
            if (!std::getline(in, line)) {
                throw Usage("no selection read from standard input");
            }
            std::size_t pos = 0;
            unsigned long long k = 0;
            try {
                k = std::stoull(line, &pos);
            } catch (const std::exception&) {
                pos = 0;
            }
            if (pos == 0 || k < 1 || k > cs.size()) {
                throw Usage("invalid selection '" + line + "'");
            }
            return static_cast<std::size_t>(k - 1);
        };
        return s;
    }
    auto kind = parse_strategy_kind(a.strategy);
    if (!kind || *kind == SelectionStrategy::Kind::Interactive) {
        throw Usage("unknown strategy '" + a.strategy + "'");
    }
    s.kind = *kind;
    s.seed = o.seed;
    for (const auto& w : a.weights) {
        auto eq = w.rfind('=');
        if (eq == std::string::npos) {
            throw Usage("weight must be KEY=VALUE, got '" + w + "'");
        }
        try {
            s.weights[w.substr(0, eq)] = std::stod(w.substr(eq + 1));
        } catch (const std::exception&) {
            throw Usage("bad weight value in '" + w + "'");
        }
    }
    return s;
}

int cmd_revise(const Options& o, const ReviseArgs& a, std::istream& in, std::ostream& out, std::ostream& err) {
    const auto limits = limits_of(o);
    const bool falappa = a.op == "falappa";
    if (!falappa && a.op != "guided") {
        throw Usage("unknown operator '" + a.op + "'");
    }
    auto inputs = resolve(a.base, a.explanation, a.explanandum, !falappa);
    RevisionResult result;
    if (falappa) {
        if (a.interactive) {
            throw Usage("--interactive applies to the guided operator only");
        }
        auto kind = parse_incision_kind(a.incision);
        if (!kind) {
            throw Usage("unknown incision policy '" + a.incision + "'");
        }
        result = revise_falappa(inputs.base, inputs.explanation, IncisionPolicy{*kind, o.seed},
                                inputs.phi ? &*inputs.phi : nullptr, limits);
    } else {
        result = revise(inputs.base, inputs.explanation, *inputs.phi, strategy_of(a, o, in, err), limits);
    }
    std::optional<PostulateReport> postulates;
    if (inputs.phi) {
        postulates = check_postulates(inputs.base, inputs.explanation, *inputs.phi, result, limits);
    }
    auto measure = measure_of(inputs.base, result);
    if (json_out(o)) {
        emit(out, to_json(result, postulates ? &*postulates : nullptr, measure));
    } else {
        out << describe(result, postulates ? &*postulates : nullptr, measure);
    }
    return kOk;
}

int cmd_kernels(const Options& o, const std::string& base_path, const std::string& expl_path, bool muses,
                std::ostream& out) {
    auto inputs = resolve(base_path, expl_path, "", false);
    std::vector<std::string> lines;
    nlohmann::json j = nlohmann::json::array();
    if (muses) {
        for (const auto& k : kernel_set(inputs.base, inputs.explanation, limits_of(o)).kernels) {
            CorrectionSet cs{k, false};
            lines.push_back(cs.to_string());
            j.push_back(cs.texts());
        }
    } else {
        for (const auto& cs : correction_kernel(inputs.base, inputs.explanation, limits_of(o))) {
            lines.push_back(cs.to_string());
            j.push_back(cs.texts());
        }
    }
    if (json_out(o)) {
        emit(out, j);
    } else {
        for (const auto& l : lines) {
            out << l << "\n";
        }
    }
    return kOk;
}

int cmd_corpus(const Options& o, int experiment, const std::string& strategy, std::ostream& out) {
    if (experiment != 1 && experiment != 2) {
        throw Usage("experiment must be 1 or 2");
    }
    auto kind = parse_strategy_kind(strategy);
    if (!kind || *kind == SelectionStrategy::Kind::Interactive) {
        throw Usage("unknown strategy '" + strategy + "'");
    }
    SelectionStrategy s = SelectionStrategy::of(*kind);
    s.seed = o.seed;
    auto report = run_corpus(experiment, s, limits_of(o));
    if (json_out(o)) {
        emit(out, to_json(report));
    } else {
        out << describe(report);
    }
    return kOk;
}

int cmd_suite(const Options& o, SuiteOptions s, const std::string& op, std::ostream& out) {
    if (op == "guided") {
        s.op = SuiteOperator::Guided;
    } else if (op == "falappa") {
        s.op = SuiteOperator::Falappa;
    } else if (op == "both") {
        s.op = SuiteOperator::Both;
    } else {
        throw Usage("unknown operator '" + op + "'");
    }
    s.seed = o.seed;
    s.params.max_ground = limits_of(o).max_ground;
    auto report = run_suite(s);
    if (json_out(o)) {
        emit(out, to_json(report));
    } else {
        out << describe(report);
    }
    return report.ok() ? kOk : kFailure;
}

} // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Belief revision with explanations", "revisekit"};
    app.require_subcommand(1);
    app.fallthrough();

    Options o;
    std::size_t max_ground = 0;
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    auto* mg = app.add_option("--max-ground", max_ground, "Cap on ground formulas in B u E (default 24)");
    app.add_option("--seed", o.seed, "Seed for randomized strategies and suites");

    auto* check = app.add_subcommand("check", "Parse and validate a base or scenario file");
    std::string check_path;
    check->add_option("path", check_path)->required();

    auto* rev = app.add_subcommand("revise", "Revise a base with an explanation");
    ReviseArgs ra;
    rev->add_option("base", ra.base, "Base or scenario file")->required();
    rev->add_option("explanation", ra.explanation, "Explanation file");
    rev->add_option("explanandum", ra.explanandum, "Ground conjunction, e.g. '!Ins(charlie)'");
    rev->add_option("--operator", ra.op)->check(CLI::IsMember({"guided", "falappa"}));
    rev->add_option("--strategy", ra.strategy);
    rev->add_option("--incision", ra.incision);
    rev->add_option("--weight", ra.weights, "KEY=VALUE, KEY a formula text or label");
    rev->add_flag("--interactive", ra.interactive);

    auto* ker = app.add_subcommand("kernels", "List correction sets or minimal unsatisfiable subsets");
    std::string kb, ke;
    bool muses = false;
    ker->add_option("base", kb)->required();
    ker->add_option("explanation", ke);
    ker->add_flag("--muses", muses);

    auto* cor = app.add_subcommand("corpus", "Replay the bundled scenario corpus");
    int experiment = 2;
    std::string corpus_strategy = "protect-explanation";
    cor->add_option("--experiment", experiment);
    cor->add_option("--strategy", corpus_strategy);

    auto* su = app.add_subcommand("suite", "Run the postulate suite on random instances");
    SuiteOptions so;
    std::string suite_op = "guided";
    su->add_option("--trials", so.trials);
    su->add_option("--operator", suite_op);
    su->add_option("--predicates", so.params.predicates);
    su->add_option("--max-arity", so.params.max_arity)->check(CLI::Range(1, 2));
    su->add_option("--constants", so.params.constants);
    su->add_option("--rules", so.params.rules);
    su->add_option("--body-length", so.params.body_length);
    su->add_option("--fact-probability", so.params.fact_probability)->check(CLI::Range(0.0, 1.0));

    std::vector<std::string> argv_store{"revisekit"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) {
        argv.push_back(a.data());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kFailure;
    }
    if (mg->count() > 0) {
        o.max_ground = max_ground;
    }

    try {
        if (check->parsed()) {
            return cmd_check(o, check_path, out);
        }
        if (rev->parsed()) {
            return cmd_revise(o, ra, in, out, err);
        }
        if (ker->parsed()) {
            return cmd_kernels(o, kb, ke, muses, out);
        }
        if (cor->parsed()) {
            return cmd_corpus(o, experiment, corpus_strategy, out);
        }
        if (su->parsed()) {
            return cmd_suite(o, so, suite_op, out);
        }
    } catch (const FileParseError& e) {
        report_parse_error(e, err);
        return kParseError;
    } catch (const ScenarioInvalid& e) {
        err << "error: invariant '" << e.invariant() << "' violated: " << e.what() << "\n";
        return kInvariant;
    } catch (const ArityMismatch& e) {
        err << "error: " << e.what() << "\n";
        return kInvariant;
    } catch (const InvalidExplanation& e) {
        err << "error: " << e.what() << "\n";
        return kInvalidExplanation;
    } catch (const CapExceeded& e) {
        err << "error: " << e.what() << "\n";
        return kCapExceeded;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kFailure;
    }
    return kFailure;
}

} // namespace revisekit::cli
