#include "revisekit/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace revisekit {

namespace {

std::string describe(const SourceSpan& span, const std::string& message) {
    return std::to_string(span.line) + ":" + std::to_string(span.column) + ": " + message;
}

} // namespace

ParseError::ParseError(SourceSpan span, std::string message, std::vector<std::string> expected)
    : Error(describe(span, message)), span_(span), message_(std::move(message)), expected_(std::move(expected)) {}

std::string to_string(ProblemType t) {
    switch (t) {
    case ProblemType::I:
        return "I";
    case ProblemType::II:
        return "II";
    case ProblemType::III:
        return "III";
    }
    return "?";
}

std::string to_string(StatementKind k) { return k == StatementKind::Conditional ? "conditional" : "categorical"; }

StatementKind Scenario::kind_of(std::string_view label) const {
    auto stmts = statements.statements();
    for (std::size_t i = 0; i < stmts.size(); ++i) {
        if (stmts[i].label == label) {
            return kinds[i];
        }
    }
    throw UnknownLabel("scenario '" + id + "' has no statement labeled '" + std::string(label) + "'");
}

std::vector<std::string> Scenario::labels_of(StatementKind k) const {
    std::vector<std::string> out;
    auto stmts = statements.statements();
    for (std::size_t i = 0; i < stmts.size(); ++i) {
        if (kinds[i] == k) {
            out.push_back(stmts[i].label);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Lexer

namespace {

enum class Tok { Ident, LParen, RParen, Comma, Amp, Arrow, Bang, Dot, Colon, Prime, End };

const char* tok_name(Tok t) {
    switch (t) {
    case Tok::Ident:
        return "identifier";
    case Tok::LParen:
        return "'('";
    case Tok::RParen:
        return "')'";
    case Tok::Comma:
        return "','";
    case Tok::Amp:
        return "'&'";
    case Tok::Arrow:
        return "'->'";
    case Tok::Bang:
        return "'!'";
    case Tok::Dot:
        return "'.'";
    case Tok::Colon:
        return "':'";
    case Tok::Prime:
        return "'''";
    case Tok::End:
        return "end of input";
    }
    return "?";
}

struct Token {
    Tok kind;
    std::string text;
    SourceSpan span;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; }

std::vector<Token> lex(std::string_view text, std::size_t first_line) {
    std::vector<Token> out;
    std::size_t line = first_line;
    std::size_t col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c)) != 0) {
            advance(1);
            continue;
        }
        if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
            while (i < text.size() && text[i] != '\n') {
                advance(1);
            }
            continue;
        }
        SourceSpan span{line, col, 1};
        if (ident_start(c)) {
            std::size_t j = i;
            while (j < text.size() && ident_char(text[j])) {
                ++j;
            }
            span.length = j - i;
            out.push_back({Tok::Ident, std::string(text.substr(i, j - i)), span});
            advance(j - i);
            continue;
        }
        if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
            span.length = 2;
            out.push_back({Tok::Arrow, "->", span});
            advance(2);
            continue;
        }
        Tok kind;
        switch (c) {
        case '(':
            kind = Tok::LParen;
            break;
        case ')':
            kind = Tok::RParen;
            break;
        case ',':
            kind = Tok::Comma;
            break;
        case '&':
            kind = Tok::Amp;
            break;
        case '!':
            kind = Tok::Bang;
            break;
        case '.':
            kind = Tok::Dot;
            break;
        case ':':
            kind = Tok::Colon;
            break;
        case '\'':
            kind = Tok::Prime;
            break;
        default:
            throw ParseError(span, std::string("unexpected character '") + c + "'");
        }
        out.push_back({kind, std::string(1, c), span});
        advance(1);
    }
    out.push_back({Tok::End, "", SourceSpan{line, col, 0}});
    return out;
}

// ---------------------------------------------------------------------------
// Parser

class Parser {
public:
    Parser(std::string_view text, std::size_t first_line) : toks_(lex(text, first_line)) {}

    bool at_end() const { return peek().kind == Tok::End; }
    const Token& peek(std::size_t ahead = 0) const {
        return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
    }

    const Token& expect(Tok kind, std::vector<std::string> expected = {}) {
        if (peek().kind != kind) {
            if (expected.empty()) {
                expected.push_back(tok_name(kind));
            }
            fail(expected);
        }
        return toks_[pos_++];
    }

    bool accept(Tok kind) {
        if (peek().kind == kind) {
            ++pos_;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::vector<std::string>& expected) const {
        const auto& t = peek();
        std::string msg = "expected ";
        for (std::size_t i = 0; i < expected.size(); ++i) {
            if (i > 0) {
                msg += i + 1 == expected.size() ? " or " : ", ";
            }
            msg += expected[i];
        }
        msg += ", found ";
        msg += t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
        throw ParseError(t.span, msg, expected);
    }

    // label ":" where label := ident { "'" }
    std::optional<std::string> label() {
        if (peek().kind != Tok::Ident) {
            return std::nullopt;
        }
        std::size_t k = 1;
        while (peek(k).kind == Tok::Prime) {
            ++k;
        }
        if (peek(k).kind != Tok::Colon) {
            return std::nullopt;
        }
        std::string out = toks_[pos_].text;
        out.append(k - 1, '\'');
        pos_ += k + 1;
        return out;
    }

    Term term() {
        const auto& t = expect(Tok::Ident, {"term"});
        if (std::isupper(static_cast<unsigned char>(t.text[0])) != 0) {
            return Term::variable(t.text);
        }
        return Term::constant(t.text);
    }

    Atom atom() {
        const auto& name = expect(Tok::Ident, {"predicate"});
        Atom a{name.text, {}};
        if (accept(Tok::LParen)) {
            a.args.push_back(term());
            while (accept(Tok::Comma)) {
                a.args.push_back(term());
            }
            expect(Tok::RParen, {"','", "')'"});
        }
        return a;
    }

    Literal literal() {
        bool neg = accept(Tok::Bang);
        if (peek().kind != Tok::Ident) {
            fail(neg ? std::vector<std::string>{"predicate"} : std::vector<std::string>{"'!'", "predicate"});
        }
        return Literal{atom(), neg};
    }

    Formula formula() {
        std::vector<Literal> lits{literal()};
        while (accept(Tok::Amp)) {
            lits.push_back(literal());
        }
        if (accept(Tok::Arrow)) {
            Rule r;
            r.body = std::move(lits);
            r.head = literal();
            return r;
        }
        if (lits.size() > 1) {
            fail({"'->'"});
        }
        return lits.front();
    }

    struct Parsed {
        Statement stmt;
        SourceSpan span;
    };

    Parsed statement() {
        SourceSpan start = peek().span;
        auto lbl = label();
        Formula f = formula();
        const auto& dot = expect(Tok::Dot, {"'&'", "'->'", "'.'"});
        SourceSpan span = start;
        if (dot.span.line == start.line) {
            span.length = dot.span.column + 1 - start.column;
        } else {
            span.length = start.length;
        }
        Statement s{lbl.value_or(""), std::move(f), lbl.has_value()};
        return {std::move(s), span};
    }

    std::vector<Literal> conjunction() {
        std::vector<Literal> lits{literal()};
        while (accept(Tok::Amp)) {
            lits.push_back(literal());
        }
        return lits;
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

void add_checked(BeliefBase& base, Signature& sig, Parser::Parsed p) {
    sig.add(p.stmt.formula);
    try {
        base.add(std::move(p.stmt));
    } catch (const InvalidFormula& e) {
        throw ParseError(p.span, e.what());
    }
}

BeliefBase parse_base_at(std::string_view text, std::size_t first_line, Signature& sig) {
    Parser p(text, first_line);
    BeliefBase base;
    while (!p.at_end()) {
        add_checked(base, sig, p.statement());
    }
    return base;
}

Explanandum parse_explanandum_at(std::string_view text, std::size_t first_line) {
    Parser p(text, first_line);
    SourceSpan start = p.peek().span;
    auto lits = p.conjunction();
    p.accept(Tok::Dot);
    if (!p.at_end()) {
        p.fail({"'&'", "'.'", "end of input"});
    }
    try {
        return Explanandum(std::move(lits));
    } catch (const InvalidFormula& e) {
        throw ParseError(start, e.what());
    }
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())) != 0) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())) != 0) {
        s.remove_suffix(1);
    }
    return s;
}

std::string_view strip_comment(std::string_view s) {
    auto pos = s.find("//");
    return pos == std::string_view::npos ? s : s.substr(0, pos);
}

struct Section {
    std::string name;
    SourceSpan header;
    std::size_t first_line = 0; // line of the first body line
    std::string body;
};

std::vector<Section> split_sections(std::string_view text) {
    std::vector<Section> out;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(start, end - start);
        ++line_no;
        auto content = trim(strip_comment(line));
        if (!content.empty() && content.front() == '[') {
            std::size_t col = line.find('[') + 1;
            if (content.back() != ']') {
                throw ParseError({line_no, col, content.size()}, "unterminated section header", {"']'"});
            }
            Section s;
            s.name = std::string(trim(content.substr(1, content.size() - 2)));
            s.header = {line_no, col, content.size()};
            s.first_line = line_no + 1;
            out.push_back(std::move(s));
        } else if (!out.empty()) {
            out.back().body.append(line);
            out.back().body.push_back('\n');
        } else if (!content.empty()) {
            std::size_t col = line.find_first_not_of(" \t") + 1;
            throw ParseError({line_no, col, content.size()}, "content before the first section", {"'[meta]'"});
        }
        if (end == text.size()) {
            break;
        }
        start = end + 1;
    }
    return out;
}

} // namespace

// ---------------------------------------------------------------------------
// Public parse entry points

BeliefBase parse_base(std::string_view text) {
    Signature sig;
    return parse_base_at(text, 1, sig);
}

Explanandum parse_explanandum(std::string_view text) { return parse_explanandum_at(text, 1); }

bool looks_like_scenario(std::string_view text) {
    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        auto content = trim(strip_comment(text.substr(start, end - start)));
        if (!content.empty()) {
            return content.front() == '[';
        }
        start = end + 1;
    }
    return false;
}

Scenario parse_scenario(std::string_view text) {
    auto sections = split_sections(text);
    std::map<std::string, const Section*> by_name;
    for (const auto& s : sections) {
        if (s.name != "meta" && s.name != "statements" && s.name != "fact" && s.name != "explanation") {
            throw ParseError(s.header, "unknown section '" + s.name + "'",
                             {"[meta]", "[statements]", "[fact]", "[explanation]"});
        }
        if (!by_name.emplace(s.name, &s).second) {
            throw ParseError(s.header, "duplicate section '" + s.name + "'");
        }
    }
    for (const char* required : {"meta", "statements", "fact"}) {
        if (by_name.count(required) == 0) {
            SourceSpan where = sections.empty() ? SourceSpan{1, 1, 0} : sections.back().header;
            throw ParseError(where, std::string("missing section [") + required + "]",
                             {std::string("[") + required + "]"});
        }
    }

    Scenario sc;
    bool have_id = false;
    bool have_type = false;
    {
        const Section& meta = *by_name["meta"];
        std::size_t line_no = meta.first_line;
        std::size_t start = 0;
        const std::string& body = meta.body;
        while (start < body.size()) {
            auto end = body.find('\n', start);
            std::string_view raw(body.data() + start, end - start);
            auto content = trim(strip_comment(raw));
            if (!content.empty()) {
                std::size_t col = raw.find_first_not_of(" \t") + 1;
                auto eq = content.find('=');
                if (eq == std::string_view::npos) {
                    throw ParseError({line_no, col, content.size()}, "expected 'key = value'", {"'='"});
                }
                auto key = trim(content.substr(0, eq));
                auto value = trim(content.substr(eq + 1));
                SourceSpan vspan{line_no, col + static_cast<std::size_t>(value.data() - content.data()),
                                 std::max<std::size_t>(value.size(), 1)};
                if (key == "id") {
                    if (value.empty()) {
                        throw ParseError(vspan, "empty scenario id", {"identifier"});
                    }
                    sc.id = std::string(value);
                    have_id = true;
                } else if (key == "type") {
                    if (value == "I") {
                        sc.type = ProblemType::I;
                    } else if (value == "II") {
                        sc.type = ProblemType::II;
                    } else if (value == "III") {
                        sc.type = ProblemType::III;
                    } else {
                        throw ParseError(vspan, "unknown problem type '" + std::string(value) + "'",
                                         {"I", "II", "III"});
                    }
                    have_type = true;
                } else {
                    throw ParseError({line_no, col, key.size()}, "unknown meta key '" + std::string(key) + "'",
                                     {"id", "type"});
                }
            }
            ++line_no;
            start = end + 1;
        }
        if (!have_id || !have_type) {
            throw ParseError(meta.header, have_id ? "missing meta key 'type'" : "missing meta key 'id'",
                             {have_id ? "type" : "id"});
        }
    }

    Signature sig;
    {
        const Section& st = *by_name["statements"];
        Parser p(st.body, st.first_line);
        while (!p.at_end()) {
            const auto& kind_tok = p.expect(Tok::Ident, {"'conditional'", "'categorical'"});
            StatementKind kind;
            if (kind_tok.text == "conditional") {
                kind = StatementKind::Conditional;
            } else if (kind_tok.text == "categorical") {
                kind = StatementKind::Categorical;
            } else {
                throw ParseError(kind_tok.span, "unknown statement kind '" + kind_tok.text + "'",
                                 {"'conditional'", "'categorical'"});
            }
            p.expect(Tok::Colon);
            auto parsed = p.statement();
            if (parsed.stmt.label.empty()) {
                parsed.stmt.label = "S" + std::to_string(sc.kinds.size() + 1);
            }
            parsed.stmt.explicit_label = true;
            add_checked(sc.statements, sig, std::move(parsed));
            sc.kinds.push_back(kind);
        }
    }
    {
        const Section& fact = *by_name["fact"];
        sc.fact = parse_explanandum_at(fact.body, fact.first_line);
        sig.add(sc.fact);
    }
    if (auto it = by_name.find("explanation"); it != by_name.end()) {
        sc.explanation = parse_base_at(it->second->body, it->second->first_line, sig);
    }
    validate_scenario(sc);
    return sc;
}

void validate_scenario(const Scenario& sc) {
    auto stmts = sc.statements.statements();
    if (stmts.size() != sc.kinds.size()) {
        throw ScenarioInvalid("statement-kinds", "every statement needs exactly one kind");
    }
    std::size_t conditionals = 0;
    std::size_t categoricals = 0;
    for (std::size_t i = 0; i < stmts.size(); ++i) {
        bool rule = stmts[i].is_rule();
        if (sc.kinds[i] == StatementKind::Conditional) {
            ++conditionals;
            if (!rule) {
                throw ScenarioInvalid("statement-kinds", "conditional " + stmts[i].label + " is not a rule");
            }
        } else {
            ++categoricals;
            if (rule) {
                throw ScenarioInvalid("statement-kinds", "categorical " + stmts[i].label + " is a rule");
            }
        }
    }
    std::size_t want_conditionals = sc.type == ProblemType::I ? 1 : 2;
    if (conditionals != want_conditionals || categoricals != 1) {
        throw ScenarioInvalid("statement-counts", "type " + to_string(sc.type) + " needs " +
                                                      std::to_string(want_conditionals) +
                                                      " conditional(s) and 1 categorical, found " +
                                                      std::to_string(conditionals) + " and " +
                                                      std::to_string(categoricals));
    }
    bool type3 = sc.type == ProblemType::III;
    if (type3 ? sc.fact.size() < 2 : sc.fact.size() != 1) {
        throw ScenarioInvalid("fact-size", "type " + to_string(sc.type) + " needs " +
                                               (type3 ? "at least 2 literals" : "exactly 1 literal") +
                                               " in its fact, found " + std::to_string(sc.fact.size()));
    }

    Signature sig;
    sig.add(sc.statements);
    sig.add(sc.fact);
    if (sc.explanation) {
        sig.add(*sc.explanation);
    }
    auto g = ground(sc.statements, sig).formulas;
    for (const auto& l : sc.fact.literals()) {
        g.emplace_back(l);
    }
    if (is_consistent(g)) {
        throw ScenarioInvalid("fact-conflicts", "the fact is consistent with the statements");
    }
}

// ---------------------------------------------------------------------------
// Rendering

std::string render(const BeliefBase& base) {
    std::string out;
    for (const auto* s : base.canonical_order()) {
        if (s->explicit_label) {
            out += s->label + ": ";
        }
        out += s->text();
        out += ".\n";
    }
    return out;
}

std::string render(const Scenario& sc) {
    std::string out = "[meta]\nid = " + sc.id + "\ntype = " + to_string(sc.type) + "\n\n[statements]\n";
    auto stmts = sc.statements.statements();
    for (std::size_t i = 0; i < stmts.size(); ++i) {
        out += to_string(sc.kinds[i]) + ": " + stmts[i].label + ": " + stmts[i].text() + ".\n";
    }
    out += "\n[fact]\n" + to_string(sc.fact) + ".\n";
    if (sc.explanation) {
        out += "\n[explanation]\n" + render(*sc.explanation);
    }
    return out;
}

} // namespace revisekit
