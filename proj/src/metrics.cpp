#include "revisekit/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace revisekit {

double ChangeMeasure::value() const noexcept {
    return denominator == 0 ? 0.0 : static_cast<double>(numerator) / static_cast<double>(denominator);
}

ChangeMeasure ChangeMeasure::reduced() const noexcept {
    if (denominator == 0) {
        return {0, 0};
    }
    auto g = std::gcd(numerator, denominator);
    return {numerator / g, denominator / g};
}

std::string ChangeMeasure::decimal(int places) const {
    std::uint64_t scale = 1;
    for (int i = 0; i < places; ++i) {
        scale *= 10;
    }
    std::uint64_t scaled = 0;
    if (denominator != 0) {
        // round half up
        scaled = (2 * numerator * scale + denominator) / (2 * denominator);
    }
    std::string whole = std::to_string(scaled / scale);
    if (places <= 0) {
        return whole;
    }
    std::string frac = std::to_string(scaled % scale);
    frac.insert(0, static_cast<std::size_t>(places) - frac.size(), '0');
    return whole + "." + frac;
}

std::string ChangeMeasure::fraction() const {
    return std::to_string(numerator) + "/" + std::to_string(denominator);
}

std::strong_ordering ChangeMeasure::operator<=>(const ChangeMeasure& o) const noexcept {
    // An empty pair of consequence sets has value 0, i.e. 0/1.
    const std::uint64_t ld = denominator == 0 ? 1 : denominator;
    const std::uint64_t rd = o.denominator == 0 ? 1 : o.denominator;
    const unsigned __int128 l = static_cast<unsigned __int128>(numerator) * rd;
    const unsigned __int128 r = static_cast<unsigned __int128>(o.numerator) * ld;
    if (l < r) {
        return std::strong_ordering::less;
    }
    if (l > r) {
        return std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

ChangeMeasure change_measure(const BeliefBase& b, const BeliefBase& b_prime, const Signature& sig) {
    std::set<std::string> g1;
    std::set<std::string> g2;
    for (const auto& l : consequences(b, sig)) {
        g1.insert(to_string(l));
    }
    for (const auto& l : consequences(b_prime, sig)) {
        g2.insert(to_string(l));
    }
    std::vector<std::string> diff;
    std::vector<std::string> uni;
    std::set_symmetric_difference(g1.begin(), g1.end(), g2.begin(), g2.end(), std::back_inserter(diff));
    std::set_union(g1.begin(), g1.end(), g2.begin(), g2.end(), std::back_inserter(uni));
    return {diff.size(), uni.size()};
}

ChangeMeasure change_measure(const BeliefBase& b, const BeliefBase& b_prime) {
    Signature sig;
    sig.add(b);
    sig.add(b_prime);
    return change_measure(b, b_prime, sig);
}

namespace {

std::set<std::string> texts_of(const BeliefBase& b) {
    std::set<std::string> out;
    for (const auto& s : b.statements()) {
        out.insert(s.text());
    }
    return out;
}

std::string strip_primes(std::string label) {
    while (!label.empty() && label.back() == '\'') {
        label.pop_back();
    }
    return label;
}

// Labels L for which the revised base holds some L', L'', ...
std::set<std::string> replaced_labels(const BeliefBase& revised) {
    std::set<std::string> out;
    for (const auto& s : revised.statements()) {
        if (!s.label.empty() && s.label.back() == '\'') {
            out.insert(strip_primes(s.label));
        }
    }
    return out;
}

} // namespace

std::size_t statement_changes(const BeliefBase& base, const RevisionResult& result) {
    const auto kept = texts_of(result.revised);
    return static_cast<std::size_t>(std::count_if(base.statements().begin(), base.statements().end(),
                                                  [&](const Statement& s) { return kept.count(s.text()) == 0; }));
}

std::string to_string(RevisionLabel l) {
    switch (l) {
    case RevisionLabel::Minimal:
        return "minimal";
    case RevisionLabel::NonMinimal:
        return "non-minimal";
    case RevisionLabel::Unclassified:
        return "unclassified";
    }
    return "?";
}

RevisionClassification classify_revision(const Scenario& sc, const RevisionResult& result, std::size_t threshold) {
    for (const auto& e : result.retracted.elements) {
        if (auto l = e.label_in(Side::Base); l && sc.statements.find_label(*l) == nullptr) {
            throw UnknownLabel("retracted statement '" + *l + "' is not part of scenario " + sc.id);
        }
    }
    const auto kept = texts_of(result.revised);
    const auto replaced = replaced_labels(result.revised);

    RevisionClassification c;
    bool conditional = false;
    for (const auto& s : sc.statements.statements()) {
        if (kept.count(s.text()) != 0) {
            c.retained.push_back(s.label);
            continue;
        }
        if (replaced.count(s.label) != 0) {
            c.altered.push_back(s.label);
        } else {
            c.discarded.push_back(s.label);
        }
        if (sc.kind_of(s.label) == StatementKind::Conditional) {
            conditional = true;
        }
    }
    const std::size_t touched = c.discarded.size() + c.altered.size();
    if (touched == 0) {
        c.label = RevisionLabel::Unclassified;
    } else if (conditional || touched >= threshold) {
        c.label = RevisionLabel::NonMinimal;
    } else {
        c.label = RevisionLabel::Minimal;
    }
    return c;
}

} // namespace revisekit
