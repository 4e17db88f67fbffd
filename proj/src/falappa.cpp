#include "revisekit/falappa.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <set>

namespace revisekit {

using Mask = RevisionProblem::Mask;

std::vector<UnionElement> KernelSet::support() const {
    std::map<std::string, UnionElement> seen;
    for (const auto& k : kernels) {
        for (const auto& e : k) {
            seen.try_emplace(e.text, e);
        }
    }
    std::vector<UnionElement> out;
    for (auto& [_, e] : seen) {
        out.push_back(std::move(e));
    }
    return out;
}

std::string IncisionPolicy::name() const {
    switch (kind) {
    case Kind::MinHittingSet:
        return "min-hitting-set";
    case Kind::CanonicalFirst:
        return "canonical-first";
    case Kind::SeededRandom:
        return "seeded-random";
    }
    return "?";
}

std::optional<IncisionPolicy::Kind> parse_incision_kind(std::string_view name) {
    using K = IncisionPolicy::Kind;
    for (auto k : {K::MinHittingSet, K::CanonicalFirst, K::SeededRandom}) {
        IncisionPolicy p;
        p.kind = k;
        if (p.name() == name) {
            return k;
        }
    }
    return std::nullopt;
}

namespace {

std::vector<Mask> mus_masks(const RevisionProblem& problem) {
    std::vector<Mask> found;
    if (problem.size() == 0 || problem.consistent(problem.all())) {
        return found;
    }
    // Growing by cardinality: an inconsistent subset containing no smaller MUS
    // has only consistent proper subsets, so it is itself minimal.
    for_each_subset(problem.size(), 1, problem.size(), [&](Mask m) {
        for (Mask k : found) {
            if ((k & m) == k) {
                return true;
            }
        }
        if (!problem.consistent(m)) {
            found.push_back(m);
        }
        return true;
    });
    return found;
}

bool hits_all(const std::vector<std::vector<UnionElement>>& kernels, const std::set<std::string>& chosen) {
    return std::all_of(kernels.begin(), kernels.end(), [&](const std::vector<UnionElement>& k) {
        return k.empty() || std::any_of(k.begin(), k.end(), [&](const UnionElement& e) {
                   return chosen.count(e.text) != 0;
               });
    });
}

} // namespace

std::vector<std::vector<UnionElement>> minimal_unsatisfiable_subsets(const RevisionProblem& problem) {
    std::vector<std::vector<UnionElement>> out;
    for (Mask m : mus_masks(problem)) {
        out.push_back(problem.pick(m));
    }
    return out;
}

KernelSet kernel_set(const BeliefBase& base, const BeliefBase& explanation, Limits limits) {
    RevisionProblem problem(base, explanation, nullptr, limits);
    return KernelSet{minimal_unsatisfiable_subsets(problem)};
}

std::vector<std::vector<UnionElement>> all_incisions(const KernelSet& ks) {
    std::vector<std::vector<UnionElement>> out;
    auto support = ks.support();
    if (support.size() > 63) {
        throw CapExceeded("kernel support element", support.size(), 63);
    }
    for_each_subset(support.size(), 0, support.size(), [&](Mask m) {
        std::set<std::string> chosen;
        std::vector<UnionElement> picked;
        for (std::size_t i = 0; i < support.size(); ++i) {
            if ((m >> i) & 1U) {
                chosen.insert(support[i].text);
                picked.push_back(support[i]);
            }
        }
        if (hits_all(ks.kernels, chosen)) {
            out.push_back(std::move(picked));
        }
        return true;
    });
    return out;
}

std::vector<UnionElement> incise(const KernelSet& ks, const IncisionPolicy& policy) {
    if (ks.empty()) {
        return {};
    }
    switch (policy.kind) {
    case IncisionPolicy::Kind::MinHittingSet: {
        auto support = ks.support();
        std::vector<UnionElement> best;
        bool done = false;
        for_each_subset(support.size(), 1, support.size(), [&](Mask m) {
            std::set<std::string> chosen;
            for (std::size_t i = 0; i < support.size(); ++i) {
                if ((m >> i) & 1U) {
                    chosen.insert(support[i].text);
                }
            }
            if (!hits_all(ks.kernels, chosen)) {
                return true;
            }
            for (std::size_t i = 0; i < support.size(); ++i) {
                if ((m >> i) & 1U) {
                    best.push_back(support[i]);
                }
            }
            done = true;
            return false;
        });
        (void)done;
        return best;
    }
    case IncisionPolicy::Kind::CanonicalFirst:
    case IncisionPolicy::Kind::SeededRandom: {
        std::mt19937_64 gen(policy.seed);
        std::set<std::string> chosen;
        std::vector<UnionElement> picked;
        for (const auto& k : ks.kernels) {
            if (k.empty() || std::any_of(k.begin(), k.end(),
                                         [&](const UnionElement& e) { return chosen.count(e.text) != 0; })) {
                continue;
            }
            std::size_t idx = 0;
            if (policy.kind == IncisionPolicy::Kind::SeededRandom) {
                const std::uint64_t n = k.size();
                const std::uint64_t limit =
                    std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
                std::uint64_t r;
                do {
                    r = gen();
                } while (r >= limit);
                idx = static_cast<std::size_t>(r % n);
            }
            chosen.insert(k[idx].text);
            picked.push_back(k[idx]);
        }
        std::sort(picked.begin(), picked.end(),
                  [](const UnionElement& a, const UnionElement& b) { return a.text < b.text; });
        return picked;
    }
    }
    return {};
}

namespace {

RevisionResult finish(const RevisionProblem& problem, Mask incision, const Explanandum* phi, std::string policy,
                      std::optional<std::uint64_t> seed) {
    auto r = apply_retraction(problem, incision, phi);
    r.operator_name = "falappa";
    r.strategy = std::move(policy);
    r.seed = seed;
    return r;
}

} // namespace

RevisionResult revise_falappa(const BeliefBase& base, const BeliefBase& explanation, const IncisionPolicy& policy,
                              const Explanandum* phi, Limits limits) {
    RevisionProblem problem(base, explanation, phi, limits);
    KernelSet ks{minimal_unsatisfiable_subsets(problem)};
    CorrectionSet cut{incise(ks, policy), false};
    std::optional<std::uint64_t> seed;
    if (policy.kind == IncisionPolicy::Kind::SeededRandom) {
        seed = policy.seed;
    }
    return finish(problem, problem.mask_of(cut), phi, policy.name(), seed);
}

RevisionResult revise_falappa_with(const BeliefBase& base, const BeliefBase& explanation,
                                   std::span<const std::string> incision_texts, const Explanandum* phi,
                                   Limits limits) {
    RevisionProblem problem(base, explanation, phi, limits);
    KernelSet ks{minimal_unsatisfiable_subsets(problem)};
    auto mask = problem.mask_of(incision_texts);
    std::set<std::string> chosen(incision_texts.begin(), incision_texts.end());
    std::set<std::string> support;
    for (const auto& e : ks.support()) {
        support.insert(e.text);
    }
    bool inside = std::all_of(chosen.begin(), chosen.end(), [&](const std::string& t) { return support.count(t); });
    if (!inside || !hits_all(ks.kernels, chosen)) {
        throw Error("the given set is not an incision of the kernel set");
    }
    return finish(problem, mask, phi, "explicit", std::nullopt);
}

} // namespace revisekit
