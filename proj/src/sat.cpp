#include "sat.hpp"

#include <cstdlib>

namespace revisekit::sat {

int Encoder::var(const Atom& a) {
    auto key = to_string(a);
    auto it = index_.find(key);
    if (it != index_.end()) {
        return it->second;
    }
    names_.push_back(key);
    int v = static_cast<int>(names_.size());
    index_.emplace(std::move(key), v);
    return v;
}

Lit Encoder::lit(const Literal& l) {
    int v = var(l.atom);
    return l.negated ? -v : v;
}

void Encoder::add(const Formula& f, std::vector<Clause>& out) {
    if (const auto* l = std::get_if<Literal>(&f)) {
        out.push_back({lit(*l)});
        return;
    }
    const auto& r = std::get<Rule>(f);
    Clause c;
    c.reserve(r.body.size() + 1);
    for (const auto& b : r.body) {
        c.push_back(-lit(b));
    }
    c.push_back(lit(r.head));
    out.push_back(std::move(c));
}

std::vector<Clause> Encoder::encode(std::span<const Formula> formulas) {
    std::vector<Clause> out;
    out.reserve(formulas.size());
    for (const auto& f : formulas) {
        add(f, out);
    }
    return out;
}

namespace {

class Dpll {
public:
    Dpll(const std::vector<Clause>& clauses, int num_vars)
        : clauses_(clauses), value_(static_cast<std::size_t>(num_vars) + 1, 0) {}

    bool solve() {
        std::size_t mark = trail_.size();
        if (!propagate()) {
            undo(mark);
            return false;
        }
        Lit branch = pick();
        if (branch == 0) {
            return true;
        }
        for (Lit choice : {branch, -branch}) {
            std::size_t before = trail_.size();
            assign(choice);
            if (solve()) {
                return true;
            }
            undo(before);
        }
        undo(mark);
        return false;
    }

private:
    // 1 true, -1 false, 0 unassigned
    int eval(Lit l) const {
        int v = value_[static_cast<std::size_t>(std::abs(l))];
        return l > 0 ? v : -v;
    }

    void assign(Lit l) {
        value_[static_cast<std::size_t>(std::abs(l))] = l > 0 ? 1 : -1;
        trail_.push_back(std::abs(l));
    }

    void undo(std::size_t mark) {
        while (trail_.size() > mark) {
            value_[static_cast<std::size_t>(trail_.back())] = 0;
            trail_.pop_back();
        }
    }

    bool propagate() {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& c : clauses_) {
                Lit unit = 0;
                int open = 0;
                bool sat = false;
                for (Lit l : c) {
                    int v = eval(l);
                    if (v > 0) {
                        sat = true;
                        break;
                    }
                    if (v == 0) {
                        ++open;
                        unit = l;
                    }
                }
                if (sat) {
                    continue;
                }
                if (open == 0) {
                    return false;
                }
                if (open == 1) {
                    assign(unit);
                    changed = true;
                }
            }
        }
        return true;
    }

    // First unassigned literal of the first clause not yet satisfied.
    Lit pick() const {
        for (const auto& c : clauses_) {
            bool sat = false;
            Lit open = 0;
            for (Lit l : c) {
                int v = eval(l);
                if (v > 0) {
                    sat = true;
                    break;
                }
                if (v == 0 && open == 0) {
                    open = l;
                }
            }
            if (!sat && open != 0) {
                return open;
            }
        }
        return 0;
    }

    const std::vector<Clause>& clauses_;
    std::vector<int> value_;
    std::vector<int> trail_;
};

} // namespace

bool satisfiable(const std::vector<Clause>& clauses, int num_vars) {
    Dpll solver(clauses, num_vars);
    return solver.solve();
}

} // namespace revisekit::sat
