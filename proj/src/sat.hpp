#pragma once

// Clause-level satisfiability used by the logic layer. Not part of the public API.

#include "revisekit/logic.hpp"

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace revisekit::sat {

/// DIMACS-style literal: +v is variable v, -v its negation, v >= 1.
using Lit = int;
using Clause = std::vector<Lit>;

/// Interns ground atoms as propositional variables and clausifies formulas.
class Encoder {
public:
    int var(const Atom& a);
    Lit lit(const Literal& l);

    void add(const Formula& f, std::vector<Clause>& out);
    std::vector<Clause> encode(std::span<const Formula> formulas);

    int num_vars() const noexcept { return static_cast<int>(names_.size()); }

private:
    std::unordered_map<std::string, int> index_;
    std::vector<std::string> names_;
};

/// Complete DPLL search with unit propagation.
bool satisfiable(const std::vector<Clause>& clauses, int num_vars);

} // namespace revisekit::sat
