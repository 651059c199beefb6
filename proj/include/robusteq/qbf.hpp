#pragma once

#include <array>
#include <string>
#include <vector>

#include "robusteq/game.hpp"
#include "robusteq/solver.hpp"

namespace robusteq {

// Prenex 3-CNF with a strictly alternating prefix, universal first: for all
// x1, exists x2, ..., exists xn with n even. Literals are signed 1-based
// variable indices; repeating a literal inside a clause expresses shorter
// clauses.
struct QbfFormula {
    int variables = 0;
    std::vector<std::array<int, 3>> clauses;

    // Throws StructureError when the shape breaks the conventions above.
    void validate() const;
};

// Ground truth, by expanding the prefix over every assignment.
bool qbf_eval(const QbfFormula& formula);

struct CompiledGame {
    ConcurrentGame game;
    RobustnessQuery query;
};

// Turns the formula into a labeled solver benchmark. The game walks the
// prefix: one player resolves the universal picks (and may resign to the
// "bot" sink where everyone but them is paid), a second resolves the
// existential picks, and each polarity of each variable gets its own player
// who can cut the walk short. Surviving the walk enters the clause phase,
// where the existential player names a literal per clause whose owner either
// escapes to the "top" sink, paid only to the universal player, or lets the
// walk fall back to bot. Reaching the clause phase against the equilibrium
// takes the universal player plus one literal player per variable, so the
// query asks for resilience against variables + 1 deviators; it holds exactly
// when the formula is true.
CompiledGame compile_game(const QbfFormula& formula);

// QDIMACS-style text: optional comment lines, a "p cnf <variables> <clauses>"
// header, quantifier lines ("a 1 0", "e 2 0", ...) covering the variables in
// order, then clause lines of three literals, all terminated by 0. Errors
// carry 1-based line numbers.
QbfFormula parse_qdimacs(const std::string& text);
std::string format_qdimacs(const QbfFormula& formula);

}  // namespace robusteq
