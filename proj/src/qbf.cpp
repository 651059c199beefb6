#include "robusteq/qbf.hpp"

#include <cstdlib>
#include <functional>
#include <sstream>

#include "robusteq/errors.hpp"

namespace robusteq {

void QbfFormula::validate() const {
    if (variables <= 0 || variables % 2 != 0)
        throw StructureError("quantifier prefix must alternate over an even variable count");
    for (std::size_t j = 0; j < clauses.size(); ++j)
        for (int lit : clauses[j])
            if (lit == 0 || std::abs(lit) > variables)
                throw StructureError("clause " + std::to_string(j + 1) +
                                     " uses a literal outside the declared variables");
}

bool qbf_eval(const QbfFormula& formula) {
    formula.validate();
    std::vector<bool> truth(formula.variables + 1, false);
    std::function<bool(int)> decide = [&](int var) {
        if (var > formula.variables) {
            for (const auto& clause : formula.clauses) {
                bool satisfied = false;
                for (int lit : clause)
                    if (truth[std::abs(lit)] == (lit > 0)) {
                        satisfied = true;
                        break;
                    }
                if (!satisfied) return false;
            }
            return true;
        }
        truth[var] = false;
        bool low = decide(var + 1);
        // Odd positions are universal, settled by one failure; even ones are
        // existential, settled by one success.
        if (low != (var % 2 == 1)) return low;
        truth[var] = true;
        return decide(var + 1);
    };
    return decide(1);
}

namespace {

// Positive literals belong to the "A" player of their variable, negative
// ones to the "B" player.
int literal_owner(int literal) { return literal > 0 ? 2 * literal : 2 * -literal + 1; }

}  // namespace

CompiledGame compile_game(const QbfFormula& formula) {
    formula.validate();
    int n = formula.variables;
    int c = static_cast<int>(formula.clauses.size());

    CompiledGame built;
    ConcurrentGame& g = built.game;
    g.players = {"Eve", "Adam"};
    for (int m = 1; m <= n; ++m) {
        g.players.push_back("A" + std::to_string(m));
        g.players.push_back("B" + std::to_string(m));
    }
    g.actions = {"a", "b", "x"};

    int bot = 3 * n + 4 * c;
    int top = bot + 1;
    auto on = [&](int player, int action, int to) {
        MoveRule rule;
        rule.moves.assign(g.player_count(), kAnyAction);
        rule.moves[player] = action;
        rule.to = to;
        return rule;
    };
    auto otherwise = [&](int to) {
        MoveRule rule;
        rule.moves.assign(g.player_count(), kAnyAction);
        rule.to = to;
        return rule;
    };
    auto add_state = [&](std::string name, std::vector<MoveRule> rules) {
        g.states.push_back(std::move(name));
        g.weights.emplace_back(g.player_count(), 0);
        g.rules.push_back(std::move(rules));
    };

    for (int m = 1; m <= n; ++m) {
        int chooser = (m % 2 == 1) ? 1 : 0;
        int pos = 3 * (m - 1) + 1;
        int neg = pos + 1;
        int next = (m < n) ? 3 * m : (c > 0 ? 3 * n : bot);
        // Adam may resign a universal pick outright; Eve's spare action is a
        // plain alias, so only the pick itself distinguishes her moves.
        add_state("q" + std::to_string(m),
                  {on(chooser, 0, pos), on(chooser, 1, neg), otherwise(chooser == 1 ? bot : pos)});
        add_state("A" + std::to_string(m), {on(2 * m, 1, bot), otherwise(next)});
        add_state("B" + std::to_string(m), {on(2 * m + 1, 1, bot), otherwise(next)});
    }
    for (int j = 0; j < c; ++j) {
        int base = 3 * n + 4 * j;
        add_state("c" + std::to_string(j + 1),
                  {on(0, 0, base + 1), on(0, 1, base + 2), otherwise(base + 3)});
        int next = (j + 1 < c) ? base + 4 : bot;
        for (int slot = 0; slot < 3; ++slot)
            add_state("c" + std::to_string(j + 1) + "l" + std::to_string(slot + 1),
                      {on(literal_owner(formula.clauses[j][slot]), 1, top), otherwise(next)});
    }
    add_state("bot", {otherwise(bot)});
    add_state("top", {otherwise(top)});
    for (int p = 0; p < g.player_count(); ++p) g.weights[bot][p] = p == 1 ? 0 : 1;
    g.weights[top][1] = 1;
    g.initial = 0;
    g.finalize();

    built.query = {n + 1, 0, Rational(0)};
    return built;
}

QbfFormula parse_qdimacs(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& what) {
        throw StructureError("line " + std::to_string(lineno) + ": " + what);
    };

    QbfFormula formula;
    bool seen_header = false;
    long long promised = 0;
    int next_var = 1;
    bool in_clauses = false;

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream tokens(line);
        std::string head;
        if (!(tokens >> head)) continue;
        if (head[0] == 'c') continue;
        if (head == "p") {
            if (seen_header) fail("second header");
            std::string kind;
            if (!(tokens >> kind) || kind != "cnf") fail("expected p cnf <variables> <clauses>");
            if (!(tokens >> formula.variables >> promised) || formula.variables <= 0 ||
                promised < 0)
                fail("expected p cnf <variables> <clauses>");
            std::string extra;
            if (tokens >> extra) fail("unexpected tokens after the header");
            seen_header = true;
            continue;
        }
        if (!seen_header) fail("the p cnf header must come first");
        if (head == "a" || head == "e") {
            if (in_clauses) fail("quantifier lines cannot follow clauses");
            std::vector<int> listed;
            int value = 0;
            bool closed = false;
            while (!closed && tokens >> value) {
                if (value == 0)
                    closed = true;
                else
                    listed.push_back(value);
            }
            if (!closed) fail(tokens.eof() ? "quantifier line must end with 0" : "unreadable token");
            std::string extra;
            if (tokens >> extra) fail("tokens after the closing 0");
            if (listed.empty()) fail("quantifier line names no variable");
            for (int v : listed) {
                if (v > formula.variables) fail("prefix names more variables than declared");
                if (v != next_var) fail("prefix must cover variables in order");
                if ((head == "a") != (next_var % 2 == 1))
                    fail("prefix must alternate, universal first");
                ++next_var;
            }
            continue;
        }
        in_clauses = true;
        if (next_var != formula.variables + 1)
            fail("clauses cannot start before the prefix covers every variable");
        std::istringstream nums(line);
        std::vector<int> literals;
        int value = 0;
        bool closed = false;
        while (!closed && nums >> value) {
            if (value == 0)
                closed = true;
            else
                literals.push_back(value);
        }
        if (!closed) fail(nums.eof() ? "clause must end with 0" : "unreadable token");
        std::string extra;
        if (nums >> extra) fail("tokens after the closing 0");
        if (literals.size() != 3) fail("clauses carry exactly three literals");
        for (int lit : literals)
            if (std::abs(lit) > formula.variables) fail("literal outside the declared variables");
        formula.clauses.push_back({literals[0], literals[1], literals[2]});
    }
    if (!seen_header) throw StructureError("missing p cnf header");
    if (next_var != formula.variables + 1)
        throw StructureError("prefix covers " + std::to_string(next_var - 1) + " of " +
                             std::to_string(formula.variables) + " variables");
    if (static_cast<long long>(formula.clauses.size()) != promised)
        throw StructureError("header promises " + std::to_string(promised) + " clauses, found " +
                             std::to_string(formula.clauses.size()));
    formula.validate();
    return formula;
}

std::string format_qdimacs(const QbfFormula& formula) {
    formula.validate();
    std::ostringstream out;
    out << "p cnf " << formula.variables << ' ' << formula.clauses.size() << '\n';
    for (int m = 1; m <= formula.variables; ++m)
        out << (m % 2 == 1 ? 'a' : 'e') << ' ' << m << " 0\n";
    for (const auto& clause : formula.clauses)
        out << clause[0] << ' ' << clause[1] << ' ' << clause[2] << " 0\n";
    return out.str();
}

}  // namespace robusteq
