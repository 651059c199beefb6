#pragma once

#include <optional>
#include <vector>

#include "robusteq/rational.hpp"

namespace robusteq {

enum class Rel { Ge, Eq };

/// One constraint: a . x >= b  or  a . x = b.
struct LinearConstraint {
    std::vector<Rational> a;
    Rel rel = Rel::Ge;
    Rational b;
};

struct LinearSystem {
    int arity = 0;
    std::vector<LinearConstraint> rows;

    explicit LinearSystem(int arity = 0) : arity(arity) {}

    /// Throws StructureError when the row arity does not match.
    void add(std::vector<Rational> a, Rel rel, Rational b);
};

/// Exact feasibility via phase-one simplex with Bland's rule.
/// `nonneg[i]` marks variable i as constrained to be >= 0; other variables
/// are free. Returns a witness point satisfying every row exactly, or
/// nullopt when the system is infeasible.
std::optional<std::vector<Rational>> lp_feasible(const LinearSystem& system,
                                                 const std::vector<bool>& nonneg);

/// Convenience check: does `point` satisfy every row of `system` exactly?
bool satisfies(const LinearSystem& system, const std::vector<Rational>& point);

}  // namespace robusteq
