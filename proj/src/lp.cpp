#include "robusteq/lp.hpp"

#include <cassert>

#include "robusteq/errors.hpp"

namespace robusteq {

void LinearSystem::add(std::vector<Rational> a, Rel rel, Rational b) {
    if (static_cast<int>(a.size()) != arity) throw StructureError("constraint arity mismatch");
    rows.push_back(LinearConstraint{std::move(a), rel, std::move(b)});
}

bool satisfies(const LinearSystem& system, const std::vector<Rational>& point) {
    if (static_cast<int>(point.size()) != system.arity) return false;
    for (const LinearConstraint& row : system.rows) {
        Rational lhs = 0;
        for (int j = 0; j < system.arity; ++j) lhs += row.a[j] * point[j];
        if (row.rel == Rel::Eq ? lhs != row.b : lhs < row.b) return false;
    }
    return true;
}

std::optional<std::vector<Rational>> lp_feasible(const LinearSystem& system,
                                                 const std::vector<bool>& nonneg) {
    if (static_cast<int>(nonneg.size()) != system.arity)
        throw StructureError("nonneg mask arity mismatch");
    const int n = system.arity;
    const int m = static_cast<int>(system.rows.size());

    // Columns: free variables split into positive and negative parts, then
    // one surplus column per >= row, then one artificial per row.
    std::vector<int> col_of(n), neg_col_of(n, -1);
    int cols = 0;
    for (int j = 0; j < n; ++j) {
        col_of[j] = cols++;
        if (!nonneg[j]) neg_col_of[j] = cols++;
    }
    const int surplus_base = cols;
    for (const LinearConstraint& row : system.rows)
        if (row.rel == Rel::Ge) ++cols;
    const int art_base = cols;
    cols += m;

    std::vector<std::vector<Rational>> T(m, std::vector<Rational>(cols + 1));
    int surplus_at = surplus_base;
    for (int i = 0; i < m; ++i) {
        const LinearConstraint& row = system.rows[i];
        for (int j = 0; j < n; ++j) {
            T[i][col_of[j]] = row.a[j];
            if (neg_col_of[j] != -1) T[i][neg_col_of[j]] = -row.a[j];
        }
        if (row.rel == Rel::Ge) T[i][surplus_at++] = -1;
        T[i][cols] = row.b;
        if (T[i][cols] < 0)
            for (Rational& x : T[i]) x = -x;
        T[i][art_base + i] = 1;
    }

    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) basis[i] = art_base + i;

    // Phase-one objective: minimize the sum of artificials. Reduced cost of
    // column j is c_j - sum over rows of c_basis(i) * T[i][j] with c = 1 on
    // artificial columns, 0 elsewhere.
    auto reduced_cost = [&](int j) {
        Rational d = j >= art_base ? 1 : 0;
        for (int i = 0; i < m; ++i)
            if (basis[i] >= art_base) d -= T[i][j];
        return d;
    };

    while (true) {
        int enter = -1;
        for (int j = 0; j < cols; ++j) {
            if (reduced_cost(j) < 0) {
                enter = j;  // Bland: smallest negative-cost column
                break;
            }
        }
        if (enter == -1) break;

        int leave = -1;
        Rational best_ratio;
        for (int i = 0; i < m; ++i) {
            if (T[i][enter] <= 0) continue;
            Rational ratio = T[i][cols] / T[i][enter];
            if (leave == -1 || ratio < best_ratio ||
                (ratio == best_ratio && basis[i] < basis[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave == -1) {
            // Phase-one objective is bounded below by zero, so an
            // unbounded direction cannot occur.
            throw StructureError("phase-one simplex detected unbounded column");
        }

        Rational pivot = T[leave][enter];
        for (int j = 0; j <= cols; ++j) T[leave][j] /= pivot;
        for (int i = 0; i < m; ++i) {
            if (i == leave || T[i][enter] == 0) continue;
            Rational factor = T[i][enter];
            for (int j = 0; j <= cols; ++j) T[i][j] -= factor * T[leave][j];
        }
        basis[leave] = enter;
    }

    Rational objective = 0;
    for (int i = 0; i < m; ++i)
        if (basis[i] >= art_base) objective += T[i][cols];
    if (objective != 0) return std::nullopt;

    std::vector<Rational> cols_value(cols);
    for (int i = 0; i < m; ++i)
        if (basis[i] < cols) cols_value[basis[i]] = T[i][cols];
    std::vector<Rational> point(n);
    for (int j = 0; j < n; ++j) {
        point[j] = cols_value[col_of[j]];
        if (neg_col_of[j] != -1) point[j] -= cols_value[neg_col_of[j]];
    }
    assert(satisfies(system, point));
    return point;
}

}  // namespace robusteq
