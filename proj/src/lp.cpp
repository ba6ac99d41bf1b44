#include "fttc/lp.hpp"

#include <cassert>
#include <stdexcept>

namespace fttc {

namespace {

// Dense simplex tableau over rationals. Columns: structural variables first,
// then slack/surplus, then one artificial per row.
struct Tableau {
    int num_structural = 0;
    int num_cols = 0;       // excluding rhs
    int first_artificial = 0;
    std::vector<std::vector<Rational>> rows;  // each row: num_cols coefficients
    std::vector<Rational> rhs;                // kept non-negative
    std::vector<int> basis;                   // row -> basic column

    explicit Tableau(const LinearProgram& p) {
        num_structural = p.num_vars;
        const int m = static_cast<int>(p.constraints.size());
        int num_slacks = 0;
        for (const auto& c : p.constraints)
            if (c.rel != Relation::Equal) ++num_slacks;
        first_artificial = num_structural + num_slacks;
        num_cols = first_artificial + m;

        rows.assign(m, std::vector<Rational>(num_cols));
        rhs.resize(m);
        basis.resize(m);
        int slack = num_structural;
        for (int r = 0; r < m; ++r) {
            const Constraint& c = p.constraints[r];
            if (static_cast<int>(c.coeffs.size()) != p.num_vars)
                throw std::invalid_argument("constraint coefficient length mismatch");
            for (int j = 0; j < num_structural; ++j) rows[r][j] = c.coeffs[j];
            rhs[r] = c.rhs;
            if (c.rel == Relation::LessEq) rows[r][slack++] = Rational(1);
            else if (c.rel == Relation::GreaterEq) rows[r][slack++] = Rational(-1);
            if (rhs[r].is_negative()) {
                for (auto& v : rows[r]) v = -v;
                rhs[r] = -rhs[r];
            }
            rows[r][first_artificial + r] = Rational(1);
            basis[r] = first_artificial + r;
        }
    }

    void pivot(int row, int col) {
        const Rational p = rows[row][col];
        for (auto& v : rows[row]) v /= p;
        rhs[row] /= p;
        for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
            if (r == row || rows[r][col].is_zero()) continue;
            const Rational f = rows[r][col];
            for (int j = 0; j < num_cols; ++j) rows[r][j] -= f * rows[row][j];
            rhs[r] -= f * rhs[row];
        }
        basis[row] = col;
    }

    // Maximizes obj over enterable columns with Bland's rule.
    // Returns false when the objective is unbounded.
    bool run(const std::vector<Rational>& obj, int max_col) {
        const int m = static_cast<int>(rows.size());
        for (;;) {
            // Reduced cost of column j: obj[j] - sum over rows of
            // obj[basis[r]] * rows[r][j]. Bland: enter the lowest such j > 0.
            int enter = -1;
            for (int j = 0; j < max_col && enter < 0; ++j) {
                Rational reduced = obj[j];
                for (int r = 0; r < m; ++r)
                    if (!obj[basis[r]].is_zero() && !rows[r][j].is_zero())
                        reduced -= obj[basis[r]] * rows[r][j];
                if (reduced > Rational(0)) enter = j;
            }
            if (enter < 0) return true;

            int leave = -1;
            Rational best;
            for (int r = 0; r < m; ++r) {
                if (rows[r][enter] <= Rational(0)) continue;
                Rational ratio = rhs[r] / rows[r][enter];
                if (leave < 0 || ratio < best ||
                    (ratio == best && basis[r] < basis[leave])) {
                    leave = r;
                    best = ratio;
                }
            }
            if (leave < 0) return false;
            pivot(leave, enter);
        }
    }

    Rational objective_value(const std::vector<Rational>& obj) const {
        Rational v;
        for (std::size_t r = 0; r < rows.size(); ++r) v += obj[basis[r]] * rhs[r];
        return v;
    }
};

bool phase_one(Tableau& t) {
    std::vector<Rational> obj(t.num_cols);
    for (int j = t.first_artificial; j < t.num_cols; ++j) obj[j] = Rational(-1);
    bool bounded = t.run(obj, t.num_cols);
    assert(bounded);  // phase-one objective is bounded above by zero
    (void)bounded;
    if (t.objective_value(obj) != Rational(0)) return false;

    // Drive any zero-valued artificial out of the basis; rows with no
    // structural or slack support are redundant and pivot nowhere (the
    // artificial stays basic at zero and is barred from re-entering).
    for (int r = 0; r < static_cast<int>(t.rows.size()); ++r) {
        if (t.basis[r] < t.first_artificial) continue;
        for (int j = 0; j < t.first_artificial; ++j) {
            if (!t.rows[r][j].is_zero()) {
                t.pivot(r, j);
                break;
            }
        }
    }
    return true;
}

void check_point(const LinearProgram& p, const std::vector<Rational>& x) {
    for (const auto& v : x)
        if (v.is_negative()) throw std::logic_error("lp: negative component in solution");
    for (const auto& c : p.constraints) {
        Rational lhs;
        for (int j = 0; j < p.num_vars; ++j) lhs += c.coeffs[j] * x[j];
        bool ok = c.rel == Relation::LessEq    ? lhs <= c.rhs
                  : c.rel == Relation::Equal   ? lhs == c.rhs
                                               : lhs >= c.rhs;
        if (!ok) throw std::logic_error("lp: solution violates a constraint");
    }
}

}  // namespace

LpOutcome solve_lp(const LinearProgram& program) {
    Tableau t(program);
    if (!phase_one(t)) return {LpStatus::Infeasible, {}, {}};

    std::vector<Rational> obj(t.num_cols);
    for (int j = 0; j < program.num_vars && j < static_cast<int>(program.objective.size()); ++j)
        obj[j] = program.objective[j];
    if (!t.run(obj, t.first_artificial)) return {LpStatus::Unbounded, {}, {}};

    LpOutcome out;
    out.status = LpStatus::Optimal;
    out.value = t.objective_value(obj);
    out.point.assign(program.num_vars, Rational(0));
    for (std::size_t r = 0; r < t.rows.size(); ++r)
        if (t.basis[r] < program.num_vars) out.point[t.basis[r]] = t.rhs[r];
    check_point(program, out.point);
    return out;
}

bool feasible(const LinearProgram& program) {
    Tableau t(program);
    return phase_one(t);
}

}  // namespace fttc
