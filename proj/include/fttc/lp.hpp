#pragma once

// Exact rational linear programming: two-phase primal simplex with Bland's
// rule. Built for the verification oracles, so correctness beats speed.
// All variables are implicitly non-negative.

#include "fttc/rational.hpp"

#include <vector>

namespace fttc {

enum class Relation { LessEq, Equal, GreaterEq };

struct Constraint {
    std::vector<Rational> coeffs;
    Relation rel = Relation::LessEq;
    Rational rhs;
};

struct LinearProgram {
    int num_vars = 0;
    std::vector<Constraint> constraints;
    std::vector<Rational> objective;  // maximized; empty means all-zero

    void add(std::vector<Rational> coeffs, Relation rel, Rational rhs) {
        constraints.push_back({std::move(coeffs), rel, std::move(rhs)});
    }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpOutcome {
    LpStatus status = LpStatus::Infeasible;
    Rational value;                // meaningful for Optimal
    std::vector<Rational> point;   // meaningful for Optimal; satisfies every
                                   // constraint exactly (checked before return)
};

LpOutcome solve_lp(const LinearProgram& program);

/// Phase-one feasibility only.
bool feasible(const LinearProgram& program);

}  // namespace fttc
