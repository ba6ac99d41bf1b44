#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fttc/lp.hpp"

#include <optional>
#include <random>
#include <vector>

using namespace fttc;

namespace {

Rational R(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }

bool satisfies(const LinearProgram& lp, const std::vector<Rational>& x) {
    for (const auto& v : x)
        if (v.is_negative()) return false;
    for (const auto& c : lp.constraints) {
        Rational lhs;
        for (int j = 0; j < lp.num_vars; ++j) lhs += c.coeffs[j] * x[j];
        if (c.rel == Relation::LessEq && lhs > c.rhs) return false;
        if (c.rel == Relation::GreaterEq && lhs < c.rhs) return false;
        if (c.rel == Relation::Equal && lhs != c.rhs) return false;
    }
    return true;
}

Rational objective_value(const LinearProgram& lp, const std::vector<Rational>& x) {
    Rational v;
    for (int j = 0; j < lp.num_vars && j < static_cast<int>(lp.objective.size()); ++j)
        v += lp.objective[j] * x[j];
    return v;
}

// Independent oracle for small instances: enumerate basic solutions (vertices
// of the polyhedron in standard form with slacks) by solving every n-subset of
// the tightened constraint system with exact Gaussian elimination. Sound for
// bounded feasible regions, which is all the random generator below produces.
std::optional<Rational> brute_force_optimum(const LinearProgram& lp) {
    // standard form: every inequality becomes an equality candidate, and the
    // axes x_j = 0 are candidates too.
    struct Hyperplane {
        std::vector<Rational> a;
        Rational b;
    };
    std::vector<Hyperplane> planes;
    for (const auto& c : lp.constraints) planes.push_back({c.coeffs, c.rhs});
    for (int j = 0; j < lp.num_vars; ++j) {
        Hyperplane axis;
        axis.a.assign(lp.num_vars, Rational(0));
        axis.a[j] = Rational(1);
        planes.push_back(axis);
    }

    const int n = lp.num_vars;
    const int p = static_cast<int>(planes.size());
    std::optional<Rational> best;
    std::vector<int> pick(n);
    // iterate all n-combinations of planes
    auto solve_subset = [&](const std::vector<int>& idx) -> std::optional<std::vector<Rational>> {
        std::vector<std::vector<Rational>> aug(n, std::vector<Rational>(n + 1));
        for (int r = 0; r < n; ++r) {
            for (int j = 0; j < n; ++j) aug[r][j] = planes[idx[r]].a[j];
            aug[r][n] = planes[idx[r]].b;
        }
        for (int col = 0; col < n; ++col) {
            int pivot = -1;
            for (int r = col; r < n; ++r)
                if (!aug[r][col].is_zero()) {
                    pivot = r;
                    break;
                }
            if (pivot == -1) return std::nullopt;  // singular
            std::swap(aug[col], aug[pivot]);
            for (int r = 0; r < n; ++r) {
                if (r == col || aug[r][col].is_zero()) continue;
                Rational f = aug[r][col] / aug[col][col];
                for (int j = col; j <= n; ++j) aug[r][j] -= f * aug[col][j];
            }
        }
        std::vector<Rational> x(n);
        for (int r = 0; r < n; ++r) x[r] = aug[r][n] / aug[r][r];
        return x;
    };

    std::vector<int> comb;
    auto recurse = [&](auto&& self, int start) -> void {
        if (static_cast<int>(comb.size()) == n) {
            if (auto x = solve_subset(comb); x && satisfies(lp, *x)) {
                Rational v = objective_value(lp, *x);
                if (!best || v > *best) best = v;
            }
            return;
        }
        for (int i = start; i < p; ++i) {
            comb.push_back(i);
            self(self, i + 1);
            comb.pop_back();
        }
    };
    recurse(recurse, 0);
    return best;
}

}  // namespace

TEST_CASE("textbook maximum") {
    // max 3x + 5y s.t. x <= 4, 2y <= 12, 3x + 2y <= 18
    LinearProgram lp;
    lp.num_vars = 2;
    lp.objective = {R(3), R(5)};
    lp.add({R(1), R(0)}, Relation::LessEq, R(4));
    lp.add({R(0), R(2)}, Relation::LessEq, R(12));
    lp.add({R(3), R(2)}, Relation::LessEq, R(18));
    auto out = solve_lp(lp);
    REQUIRE(out.status == LpStatus::Optimal);
    CHECK(out.value == R(36));
    CHECK(out.point == std::vector<Rational>{R(2), R(6)});
}

TEST_CASE("infeasible system") {
    LinearProgram lp;
    lp.num_vars = 1;
    lp.add({R(1)}, Relation::LessEq, R(1));
    lp.add({R(1)}, Relation::GreaterEq, R(2));
    CHECK(solve_lp(lp).status == LpStatus::Infeasible);
    CHECK_FALSE(feasible(lp));
}

TEST_CASE("unbounded objective") {
    LinearProgram lp;
    lp.num_vars = 2;
    lp.objective = {R(1), R(1)};
    lp.add({R(1), R(-1)}, Relation::LessEq, R(1));
    CHECK(solve_lp(lp).status == LpStatus::Unbounded);
    CHECK(feasible(lp));
}

TEST_CASE("equality constraints and fractional optimum") {
    // max x + 2y s.t. x + y = 1, y <= 2/3
    LinearProgram lp;
    lp.num_vars = 2;
    lp.objective = {R(1), R(2)};
    lp.add({R(1), R(1)}, Relation::Equal, R(1));
    lp.add({R(0), R(1)}, Relation::LessEq, R(2, 3));
    auto out = solve_lp(lp);
    REQUIRE(out.status == LpStatus::Optimal);
    CHECK(out.value == R(5, 3));
    CHECK(out.point == std::vector<Rational>{R(1, 3), R(2, 3)});
}

TEST_CASE("degenerate constraints do not cycle") {
    // Bland's rule must terminate despite heavy degeneracy at the origin.
    LinearProgram lp;
    lp.num_vars = 4;
    lp.objective = {R(3, 4), R(-150), R(1, 50), R(-6)};
    lp.add({R(1, 4), R(-60), R(-1, 25), R(9)}, Relation::LessEq, R(0));
    lp.add({R(1, 2), R(-90), R(-1, 50), R(3)}, Relation::LessEq, R(0));
    lp.add({R(0), R(0), R(1), R(0)}, Relation::LessEq, R(1));
    auto out = solve_lp(lp);
    REQUIRE(out.status == LpStatus::Optimal);
    CHECK(out.value == R(1, 20));
}

TEST_CASE("duality spot check") {
    // primal: max c x, Ax <= b; dual: min b y, A^T y >= c. Optimal values match.
    LinearProgram primal;
    primal.num_vars = 2;
    primal.objective = {R(2), R(3)};
    primal.add({R(1), R(2)}, Relation::LessEq, R(4));
    primal.add({R(3), R(1)}, Relation::LessEq, R(6));

    LinearProgram dual;
    dual.num_vars = 2;
    dual.objective = {R(-4), R(-6)};  // minimize b y as maximize -b y
    dual.add({R(1), R(3)}, Relation::GreaterEq, R(2));
    dual.add({R(2), R(1)}, Relation::GreaterEq, R(3));

    auto p = solve_lp(primal);
    auto d = solve_lp(dual);
    REQUIRE(p.status == LpStatus::Optimal);
    REQUIRE(d.status == LpStatus::Optimal);
    CHECK(p.value == -d.value);
}

TEST_CASE("randomized agreement with the vertex-enumeration oracle") {
    std::mt19937_64 rng(2024);
    auto coeff = [&]() { return R(static_cast<std::int64_t>(rng() % 11) - 5, 1 + rng() % 3); };
    int optimal_seen = 0;
    for (int trial = 0; trial < 120; ++trial) {
        LinearProgram lp;
        lp.num_vars = 2 + static_cast<int>(rng() % 3);  // 2..4 vars
        int rows = 2 + static_cast<int>(rng() % 4);     // 2..5 constraints
        lp.objective.clear();
        for (int j = 0; j < lp.num_vars; ++j) lp.objective.push_back(coeff());
        for (int r = 0; r < rows; ++r) {
            std::vector<Rational> a;
            for (int j = 0; j < lp.num_vars; ++j) a.push_back(coeff());
            lp.add(std::move(a), Relation::LessEq, R(static_cast<std::int64_t>(rng() % 8)));
        }
        // box the region so the oracle's vertex enumeration is exhaustive
        for (int j = 0; j < lp.num_vars; ++j) {
            std::vector<Rational> a(lp.num_vars, R(0));
            a[j] = R(1);
            lp.add(std::move(a), Relation::LessEq, R(10));
        }
        auto out = solve_lp(lp);
        auto oracle = brute_force_optimum(lp);
        REQUIRE(out.status == LpStatus::Optimal);  // bounded, origin-feasible
        REQUIRE(oracle.has_value());
        CHECK(out.value == *oracle);
        CHECK(satisfies(lp, out.point));
        CHECK(objective_value(lp, out.point) == out.value);
        ++optimal_seen;
    }
    CHECK(optimal_seen == 120);
}
