#include "fttc/verify.hpp"

#include "fttc/lp.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <stdexcept>

namespace fttc {

namespace {

std::vector<Rational> prefix_sums(const std::vector<std::vector<int>>& prefixes,
                                  const Allocation& row) {
    std::vector<Rational> sums;
    sums.reserve(prefixes.size());
    for (const auto& prefix : prefixes) {
        Rational s;
        for (int h : prefix) s += row[h];
        sums.push_back(std::move(s));
    }
    return sums;
}

}  // namespace

std::optional<Matrix> sd_dominates_lp(const HousingMarket& market, const Assignment& x,
                                      const std::vector<int>& coalition,
                                      const std::vector<Rational>& supply, StrictMode mode) {
    const int m = market.m();
    const int s = static_cast<int>(coalition.size());
    const bool all_strict = mode == StrictMode::AllStrict;
    // Variables: y[k][h] for coalition member k, laid out k * m + h,
    // plus one threshold variable t in AllStrict mode.
    const int t_var = s * m;
    LinearProgram lp;
    lp.num_vars = s * m + (all_strict ? 1 : 0);
    lp.objective.assign(lp.num_vars, Rational(0));

    // The coalition redistributes exactly its own supply.
    for (int h = 0; h < m; ++h) {
        std::vector<Rational> row(lp.num_vars);
        for (int k = 0; k < s; ++k) row[k * m + h] = Rational(1);
        lp.add(std::move(row), Relation::Equal, supply[h]);
    }

    // Per member: every upper-contour prefix sum of y at least matches x.
    // The member's total prefix slack is its strictness margin; each slack is
    // non-negative under these constraints, so a positive total certifies a
    // strict SD improvement.
    Rational base;  // sum of all members' prefix sums of x
    for (int k = 0; k < s; ++k) {
        int i = coalition[k];
        auto prefixes = upper_contour_prefixes(market.preferences[i]);
        auto targets = prefix_sums(prefixes, x.rows[i]);
        for (std::size_t j = 0; j < prefixes.size(); ++j) {
            std::vector<Rational> row(lp.num_vars);
            for (int h : prefixes[j]) row[k * m + h] = Rational(1);
            lp.add(std::move(row), Relation::GreaterEq, targets[j]);
        }
        // Coefficient of y[k][h] in the member's total slack: the number of
        // prefixes containing h.
        std::vector<Rational> slack_row(lp.num_vars);
        Rational member_base;
        const int classes = static_cast<int>(prefixes.size());
        for (int h = 0; h < m; ++h)
            slack_row[k * m + h] = Rational(classes - market.class_of(i, h));
        for (const auto& t : targets) member_base += t;
        if (all_strict) {
            slack_row[t_var] = Rational(-1);
            lp.add(std::move(slack_row), Relation::GreaterEq, member_base);
        } else {
            for (int h = 0; h < m; ++h) lp.objective[k * m + h] = slack_row[k * m + h];
            base += member_base;
        }
    }
    if (all_strict) lp.objective[t_var] = Rational(1);

    LpOutcome out = solve_lp(lp);
    if (out.status == LpStatus::Infeasible) return std::nullopt;
    if (out.status == LpStatus::Unbounded)
        throw std::logic_error("sd_dominates_lp: unexpectedly unbounded");
    const Rational margin = all_strict ? out.value : out.value - base;
    if (!(margin > Rational(0))) return std::nullopt;

    Matrix y(s, std::vector<Rational>(m));
    for (int k = 0; k < s; ++k)
        for (int h = 0; h < m; ++h) y[k][h] = out.point[k * m + h];
    return y;
}

CheckResult check_sd_ir(const HousingMarket& market, const Assignment& x) {
    for (int i = 0; i < market.n(); ++i) {
        if (!weakly_preferred(sd_compare(market.preferences[i], x.rows[i], market.endowment[i]))) {
            Witness w{Witness::Kind::IrViolation};
            w.agent = i;
            return w;
        }
    }
    return std::nullopt;
}

namespace {

// Good-cycle certificate for SD-efficiency: a cycle of houses h_1..h_k where
// some holder of h_t weakly prefers h_{t+1}, with at least one strict link.
struct HouseGraph {
    int m;
    std::vector<std::vector<int>> weak;           // adjacency, weak preference links
    std::vector<std::vector<int>> weak_agent;     // witnessing agent per link
    std::vector<std::tuple<int, int, int>> strict;  // (from, to, agent)
};

HouseGraph consumption_graph(const HousingMarket& market, const Assignment& x) {
    auto rank = market.rank_table();
    HouseGraph g{market.m(), {}, {}, {}};
    g.weak.resize(g.m);
    g.weak_agent.resize(g.m);
    for (int from = 0; from < g.m; ++from) {
        for (int to = 0; to < g.m; ++to) {
            if (from == to) continue;
            int weak_agent = -1, strict_agent = -1;
            for (int i = 0; i < market.n(); ++i) {
                if (!(x.rows[i][from] > Rational(0))) continue;
                if (rank[i][to] < rank[i][from] && strict_agent < 0) strict_agent = i;
                if (rank[i][to] <= rank[i][from] && weak_agent < 0) weak_agent = i;
            }
            if (strict_agent >= 0) g.strict.emplace_back(from, to, strict_agent);
            if (weak_agent >= 0) {
                g.weak[from].push_back(to);
                g.weak_agent[from].push_back(weak_agent);
            }
        }
    }
    return g;
}

std::vector<int> weak_scc(const HouseGraph& g) {
    // Small m: Floyd-Warshall style reachability is plenty.
    std::vector<std::vector<char>> reach(g.m, std::vector<char>(g.m, 0));
    for (int h = 0; h < g.m; ++h) {
        reach[h][h] = 1;
        for (int to : g.weak[h]) reach[h][to] = 1;
    }
    for (int k = 0; k < g.m; ++k)
        for (int i = 0; i < g.m; ++i)
            if (reach[i][k])
                for (int j = 0; j < g.m; ++j)
                    if (reach[k][j]) reach[i][j] = 1;
    std::vector<int> comp(g.m, -1);
    int next = 0;
    for (int i = 0; i < g.m; ++i) {
        if (comp[i] >= 0) continue;
        comp[i] = next;
        for (int j = i + 1; j < g.m; ++j)
            if (reach[i][j] && reach[j][i]) comp[j] = next;
        ++next;
    }
    return comp;
}

std::optional<std::vector<std::string>> find_good_cycle(const HousingMarket& market,
                                                        const Assignment& x) {
    HouseGraph g = consumption_graph(market, x);
    std::vector<int> comp = weak_scc(g);
    for (const auto& [from, to, agent] : g.strict) {
        if (comp[from] != comp[to]) continue;
        // Close the cycle: a weak path to -> ... -> from inside the component.
        std::vector<int> prev_house(g.m, -1), prev_agent(g.m, -1);
        std::deque<int> queue{to};
        prev_house[to] = to;
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            if (v == from) break;
            for (std::size_t e = 0; e < g.weak[v].size(); ++e) {
                int w = g.weak[v][e];
                if (comp[w] != comp[to] || prev_house[w] != -1) continue;
                prev_house[w] = v;
                prev_agent[w] = g.weak_agent[v][e];
                queue.push_back(w);
            }
        }
        if (prev_house[from] == -1 && from != to) continue;
        // Rebuild the weak path forward: to -> ... -> from.
        std::vector<std::pair<int, int>> path;  // (house, agent holding it)
        int v = from;
        while (v != to) {
            path.emplace_back(v, prev_agent[v]);
            v = prev_house[v];
        }
        std::reverse(path.begin(), path.end());
        std::vector<std::string> cycle;
        cycle.push_back(market.house_ids[from]);
        cycle.push_back(market.agent_ids[agent]);  // holder of `from`, strictly wants `to`
        cycle.push_back(market.house_ids[to]);
        for (const auto& [house, holder] : path) {
            cycle.push_back(market.agent_ids[holder]);
            cycle.push_back(market.house_ids[house]);
        }
        cycle.pop_back();  // last house equals the first
        return cycle;
    }
    return std::nullopt;
}

}  // namespace

CheckResult check_sd_efficiency(const HousingMarket& market, const Assignment& x) {
    std::vector<int> everyone(market.n());
    std::iota(everyone.begin(), everyone.end(), 0);
    auto dominating =
        sd_dominates_lp(market, x, everyone, column_sums(x.rows, market.m()), StrictMode::SomeStrict);
    auto cycle = find_good_cycle(market, x);
    if (dominating.has_value() != cycle.has_value())
        throw std::logic_error("check_sd_efficiency: LP and good-cycle verdicts disagree");
    if (!dominating) return std::nullopt;
    Witness w{Witness::Kind::GoodCycle};
    w.cycle = *cycle;
    w.alternative = *dominating;
    return w;
}

namespace {

template <typename Fn>
void for_each_coalition(int n, Fn&& fn) {
    // Size ascending, lexicographic within a size.
    for (int size = 1; size <= n; ++size) {
        std::vector<int> members(size);
        std::iota(members.begin(), members.end(), 0);
        for (;;) {
            if (fn(members)) return;
            int pos = size - 1;
            while (pos >= 0 && members[pos] == n - size + pos) --pos;
            if (pos < 0) break;
            ++members[pos];
            for (int q = pos + 1; q < size; ++q) members[q] = members[q - 1] + 1;
        }
    }
}

CheckResult core_check(const HousingMarket& market, const Assignment& x, StrictMode mode) {
    if (market.n() > 16)
        throw std::invalid_argument("core check: instance too large for coalition enumeration");
    CheckResult result;
    for_each_coalition(market.n(), [&](const std::vector<int>& coalition) {
        std::vector<Rational> supply(market.m());
        for (int i : coalition)
            for (int h = 0; h < market.m(); ++h) supply[h] += market.endowment[i][h];
        if (auto y = sd_dominates_lp(market, x, coalition, supply, mode)) {
            Witness w{Witness::Kind::BlockingCoalition};
            w.coalition = coalition;
            w.alternative = std::move(*y);
            result = std::move(w);
            return true;
        }
        return false;
    });
    return result;
}

}  // namespace

CheckResult check_sd_core(const HousingMarket& market, const Assignment& x) {
    return core_check(market, x, StrictMode::AllStrict);
}

CheckResult check_sd_strict_core(const HousingMarket& market, const Assignment& x) {
    return core_check(market, x, StrictMode::SomeStrict);
}

CheckResult check_nje(const HousingMarket& market, const Assignment& x) {
    for (int i = 0; i < market.n(); ++i)
        for (int j = 0; j < market.n(); ++j) {
            if (i == j) continue;
            if (has_justified_envy(market, x, i, j)) {
                Witness w{Witness::Kind::EnvyPair};
                w.agent = i;
                w.other_agent = j;
                return w;
            }
        }
    return std::nullopt;
}

std::vector<PreferenceOrder> enumerate_weak_orders(int m) {
    // A weak order is a surjection of houses onto class indices 0..k-1;
    // enumerate by class count, then lexicographically on the label vector.
    std::vector<PreferenceOrder> orders;
    for (int k = 1; k <= m; ++k) {
        std::vector<int> labels(m, 0);
        for (;;) {
            std::vector<char> used(k, 0);
            for (int l : labels) used[l] = 1;
            if (std::all_of(used.begin(), used.end(), [](char c) { return c != 0; })) {
                PreferenceOrder order(k);
                for (int h = 0; h < m; ++h) order[labels[h]].push_back(h);
                orders.push_back(std::move(order));
            }
            int pos = m - 1;
            while (pos >= 0 && labels[pos] == k - 1) labels[pos--] = 0;
            if (pos < 0) break;
            ++labels[pos];
        }
    }
    return orders;
}

CheckResult find_manipulation(const HousingMarket& market, const TieBreak& tiebreak, int agent,
                              Extension extension) {
    if (market.m() > 6)
        throw std::invalid_argument("find_manipulation: too many houses for enumeration");
    if (agent < 0 || agent >= market.n()) throw std::out_of_range("unknown agent index");

    const PreferenceOrder truthful = market.preferences[agent];
    const Allocation truthful_row = fttc(market, tiebreak).rows[agent];
    auto compare = extension == Extension::SD ? sd_compare : dl_compare;

    HousingMarket reported = market;
    for (const PreferenceOrder& order : enumerate_weak_orders(market.m())) {
        if (order == truthful) continue;
        reported.preferences[agent] = order;
        Allocation row = fttc(reported, tiebreak).rows[agent];
        if (compare(truthful, row, truthful_row) == ComparisonResult::StrictlyPreferred) {
            Witness w{Witness::Kind::Misreport};
            w.agent = agent;
            w.misreport = order;
            w.improved_row = std::move(row);
            return w;
        }
    }
    return std::nullopt;
}

StrictCoreEmptiness strict_core_empty_discrete(const HousingMarket& market) {
    const int n = market.n();
    if (n > 7)
        throw std::invalid_argument("strict_core_empty_discrete: too many agents");
    if (n != market.m())
        throw std::invalid_argument("strict_core_empty_discrete: requires n = m");
    for (const auto& row : market.endowment) {
        int ones = 0;
        for (const auto& e : row) {
            if (e == Rational(1)) ++ones;
            else if (!e.is_zero())
                throw std::invalid_argument(
                    "strict_core_empty_discrete: requires one discrete house per agent");
        }
        if (ones != 1)
            throw std::invalid_argument(
                "strict_core_empty_discrete: requires one discrete house per agent");
    }

    StrictCoreEmptiness result;
    result.empty = true;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        Assignment x;
        x.rows.assign(n, std::vector<Rational>(n));
        for (int i = 0; i < n; ++i) x.rows[i][perm[i]] = Rational(1);
        CheckResult blocked = check_sd_strict_core(market, x);
        if (!blocked) result.empty = false;
        result.log.emplace_back(perm, std::move(blocked));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return result;
}

}  // namespace fttc
