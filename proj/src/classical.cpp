#include "fttc/classical.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace fttc {

Assignment ttc(const HousingMarket& market) {
    if (!is_classic(market)) throw std::invalid_argument("ttc: market is not classic");
    if (!has_strict_preferences(market))
        throw std::invalid_argument("ttc: preferences must be strict");

    const int n = market.n();
    std::vector<char> alive(n, 1);
    std::vector<int> owner(n, -1);  // house -> owning agent
    for (int i = 0; i < n; ++i)
        for (int h = 0; h < n; ++h)
            if (market.endowment[i][h] == Rational(1)) owner[h] = i;

    auto rank = market.rank_table();
    Assignment x;
    x.rows.assign(n, std::vector<Rational>(n));

    int remaining = n;
    while (remaining > 0) {
        // Each agent points to its top remaining house; each house to its
        // owner. Every cycle of this functional graph trades at once.
        std::vector<int> target(n, -1);
        for (int i = 0; i < n; ++i) {
            if (!alive[i]) continue;
            int best = -1;
            for (int h = 0; h < n; ++h)
                if (alive[owner[h]] && (best < 0 || rank[i][h] < rank[i][best])) best = h;
            target[i] = best;
        }
        std::vector<int> state(n, 0);
        for (int start = 0; start < n; ++start) {
            if (!alive[start] || state[start] != 0) continue;
            std::vector<int> walk;
            int i = start;
            while (alive[i] && state[i] == 0) {
                state[i] = 1;
                walk.push_back(i);
                i = owner[target[i]];
            }
            if (state[i] == 1) {
                auto at = std::find(walk.begin(), walk.end(), i);
                for (auto it = at; it != walk.end(); ++it) {
                    x.rows[*it][target[*it]] = Rational(1);
                    alive[*it] = 0;
                    --remaining;
                }
            }
            for (int v : walk) state[v] = 2;
        }
    }
    return x;
}

namespace {

struct Clone {
    int agent;
    int endowed_house;  // base house of the single owned copy
};

}  // namespace

Assignment attc(const HousingMarket& market) {
    if (!has_strict_preferences(market))
        throw std::invalid_argument("attc: preferences must be strict");
    if (!has_discrete_endowment(market))
        throw std::invalid_argument("attc: endowment must be non-negative integers");

    const int n = market.n();
    const int m = market.m();
    auto rank = market.rank_table();

    // One clone per endowed unit, ordered agent-major then house then unit.
    std::vector<Clone> clones;
    for (int i = 0; i < n; ++i)
        for (int h = 0; h < m; ++h)
            for (BigInt u = 0; u < market.endowment[i][h].num(); ++u) clones.push_back({i, h});

    const int k = static_cast<int>(clones.size());
    std::vector<char> alive(k, 1);
    std::vector<int> copies_left(m, 0);  // remaining endowed units per base house
    for (const Clone& c : clones) ++copies_left[c.endowed_house];

    Assignment x;
    x.rows.assign(n, std::vector<Rational>(m));

    int remaining = k;
    while (remaining > 0) {
        // Each clone points at the lowest-indexed live clone endowed with a
        // copy of its top remaining base house.
        std::vector<int> first_copy(m, -1);
        for (int c = 0; c < k; ++c)
            if (alive[c] && first_copy[clones[c].endowed_house] < 0)
                first_copy[clones[c].endowed_house] = c;
        std::vector<int> target(k, -1);  // clone -> clone whose copy it takes
        for (int c = 0; c < k; ++c) {
            if (!alive[c]) continue;
            int best_house = -1;
            for (int h = 0; h < m; ++h)
                if (copies_left[h] > 0 && (best_house < 0 || rank[clones[c].agent][h] <
                                                                 rank[clones[c].agent][best_house]))
                    best_house = h;
            target[c] = first_copy[best_house];
        }
        std::vector<int> state(k, 0);
        for (int start = 0; start < k; ++start) {
            if (!alive[start] || state[start] != 0) continue;
            std::vector<int> walk;
            int c = start;
            while (state[c] == 0) {
                state[c] = 1;
                walk.push_back(c);
                c = target[c];
            }
            if (state[c] == 1) {
                auto at = std::find(walk.begin(), walk.end(), c);
                for (auto it = at; it != walk.end(); ++it) {
                    int got = clones[target[*it]].endowed_house;
                    x.rows[clones[*it].agent][got] += Rational(1);
                    alive[*it] = 0;
                    --copies_left[clones[*it].endowed_house];
                    --remaining;
                }
            }
            for (int v : walk) state[v] = 2;
        }
    }
    return x;
}

Assignment serial_dictatorship(const std::vector<PreferenceOrder>& preferences,
                               const std::vector<Rational>& supply, const PriorityOrder& order,
                               const std::vector<Rational>& demand) {
    const int n = static_cast<int>(preferences.size());
    const int m = static_cast<int>(supply.size());
    if (static_cast<int>(order.size()) != n || static_cast<int>(demand.size()) != n)
        throw std::invalid_argument("serial_dictatorship: size mismatch");
    Rational total_supply = std::accumulate(supply.begin(), supply.end(), Rational(0),
                                            [](Rational a, const Rational& b) { return a + b; });
    Rational total_demand = std::accumulate(demand.begin(), demand.end(), Rational(0),
                                            [](Rational a, const Rational& b) { return a + b; });
    if (total_supply != total_demand)
        throw std::invalid_argument("serial_dictatorship: total demand must equal total supply");

    std::vector<Rational> left = supply;
    Assignment x;
    x.rows.assign(n, std::vector<Rational>(m));
    for (int i : order) {
        Rational want = demand[i];
        for (const auto& cls : preferences[i]) {
            for (int h : cls) {
                if (want.is_zero()) break;
                Rational take = min(want, left[h]);
                if (take.is_zero()) continue;
                x.rows[i][h] += take;
                left[h] -= take;
                want -= take;
            }
            if (want.is_zero()) break;
        }
        if (!want.is_zero())
            throw std::logic_error("serial_dictatorship: demand exceeded remaining supply");
    }
    return x;
}

HousingMarket equal_endowment_market(std::vector<std::string> agent_ids,
                                     std::vector<std::string> house_ids,
                                     std::vector<PreferenceOrder> preferences,
                                     const std::vector<Rational>& supply) {
    HousingMarket market;
    market.agent_ids = std::move(agent_ids);
    market.house_ids = std::move(house_ids);
    market.preferences = std::move(preferences);
    const int n = market.n();
    const int m = market.m();
    if (static_cast<int>(supply.size()) != m)
        throw std::invalid_argument("equal_endowment_market: supply size mismatch");
    market.endowment.assign(n, std::vector<Rational>(m));
    for (int i = 0; i < n; ++i)
        for (int h = 0; h < m; ++h) market.endowment[i][h] = supply[h] / Rational(n);
    return market;
}

}  // namespace fttc
