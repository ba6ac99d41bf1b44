#include "fttc/market.hpp"

#include <json.hpp>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

namespace fttc {

using nlohmann::json;

int HousingMarket::class_of(int agent, int house) const {
    const PreferenceOrder& order = preferences[agent];
    for (std::size_t c = 0; c < order.size(); ++c)
        for (int h : order[c])
            if (h == house) return static_cast<int>(c);
    throw std::logic_error("house missing from preference order");
}

std::vector<std::vector<int>> HousingMarket::rank_table() const {
    std::vector<std::vector<int>> table(n(), std::vector<int>(m(), -1));
    for (int i = 0; i < n(); ++i)
        for (std::size_t c = 0; c < preferences[i].size(); ++c)
            for (int h : preferences[i][c]) table[i][h] = static_cast<int>(c);
    return table;
}

int HousingMarket::agent_index(const std::string& id) const {
    auto it = std::find(agent_ids.begin(), agent_ids.end(), id);
    if (it == agent_ids.end()) throw std::out_of_range("unknown agent id '" + id + "'");
    return static_cast<int>(it - agent_ids.begin());
}

int HousingMarket::house_index(const std::string& id) const {
    auto it = std::find(house_ids.begin(), house_ids.end(), id);
    if (it == house_ids.end()) throw std::out_of_range("unknown house id '" + id + "'");
    return static_cast<int>(it - house_ids.begin());
}

std::vector<Rational> column_sums(const Matrix& rows, int m) {
    std::vector<Rational> sums(m);
    for (const auto& row : rows)
        for (int h = 0; h < m; ++h) sums[h] += row[h];
    return sums;
}

namespace {

Rational parse_literal(const json& value, const std::string& where) {
    if (!value.is_string())
        throw ParseError("numeric literal at " + where + " must be a string");
    try {
        return parse_rational(value.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string(e.what()) + " at " + where);
    }
}

}  // namespace

HousingMarket parse_market(const std::string& document) {
    json doc;
    try {
        doc = json::parse(document);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("agents") || !doc.contains("houses") ||
        !doc.contains("preferences") || !doc.contains("endowment"))
        throw ParseError("instance must contain agents, houses, preferences, endowment");

    HousingMarket market;
    for (const auto& a : doc.at("agents")) market.agent_ids.push_back(a.get<std::string>());
    for (const auto& h : doc.at("houses")) market.house_ids.push_back(h.get<std::string>());

    const int n = market.n();
    const int m = market.m();
    if (n < 1 || m < 1) throw ParseError("market needs at least one agent and one house");

    market.preferences.resize(n);
    try {
    const json& prefs = doc.at("preferences");
    for (int i = 0; i < n; ++i) {
        const std::string& id = market.agent_ids[i];
        if (!prefs.contains(id)) throw ParseError("missing preference list for agent '" + id + "'");
        for (const auto& cls : prefs.at(id)) {
            std::vector<int> houses;
            for (const auto& h : cls) houses.push_back(market.house_index(h.get<std::string>()));
            market.preferences[i].push_back(std::move(houses));
        }
    }

    market.endowment.assign(n, std::vector<Rational>(m));
    const json& endow = doc.at("endowment");
    for (int i = 0; i < n; ++i) {
        const std::string& id = market.agent_ids[i];
        if (!endow.contains(id)) continue;  // omitted rows default to zero
        for (const auto& [house, value] : endow.at(id).items()) {
            int h = market.house_index(house);
            market.endowment[i][h] = parse_literal(value, "endowment of agent '" + id + "'");
        }
    }
    } catch (const std::out_of_range& e) {
        throw ParseError(e.what());
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed instance: ") + e.what());
    }

    if (auto violations = validate(market); !violations.empty())
        throw ParseError("invalid market: " + violations.front());
    return market;
}

std::string market_to_json(const HousingMarket& market) {
    json doc;
    doc["agents"] = market.agent_ids;
    doc["houses"] = market.house_ids;
    json prefs = json::object();
    for (int i = 0; i < market.n(); ++i) {
        json classes = json::array();
        for (const auto& cls : market.preferences[i]) {
            json names = json::array();
            for (int h : cls) names.push_back(market.house_ids[h]);
            classes.push_back(names);
        }
        prefs[market.agent_ids[i]] = classes;
    }
    doc["preferences"] = prefs;
    json endow = json::object();
    for (int i = 0; i < market.n(); ++i) {
        json row = json::object();
        for (int h = 0; h < market.m(); ++h)
            if (!market.endowment[i][h].is_zero())
                row[market.house_ids[h]] = market.endowment[i][h].str();
        endow[market.agent_ids[i]] = row;
    }
    doc["endowment"] = endow;
    return doc.dump(2);
}

std::vector<std::string> validate(const HousingMarket& market) {
    std::vector<std::string> violations;
    const int n = market.n();
    const int m = market.m();

    if (std::set<std::string>(market.agent_ids.begin(), market.agent_ids.end()).size() !=
        market.agent_ids.size())
        violations.push_back("duplicate agent ids");
    if (std::set<std::string>(market.house_ids.begin(), market.house_ids.end()).size() !=
        market.house_ids.size())
        violations.push_back("duplicate house ids");

    if (static_cast<int>(market.preferences.size()) != n) {
        violations.push_back("preference profile size mismatch");
        return violations;
    }
    for (int i = 0; i < n; ++i) {
        std::vector<int> seen(m, 0);
        bool empty_class = false;
        for (const auto& cls : market.preferences[i]) {
            if (cls.empty()) empty_class = true;
            for (int h : cls)
                if (h >= 0 && h < m) ++seen[h];
        }
        if (empty_class)
            violations.push_back("empty preference class for agent '" + market.agent_ids[i] + "'");
        if (std::any_of(seen.begin(), seen.end(), [](int c) { return c != 1; }))
            violations.push_back("preferences of agent '" + market.agent_ids[i] +
                                 "' do not partition the house set");
    }

    if (static_cast<int>(market.endowment.size()) != n)
        violations.push_back("endowment row count mismatch");
    else
        for (int i = 0; i < n; ++i) {
            if (static_cast<int>(market.endowment[i].size()) != m) {
                violations.push_back("endowment column count mismatch");
                break;
            }
            for (int h = 0; h < m; ++h)
                if (market.endowment[i][h].is_negative())
                    violations.push_back("negative endowment e(" + market.agent_ids[i] + ")(" +
                                         market.house_ids[h] + ")");
        }
    return violations;
}

bool is_classic(const HousingMarket& market) {
    const int n = market.n();
    const int m = market.m();
    if (n != m) return false;
    std::vector<Rational> row_sum(n), col_sum(m);
    for (int i = 0; i < n; ++i)
        for (int h = 0; h < m; ++h) {
            const Rational& e = market.endowment[i][h];
            if (e != Rational(0) && e != Rational(1)) return false;
            row_sum[i] += e;
            col_sum[h] += e;
        }
    for (int i = 0; i < n; ++i)
        if (row_sum[i] != Rational(1)) return false;
    for (int h = 0; h < m; ++h)
        if (col_sum[h] != Rational(1)) return false;
    return true;
}

bool has_strict_preferences(const HousingMarket& market) {
    for (const auto& order : market.preferences)
        for (const auto& cls : order)
            if (cls.size() > 1) return false;
    return true;
}

bool has_discrete_endowment(const HousingMarket& market) {
    for (const auto& row : market.endowment)
        for (const auto& e : row)
            if (!e.is_integer() || e.is_negative()) return false;
    return true;
}

namespace {

// Bounded draw independent of std::uniform_int_distribution so generated
// markets are reproducible across standard library implementations.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
    return rng() % bound;
}

}  // namespace

HousingMarket random_market(const RandomMarketParams& params) {
    if (params.n < 1 || params.m < 1)
        throw std::invalid_argument("random_market: n and m must be positive");
    if (!params.fractional && params.n != params.m)
        throw std::invalid_argument("random_market: permutation endowments require n = m");
    if (params.tie_probability.is_negative() || params.tie_probability > Rational(1))
        throw std::invalid_argument("random_market: tie probability outside [0, 1]");
    if (params.granularity == 0 || params.units_per_house == 0)
        throw std::invalid_argument("random_market: granularity and supply must be positive");

    std::mt19937_64 rng(params.seed);
    HousingMarket market;
    for (int i = 0; i < params.n; ++i) market.agent_ids.push_back(std::to_string(i + 1));
    for (int h = 0; h < params.m; ++h) market.house_ids.push_back("h" + std::to_string(h + 1));

    // Tie decision: true with probability p/q, exactly.
    const BigInt tie_num = params.tie_probability.num();
    const BigInt tie_den = params.tie_probability.den();
    auto draw_tie = [&]() {
        std::uint64_t den = tie_den.convert_to<std::uint64_t>();
        return BigInt(draw_below(rng, den)) < tie_num;
    };

    for (int i = 0; i < params.n; ++i) {
        std::vector<int> order(params.m);
        for (int h = 0; h < params.m; ++h) order[h] = h;
        for (int h = params.m - 1; h > 0; --h)
            std::swap(order[h], order[draw_below(rng, h + 1)]);
        PreferenceOrder classes;
        classes.push_back({order[0]});
        for (int h = 1; h < params.m; ++h) {
            if (!params.tie_probability.is_zero() && draw_tie())
                classes.back().push_back(order[h]);
            else
                classes.push_back({order[h]});
        }
        market.preferences.push_back(std::move(classes));
    }

    market.endowment.assign(params.n, std::vector<Rational>(params.m));
    if (params.fractional) {
        const Rational piece(1, static_cast<std::int64_t>(params.granularity));
        const std::uint64_t pieces = params.granularity * params.units_per_house;
        for (int h = 0; h < params.m; ++h)
            for (std::uint64_t u = 0; u < pieces; ++u)
                market.endowment[draw_below(rng, params.n)][h] += piece;
    } else {
        std::vector<int> perm(params.n);
        for (int i = 0; i < params.n; ++i) perm[i] = i;
        for (int i = params.n - 1; i > 0; --i)
            std::swap(perm[i], perm[draw_below(rng, i + 1)]);
        for (int i = 0; i < params.n; ++i) market.endowment[i][perm[i]] = Rational(1);
    }
    return market;
}

std::string serialize_assignment(const HousingMarket& market, const Assignment& x) {
    if (static_cast<int>(x.rows.size()) != market.n())
        throw std::invalid_argument("assignment row count mismatch");
    json entries = json::object();
    for (int i = 0; i < market.n(); ++i) {
        if (static_cast<int>(x.rows[i].size()) != market.m())
            throw std::invalid_argument("assignment column count mismatch");
        json row = json::object();
        for (int h = 0; h < market.m(); ++h) row[market.house_ids[h]] = x.rows[i][h].str();
        entries[market.agent_ids[i]] = row;
    }
    json doc;
    doc["assignment"] = entries;
    return doc.dump(2);
}

Assignment parse_assignment(const HousingMarket& market, const std::string& document) {
    json doc;
    try {
        doc = json::parse(document);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("assignment"))
        throw ParseError("document must contain an 'assignment' object");
    Assignment x;
    x.rows.assign(market.n(), std::vector<Rational>(market.m()));
    for (const auto& [agent, row] : doc.at("assignment").items()) {
        int i = market.agent_index(agent);
        for (const auto& [house, value] : row.items()) {
            int h = market.house_index(house);
            x.rows[i][h] = parse_literal(value, "assignment of agent '" + agent + "'");
        }
    }
    return x;
}

}  // namespace fttc
