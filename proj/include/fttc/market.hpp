#pragma once

// Housing markets with fractional endowments: exact representation,
// validation, JSON serialization, and seeded random generation.

#include "fttc/rational.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fttc {

/// Raised on malformed or invariant-violating input documents.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Matrix = std::vector<std::vector<Rational>>;

/// Weak-order preferences of one agent: equivalence classes of house indices,
/// best class first. The classes partition the full house set.
using PreferenceOrder = std::vector<std::vector<int>>;

struct HousingMarket {
    std::vector<std::string> agent_ids;
    std::vector<std::string> house_ids;
    std::vector<PreferenceOrder> preferences;  // indexed by agent
    Matrix endowment;                          // n x m

    int n() const { return static_cast<int>(agent_ids.size()); }
    int m() const { return static_cast<int>(house_ids.size()); }

    /// Index of the equivalence class holding house h for agent i
    /// (0 = most preferred). Requires a valid partition.
    int class_of(int agent, int house) const;

    /// class_of for every (agent, house), precomputed.
    std::vector<std::vector<int>> rank_table() const;

    int agent_index(const std::string& id) const;
    int house_index(const std::string& id) const;
};

struct Assignment {
    Matrix rows;  // n x m, same index order as the market

    const Rational& at(int agent, int house) const { return rows[agent][house]; }
    Rational& at(int agent, int house) { return rows[agent][house]; }

    bool operator==(const Assignment&) const = default;
};

std::vector<Rational> column_sums(const Matrix& rows, int m);

/// Parses the JSON instance format. Throws ParseError on malformed documents
/// or violated market invariants.
HousingMarket parse_market(const std::string& document);

std::string market_to_json(const HousingMarket& market);

/// Empty result means every invariant holds.
std::vector<std::string> validate(const HousingMarket& market);

/// True iff the market is a basic (classic) housing market: n = m, 0/1
/// endowments, each row and each column summing to one.
bool is_classic(const HousingMarket& market);

bool has_strict_preferences(const HousingMarket& market);

/// True iff every endowment entry is a non-negative integer.
bool has_discrete_endowment(const HousingMarket& market);

struct RandomMarketParams {
    std::uint64_t seed = 0;
    int n = 1;
    int m = 1;
    Rational tie_probability;  // in [0, 1]
    bool fractional = false;
    std::uint64_t granularity = 1;
    std::uint64_t units_per_house = 1;  // supply of each house (fractional mode)
};

/// Deterministic in its parameters. Strict orders when tie_probability = 0;
/// permutation-matrix endowments when fractional = false (requires n = m),
/// otherwise one unit of each house split into granularity pieces spread
/// uniformly over the agents.
HousingMarket random_market(const RandomMarketParams& params);

/// Renders the assignment output format, all entries explicit, rationals in
/// lowest terms. Throws std::invalid_argument on dimension mismatch.
std::string serialize_assignment(const HousingMarket& market, const Assignment& x);

/// Inverse of serialize_assignment. Entries absent from the document default
/// to zero.
Assignment parse_assignment(const HousingMarket& market, const std::string& document);

}  // namespace fttc
