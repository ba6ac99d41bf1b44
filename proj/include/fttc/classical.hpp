#pragma once

// Baseline mechanisms used by the differential tests: Gale's TTC on classic
// strict markets, ATTC on strict discrete multi-unit markets, serial
// dictatorship, and the equal-endowment wrapper.

#include "fttc/market.hpp"

#include <vector>

namespace fttc {

/// Strict total order over agents, highest priority first.
using PriorityOrder = std::vector<int>;

/// Gale's Top Trading Cycles. Requires a classic market (permutation
/// endowment) with strict preferences; throws std::invalid_argument otherwise.
Assignment ttc(const HousingMarket& market);

/// Augmented TTC: one clone per endowed unit, TTC over the cloned market,
/// clone allocations aggregated back. Requires strict preferences and
/// non-negative integer endowments.
Assignment attc(const HousingMarket& market);

/// Agents take their demand greedily from the most preferred remaining
/// supply, in priority order; within an indifference class supply is taken
/// house by house in input order. Requires total demand = total supply.
Assignment serial_dictatorship(const std::vector<PreferenceOrder>& preferences,
                               const std::vector<Rational>& supply, const PriorityOrder& order,
                               const std::vector<Rational>& demand);

/// The market in which every agent starts with supply(h)/n of every house.
HousingMarket equal_endowment_market(std::vector<std::string> agent_ids,
                                     std::vector<std::string> house_ids,
                                     std::vector<PreferenceOrder> preferences,
                                     const std::vector<Rational>& supply);

}  // namespace fttc
