#pragma once

// Exact certification of the stability and efficiency axioms against a
// (market, assignment) pair, plus brute-force manipulation search and
// discrete strict-core-emptiness enumeration. Every failed check carries a
// witness that re-validates under the definitional predicate.

#include "fttc/engine.hpp"
#include "fttc/market.hpp"
#include "fttc/prefs.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fttc {

struct Witness {
    enum class Kind {
        IrViolation,
        GoodCycle,
        DominatingAssignment,
        BlockingCoalition,
        EnvyPair,
        Misreport,
    };
    Kind kind;
    int agent = -1;                      // IrViolation, Misreport
    int other_agent = -1;                // EnvyPair (agent envies other_agent)
    std::vector<int> coalition;          // BlockingCoalition
    Matrix alternative;                  // blocking / dominating rows (coalition order)
    std::vector<std::string> cycle;      // GoodCycle vertex names
    PreferenceOrder misreport;           // Misreport
    Allocation improved_row;             // Misreport
};

using CheckResult = std::optional<Witness>;  // nullopt = pass

enum class StrictMode { AllStrict, SomeStrict };

/// Searches for an assignment y on coalition S with per-house totals equal to
/// `supply`, every member SD-weakly improving on x, and (AllStrict) every
/// member strictly improving / (SomeStrict) some member strictly improving.
/// Returns the rows of y in coalition order, or nullopt when none exists.
std::optional<Matrix> sd_dominates_lp(const HousingMarket& market, const Assignment& x,
                                      const std::vector<int>& coalition,
                                      const std::vector<Rational>& supply, StrictMode mode);

CheckResult check_sd_ir(const HousingMarket& market, const Assignment& x);

/// LP ground truth with a good-cycle certificate cross-check; throws
/// std::logic_error if the two verdicts ever disagree.
CheckResult check_sd_efficiency(const HousingMarket& market, const Assignment& x);

/// Enumerates coalitions by size then lexicographically. Guarded at n <= 16.
CheckResult check_sd_core(const HousingMarket& market, const Assignment& x);
CheckResult check_sd_strict_core(const HousingMarket& market, const Assignment& x);

CheckResult check_nje(const HousingMarket& market, const Assignment& x);

enum class Extension { SD, DL };

/// Enumerates every weak order as agent's report (canonical order: class
/// count, then lexicographic) and re-runs FTTC; returns the first report that
/// strictly improves the agent's row under the truthful preferences.
/// Guarded at m <= 6.
CheckResult find_manipulation(const HousingMarket& market, const TieBreak& tiebreak, int agent,
                              Extension extension);

struct StrictCoreEmptiness {
    bool empty = false;
    // One entry per discrete assignment: the permutation (agent -> house) and
    // the blocking witness, when one exists.
    std::vector<std::pair<std::vector<int>, CheckResult>> log;
};

/// Enumerates all n! discrete assignments of a classic-shaped market; the
/// strict core (restricted to discrete assignments) is empty iff every one is
/// weakly blocked. Guarded at n <= 7.
StrictCoreEmptiness strict_core_empty_discrete(const HousingMarket& market);

/// All weak orders over houses 0..m-1 in canonical order.
std::vector<PreferenceOrder> enumerate_weak_orders(int m);

}  // namespace fttc
