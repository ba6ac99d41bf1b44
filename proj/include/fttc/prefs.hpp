#pragma once

// Lottery-extension comparators over allocation vectors: stochastic dominance
// (a partial order over upper-contour prefix sums) and downward lexicographic
// comparison of per-class totals, plus the justified-envy predicate.

#include "fttc/market.hpp"

#include <vector>

namespace fttc {

using Allocation = std::vector<Rational>;

enum class ComparisonResult {
    StrictlyPreferred,
    Equivalent,
    StrictlyDispreferred,
    Incomparable,  // produced by SD only
};

const char* to_string(ComparisonResult r);

/// The nested upper contour sets U_1 c U_2 c ... c U_k of a weak order,
/// U_j being the union of the first j equivalence classes.
std::vector<std::vector<int>> upper_contour_prefixes(const PreferenceOrder& prefs);

/// SD comparison: a weakly beats b iff every upper-contour prefix sum of a is
/// at least b's. Equivalence is equality of all prefix sums.
ComparisonResult sd_compare(const PreferenceOrder& prefs, const Allocation& a,
                            const Allocation& b);

/// DL comparison: per-class totals compared lexicographically, best class
/// first. Complete on class totals; never returns Incomparable.
ComparisonResult dl_compare(const PreferenceOrder& prefs, const Allocation& a,
                            const Allocation& b);

inline bool weakly_preferred(ComparisonResult r) {
    return r == ComparisonResult::StrictlyPreferred || r == ComparisonResult::Equivalent;
}

/// True iff agent i SD-strictly prefers x(j) to x(i) while agent j SD-weakly
/// prefers x(i) to his own endowment.
bool has_justified_envy(const HousingMarket& market, const Assignment& x, int i, int j);

}  // namespace fttc
