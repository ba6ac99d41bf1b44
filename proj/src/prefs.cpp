#include "fttc/prefs.hpp"

namespace fttc {

const char* to_string(ComparisonResult r) {
    switch (r) {
        case ComparisonResult::StrictlyPreferred: return "strictly-preferred";
        case ComparisonResult::Equivalent: return "equivalent";
        case ComparisonResult::StrictlyDispreferred: return "strictly-dispreferred";
        case ComparisonResult::Incomparable: return "incomparable";
    }
    return "?";
}

std::vector<std::vector<int>> upper_contour_prefixes(const PreferenceOrder& prefs) {
    std::vector<std::vector<int>> prefixes;
    std::vector<int> acc;
    for (const auto& cls : prefs) {
        acc.insert(acc.end(), cls.begin(), cls.end());
        prefixes.push_back(acc);
    }
    return prefixes;
}

namespace {

void check_sizes(const PreferenceOrder& prefs, const Allocation& a, const Allocation& b) {
    std::size_t houses = 0;
    for (const auto& cls : prefs) houses += cls.size();
    if (a.size() != houses || b.size() != houses)
        throw std::invalid_argument("allocation length does not match preference house set");
}

}  // namespace

ComparisonResult sd_compare(const PreferenceOrder& prefs, const Allocation& a,
                            const Allocation& b) {
    check_sizes(prefs, a, b);
    bool some_positive = false;
    bool some_negative = false;
    Rational diff;  // running prefix-sum difference
    for (const auto& cls : prefs) {
        for (int h : cls) diff += a[h] - b[h];
        if (diff > Rational(0)) some_positive = true;
        if (diff < Rational(0)) some_negative = true;
    }
    if (some_positive && some_negative) return ComparisonResult::Incomparable;
    if (some_positive) return ComparisonResult::StrictlyPreferred;
    if (some_negative) return ComparisonResult::StrictlyDispreferred;
    return ComparisonResult::Equivalent;
}

ComparisonResult dl_compare(const PreferenceOrder& prefs, const Allocation& a,
                            const Allocation& b) {
    check_sizes(prefs, a, b);
    for (const auto& cls : prefs) {
        Rational ta, tb;
        for (int h : cls) {
            ta += a[h];
            tb += b[h];
        }
        if (ta > tb) return ComparisonResult::StrictlyPreferred;
        if (ta < tb) return ComparisonResult::StrictlyDispreferred;
    }
    return ComparisonResult::Equivalent;
}

bool has_justified_envy(const HousingMarket& market, const Assignment& x, int i, int j) {
    if (i < 0 || i >= market.n() || j < 0 || j >= market.n())
        throw std::out_of_range("unknown agent index");
    if (i == j) return false;
    if (sd_compare(market.preferences[i], x.rows[j], x.rows[i]) !=
        ComparisonResult::StrictlyPreferred)
        return false;
    return weakly_preferred(sd_compare(market.preferences[j], x.rows[i], market.endowment[j]));
}

}  // namespace fttc
