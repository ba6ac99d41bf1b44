#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fttc/market.hpp"
#include "fttc/prefs.hpp"

#include <fstream>
#include <random>
#include <sstream>

using namespace fttc;

namespace {

std::string read_fixture(const std::string& name) {
    std::ifstream in(std::string(FIXTURE_DIR) + "/" + name);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

const PreferenceOrder kStrictAbc{{0}, {1}, {2}};  // a > b > c

Allocation alloc(std::initializer_list<Rational> xs) { return Allocation(xs); }

}  // namespace

TEST_CASE("upper contour prefixes") {
    PreferenceOrder prefs{{1}, {0, 2}, {3}};
    auto prefixes = upper_contour_prefixes(prefs);
    REQUIRE(prefixes.size() == 3);
    CHECK(prefixes[0] == std::vector<int>{1});
    CHECK(prefixes[1] == std::vector<int>{1, 0, 2});
    CHECK(prefixes[2] == std::vector<int>{1, 0, 2, 3});
}

TEST_CASE("sd_compare on the illustration rows") {
    // agent 1 has a > c > b; output row vs endowment row
    PreferenceOrder prefs{{0}, {2}, {1}};
    Allocation out = alloc({Rational(99, 100), Rational(0), Rational(1, 100)});
    Allocation endow = alloc({Rational(0), Rational(99, 100), Rational(1, 100)});
    CHECK(sd_compare(prefs, out, endow) == ComparisonResult::StrictlyPreferred);
    CHECK(sd_compare(prefs, endow, out) == ComparisonResult::StrictlyDispreferred);
    CHECK(sd_compare(prefs, out, out) == ComparisonResult::Equivalent);
}

TEST_CASE("sd_compare incomparable pair") {
    Allocation a = alloc({Rational(1, 2), Rational(0), Rational(1, 2)});
    Allocation b = alloc({Rational(0), Rational(1), Rational(0)});
    CHECK(sd_compare(kStrictAbc, a, b) == ComparisonResult::Incomparable);
    CHECK(dl_compare(kStrictAbc, a, b) == ComparisonResult::StrictlyPreferred);
}

TEST_CASE("sd equivalence is prefix-sum equality, not entrywise") {
    PreferenceOrder indifferent{{0, 1}};  // a ~ b
    Allocation a = alloc({Rational(1), Rational(0)});
    Allocation b = alloc({Rational(0), Rational(1)});
    CHECK(sd_compare(indifferent, a, b) == ComparisonResult::Equivalent);
    CHECK(dl_compare(indifferent, a, b) == ComparisonResult::Equivalent);
}

TEST_CASE("dl_compare is complete on class totals") {
    PreferenceOrder prefs{{0}, {1, 2}};
    Allocation a = alloc({Rational(1, 4), Rational(1, 2), Rational(1, 4)});
    Allocation b = alloc({Rational(1, 4), Rational(1, 4), Rational(1, 2)});
    CHECK(dl_compare(prefs, a, b) == ComparisonResult::Equivalent);
    Allocation c = alloc({Rational(1, 3), Rational(1, 3), Rational(1, 3)});
    CHECK(dl_compare(prefs, c, a) == ComparisonResult::StrictlyPreferred);
    CHECK(dl_compare(prefs, a, c) == ComparisonResult::StrictlyDispreferred);
}

TEST_CASE("justified envy on the core-envy fixture") {
    HousingMarket market = parse_market(read_fixture("core_envy.json"));
    Assignment x = parse_assignment(market, read_fixture("core_envy_output.json"));
    CHECK(has_justified_envy(market, x, 2, 1));   // agent 3 envies agent 2
    CHECK_FALSE(has_justified_envy(market, x, 1, 2));
    CHECK_FALSE(has_justified_envy(market, x, 2, 2));

    Assignment endow;
    endow.rows = market.endowment;
    CHECK_FALSE(has_justified_envy(market, endow, 2, 1));
}

TEST_CASE("comparator laws on random triples") {
    std::mt19937_64 rng(7);
    auto random_alloc = [&]() {
        Allocation a(3);
        for (auto& v : a) v = Rational(static_cast<std::int64_t>(rng() % 5), 4);
        return a;
    };
    PreferenceOrder orders[] = {{{0}, {1}, {2}}, {{0, 1}, {2}}, {{2}, {0, 1}}, {{0, 1, 2}}};
    int checked = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        const PreferenceOrder& prefs = orders[rng() % 4];
        Allocation a = random_alloc(), b = random_alloc(), c = random_alloc();
        auto sd_ab = sd_compare(prefs, a, b);
        auto dl_ab = dl_compare(prefs, a, b);
        // refinement: SD weak preference implies DL weak preference
        if (weakly_preferred(sd_ab)) CHECK(weakly_preferred(dl_ab));
        // antisymmetry
        if (sd_ab == ComparisonResult::StrictlyPreferred)
            CHECK(sd_compare(prefs, b, a) == ComparisonResult::StrictlyDispreferred);
        if (dl_ab == ComparisonResult::StrictlyPreferred)
            CHECK(dl_compare(prefs, b, a) == ComparisonResult::StrictlyDispreferred);
        CHECK(dl_ab != ComparisonResult::Incomparable);
        // strict transitivity
        if (sd_ab == ComparisonResult::StrictlyPreferred &&
            sd_compare(prefs, b, c) == ComparisonResult::StrictlyPreferred) {
            CHECK(sd_compare(prefs, a, c) == ComparisonResult::StrictlyPreferred);
            ++checked;
        }
        if (dl_ab == ComparisonResult::StrictlyPreferred &&
            dl_compare(prefs, b, c) == ComparisonResult::StrictlyPreferred)
            CHECK(dl_compare(prefs, a, c) == ComparisonResult::StrictlyPreferred);
    }
    CHECK(checked > 0);  // the transitivity branch actually fired
}
