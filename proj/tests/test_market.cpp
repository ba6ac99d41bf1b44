#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fttc/market.hpp"

#include <fstream>
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

}  // namespace

TEST_CASE("parses the illustration fixture") {
    HousingMarket market = parse_market(read_fixture("illustration.json"));
    CHECK(market.n() == 3);
    CHECK(market.m() == 3);
    CHECK(market.agent_ids == std::vector<std::string>{"1", "2", "3"});
    CHECK(market.endowment[0][1] == Rational(99, 100));
    CHECK(market.endowment[0][0] == Rational(0));
    CHECK(market.endowment[2][2] == Rational(98, 100));
    // agent 1: a > c > b
    CHECK(market.preferences[0] == PreferenceOrder{{0}, {2}, {1}});
    CHECK(market.class_of(0, 2) == 1);
    CHECK(validate(market).empty());
    CHECK_FALSE(is_classic(market));
    CHECK(has_strict_preferences(market));
    CHECK_FALSE(has_discrete_endowment(market));
}

TEST_CASE("classic market predicates") {
    HousingMarket market = parse_market(read_fixture("classic_ttc.json"));
    CHECK(is_classic(market));
    CHECK(has_discrete_endowment(market));
    CHECK(has_strict_preferences(market));

    HousingMarket dicho = parse_market(read_fixture("dichotomous.json"));
    CHECK(is_classic(dicho));
    CHECK_FALSE(has_strict_preferences(dicho));
}

TEST_CASE("round trip through market_to_json") {
    HousingMarket market = parse_market(read_fixture("imposs.json"));
    HousingMarket again = parse_market(market_to_json(market));
    CHECK(again.agent_ids == market.agent_ids);
    CHECK(again.house_ids == market.house_ids);
    CHECK(again.preferences == market.preferences);
    CHECK(again.endowment == market.endowment);
}

TEST_CASE("malformed documents raise ParseError") {
    CHECK_THROWS_AS(parse_market("not json"), ParseError);
    CHECK_THROWS_AS(parse_market("{}"), ParseError);
    CHECK_THROWS_AS(parse_market(R"({"agents":[],"houses":[],"preferences":{},"endowment":{}})"),
                    ParseError);
    // preference list references an unknown house
    CHECK_THROWS_AS(parse_market(R"({"agents":["1"],"houses":["a"],
        "preferences":{"1":[["z"]]},"endowment":{"1":{"a":"1"}}})"),
                    ParseError);
    // preferences must partition the house set
    CHECK_THROWS_AS(parse_market(R"({"agents":["1"],"houses":["a","b"],
        "preferences":{"1":[["a"]]},"endowment":{"1":{"a":"1","b":"1"}}})"),
                    ParseError);
    // negative endowment
    CHECK_THROWS_AS(parse_market(R"({"agents":["1"],"houses":["a"],
        "preferences":{"1":[["a"]]},"endowment":{"1":{"a":"-1"}}})"),
                    ParseError);
    // rational literals must be strings
    CHECK_THROWS_AS(parse_market(R"({"agents":["1"],"houses":["a"],
        "preferences":{"1":[["a"]]},"endowment":{"1":{"a":0.5}}})"),
                    ParseError);
}

TEST_CASE("assignment serialization round trip") {
    HousingMarket market = parse_market(read_fixture("illustration.json"));
    Assignment x;
    x.rows = market.endowment;
    Assignment back = parse_assignment(market, serialize_assignment(market, x));
    CHECK(back == x);

    Assignment fixture = parse_assignment(market, read_fixture("illustration_output.json"));
    CHECK(fixture.rows[0] == std::vector<Rational>{Rational(99, 100), Rational(0), Rational(1, 100)});
}

TEST_CASE("random markets are deterministic in the seed") {
    RandomMarketParams params;
    params.seed = 42;
    params.n = 4;
    params.m = 4;
    HousingMarket a = random_market(params);
    HousingMarket b = random_market(params);
    CHECK(a.preferences == b.preferences);
    CHECK(a.endowment == b.endowment);

    params.seed = 43;
    HousingMarket c = random_market(params);
    CHECK((a.preferences != c.preferences || a.endowment != c.endowment));
}

TEST_CASE("random market invariants") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        RandomMarketParams params;
        params.seed = seed;
        params.n = 5;
        params.m = 5;
        SUBCASE("permutation endowments") {
            HousingMarket market = random_market(params);
            CHECK(validate(market).empty());
            CHECK(is_classic(market));
            CHECK(has_strict_preferences(market));
        }
        SUBCASE("fractional endowments with ties") {
            params.fractional = true;
            params.granularity = 100;
            params.tie_probability = Rational(1, 3);
            HousingMarket market = random_market(params);
            CHECK(validate(market).empty());
            auto sums = column_sums(market.endowment, market.m());
            for (const auto& s : sums) CHECK(s == Rational(1));
        }
    }
}

TEST_CASE("random market rejects bad parameters") {
    RandomMarketParams params;
    params.n = 3;
    params.m = 4;  // permutation mode needs n = m
    CHECK_THROWS_AS(random_market(params), std::invalid_argument);
    params.m = 3;
    params.tie_probability = Rational(3, 2);
    CHECK_THROWS_AS(random_market(params), std::invalid_argument);
}
