// Python bindings. Markets and assignments cross the boundary as JSON
// strings in the documented formats; rationals as "p/q" strings.

#include "fttc/classical.hpp"
#include "fttc/engine.hpp"
#include "fttc/market.hpp"
#include "fttc/report.hpp"
#include "fttc/verify.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

namespace py = pybind11;

namespace {

fttc::HousingMarket market_from(const std::string& doc) { return fttc::parse_market(doc); }

std::string solve(const std::string& market_json, const std::string& mechanism) {
    fttc::HousingMarket market = market_from(market_json);
    fttc::Assignment x;
    if (mechanism == "fttc")
        x = fttc::fttc(market);
    else if (mechanism == "ttc")
        x = fttc::ttc(market);
    else if (mechanism == "attc")
        x = fttc::attc(market);
    else
        throw std::invalid_argument("unknown mechanism '" + mechanism + "'");
    return fttc::serialize_assignment(market, x);
}

std::string verify(const std::string& market_json, const std::string& assignment_json,
                   const std::vector<std::string>& checks) {
    fttc::HousingMarket market = market_from(market_json);
    fttc::Assignment x = fttc::parse_assignment(market, assignment_json);
    bool all_pass = false;
    return fttc::run_checks_report(market, x, checks, all_pass);
}

std::optional<std::string> manipulate(const std::string& market_json, const std::string& agent,
                                      const std::string& extension) {
    fttc::HousingMarket market = market_from(market_json);
    fttc::TieBreak tb = fttc::TieBreak::input_order(market);
    fttc::Extension ext = extension == "dl" ? fttc::Extension::DL : fttc::Extension::SD;
    auto w = fttc::find_manipulation(market, tb, market.agent_index(agent), ext);
    if (!w) return std::nullopt;
    return fttc::witness_to_json(market, *w);
}

std::string generate(std::uint64_t seed, int n, int m, const std::string& tie_probability,
                     bool fractional, std::uint64_t granularity) {
    fttc::RandomMarketParams params;
    params.seed = seed;
    params.n = n;
    params.m = m;
    params.tie_probability = fttc::parse_rational(tie_probability);
    params.fractional = fractional;
    params.granularity = granularity;
    return fttc::market_to_json(fttc::random_market(params));
}

bool compare(const std::string& market_json, const std::string& mech_a,
             const std::string& mech_b) {
    return solve(market_json, mech_a) == solve(market_json, mech_b);
}

}  // namespace

PYBIND11_MODULE(fttcpy, mod) {
    mod.doc() = "FTTC mechanisms and axiom verification for housing markets "
                "with fractional endowments";
    mod.def("solve", &solve, py::arg("market_json"), py::arg("mechanism") = "fttc",
            "Run a mechanism; returns the assignment as JSON.");
    mod.def("verify", &verify, py::arg("market_json"), py::arg("assignment_json"),
            py::arg("checks") =
                std::vector<std::string>{"sd-ir", "sd-efficiency", "sd-core", "nje"},
            "Run axiom checks; returns the report as JSON.");
    mod.def("manipulate", &manipulate, py::arg("market_json"), py::arg("agent"),
            py::arg("extension") = "sd",
            "Search for an improving misreport; returns a witness JSON or None.");
    mod.def("generate", &generate, py::arg("seed"), py::arg("agents"), py::arg("houses"),
            py::arg("tie_probability") = "0", py::arg("fractional") = false,
            py::arg("granularity") = 1, "Generate a seeded random market as JSON.");
    mod.def("compare", &compare, py::arg("market_json"), py::arg("mechanism_a"),
            py::arg("mechanism_b"), "True iff both mechanisms agree entrywise.");
}
