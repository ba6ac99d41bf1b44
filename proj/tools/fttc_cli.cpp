// Command-line front end: solve an instance with a chosen mechanism, verify
// axioms against an assignment, search for manipulations, generate random
// instances, and differential-compare mechanisms.

#include "fttc/classical.hpp"
#include "fttc/engine.hpp"
#include "fttc/market.hpp"
#include "fttc/report.hpp"
#include "fttc/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitMalformed = 1;
constexpr int kExitPrecondition = 2;
constexpr int kExitCheckFailed = 3;
constexpr int kExitDimensionMismatch = 4;
constexpr int kExitGuard = 5;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw fttc::ParseError("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text << "\n";
}

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> items;
    std::string item;
    std::istringstream in(csv);
    while (std::getline(in, item, ','))
        if (!item.empty()) items.push_back(item);
    return items;
}

fttc::TieBreak make_tiebreak(const fttc::HousingMarket& market, const std::string& ln,
                             const std::string& lh) {
    fttc::TieBreak tb = fttc::TieBreak::input_order(market);
    if (!ln.empty()) {
        tb.agents.clear();
        for (const auto& id : split_list(ln)) tb.agents.push_back(market.agent_index(id));
    }
    if (!lh.empty()) {
        tb.houses.clear();
        for (const auto& id : split_list(lh)) tb.houses.push_back(market.house_index(id));
    }
    return tb;
}

struct SolveOutcome {
    fttc::Assignment assignment;
    int trades = 0;
};

SolveOutcome run_mechanism(const fttc::HousingMarket& market, const std::string& mechanism,
                           const fttc::TieBreak& tiebreak, std::ostream* trace) {
    SolveOutcome out;
    if (mechanism == "fttc") {
        fttc::TraceSink sink;
        if (trace) {
            sink = [&](const fttc::TraceEvent& e) {
                json line;
                line["event"] = e.kind == fttc::TraceEvent::Kind::Trade ? "trade" : "delete";
                line["vertices"] = e.vertices;
                if (e.kind == fttc::TraceEvent::Kind::Trade) line["alpha"] = e.alpha.str();
                *trace << line.dump() << "\n";
            };
        }
        auto result = fttc::fttc_run(market, tiebreak, sink);
        out.assignment = std::move(result.assignment);
        out.trades = result.trades;
    } else if (mechanism == "ttc") {
        out.assignment = fttc::ttc(market);
    } else if (mechanism == "attc") {
        out.assignment = fttc::attc(market);
    } else if (mechanism == "sd") {
        // Serial dictatorship over the instance's supply: priority is the
        // agent tie-break order, each agent demands his endowment total.
        std::vector<fttc::Rational> supply = fttc::column_sums(market.endowment, market.m());
        std::vector<fttc::Rational> demand;
        for (const auto& row : market.endowment) {
            fttc::Rational total;
            for (const auto& e : row) total += e;
            demand.push_back(total);
        }
        out.assignment =
            fttc::serial_dictatorship(market.preferences, supply, tiebreak.agents, demand);
    } else {
        throw std::invalid_argument("unknown mechanism '" + mechanism + "'");
    }
    return out;
}

int cmd_solve(const std::string& input, const std::string& output, const std::string& mechanism,
              const std::string& ln, const std::string& lh, const std::string& trace_path) {
    fttc::HousingMarket market;
    try {
        market = fttc::parse_market(slurp(input));
    } catch (const fttc::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMalformed;
    }
    try {
        fttc::TieBreak tb = make_tiebreak(market, ln, lh);
        std::ofstream trace_file;
        std::ostream* trace = nullptr;
        if (!trace_path.empty()) {
            trace_file.open(trace_path);
            trace = &trace_file;
        }
        SolveOutcome out = run_mechanism(market, mechanism, tb, trace);
        emit(output, fttc::serialize_assignment(market, out.assignment));
        std::cout << mechanism << ": n=" << market.n() << " m=" << market.m()
                  << " trades=" << out.trades << "\n";
        return kExitOk;
    } catch (const std::invalid_argument& e) {
        std::cerr << "precondition violated: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const std::out_of_range& e) {
        std::cerr << "precondition violated: " << e.what() << "\n";
        return kExitPrecondition;
    }
}

int cmd_verify(const std::string& input, const std::string& assignment_path,
               const std::string& output, const std::string& checks_csv) {
    fttc::HousingMarket market;
    fttc::Assignment x;
    try {
        market = fttc::parse_market(slurp(input));
    } catch (const fttc::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMalformed;
    }
    try {
        x = fttc::parse_assignment(market, slurp(assignment_path));
    } catch (const fttc::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMalformed;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDimensionMismatch;
    }
    std::vector<std::string> checks =
        checks_csv.empty()
            ? std::vector<std::string>{"sd-ir", "sd-efficiency", "sd-core", "sd-strict-core", "nje"}
            : split_list(checks_csv);
    bool all_pass = false;
    std::string report = fttc::run_checks_report(market, x, checks, all_pass);
    emit(output, report);
    std::cout << (all_pass ? "all checks passed" : "some checks failed") << "\n";
    return all_pass ? kExitOk : kExitCheckFailed;
}

int cmd_manipulate(const std::string& input, const std::string& output, const std::string& agent,
                   const std::string& extension, const std::string& ln, const std::string& lh) {
    fttc::HousingMarket market;
    try {
        market = fttc::parse_market(slurp(input));
    } catch (const fttc::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMalformed;
    }
    if (market.m() > 6) {
        std::cerr << "error: manipulation search limited to 6 houses\n";
        return kExitGuard;
    }
    fttc::TieBreak tb = make_tiebreak(market, ln, lh);
    fttc::Extension ext = extension == "dl" ? fttc::Extension::DL : fttc::Extension::SD;
    std::vector<int> agents;
    if (agent.empty() || agent == "all")
        for (int i = 0; i < market.n(); ++i) agents.push_back(i);
    else
        agents.push_back(market.agent_index(agent));

    json report;
    json found = json::array();
    for (int i : agents) {
        if (auto w = fttc::find_manipulation(market, tb, i, ext))
            found.push_back(json::parse(fttc::witness_to_json(market, *w)));
    }
    report["witnesses"] = found;
    report["manipulable"] = !found.empty();
    emit(output, report.dump(2));
    std::cout << (found.empty() ? "none" : "manipulation found") << "\n";
    return found.empty() ? kExitOk : kExitCheckFailed;
}

int cmd_gen(const std::string& output, std::uint64_t seed, int agents, int houses,
            const std::string& ties, bool fractional, std::uint64_t granularity,
            std::uint64_t units) {
    fttc::RandomMarketParams params;
    params.seed = seed;
    params.n = agents;
    params.m = houses;
    params.tie_probability = fttc::parse_rational(ties);
    params.fractional = fractional;
    params.granularity = granularity;
    params.units_per_house = units;
    try {
        emit(output, fttc::market_to_json(fttc::random_market(params)));
        return kExitOk;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecondition;
    }
}

int cmd_compare(const std::string& mechanisms_csv, const std::string& input, int count,
                std::uint64_t seed, int agents, int houses, const std::string& ties,
                bool fractional, std::uint64_t granularity, std::uint64_t units,
                const std::string& ln, const std::string& lh) {
    auto mechanisms = split_list(mechanisms_csv);
    if (mechanisms.size() != 2) {
        std::cerr << "error: --mechanism expects two comma-separated names\n";
        return kExitPrecondition;
    }

    auto compare_one = [&](const fttc::HousingMarket& market) -> std::optional<std::string> {
        fttc::TieBreak tb = make_tiebreak(market, ln, lh);
        fttc::Assignment a = run_mechanism(market, mechanisms[0], tb, nullptr).assignment;
        fttc::Assignment b = run_mechanism(market, mechanisms[1], tb, nullptr).assignment;
        for (int i = 0; i < market.n(); ++i)
            for (int h = 0; h < market.m(); ++h)
                if (a.rows[i][h] != b.rows[i][h])
                    return "first difference at (" + market.agent_ids[i] + ", " +
                           market.house_ids[h] + "): " + a.rows[i][h].str() + " vs " +
                           b.rows[i][h].str();
        return std::nullopt;
    };

    try {
        if (!input.empty()) {
            fttc::HousingMarket market;
            try {
                market = fttc::parse_market(slurp(input));
            } catch (const fttc::ParseError& e) {
                std::cerr << "error: " << e.what() << "\n";
                return kExitMalformed;
            }
            auto diff = compare_one(market);
            std::cout << (diff ? *diff : std::string("EQUAL")) << "\n";
            return diff ? kExitCheckFailed : kExitOk;
        }
        int mismatches = 0;
        for (int k = 0; k < count; ++k) {
            fttc::RandomMarketParams params;
            params.seed = seed + static_cast<std::uint64_t>(k);
            params.n = agents;
            params.m = houses;
            params.tie_probability = fttc::parse_rational(ties);
            params.fractional = fractional;
            params.granularity = granularity;
            params.units_per_house = units;
            fttc::HousingMarket market = fttc::random_market(params);
            if (auto diff = compare_one(market)) {
                ++mismatches;
                std::cout << "seed " << params.seed << ": " << *diff << "\n";
            }
        }
        std::cout << "mismatches: " << mismatches << "/" << count << "\n";
        return mismatches == 0 ? kExitOk : kExitCheckFailed;
    } catch (const std::invalid_argument& e) {
        std::cerr << "precondition violated: " << e.what() << "\n";
        return kExitPrecondition;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"FTTC toolkit for housing markets with fractional endowments"};
    app.require_subcommand(1);

    std::string input, output, assignment_path, mechanism = "fttc", ln, lh, trace_path;
    std::string checks, agent, extension = "sd", ties = "0";
    int agents = 3, houses = 3, count = 100;
    std::uint64_t seed = 0, granularity = 1, units = 1;
    bool fractional = false;

    auto* solve = app.add_subcommand("solve", "run a mechanism on an instance");
    solve->add_option("--input", input)->required();
    solve->add_option("--output", output);
    solve->add_option("--mechanism", mechanism)->check(CLI::IsMember({"fttc", "ttc", "attc", "sd"}));
    solve->add_option("--ln", ln, "agent tie-break order, comma-separated ids");
    solve->add_option("--lh", lh, "house tie-break order, comma-separated ids");
    solve->add_option("--trace", trace_path, "write line-delimited trade/delete events");

    auto* verify = app.add_subcommand("verify", "check axioms against an assignment");
    verify->add_option("--input", input)->required();
    verify->add_option("--assignment", assignment_path)->required();
    verify->add_option("--output", output);
    verify->add_option("--checks", checks, "subset of sd-ir,sd-efficiency,sd-core,sd-strict-core,nje");

    auto* manipulate = app.add_subcommand("manipulate", "search for an improving misreport");
    manipulate->add_option("--input", input)->required();
    manipulate->add_option("--output", output);
    manipulate->add_option("--agent", agent, "agent id, or 'all'");
    manipulate->add_option("--extension", extension)->check(CLI::IsMember({"sd", "dl"}));
    manipulate->add_option("--ln", ln);
    manipulate->add_option("--lh", lh);

    auto* gen = app.add_subcommand("gen", "generate a random instance");
    gen->add_option("--output", output);
    gen->add_option("--seed", seed);
    gen->add_option("--agents", agents);
    gen->add_option("--houses", houses);
    gen->add_option("--ties", ties, "tie probability, rational");
    gen->add_flag("--fractional", fractional);
    gen->add_option("--granularity", granularity);
    gen->add_option("--units", units, "supply per house (fractional mode)");

    auto* compare = app.add_subcommand("compare", "differential-compare two mechanisms");
    compare->add_option("--mechanism", mechanism, "two names, e.g. fttc,ttc")->required();
    compare->add_option("--input", input, "single instance; omit for batch mode");
    compare->add_option("--count", count);
    compare->add_option("--seed", seed);
    compare->add_option("--agents", agents);
    compare->add_option("--houses", houses);
    compare->add_option("--ties", ties);
    compare->add_flag("--fractional", fractional);
    compare->add_option("--granularity", granularity);
    compare->add_option("--units", units);
    compare->add_option("--ln", ln);
    compare->add_option("--lh", lh);

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return cmd_solve(input, output, mechanism, ln, lh, trace_path);
        if (verify->parsed()) return cmd_verify(input, assignment_path, output, checks);
        if (manipulate->parsed()) return cmd_manipulate(input, output, agent, extension, ln, lh);
        if (gen->parsed())
            return cmd_gen(output, seed, agents, houses, ties, fractional, granularity, units);
        if (compare->parsed())
            return cmd_compare(mechanism, input, count, seed, agents, houses, ties, fractional,
                               granularity, units, ln, lh);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMalformed;
    }
    return kExitOk;
}
