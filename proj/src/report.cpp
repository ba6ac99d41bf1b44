#include "fttc/report.hpp"

#include <json.hpp>

#include <stdexcept>

namespace fttc {

using nlohmann::json;

namespace {

json witness_json(const HousingMarket& market, const Witness& w) {
    json doc;
    switch (w.kind) {
        case Witness::Kind::IrViolation:
            doc["kind"] = "ir-violation";
            doc["agent"] = market.agent_ids[w.agent];
            break;
        case Witness::Kind::GoodCycle:
            doc["kind"] = "good-cycle";
            doc["cycle"] = w.cycle;
            break;
        case Witness::Kind::DominatingAssignment:
            doc["kind"] = "dominating-assignment";
            break;
        case Witness::Kind::BlockingCoalition: {
            doc["kind"] = "blocking-coalition";
            json members = json::array();
            for (int i : w.coalition) members.push_back(market.agent_ids[i]);
            doc["coalition"] = members;
            break;
        }
        case Witness::Kind::EnvyPair:
            doc["kind"] = "envy-pair";
            doc["agent"] = market.agent_ids[w.agent];
            doc["envied"] = market.agent_ids[w.other_agent];
            break;
        case Witness::Kind::Misreport: {
            doc["kind"] = "misreport";
            doc["agent"] = market.agent_ids[w.agent];
            json classes = json::array();
            for (const auto& cls : w.misreport) {
                json names = json::array();
                for (int h : cls) names.push_back(market.house_ids[h]);
                classes.push_back(names);
            }
            doc["report"] = classes;
            json row = json::object();
            for (int h = 0; h < market.m(); ++h)
                row[market.house_ids[h]] = w.improved_row[h].str();
            doc["improved_row"] = row;
            break;
        }
    }
    if (!w.alternative.empty()) {
        json rows = json::array();
        for (std::size_t k = 0; k < w.alternative.size(); ++k) {
            json row = json::object();
            for (int h = 0; h < market.m(); ++h) row[market.house_ids[h]] = w.alternative[k][h].str();
            rows.push_back(row);
        }
        doc["assignment_rows"] = rows;
    }
    return doc;
}

}  // namespace

std::string witness_to_json(const HousingMarket& market, const Witness& witness) {
    return witness_json(market, witness).dump(2);
}

std::string run_checks_report(const HousingMarket& market, const Assignment& x,
                              const std::vector<std::string>& checks, bool& all_pass) {
    json report;
    all_pass = true;
    json results = json::object();
    for (const std::string& name : checks) {
        CheckResult r;
        if (name == "sd-ir") r = check_sd_ir(market, x);
        else if (name == "sd-efficiency") r = check_sd_efficiency(market, x);
        else if (name == "sd-core") r = check_sd_core(market, x);
        else if (name == "sd-strict-core") r = check_sd_strict_core(market, x);
        else if (name == "nje") r = check_nje(market, x);
        else throw std::invalid_argument("unknown check '" + name + "'");
        json entry;
        entry["verdict"] = r ? "fail" : "pass";
        if (r) {
            entry["witness"] = witness_json(market, *r);
            all_pass = false;
        }
        results[name] = entry;
    }
    report["checks"] = results;
    report["all_pass"] = all_pass;
    return report.dump(2);
}

}  // namespace fttc
