#pragma once

// JSON rendering of verification verdicts and witnesses, shared by the CLI
// and the Python bindings.

#include "fttc/market.hpp"
#include "fttc/verify.hpp"

#include <string>
#include <vector>

namespace fttc {

std::string witness_to_json(const HousingMarket& market, const Witness& witness);

/// Runs the named checks ("sd-ir", "sd-efficiency", "sd-core",
/// "sd-strict-core", "nje") and renders a report document. all_pass is set
/// accordingly.
std::string run_checks_report(const HousingMarket& market, const Assignment& x,
                              const std::vector<std::string>& checks, bool& all_pass);

}  // namespace fttc
