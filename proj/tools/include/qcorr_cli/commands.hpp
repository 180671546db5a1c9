#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qcorr_cli/config.hpp"

namespace qcorr::cli {

using json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";

/// CSV table of every sample for every configured engine.
void write_simulation(const Config& c, std::ostream& out);

/// Simulation followed by analysis, one report per engine.
json analyze_report(const Config& c);

struct SweepOutcome {
  json summary = json::array();
  int exit_code = 0;
};

/// Long-format CSV keyed by (axis value, t), followed by "# report" lines.
SweepOutcome write_sweep(const Config& c, std::ostream& out);

json device_report(const Config& c);

json to_json(const AnalysisReport& rep);

/// 2 for input errors, 3 for unphysical states, 4 for numerical failures, 1 otherwise.
int exit_code_for(const std::exception& e);

/// Entry point shared by the executable and the tests.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qcorr::cli
