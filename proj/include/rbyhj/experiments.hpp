#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace rbyhj {

struct ExperimentInfo {
    std::string name;
    std::string description;
};

const std::vector<ExperimentInfo>& list_experiments();

struct RunOutcome {
    bool pass = false;
    int exit_code = 1;  // 0 pass, 1 assertion failure, 2 config error
    nlohmann::json report;
};

// Validates the config, runs the experiment, writes meta.json / report.json /
// CSV tables (and SVG plots when requested) under out_dir.
RunOutcome run_experiment(nlohmann::json config, const std::string& out_dir, bool plots,
                          std::optional<std::uint64_t> seed_override);

nlohmann::json load_config(const std::string& path);

}  // namespace rbyhj
