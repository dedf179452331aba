#pragma once

#include <optional>
#include <string>

#include "pairstab/assess.hpp"

namespace pairstab {

// CLI run configuration: a JSON file plus flag overrides
// (flags > file > defaults). Unknown keys are rejected.
struct RunConfig {
    std::string case_path;
    std::optional<FaultScenario> scenario;
    AssessConfig assess;
    std::optional<int> remote_machine_bus; // resolved to a machine index at run time
    std::string out_dir = "out"; // PAIRSTAB_OUT overrides the default
    bool write_csv = true;
    bool write_json = true;
    bool with_timestamp = true;

    void validate() const;
};

RunConfig load_run_config(const std::string& path);
RunConfig run_config_from_json_text(const std::string& text, const std::string& origin);

FaultScenario scenario_from_json_text(const std::string& text, const std::string& origin);

std::string default_out_dir(); // $PAIRSTAB_OUT or "out"

} // namespace pairstab
