#pragma once

#include <optional>
#include <string>

#include "pairstab/network.hpp"

namespace pairstab {

// Read-only converter for IEEE Common Data Format files. The CDF carries no
// dynamic data; machine entries (m, x'd) come from an optional sidecar JSON
// mapping bus ids to {"m": ..., "xd_prime": ...}. Without it the converted
// case has generator dispatch folded into the bus records and an empty
// machine list (validate-case will flag it until machines are added).
NetworkCase convert_cdf(const std::string& cdf_path,
                        const std::optional<std::string>& machine_data_path);

} // namespace pairstab
