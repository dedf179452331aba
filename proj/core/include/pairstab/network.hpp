#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace pairstab {

/// Domain error with a message naming the offending field or quantity.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class BusType { Slack, PV, PQ };

struct Bus {
    int id = 0;
    BusType type = BusType::PQ;
    double v_set = 1.0;   // voltage setpoint, pu (PV/slack); initial guess otherwise
    double load_p = 0.0;  // pu on system base
    double load_q = 0.0;
    double shunt_g = 0.0; // fixed bus shunt, pu
    double shunt_b = 0.0;
};

struct Branch {
    int from = 0;
    int to = 0;
    double r = 0.0;
    double x = 0.0;
    double b = 0.0;       // total line charging, pu
    double tap = 1.0;     // off-nominal ratio on the from side; 1 = line
    bool in_service = true;
};

struct Machine {
    int bus = 0;
    double m = 0.0;        // inertia constant M = 2H, s on system base
    double xd_prime = 0.0; // transient reactance, pu
    double p_m = 0.0;      // mechanical power, pu (slack machine: initial guess)
};

// Classical-model study case. Immutable after construction/parse.
struct NetworkCase {
    std::string name;
    double base_mva = 100.0;
    double frequency_hz = 60.0;
    std::vector<Bus> buses;
    std::vector<Branch> branches;
    std::vector<Machine> machines;

    double omega_s() const;              // synchronous speed, rad/s
    int bus_index(int bus_id) const;     // position in buses, -1 if absent
    int machine_at_bus(int bus_id) const;
    int slack_index() const;             // bus index of the slack

    // Throws Error naming the first violated invariant.
    void validate() const;
};

// Parse and validate a case file (JSON schema in docs/case_schema.md).
NetworkCase parse_case(const std::string& path);
NetworkCase parse_case_text(const std::string& json_text, const std::string& origin);

std::string case_to_json(const NetworkCase& net);

} // namespace pairstab
