#include "pairstab/network.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace pairstab {

using nlohmann::json;

double NetworkCase::omega_s() const {
    return 2.0 * M_PI * frequency_hz;
}

int NetworkCase::bus_index(int bus_id) const {
    for (size_t k = 0; k < buses.size(); ++k) {
        if (buses[k].id == bus_id) return static_cast<int>(k);
    }
    return -1;
}

int NetworkCase::machine_at_bus(int bus_id) const {
    for (size_t k = 0; k < machines.size(); ++k) {
        if (machines[k].bus == bus_id) return static_cast<int>(k);
    }
    return -1;
}

int NetworkCase::slack_index() const {
    for (size_t k = 0; k < buses.size(); ++k) {
        if (buses[k].type == BusType::Slack) return static_cast<int>(k);
    }
    return -1;
}

void NetworkCase::validate() const {
    if (base_mva <= 0.0) throw Error("base_mva must be positive");
    if (frequency_hz <= 0.0) throw Error("frequency_hz must be positive");
    if (buses.empty()) throw Error("buses: at least one bus required");
    if (machines.empty()) throw Error("machines: at least one machine required");

    std::set<int> ids;
    int slack_count = 0;
    for (const Bus& b : buses) {
        if (!ids.insert(b.id).second)
            throw Error("buses: duplicate id " + std::to_string(b.id));
        if (b.v_set <= 0.0)
            throw Error("buses: v_set must be positive at bus " + std::to_string(b.id));
        if (b.type == BusType::Slack) ++slack_count;
    }
    if (slack_count != 1)
        throw Error("buses: exactly one slack bus required, found " +
                    std::to_string(slack_count));

    for (const Branch& br : branches) {
        if (br.from == br.to)
            throw Error("branches: endpoints must differ (branch " +
                        std::to_string(br.from) + "-" + std::to_string(br.to) + ")");
        if (bus_index(br.from) < 0 || bus_index(br.to) < 0)
            throw Error("branches: dangling endpoint on branch " +
                        std::to_string(br.from) + "-" + std::to_string(br.to));
        if (br.tap <= 0.0)
            throw Error("branches: tap must be positive on branch " +
                        std::to_string(br.from) + "-" + std::to_string(br.to));
    }

    std::set<int> mach_buses;
    for (const Machine& mc : machines) {
        if (bus_index(mc.bus) < 0)
            throw Error("machines: machine on nonexistent bus " + std::to_string(mc.bus));
        if (!mach_buses.insert(mc.bus).second)
            throw Error("machines: more than one machine at bus " + std::to_string(mc.bus));
        if (mc.m <= 0.0)
            throw Error("machines: inertia must be positive at bus " + std::to_string(mc.bus));
        if (mc.xd_prime <= 0.0)
            throw Error("machines: xd_prime must be positive at bus " +
                        std::to_string(mc.bus));
    }
}

namespace {

[[noreturn]] void fail(const std::string& origin, const std::string& what) {
    throw Error(origin + ": " + what);
}

double num_field(const json& obj, const char* key, const std::string& origin) {
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_number())
        fail(origin, std::string("missing or non-numeric field '") + key + "'");
    return it->get<double>();
}

int int_field(const json& obj, const char* key, const std::string& origin) {
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_number_integer())
        fail(origin, std::string("missing or non-integer field '") + key + "'");
    return it->get<int>();
}

BusType bus_type_from(const std::string& s, const std::string& origin) {
    if (s == "slack") return BusType::Slack;
    if (s == "pv") return BusType::PV;
    if (s == "pq") return BusType::PQ;
    fail(origin, "bus type must be one of slack|pv|pq, got '" + s + "'");
}

void reject_unknown(const json& obj, std::initializer_list<const char*> known,
                    const std::string& origin) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : known)
            if (it.key() == k) { ok = true; break; }
        if (!ok) fail(origin, "unknown key '" + it.key() + "'");
    }
}

} // namespace

NetworkCase parse_case_text(const std::string& json_text, const std::string& origin) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        fail(origin, std::string("invalid JSON: ") + e.what());
    }
    if (!root.is_object()) fail(origin, "top level must be an object");
    reject_unknown(root, {"name", "base_mva", "frequency_hz", "buses", "branches",
                          "machines"},
                   origin);

    NetworkCase net;
    net.name = root.value("name", std::string());
    net.base_mva = num_field(root, "base_mva", origin);
    net.frequency_hz = num_field(root, "frequency_hz", origin);

    if (!root.contains("buses") || !root["buses"].is_array())
        fail(origin, "missing 'buses' array");
    for (const json& jb : root["buses"]) {
        const std::string at = origin + " bus[" + std::to_string(net.buses.size()) + "]";
        reject_unknown(jb, {"id", "type", "v_set", "load_p", "load_q", "shunt_g",
                            "shunt_b"},
                       at);
        Bus b;
        b.id = int_field(jb, "id", at);
        if (!jb.contains("type") || !jb["type"].is_string())
            fail(at, "missing 'type'");
        b.type = bus_type_from(jb["type"].get<std::string>(), at);
        b.v_set = jb.value("v_set", 1.0);
        b.load_p = jb.value("load_p", 0.0);
        b.load_q = jb.value("load_q", 0.0);
        b.shunt_g = jb.value("shunt_g", 0.0);
        b.shunt_b = jb.value("shunt_b", 0.0);
        net.buses.push_back(b);
    }

    if (!root.contains("branches") || !root["branches"].is_array())
        fail(origin, "missing 'branches' array");
    for (const json& jb : root["branches"]) {
        const std::string at =
            origin + " branch[" + std::to_string(net.branches.size()) + "]";
        reject_unknown(jb, {"from", "to", "r", "x", "b", "tap", "in_service"}, at);
        Branch br;
        br.from = int_field(jb, "from", at);
        br.to = int_field(jb, "to", at);
        br.r = jb.value("r", 0.0);
        br.x = num_field(jb, "x", at);
        br.b = jb.value("b", 0.0);
        br.tap = jb.value("tap", 1.0);
        br.in_service = jb.value("in_service", true);
        net.branches.push_back(br);
    }

    if (!root.contains("machines") || !root["machines"].is_array())
        fail(origin, "missing 'machines' array");
    for (const json& jm : root["machines"]) {
        const std::string at =
            origin + " machine[" + std::to_string(net.machines.size()) + "]";
        reject_unknown(jm, {"bus", "m", "h", "xd_prime", "p_m"}, at);
        Machine mc;
        mc.bus = int_field(jm, "bus", at);
        const bool has_m = jm.contains("m");
        const bool has_h = jm.contains("h");
        if (has_m == has_h)
            fail(at, "exactly one of 'm' (2H, s) or 'h' (s) required");
        mc.m = has_m ? num_field(jm, "m", at) : 2.0 * num_field(jm, "h", at);
        mc.xd_prime = num_field(jm, "xd_prime", at);
        mc.p_m = num_field(jm, "p_m", at);
        net.machines.push_back(mc);
    }

    net.validate();
    return net;
}

NetworkCase parse_case(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open case file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_case_text(ss.str(), path);
}

std::string case_to_json(const NetworkCase& net) {
    json root;
    if (!net.name.empty()) root["name"] = net.name;
    root["base_mva"] = net.base_mva;
    root["frequency_hz"] = net.frequency_hz;
    root["buses"] = json::array();
    for (const Bus& b : net.buses) {
        json jb{{"id", b.id},
                {"type", b.type == BusType::Slack ? "slack"
                         : b.type == BusType::PV  ? "pv"
                                                  : "pq"},
                {"v_set", b.v_set}};
        if (b.load_p != 0.0) jb["load_p"] = b.load_p;
        if (b.load_q != 0.0) jb["load_q"] = b.load_q;
        if (b.shunt_g != 0.0) jb["shunt_g"] = b.shunt_g;
        if (b.shunt_b != 0.0) jb["shunt_b"] = b.shunt_b;
        root["buses"].push_back(jb);
    }
    root["branches"] = json::array();
    for (const Branch& br : net.branches) {
        json jb{{"from", br.from}, {"to", br.to}, {"r", br.r}, {"x", br.x}, {"b", br.b}};
        if (br.tap != 1.0) jb["tap"] = br.tap;
        if (!br.in_service) jb["in_service"] = false;
        root["branches"].push_back(jb);
    }
    root["machines"] = json::array();
    for (const Machine& mc : net.machines) {
        root["machines"].push_back(json{{"bus", mc.bus},
                                        {"m", mc.m},
                                        {"xd_prime", mc.xd_prime},
                                        {"p_m", mc.p_m}});
    }
    return root.dump(2);
}

} // namespace pairstab
