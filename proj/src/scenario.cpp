#include "dronecell/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "dronecell/errors.hpp"
#include "dronecell/units.hpp"

namespace dronecell {

namespace {

struct KeyEntry {
    const char* key;
    std::function<void(ScenarioConfig&, double)> set;
    std::function<double(const ScenarioConfig&)> get;
    bool integral = false;
};

const std::vector<KeyEntry>& key_table() {
    static const std::vector<KeyEntry> table = {
        {"area.radius_m", [](ScenarioConfig& c, double v) { c.area.radius_m = v; },
         [](const ScenarioConfig& c) { return c.area.radius_m; }},
        {"area.user_density_per_m2", [](ScenarioConfig& c, double v) { c.area.user_density_per_m2 = v; },
         [](const ScenarioConfig& c) { return c.area.user_density_per_m2; }},
        {"area.station_distance_m", [](ScenarioConfig& c, double v) { c.area.station_distance_m = v; },
         [](const ScenarioConfig& c) { return c.area.station_distance_m; }},
        {"body.blocker_height_m", [](ScenarioConfig& c, double v) { c.body.blocker_height_m = v; },
         [](const ScenarioConfig& c) { return c.body.blocker_height_m; }},
        {"body.ue_height_m", [](ScenarioConfig& c, double v) { c.body.ue_height_m = v; },
         [](const ScenarioConfig& c) { return c.body.ue_height_m; }},
        {"body.blocker_radius_m", [](ScenarioConfig& c, double v) { c.body.blocker_radius_m = v; },
         [](const ScenarioConfig& c) { return c.body.blocker_radius_m; }},
        {"body.ue_body_distance_m", [](ScenarioConfig& c, double v) { c.body.ue_body_distance_m = v; },
         [](const ScenarioConfig& c) { return c.body.ue_body_distance_m; }},
        {"radio.f_c_ghz", [](ScenarioConfig& c, double v) { c.radio.f_c_ghz = v; },
         [](const ScenarioConfig& c) { return c.radio.f_c_ghz; }},
        {"radio.bandwidth_hz", [](ScenarioConfig& c, double v) { c.radio.bandwidth_hz = v; },
         [](const ScenarioConfig& c) { return c.radio.bandwidth_hz; }},
        {"radio.tx_power_dbm", [](ScenarioConfig& c, double v) { c.radio.tx_power_dbm = v; },
         [](const ScenarioConfig& c) { return c.radio.tx_power_dbm; }},
        {"radio.ap_gain_db", [](ScenarioConfig& c, double v) { c.radio.ap_gain_db = v; },
         [](const ScenarioConfig& c) { return c.radio.ap_gain_db; }},
        {"radio.ue_gain_db", [](ScenarioConfig& c, double v) { c.radio.ue_gain_db = v; },
         [](const ScenarioConfig& c) { return c.radio.ue_gain_db; }},
        {"radio.blockage_loss_db", [](ScenarioConfig& c, double v) { c.radio.blockage_loss_db = v; },
         [](const ScenarioConfig& c) { return c.radio.blockage_loss_db; }},
        {"radio.pathloss_exponent", [](ScenarioConfig& c, double v) { c.radio.pathloss_exponent = v; },
         [](const ScenarioConfig& c) { return c.radio.pathloss_exponent; }},
        {"radio.noise_power_dbm", [](ScenarioConfig& c, double v) { c.radio.noise_power_dbm = v; },
         [](const ScenarioConfig& c) { return c.radio.noise_power_dbm; }},
        {"radio.noise_figure_db", [](ScenarioConfig& c, double v) { c.radio.noise_figure_db = v; },
         [](const ScenarioConfig& c) { return c.radio.noise_figure_db; }},
        {"fleet.n_drones", [](ScenarioConfig& c, double v) { c.fleet.n_drones = static_cast<int>(v); },
         [](const ScenarioConfig& c) { return static_cast<double>(c.fleet.n_drones); }, true},
        {"fleet.n_max", [](ScenarioConfig& c, double v) { c.fleet.n_max = static_cast<int>(v); },
         [](const ScenarioConfig& c) { return static_cast<double>(c.fleet.n_max); }, true},
        {"fleet.airborne_height_m", [](ScenarioConfig& c, double v) { c.fleet.airborne_height_m = v; },
         [](const ScenarioConfig& c) { return c.fleet.airborne_height_m; }},
        {"fleet.landed_height_m", [](ScenarioConfig& c, double v) { c.fleet.landed_height_m = v; },
         [](const ScenarioConfig& c) { return c.fleet.landed_height_m; }},
        {"fleet.flight_time_h", [](ScenarioConfig& c, double v) { c.fleet.flight_time_h = v; },
         [](const ScenarioConfig& c) { return c.fleet.flight_time_h; }},
        {"fleet.charge_time_h", [](ScenarioConfig& c, double v) { c.fleet.charge_time_h = v; },
         [](const ScenarioConfig& c) { return c.fleet.charge_time_h; }},
        {"fleet.cruise_speed_kmh", [](ScenarioConfig& c, double v) { c.fleet.cruise_speed_kmh = v; },
         [](const ScenarioConfig& c) { return c.fleet.cruise_speed_kmh; }},
        {"fleet.flight_power_w", [](ScenarioConfig& c, double v) { c.fleet.flight_power_w = v; },
         [](const ScenarioConfig& c) { return c.fleet.flight_power_w; }},
        {"fleet.hover_power_w", [](ScenarioConfig& c, double v) { c.fleet.hover_power_w = v; },
         [](const ScenarioConfig& c) { return c.fleet.hover_power_w; }},
        {"fleet.payload_power_w", [](ScenarioConfig& c, double v) { c.fleet.payload_power_w = v; },
         [](const ScenarioConfig& c) { return c.fleet.payload_power_w; }},
    };
    return table;
}

const KeyEntry* find_key(const std::string& key) {
    for (const auto& e : key_table()) {
        if (key == e.key) return &e;
    }
    return nullptr;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& text, int line_no) {
    try {
        std::size_t pos = 0;
        double v = std::stod(text, &pos);
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos != text.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("line " + std::to_string(line_no) + ": cannot parse value '" + text + "'");
    }
}

void assign(ScenarioConfig& config, const std::string& key, const std::string& value, int line_no,
            std::set<std::string>* seen) {
    const KeyEntry* entry = find_key(key);
    if (!entry) {
        throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    if (seen && !seen->insert(key).second) {
        throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
    double v = parse_number(value, line_no);
    if (entry->integral && v != std::floor(v)) {
        throw ConfigError("line " + std::to_string(line_no) + ": key '" + key + "' takes an integer");
    }
    entry->set(config, v);
}

std::string format_double(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void check(std::vector<Violation>& out, bool ok, const std::string& field, const std::string& rule) {
    if (!ok) out.push_back({field, rule});
}

}  // namespace

std::vector<Violation> validate(const ScenarioConfig& c) {
    std::vector<Violation> v;
    check(v, c.area.radius_m > 0, "area.radius_m", "R > 0");
    check(v, c.area.user_density_per_m2 >= 0, "area.user_density_per_m2", "lambda >= 0");
    check(v, c.area.station_distance_m >= 0, "area.station_distance_m", "ell >= 0");

    check(v, c.body.ue_height_m > 0, "body.ue_height_m", "h_U > 0");
    check(v, c.body.blocker_height_m > c.body.ue_height_m, "body.blocker_height_m", "h_B > h_U");
    check(v, c.body.blocker_radius_m > 0, "body.blocker_radius_m", "r_B > 0");
    check(v, c.body.ue_body_distance_m > 0, "body.ue_body_distance_m", "r_U > 0");

    check(v, c.radio.f_c_ghz > 0, "radio.f_c_ghz", "f_C > 0");
    check(v, c.radio.bandwidth_hz > 0, "radio.bandwidth_hz", "B > 0");
    check(v, c.radio.blockage_loss_db >= 0, "radio.blockage_loss_db", "blockage_loss_db >= 0");
    check(v, c.radio.pathloss_exponent > 0, "radio.pathloss_exponent", "gamma > 0");

    check(v, c.fleet.n_drones >= 1, "fleet.n_drones", "N >= 1");
    check(v, c.fleet.n_max >= 1, "fleet.n_max", "n_max >= 1");
    check(v, c.fleet.airborne_height_m > c.body.ue_height_m, "fleet.airborne_height_m", "h_A > h_U");
    check(v, c.fleet.landed_height_m > c.body.ue_height_m, "fleet.landed_height_m", "h_L > h_U");
    check(v, c.fleet.flight_time_h > 0, "fleet.flight_time_h", "T > 0");
    check(v, c.fleet.charge_time_h >= 0, "fleet.charge_time_h", "T_C >= 0");
    check(v, c.fleet.cruise_speed_kmh > 0, "fleet.cruise_speed_kmh", "nu > 0");
    check(v, c.fleet.flight_power_w > 0, "fleet.flight_power_w", "P_E > 0");
    check(v, c.fleet.hover_power_w > 0, "fleet.hover_power_w", "P_H > 0");
    check(v, c.fleet.payload_power_w > 0, "fleet.payload_power_w", "P_T > 0");

    if (c.fleet.flight_time_h > 0 && c.fleet.cruise_speed_kmh > 0) {
        double reach_m = hours_to_seconds(c.fleet.flight_time_h) *
                         kmh_to_mps(c.fleet.cruise_speed_kmh) / 2.0;
        check(v, c.area.station_distance_m < reach_m, "area.station_distance_m",
              "infeasible cycle: 2*ell/nu >= T (ell must be < T*nu/2 = " +
                  format_double(reach_m) + " m)");
    }
    return v;
}

ScenarioConfig parse_config(const std::string& text) {
    ScenarioConfig config;
    std::set<std::string> seen;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        assign(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)), line_no, &seen);
    }
    return config;
}

void apply_override(ScenarioConfig& config, const std::string& assignment) {
    auto eq = assignment.find('=');
    if (eq == std::string::npos) {
        throw ConfigError("override '" + assignment + "': expected key=value");
    }
    assign(config, trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)), 0, nullptr);
}

ScenarioConfig load_config_text(const std::string& text) {
    ScenarioConfig config = parse_config(text);
    auto violations = validate(config);
    if (!violations.empty()) {
        std::string msg = "invalid scenario:";
        for (const auto& vi : violations) msg += "\n  " + vi.field + ": " + vi.rule + " violated";
        throw ValidationError(msg);
    }
    return config;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_config_text(buf.str());
}

std::string serialize(const ScenarioConfig& config) {
    std::string out;
    for (const auto& e : key_table()) {
        out += e.key;
        out += " = ";
        out += format_double(e.get(config));
        out += "\n";
    }
    return out;
}

}  // namespace dronecell
