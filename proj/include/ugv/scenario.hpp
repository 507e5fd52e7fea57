#ifndef UGV_SCENARIO_HPP_
#define UGV_SCENARIO_HPP_

// Scenario JSON:
//   {"bounds":{"w":..,"h":..}, "obstacles":[{"x","y","r"}], "ambient_light":..,
//    "start_pose":{"x","y","theta"}, "battery_ah":.., "params":{..}, "seed":..,
//    "channel":{"snr_db","drop_probability","latency_s","video_noise_gain"}}
//
// Command script CSV: "time_s,command" rows, optional header, '#' comments.

#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ugv/channel.hpp"
#include "ugv/command.hpp"
#include "ugv/errors.hpp"
#include "ugv/vehicle.hpp"

namespace ugv {

struct ChannelOverrides {
    std::optional<double> snr_db;
    std::optional<double> drop_probability;
    std::optional<double> latency;
    std::optional<double> video_noise_gain;

    void apply_to(ChannelConfig& c) const {
        if (snr_db) c.snr_db = *snr_db;
        if (drop_probability) c.drop_probability = *drop_probability;
        if (latency) c.latency = *latency;
        if (video_noise_gain) c.video_noise_gain = *video_noise_gain;
    }
};

struct Scenario {
    World world;
    VehicleParams params;
    std::optional<double> battery_ah;
    std::optional<std::uint64_t> seed;
    ChannelOverrides channel;
};

struct ScriptEntry {
    double time = 0.0;
    Command command = Command::Stop;
};

namespace detail {

inline double& param_field(VehicleParams& p, const std::string& key) {
    static const std::map<std::string, double VehicleParams::*> fields{
        {"track_width", &VehicleParams::track_width},
        {"wheel_radius", &VehicleParams::wheel_radius},
        {"gear_ratio", &VehicleParams::gear_ratio},
        {"motor_no_load_speed", &VehicleParams::motor_no_load_speed},
        {"motor_time_constant", &VehicleParams::motor_time_constant},
        {"supply_voltage", &VehicleParams::supply_voltage},
        {"motor_max_current", &VehicleParams::motor_max_current},
        {"motor_cruise_current", &VehicleParams::motor_cruise_current},
        {"battery_capacity", &VehicleParams::battery_capacity},
        {"ir_range", &VehicleParams::ir_range},
        {"ir_half_angle", &VehicleParams::ir_half_angle},
        {"searchlight_range", &VehicleParams::searchlight_range},
        {"searchlight_half_angle", &VehicleParams::searchlight_half_angle},
        {"camera_fov_half_angle", &VehicleParams::camera_fov_half_angle},
        {"camera_day_range", &VehicleParams::camera_day_range},
        {"body_length", &VehicleParams::body_length},
        {"collision_radius", &VehicleParams::collision_radius},
    };
    const auto it = fields.find(key);
    if (it == fields.end()) throw InputError("unknown vehicle parameter: " + key);
    return p.*(it->second);
}

} // namespace detail

inline Scenario parse_scenario(const nlohmann::json& j) {
    Scenario sc;
    try {
        if (!j.is_object()) throw InputError("scenario must be a JSON object");
        if (j.contains("bounds")) {
            sc.world.bounds = {j["bounds"].at("w").get<double>(), j["bounds"].at("h").get<double>()};
        }
        if (j.contains("obstacles")) {
            for (const auto& o : j["obstacles"]) {
                sc.world.obstacles.push_back({o.at("x").get<double>(), o.at("y").get<double>(),
                                              o.at("r").get<double>()});
            }
        }
        sc.world.ambient_light = j.value("ambient_light", 1.0);
        if (j.contains("start_pose")) {
            const auto& p = j["start_pose"];
            sc.world.start_pose = {p.at("x").get<double>(), p.at("y").get<double>(),
                                   p.value("theta", 0.0)};
        }
        if (j.contains("params")) {
            for (const auto& [key, value] : j["params"].items()) {
                detail::param_field(sc.params, key) = value.get<double>();
            }
        }
        if (j.contains("battery_ah")) sc.battery_ah = j["battery_ah"].get<double>();
        if (j.contains("seed")) sc.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("channel")) {
            const auto& c = j["channel"];
            if (c.contains("snr_db")) sc.channel.snr_db = c["snr_db"].get<double>();
            if (c.contains("drop_probability")) sc.channel.drop_probability = c["drop_probability"].get<double>();
            if (c.contains("latency_s")) sc.channel.latency = c["latency_s"].get<double>();
            if (c.contains("video_noise_gain")) sc.channel.video_noise_gain = c["video_noise_gain"].get<double>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed scenario: ") + e.what());
    }
    try {
        sc.params.validate();
        validate_world(sc.world, sc.params);
    } catch (const ConfigError& e) {
        throw InputError(std::string("invalid scenario: ") + e.what());
    }
    return sc;
}

inline Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open scenario " + path);
    const auto j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded()) throw InputError("scenario " + path + " is not valid JSON");
    return parse_scenario(j);
}

inline std::vector<ScriptEntry> parse_script(std::istream& in) {
    std::vector<ScriptEntry> out;
    std::string line;
    int lineno = 0;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line.front() == '#') continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw InputError("script line " + std::to_string(lineno) + ": expected time_s,command");
        }
        const auto time_text = trim(line.substr(0, comma));
        const auto cmd_text = trim(line.substr(comma + 1));
        if (out.empty() && time_text == "time_s") continue;
        ScriptEntry entry;
        std::size_t used = 0;
        try {
            entry.time = std::stod(time_text, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != time_text.size() || !(entry.time >= 0.0)) {
            throw InputError("script line " + std::to_string(lineno) + ": bad time '" + time_text + "'");
        }
        const auto cmd = parse_command(cmd_text);
        if (!cmd) throw InputError("script line " + std::to_string(lineno) + ": unknown command '" + cmd_text + "'");
        entry.command = *cmd;
        if (!out.empty() && entry.time < out.back().time) {
            throw InputError("script line " + std::to_string(lineno) + ": times must be non-decreasing");
        }
        out.push_back(entry);
    }
    return out;
}

inline std::vector<ScriptEntry> load_script(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open script " + path);
    return parse_script(in);
}

} // namespace ugv

#endif
