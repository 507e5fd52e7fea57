#ifndef UGV_WIRE_HPP_
#define UGV_WIRE_HPP_

// Newline-delimited JSON messages between the station and its clients.
// Unknown fields are ignored in both directions.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include <nlohmann/json.hpp>

#include "ugv/command.hpp"
#include "ugv/station.hpp"

namespace ugv::wire {

using nlohmann::json;

inline json telemetry_json(const TelemetryFrame& f) {
    json camera = json::array();
    for (const auto& s : f.camera) camera.push_back({{"bearing", s.bearing}, {"distance", s.distance}});
    return {
        {"type", "telemetry"},
        {"t", f.time},
        {"pose", {{"x", f.pose.x}, {"y", f.pose.y}, {"theta", f.pose.theta}}},
        {"relay_mask", f.relay_mask},
        {"drive", {motor_token(f.drive.left), motor_token(f.drive.right)}},
        {"battery_ah", f.battery_charge},
        {"obstacle_led", f.obstacle_led},
        {"searchlight", f.searchlight_on},
        {"camera", std::move(camera)},
        {"noise_sigma", f.camera_noise_sigma},
    };
}

inline MotorState parse_motor_token(std::string_view token) {
    if (token == "fwd") return MotorState::Forward;
    if (token == "rev") return MotorState::Reverse;
    if (token == "off") return MotorState::Off;
    throw InputError("unknown drive token: " + std::string(token));
}

// Client-side decoding of a telemetry message; throws InputError on missing fields.
inline TelemetryFrame parse_telemetry(const json& j) {
    try {
        TelemetryFrame f;
        f.time = j.at("t").get<double>();
        const auto& pose = j.at("pose");
        f.pose = {pose.at("x").get<double>(), pose.at("y").get<double>(), pose.at("theta").get<double>()};
        f.relay_mask = j.at("relay_mask").get<std::uint8_t>();
        const auto& drive = j.at("drive");
        f.drive = {parse_motor_token(drive.at(0).get<std::string>()),
                   parse_motor_token(drive.at(1).get<std::string>())};
        f.battery_charge = j.at("battery_ah").get<double>();
        f.obstacle_led = j.at("obstacle_led").get<bool>();
        f.searchlight_on = j.at("searchlight").get<bool>();
        for (const auto& s : j.at("camera")) {
            f.camera.push_back({s.at("bearing").get<double>(), s.at("distance").get<double>()});
        }
        f.camera_noise_sigma = j.at("noise_sigma").get<double>();
        return f;
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed telemetry: ") + e.what());
    }
}

inline json ack_json(std::uint64_t seq) { return {{"type", "ack"}, {"seq", seq}}; }

inline json error_json(std::string_view message) { return {{"type", "error"}, {"message", message}}; }

inline json config_json(const SessionConfig& c) {
    json obstacles = json::array();
    for (const auto& o : c.scenario.obstacles) obstacles.push_back({{"x", o.x}, {"y", o.y}, {"r", o.r}});
    const auto& v = c.vehicle;
    return {
        {"type", "config"},
        {"tick", c.tick},
        {"port", c.port},
        {"channel",
         {{"latency_s", c.channel.latency},
          {"drop_probability", c.channel.drop_probability},
          {"snr_db", std::isfinite(c.channel.snr_db) ? json(c.channel.snr_db) : json(nullptr)},
          {"video_noise_gain", c.channel.video_noise_gain},
          {"seed", c.channel.seed}}},
        {"dtmf",
         {{"sample_rate", c.dtmf.sample_rate},
          {"symbol_duration", c.dtmf.symbol_duration},
          {"gap_duration", c.dtmf.gap_duration},
          {"amplitude", c.dtmf.amplitude},
          {"detect_window", c.dtmf.detect_window},
          {"power_ratio_threshold", c.dtmf.power_ratio_threshold},
          {"twist_limit_db", c.dtmf.twist_limit_db}}},
        {"vehicle",
         {{"track_width", v.track_width},
          {"wheel_radius", v.wheel_radius},
          {"gear_ratio", v.gear_ratio},
          {"battery_capacity", v.battery_capacity},
          {"ir_range", v.ir_range},
          {"camera_fov_half_angle", v.camera_fov_half_angle}}},
        {"scenario",
         {{"bounds", {{"w", c.scenario.bounds.width}, {"h", c.scenario.bounds.height}}},
          {"obstacles", std::move(obstacles)},
          {"ambient_light", c.scenario.ambient_light}}},
        {"invert_turns", c.drive.invert_turns},
    };
}

inline json command_json(Command cmd) { return {{"type", "command"}, {"name", wire_name(cmd)}}; }

struct CommandRequest {
    Command command;
};
struct ConfigRequest {};
struct Ignored {};
struct Malformed {
    std::string reason;
};

using ClientMessage = std::variant<CommandRequest, ConfigRequest, Ignored, Malformed>;

// Station-side decoding of one client line. Unknown message types are ignored.
inline ClientMessage parse_client_line(std::string_view line) {
    const auto j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) return Malformed{"not a JSON object"};
    const auto type = j.find("type");
    if (type == j.end() || !type->is_string()) return Malformed{"missing type"};
    const auto& t = type->get_ref<const std::string&>();
    if (t == "config_get") return ConfigRequest{};
    if (t != "command") return Ignored{};
    const auto name = j.find("name");
    if (name == j.end() || !name->is_string()) return Malformed{"command without name"};
    const auto& text = name->get_ref<const std::string&>();
    for (Command c : kAllCommands) {
        if (wire_name(c) == text) return CommandRequest{c};
    }
    return Malformed{"unknown command name: " + text};
}

} // namespace ugv::wire

#endif
