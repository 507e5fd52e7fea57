#ifndef UGV_RUNNER_HPP_
#define UGV_RUNNER_HPP_

// Headless scripted runs: drives a Session from a timestamped command list
// and records the ground-truth trajectory.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>

#include <fmt/format.h>

#include "ugv/scenario.hpp"
#include "ugv/station.hpp"

namespace ugv {

struct RunOptions {
    std::optional<std::uint64_t> seed;
    ChannelOverrides channel;
    bool invert_turns = false;
};

inline SessionConfig make_session_config(const Scenario& scenario, const RunOptions& options) {
    SessionConfig cfg;
    cfg.scenario = scenario.world;
    cfg.vehicle = scenario.params;
    cfg.initial_battery = scenario.battery_ah;
    scenario.channel.apply_to(cfg.channel);
    options.channel.apply_to(cfg.channel);
    if (scenario.seed) cfg.channel.seed = *scenario.seed;
    if (options.seed) cfg.channel.seed = *options.seed;
    cfg.drive.invert_turns = options.invert_turns;
    cfg.validate();
    return cfg;
}

struct RunReport {
    Pose final_pose;
    double distance_traveled = 0.0; // m
    std::uint64_t commands_sent = 0;
    std::uint64_t commands_decoded = 0;
    std::uint64_t commands_dropped = 0;
    double battery_consumed = 0.0; // Ah
    std::uint64_t led_activations = 0;
    std::uint64_t ticks = 0;
    double simulated_seconds = 0.0;
    double wall_clock_seconds = 0.0;
};

inline constexpr std::string_view kTrajectoryHeader = "t,x,y,theta,battery_ah,relay_mask,obstacle_led\n";

inline std::string trajectory_row(double t, const VehicleState& v, RelayBank relays) {
    return fmt::format("{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},{},{}\n", t, v.pose.x, v.pose.y, v.pose.theta,
                       v.battery_charge, relays.mask(), v.obstacle_led ? 1 : 0);
}

// One trajectory row per tick, written after the tick. Script entries fire on
// the first tick whose start time reaches them.
inline RunReport run_scenario(const SessionConfig& config, std::span<const ScriptEntry> script,
                              double duration, std::ostream* trajectory) {
    if (!(duration > 0.0)) throw ArgumentError("run_scenario: duration must be positive");
    const auto wall_start = std::chrono::steady_clock::now();
    Session session(config);
    const auto ticks = static_cast<std::uint64_t>(std::llround(duration / config.tick));

    RunReport report;
    auto prev = session.snapshot();
    const double battery_start = prev.vehicle.battery_charge;
    bool led = prev.vehicle.obstacle_led;
    std::size_t next = 0;
    if (trajectory) *trajectory << kTrajectoryHeader;

    for (std::uint64_t n = 0; n < ticks; ++n) {
        const double t = static_cast<double>(n) * config.tick;
        while (next < script.size() && script[next].time <= t + 1e-9) {
            session.submit_command(script[next].command);
            ++next;
        }
        session.tick();
        auto snap = session.snapshot();
        report.distance_traveled += std::hypot(snap.vehicle.pose.x - prev.vehicle.pose.x,
                                               snap.vehicle.pose.y - prev.vehicle.pose.y);
        if (snap.vehicle.obstacle_led && !led) ++report.led_activations;
        led = snap.vehicle.obstacle_led;
        if (trajectory) *trajectory << trajectory_row(static_cast<double>(n + 1) * config.tick, snap.vehicle, snap.relays);
        prev = std::move(snap);
    }

    report.final_pose = prev.vehicle.pose;
    report.commands_sent = prev.metrics.sent;
    report.commands_decoded = prev.metrics.decoded;
    report.commands_dropped = prev.metrics.dropped;
    report.battery_consumed = battery_start - prev.vehicle.battery_charge;
    report.ticks = ticks;
    report.simulated_seconds = static_cast<double>(ticks) * config.tick;
    report.wall_clock_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
    return report;
}

// Deterministic summary (no wall-clock time), rounded to 6 decimals.
inline std::string report_json(const RunReport& r) {
    return fmt::format(
        "{{\"final_pose\":{{\"x\":{:.6f},\"y\":{:.6f},\"theta\":{:.6f}}},\"distance_m\":{:.6f},"
        "\"commands_sent\":{},\"commands_decoded\":{},\"commands_dropped\":{},"
        "\"battery_consumed_ah\":{:.6f},\"obstacle_led_activations\":{},\"ticks\":{},"
        "\"simulated_s\":{:.6f}}}",
        r.final_pose.x, r.final_pose.y, r.final_pose.theta, r.distance_traveled, r.commands_sent,
        r.commands_decoded, r.commands_dropped, r.battery_consumed, r.led_activations, r.ticks,
        r.simulated_seconds);
}

} // namespace ugv

#endif
