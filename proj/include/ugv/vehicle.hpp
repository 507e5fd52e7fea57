#ifndef UGV_VEHICLE_HPP_
#define UGV_VEHICLE_HPP_

// Fixed-step plant model: first-order motor lag, skid-steer kinematics with
// explicit Euler integration, battery drain, IR proximity detector, IR
// searchlight and camera visibility.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "ugv/command.hpp"
#include "ugv/errors.hpp"
#include "ugv/relay.hpp"

namespace ugv {

struct Pose {
    double x = 0.0;
    double y = 0.0;
    double theta = 0.0; // rad, (-pi, pi]
    friend bool operator==(const Pose&, const Pose&) = default;
};

struct Circle {
    double x = 0.0;
    double y = 0.0;
    double r = 0.0;
};

inline double normalize_angle(double a) noexcept {
    double out = std::remainder(a, 2.0 * std::numbers::pi);
    if (out <= -std::numbers::pi) out += 2.0 * std::numbers::pi;
    return out;
}

inline double deg_to_rad(double deg) noexcept { return deg * std::numbers::pi / 180.0; }

struct VehicleParams {
    double track_width = 0.30;           // m
    double wheel_radius = 0.05;          // m
    double gear_ratio = 10.0;            // motor : wheel
    double motor_no_load_speed = 125.7;  // rad/s at the motor shaft
    double motor_time_constant = 0.2;    // s
    double supply_voltage = 12.0;        // V
    double motor_max_current = 2.0;      // A
    double motor_cruise_current = 0.875; // A per driving motor
    double battery_capacity = 7.0;       // Ah
    double ir_range = 0.61;              // m
    double ir_half_angle = deg_to_rad(15.0);
    double searchlight_range = 3.0;      // m
    double searchlight_half_angle = deg_to_rad(30.0);
    double camera_fov_half_angle = deg_to_rad(30.0);
    double camera_day_range = 5.0;       // m
    double body_length = 0.40;           // m; sensors sit at the front centre
    double collision_radius = 0.25;      // m

    double wheel_top_speed() const noexcept { return motor_no_load_speed / gear_ratio; }

    void validate() const {
        const double values[] = {track_width,         wheel_radius,          gear_ratio,
                                 motor_no_load_speed, motor_time_constant,   supply_voltage,
                                 motor_max_current,   motor_cruise_current,  battery_capacity,
                                 ir_range,            ir_half_angle,         searchlight_range,
                                 searchlight_half_angle, camera_fov_half_angle, camera_day_range,
                                 body_length,         collision_radius};
        for (double v : values) {
            if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("vehicle parameters must be positive");
        }
        if (motor_cruise_current > motor_max_current) {
            throw ConfigError("motor_cruise_current exceeds motor_max_current");
        }
    }
};

// Axis-aligned field [0, width] x [0, height].
struct Bounds {
    double width = 20.0;
    double height = 20.0;
};

struct World {
    Bounds bounds;
    std::vector<Circle> obstacles;
    double ambient_light = 1.0;
    Pose start_pose{1.0, 1.0, 0.0};
};

inline bool collides(const Pose& pose, const World& world, const VehicleParams& params) noexcept {
    const double cr = params.collision_radius;
    if (pose.x - cr < 0.0 || pose.y - cr < 0.0 || pose.x + cr > world.bounds.width ||
        pose.y + cr > world.bounds.height) {
        return true;
    }
    for (const auto& o : world.obstacles) {
        if (std::hypot(pose.x - o.x, pose.y - o.y) < cr + o.r) return true;
    }
    return false;
}

inline void validate_world(const World& world, const VehicleParams& params) {
    if (!(world.bounds.width > 0.0) || !(world.bounds.height > 0.0)) {
        throw ConfigError("world bounds must be positive");
    }
    if (!(world.ambient_light >= 0.0 && world.ambient_light <= 1.0)) {
        throw ConfigError("ambient_light must lie in [0, 1]");
    }
    for (const auto& o : world.obstacles) {
        if (!(o.r > 0.0)) throw ConfigError("obstacle radius must be positive");
        if (o.x - o.r < 0.0 || o.y - o.r < 0.0 || o.x + o.r > world.bounds.width ||
            o.y + o.r > world.bounds.height) {
            throw ConfigError("obstacle lies outside world bounds");
        }
    }
    if (collides(world.start_pose, world, params)) {
        throw ConfigError("start pose intersects an obstacle or the boundary");
    }
}

struct VehicleState {
    double time = 0.0;
    Pose pose;
    double wheel_speed_left = 0.0;  // rad/s at the wheel
    double wheel_speed_right = 0.0;
    DriveState drive;
    bool searchlight_on = false;
    double battery_charge = 0.0;    // Ah
    bool obstacle_led = false;
};

struct Sighting {
    double bearing = 0.0;  // rad, relative to heading
    double distance = 0.0; // m, camera to obstacle centre
};

struct TelemetryFrame {
    double time = 0.0;
    Pose pose;
    std::uint8_t relay_mask = 0;
    DriveState drive;
    double battery_charge = 0.0;
    bool obstacle_led = false;
    bool searchlight_on = false;
    std::vector<Sighting> camera;
    double camera_noise_sigma = 0.0;
};

inline Pose sensor_origin(const Pose& pose, const VehicleParams& params) noexcept {
    const double half = params.body_length / 2.0;
    return {pose.x + half * std::cos(pose.theta), pose.y + half * std::sin(pose.theta), pose.theta};
}

inline bool ir_obstacle_check(const VehicleState& state, const World& world,
                              const VehicleParams& params) noexcept {
    const Pose s = sensor_origin(state.pose, params);
    for (const auto& o : world.obstacles) {
        const double dx = o.x - s.x;
        const double dy = o.y - s.y;
        const double centre = std::hypot(dx, dy);
        if (centre <= o.r) return true;
        if (centre - o.r > params.ir_range) continue;
        // The nearest point of a circle lies on the ray towards its centre.
        const double bearing = normalize_angle(std::atan2(dy, dx) - s.theta);
        if (std::abs(bearing) <= params.ir_half_angle) return true;
    }
    return false;
}

inline VehicleState apply_searchlight(VehicleState state, Command cmd) {
    switch (cmd) {
    case Command::SearchlightOn: state.searchlight_on = true; return state;
    case Command::SearchlightOff: state.searchlight_on = false; return state;
    default:
        throw ArgumentError("apply_searchlight: " + std::string(variant_name(cmd)) +
                            " is a navigation command");
    }
}

inline std::vector<Sighting> render_camera(const VehicleState& state, const World& world,
                                           const VehicleParams& params) {
    const Pose cam = sensor_origin(state.pose, params);
    const double day_range = params.camera_day_range * world.ambient_light;
    std::vector<Sighting> out;
    for (const auto& o : world.obstacles) {
        const double dx = o.x - cam.x;
        const double dy = o.y - cam.y;
        const double distance = std::hypot(dx, dy);
        const double bearing = normalize_angle(std::atan2(dy, dx) - cam.theta);
        if (std::abs(bearing) > params.camera_fov_half_angle) continue;
        double range = day_range;
        if (state.searchlight_on && std::abs(bearing) <= params.searchlight_half_angle) {
            range = std::max(range, params.searchlight_range);
        }
        if (range > 0.0 && distance <= range) out.push_back({bearing, distance});
    }
    return out;
}

constexpr int active_motors(DriveState drive) noexcept {
    return (drive.left != MotorState::Off ? 1 : 0) + (drive.right != MotorState::Off ? 1 : 0);
}

inline double motor_current(DriveState drive, const VehicleParams& params) noexcept {
    return params.motor_cruise_current * active_motors(drive);
}

inline VehicleState initial_state(const World& world, const VehicleParams& params) {
    VehicleState s;
    s.pose = world.start_pose;
    s.pose.theta = normalize_angle(s.pose.theta);
    s.battery_charge = params.battery_capacity;
    return s;
}

namespace detail {

inline double wheel_target(MotorState m, double top) noexcept {
    switch (m) {
    case MotorState::Forward: return top;
    case MotorState::Reverse: return -top;
    case MotorState::Off: return 0.0;
    }
    return 0.0;
}

} // namespace detail

inline VehicleState step(const VehicleState& state, DriveState target, const World& world,
                         const VehicleParams& params, double dt) {
    if (!(dt > 0.0)) throw ArgumentError("step: dt must be positive");

    VehicleState next = state;
    next.drive = state.battery_charge > 0.0 ? target : DriveState{};

    const double top = params.wheel_top_speed();
    const double alpha = std::min(1.0, dt / params.motor_time_constant);
    next.wheel_speed_left += (detail::wheel_target(next.drive.left, top) - next.wheel_speed_left) * alpha;
    next.wheel_speed_right += (detail::wheel_target(next.drive.right, top) - next.wheel_speed_right) * alpha;

    const double v = params.wheel_radius * (next.wheel_speed_left + next.wheel_speed_right) / 2.0;
    const double omega =
        params.wheel_radius * (next.wheel_speed_right - next.wheel_speed_left) / params.track_width;

    Pose moved{state.pose.x + v * std::cos(state.pose.theta) * dt,
               state.pose.y + v * std::sin(state.pose.theta) * dt,
               normalize_angle(state.pose.theta + omega * dt)};
    if (collides(moved, world, params)) {
        next.wheel_speed_left = 0.0;
        next.wheel_speed_right = 0.0;
    } else {
        next.pose = moved;
    }

    const double drawn_ah = motor_current(next.drive, params) * dt / 3600.0;
    next.battery_charge = std::clamp(state.battery_charge - drawn_ah, 0.0, params.battery_capacity);
    if (next.battery_charge <= 0.0) next.drive = DriveState{};

    next.time = state.time + dt;
    next.obstacle_led = ir_obstacle_check(next, world, params);
    return next;
}

} // namespace ugv

#endif
