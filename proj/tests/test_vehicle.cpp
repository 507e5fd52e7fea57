#include <gtest/gtest.h>

#include <numbers>

#include "oracles.hpp"
#include "ugv/vehicle.hpp"

using namespace ugv;
using M = MotorState;

namespace {

World open_world() {
    World w;
    w.bounds = {100.0, 100.0};
    w.start_pose = {50.0, 50.0, 0.0};
    return w;
}

// Obstacle whose nearest edge is `gap` metres from the sensor along bearing.
Circle obstacle_at(const VehicleState& s, const VehicleParams& p, double gap, double bearing, double r = 0.1) {
    const Pose o = sensor_origin(s.pose, p);
    const double d = gap + r;
    return {o.x + d * std::cos(o.theta + bearing), o.y + d * std::sin(o.theta + bearing), r};
}

} // namespace

TEST(VehicleParams, HardwareDefaults) {
    const VehicleParams p;
    EXPECT_EQ(p.gear_ratio, 10.0);
    EXPECT_EQ(p.supply_voltage, 12.0);
    EXPECT_EQ(p.motor_max_current, 2.0);
    EXPECT_EQ(p.battery_capacity, 7.0);
    EXPECT_EQ(p.ir_range, 0.61);
    EXPECT_NO_THROW(p.validate());
    VehicleParams bad;
    bad.wheel_radius = 0.0;
    EXPECT_THROW(bad.validate(), ConfigError);
}

TEST(Step, SteadyForwardAdvancesClosedForm) {
    VehicleParams p;
    p.motor_no_load_speed = 120.0; // wheel 12.0 rad/s
    const World w = open_world();
    VehicleState s = initial_state(w, p);
    s.wheel_speed_left = s.wheel_speed_right = 12.0;
    const double x0 = s.pose.x;
    for (int i = 0; i < 100; ++i) s = step(s, {M::Forward, M::Forward}, w, p, 0.01);
    EXPECT_NEAR(s.pose.x - x0, 0.60, 1e-9); // v = r * omega = 0.05 * 12
    EXPECT_NEAR(s.pose.y, 50.0, 1e-9);
    EXPECT_NEAR(s.pose.theta, 0.0, 1e-9);
    EXPECT_NEAR(s.time, 1.0, 1e-12);
}

TEST(Step, SpinTurnKeepsCentreFixed) {
    const VehicleParams p;
    const World w = open_world();
    VehicleState s = initial_state(w, p);
    double turned = 0.0;
    for (int i = 0; i < 2000; ++i) {
        const double before = s.pose.theta;
        s = step(s, {M::Forward, M::Reverse}, w, p, 0.01);
        turned += normalize_angle(s.pose.theta - before);
    }
    EXPECT_LT(turned, -std::numbers::pi); // clockwise
    EXPECT_LE(std::hypot(s.pose.x - 50.0, s.pose.y - 50.0), 1e-6);
}

TEST(Step, IdleIsStationary) {
    const VehicleParams p;
    const World w = open_world();
    const VehicleState s0 = initial_state(w, p);
    const VehicleState s1 = step(s0, {}, w, p, 0.01);
    EXPECT_EQ(s1.pose, s0.pose);
    EXPECT_EQ(s1.battery_charge, s0.battery_charge);
    EXPECT_DOUBLE_EQ(s1.time, 0.01);
}

TEST(Step, RejectsNonPositiveDt) {
    const VehicleParams p;
    const World w = open_world();
    EXPECT_THROW(step(initial_state(w, p), {}, w, p, 0.0), ArgumentError);
    EXPECT_THROW(step(initial_state(w, p), {}, w, p, -0.01), ArgumentError);
}

TEST(Step, StraightLineHeadingIsExactlyConstant) {
    const VehicleParams p;
    World w = open_world();
    w.start_pose = {10.0, 10.0, 0.7};
    VehicleState s = initial_state(w, p);
    const double h0 = s.pose.theta;
    for (int i = 0; i < 1000; ++i) {
        s = step(s, {M::Reverse, M::Reverse}, w, p, 0.01);
        ASSERT_EQ(s.pose.theta, h0);
    }
}

TEST(Step, SpinUpFollowsFirstOrderLag) {
    const VehicleParams p;
    const World w = open_world();
    VehicleState s = initial_state(w, p);
    for (int i = 0; i < 300; ++i) s = step(s, {M::Forward, M::Forward}, w, p, 0.01);
    const double v = p.wheel_radius * p.wheel_top_speed();
    // Euler discretisation of the lag stays within 1% of the continuous integral.
    EXPECT_NEAR(s.pose.x - 50.0, oracle::lag_distance(v, p.motor_time_constant, 3.0),
                0.01 * oracle::lag_distance(v, p.motor_time_constant, 3.0));
    EXPECT_NEAR(s.wheel_speed_left, p.wheel_top_speed(), 1e-3);
}

TEST(Step, BatteryDrainAndCutoff) {
    VehicleParams p;
    const World w = open_world();
    VehicleState s = initial_state(w, p);
    s.battery_charge = 1.75 * 0.02 / 3600.0; // two ticks of two-motor drive
    s = step(s, {M::Forward, M::Reverse}, w, p, 0.01);
    EXPECT_GT(s.battery_charge, 0.0);
    s = step(s, {M::Forward, M::Reverse}, w, p, 0.01);
    s = step(s, {M::Forward, M::Reverse}, w, p, 0.01);
    EXPECT_EQ(s.battery_charge, 0.0);
    EXPECT_EQ(s.drive, DriveState{});
    for (int i = 0; i < 500; ++i) s = step(s, {M::Forward, M::Forward}, w, p, 0.01);
    EXPECT_EQ(s.drive, DriveState{});
    EXPECT_NEAR(s.wheel_speed_left, 0.0, 1e-6);
    EXPECT_EQ(s.battery_charge, 0.0);
}

TEST(Step, EnergyLedgerMatchesCurrentIntegral) {
    const VehicleParams p;
    const World w = open_world();
    VehicleState s = initial_state(w, p);
    double expected = 0.0;
    const DriveState pattern[] = {{M::Forward, M::Forward}, {M::Off, M::Reverse}, {}, {M::Reverse, M::Forward}};
    for (int i = 0; i < 4000; ++i) {
        const auto target = pattern[(i / 250) % 4];
        s = step(s, target, w, p, 0.01);
        expected += motor_current(target, p) * 0.01 / 3600.0;
        ASSERT_GE(s.battery_charge, 0.0);
        ASSERT_LE(s.battery_charge, p.battery_capacity);
    }
    EXPECT_NEAR(p.battery_capacity - s.battery_charge, expected, 1.75 * 0.01 / 3600.0);
}

TEST(Step, BlocksAtObstacleAndBounds) {
    const VehicleParams p;
    World w;
    w.bounds = {4.0, 4.0};
    w.start_pose = {1.0, 2.0, 0.0};
    w.obstacles.push_back({3.0, 2.0, 0.3});
    VehicleState s = initial_state(w, p);
    for (int i = 0; i < 1000; ++i) {
        s = step(s, {M::Forward, M::Forward}, w, p, 0.01);
        ASSERT_FALSE(collides(s.pose, w, p));
    }
    EXPECT_LT(s.pose.x, 3.0 - 0.3 - p.collision_radius + 1e-9);
    EXPECT_GT(s.pose.x, 2.3); // got close before stopping
    EXPECT_TRUE(s.obstacle_led);

    w.obstacles.clear();
    s = initial_state(w, p);
    for (int i = 0; i < 1000; ++i) s = step(s, {M::Reverse, M::Reverse}, w, p, 0.01);
    EXPECT_GE(s.pose.x, p.collision_radius);
}

TEST(Step, Deterministic) {
    const VehicleParams p;
    World w = open_world();
    w.obstacles.push_back({53.0, 50.5, 0.4});
    auto run = [&] {
        VehicleState s = initial_state(w, p);
        std::vector<Pose> poses;
        for (int i = 0; i < 800; ++i) {
            s = step(s, i < 400 ? DriveState{M::Forward, M::Forward} : DriveState{M::Reverse, M::Forward}, w, p, 0.01);
            poses.push_back(s.pose);
        }
        return poses;
    };
    EXPECT_EQ(run(), run());
}

TEST(IrSensor, TwoFootBoundary) {
    const VehicleParams p;
    World w = open_world();
    const VehicleState s = initial_state(w, p);
    w.obstacles = {obstacle_at(s, p, 0.50, 0.0)};
    EXPECT_TRUE(ir_obstacle_check(s, w, p));
    w.obstacles = {obstacle_at(s, p, 0.60, 0.0)};
    EXPECT_TRUE(ir_obstacle_check(s, w, p));
    w.obstacles = {obstacle_at(s, p, 0.62, 0.0)};
    EXPECT_FALSE(ir_obstacle_check(s, w, p));
    w.obstacles = {obstacle_at(s, p, 1.00, 0.0)};
    EXPECT_FALSE(ir_obstacle_check(s, w, p));
}

TEST(IrSensor, ConeExcludesBehindAndSides) {
    const VehicleParams p;
    World w = open_world();
    const VehicleState s = initial_state(w, p);
    // Directly behind the vehicle, 0.5 m past the rear.
    w.obstacles = {{50.0 - p.body_length / 2.0 - 0.5 - 0.1, 50.0, 0.1}};
    EXPECT_FALSE(ir_obstacle_check(s, w, p));
    w.obstacles = {obstacle_at(s, p, 0.3, deg_to_rad(14.0))};
    EXPECT_TRUE(ir_obstacle_check(s, w, p));
    w.obstacles = {obstacle_at(s, p, 0.3, deg_to_rad(16.0))};
    EXPECT_FALSE(ir_obstacle_check(s, w, p));
}

TEST(Searchlight, ToggleAndIdempotence) {
    VehicleState s;
    s = apply_searchlight(s, Command::SearchlightOn);
    EXPECT_TRUE(s.searchlight_on);
    s = apply_searchlight(s, Command::SearchlightOn);
    EXPECT_TRUE(s.searchlight_on);
    s = apply_searchlight(s, Command::SearchlightOff);
    EXPECT_FALSE(s.searchlight_on);
    EXPECT_THROW(apply_searchlight(s, Command::Forward), ArgumentError);
}

TEST(Camera, DaylightSighting) {
    const VehicleParams p;
    World w = open_world();
    const VehicleState s = initial_state(w, p);
    const Pose cam = sensor_origin(s.pose, p);
    w.obstacles = {{cam.x + 2.0, cam.y, 0.2}};
    const auto seen = render_camera(s, w, p);
    ASSERT_EQ(seen.size(), 1u);
    EXPECT_NEAR(seen[0].bearing, 0.0, 1e-12);
    EXPECT_NEAR(seen[0].distance, 2.0, 1e-12);
}

TEST(Camera, DarkWithoutSearchlightSeesNothing) {
    const VehicleParams p;
    World w = open_world();
    w.ambient_light = 0.0;
    VehicleState s = initial_state(w, p);
    const Pose cam = sensor_origin(s.pose, p);
    w.obstacles = {{cam.x + 2.0, cam.y, 0.2}, {cam.x + 0.3, cam.y + 0.05, 0.05}, {cam.x + 4.0, cam.y + 1.0, 0.2}};
    EXPECT_TRUE(render_camera(s, w, p).empty());

    s.searchlight_on = true;
    const auto lit = render_camera(s, w, p);
    // The 4 m obstacle is beyond the 3 m searchlight range.
    EXPECT_EQ(lit.size(), 2u);
}

TEST(Camera, SearchlightConeNarrowerThanFov) {
    VehicleParams p;
    p.searchlight_half_angle = deg_to_rad(10.0);
    World w = open_world();
    w.ambient_light = 0.0;
    VehicleState s = initial_state(w, p);
    s.searchlight_on = true;
    const Pose cam = sensor_origin(s.pose, p);
    const double b = deg_to_rad(20.0);
    w.obstacles = {{cam.x + 2.0 * std::cos(b), cam.y + 2.0 * std::sin(b), 0.1}};
    EXPECT_TRUE(render_camera(s, w, p).empty()); // in the FOV, outside the beam
    w.ambient_light = 0.5;                       // 2.5 m of daylight range
    EXPECT_EQ(render_camera(s, w, p).size(), 1u);
}

TEST(Camera, SightingsRespectRangeAndFov) {
    const VehicleParams p;
    World w = open_world();
    w.ambient_light = 0.6;
    const VehicleState s = initial_state(w, p);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(5.0, 95.0);
    for (int i = 0; i < 200; ++i) w.obstacles.push_back({u(rng) * 0.1 + 47.0, u(rng) * 0.1 + 45.5, 0.05});
    for (const auto& sgt : render_camera(s, w, p)) {
        EXPECT_LE(std::abs(sgt.bearing), p.camera_fov_half_angle);
        EXPECT_LE(sgt.distance, p.camera_day_range * w.ambient_light);
    }
}

TEST(World, Validation) {
    const VehicleParams p;
    World w = open_world();
    w.ambient_light = 1.5;
    EXPECT_THROW(validate_world(w, p), ConfigError);
    w = open_world();
    w.obstacles.push_back({99.95, 50.0, 0.1});
    EXPECT_THROW(validate_world(w, p), ConfigError);
    w = open_world();
    w.obstacles.push_back({50.1, 50.0, 0.1});
    EXPECT_THROW(validate_world(w, p), ConfigError);
    EXPECT_NO_THROW(validate_world(open_world(), p));
}

TEST(Angles, NormalizedHalfOpen) {
    EXPECT_DOUBLE_EQ(normalize_angle(-std::numbers::pi), std::numbers::pi);
    EXPECT_DOUBLE_EQ(normalize_angle(std::numbers::pi), std::numbers::pi);
    EXPECT_NEAR(normalize_angle(3 * std::numbers::pi / 2), -std::numbers::pi / 2, 1e-12);
}
