#ifndef UGV_STATION_HPP_
#define UGV_STATION_HPP_

// Operator-to-vehicle loop: command -> DTMF symbol -> tone frame -> uplink ->
// tone detection -> relay bank / searchlight -> plant step -> telemetry ->
// downlink.

#include <cmath>
#include <cstdint>
#include <deque>
#include <mutex>
#include <optional>

#include "ugv/channel.hpp"
#include "ugv/command.hpp"
#include "ugv/dtmf.hpp"
#include "ugv/relay.hpp"
#include "ugv/vehicle.hpp"

namespace ugv {

struct SessionConfig {
    double tick = 0.01; // s, also the plant dt
    ChannelConfig channel;
    dtmf::Config dtmf;
    VehicleParams vehicle;
    World scenario;
    DriveOptions drive;
    std::optional<double> initial_battery; // Ah; full when unset
    std::uint16_t port = 8765;

    void validate() const {
        if (!(tick > 0.0)) throw ConfigError("tick must be positive");
        channel.validate();
        dtmf.validate();
        vehicle.validate();
        validate_world(scenario, vehicle);
        if (initial_battery && !(*initial_battery >= 0.0 && *initial_battery <= vehicle.battery_capacity)) {
            throw ConfigError("initial battery charge outside [0, capacity]");
        }
    }
};

struct Metrics {
    std::uint64_t sent = 0;
    std::uint64_t decoded = 0;
    std::uint64_t dropped = 0;
    std::uint64_t decode_errors = 0; // symbols outside the command table

    bool balanced() const noexcept { return decoded + dropped + decode_errors <= sent; }
};

struct SessionSnapshot {
    VehicleState vehicle;
    RelayBank relays;
    DriveState drive_target;
    std::size_t pending_audio = 0; // frames still in flight
    std::optional<Command> last_command;
    Metrics metrics;
    std::uint64_t ticks = 0;
    bool running = true;
};

class Session {
public:
    explicit Session(SessionConfig config)
        : config_(std::move(config)),
          uplink_((config_.validate(), config_.channel), LinkDirection::Uplink),
          downlink_(config_.channel, LinkDirection::Downlink),
          decoder_(config_.dtmf),
          samples_per_tick_(static_cast<std::size_t>(std::lround(config_.tick * config_.dtmf.sample_rate))) {
        vehicle_ = initial_state(config_.scenario, config_.vehicle);
        if (config_.initial_battery) vehicle_.battery_charge = *config_.initial_battery;
        vehicle_.obstacle_led = ir_obstacle_check(vehicle_, config_.scenario, config_.vehicle);
    }

    const SessionConfig& config() const noexcept { return config_; }

    // Encodes, synthesizes and hands the frame to the uplink. Returns the
    // local sequence number; the frame may still be lost on the air.
    std::uint64_t submit_command(Command cmd) {
        std::lock_guard lock(mutex_);
        if (!running_) throw SessionError("session stopped");
        const std::uint64_t seq = next_seq_++;
        ++metrics_.sent;
        const auto frame = dtmf::synthesize_symbol(encode_command(cmd), config_.dtmf);
        if (auto delivery = uplink_.send(frame)) {
            in_flight_.push_back({now() + delivery->delay, std::move(delivery->payload)});
        } else {
            ++metrics_.dropped;
        }
        return seq;
    }

    // Advances the loop by one tick. Returns the telemetry frame delivered to
    // the operator during this tick, if any.
    std::optional<TelemetryFrame> tick() {
        std::lock_guard lock(mutex_);
        if (!running_) throw SessionError("session stopped");
        constexpr double kEps = 1e-9;

        const double t0 = now();
        while (!in_flight_.empty() && in_flight_.front().deliver_at <= t0 + kEps) {
            const auto& s = in_flight_.front().frame.samples;
            air_.insert(air_.end(), s.begin(), s.end());
            in_flight_.pop_front();
        }

        chunk_.assign(samples_per_tick_, 0.0);
        const std::size_t take = std::min(samples_per_tick_, air_.size());
        std::copy_n(air_.begin(), take, chunk_.begin());
        air_.erase(air_.begin(), air_.begin() + static_cast<std::ptrdiff_t>(take));
        decoder_.feed(chunk_, [this](dtmf::Symbol sym) { on_symbol(sym); });

        vehicle_ = step(vehicle_, drive_target_, config_.scenario, config_.vehicle, config_.tick);
        ++ticks_;
        vehicle_.time = now();

        TelemetryFrame frame;
        frame.time = vehicle_.time;
        frame.pose = vehicle_.pose;
        frame.relay_mask = relays_.mask();
        frame.drive = vehicle_.drive;
        frame.battery_charge = vehicle_.battery_charge;
        frame.obstacle_led = vehicle_.obstacle_led;
        frame.searchlight_on = vehicle_.searchlight_on;
        frame.camera = render_camera(vehicle_, config_.scenario, config_.vehicle);
        if (auto delivery = downlink_.send(frame, motor_current(vehicle_.drive, config_.vehicle))) {
            downlink_queue_.push_back({vehicle_.time + delivery->delay, std::move(delivery->payload)});
        }

        std::optional<TelemetryFrame> delivered;
        while (!downlink_queue_.empty() && downlink_queue_.front().deliver_at <= vehicle_.time + kEps) {
            delivered = std::move(downlink_queue_.front().frame);
            downlink_queue_.pop_front();
        }
        return delivered;
    }

    SessionSnapshot snapshot() const {
        std::lock_guard lock(mutex_);
        return {vehicle_, relays_, drive_target_, in_flight_.size(), last_command_, metrics_, ticks_, running_};
    }

    double time() const {
        std::lock_guard lock(mutex_);
        return now();
    }

    void stop() {
        std::lock_guard lock(mutex_);
        running_ = false;
    }

    bool running() const {
        std::lock_guard lock(mutex_);
        return running_;
    }

private:
    struct InFlightAudio {
        double deliver_at;
        dtmf::ToneFrame frame;
    };
    struct InFlightTelemetry {
        double deliver_at;
        TelemetryFrame frame;
    };

    double now() const noexcept { return static_cast<double>(ticks_) * config_.tick; }

    void on_symbol(dtmf::Symbol sym) {
        const auto cmd = decode_command(sym);
        if (!cmd) {
            ++metrics_.decode_errors;
            return;
        }
        ++metrics_.decoded;
        last_command_ = *cmd;
        if (is_navigation(*cmd)) {
            relays_ = command_to_relays(*cmd, config_.drive);
            drive_target_ = relays_to_motors(relays_);
        } else {
            vehicle_ = apply_searchlight(vehicle_, *cmd);
        }
    }

    SessionConfig config_;
    Link uplink_;
    Link downlink_;
    dtmf::StreamDecoder decoder_;
    std::size_t samples_per_tick_;

    mutable std::mutex mutex_;
    VehicleState vehicle_;
    RelayBank relays_;
    DriveState drive_target_;
    std::deque<InFlightAudio> in_flight_;
    std::deque<double> air_;
    std::vector<double> chunk_;
    std::deque<InFlightTelemetry> downlink_queue_;
    Metrics metrics_;
    std::optional<Command> last_command_;
    std::uint64_t next_seq_ = 1;
    std::uint64_t ticks_ = 0;
    bool running_ = true;
};

} // namespace ugv

#endif
