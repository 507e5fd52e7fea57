#ifndef UGV_CHANNEL_HPP_
#define UGV_CHANNEL_HPP_

// Phenomenological RF links: whole-message drops, fixed latency, AWGN on the
// command audio and motor-current-proportional jitter on camera sightings.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>

#include "ugv/dtmf.hpp"
#include "ugv/errors.hpp"
#include "ugv/vehicle.hpp"

namespace ugv {

struct ChannelConfig {
    double latency = 0.050;          // s
    double drop_probability = 0.01;
    double snr_db = 25.0;            // +inf disables audio noise
    double video_noise_gain = 0.05;  // sigma per ampere of motor current
    std::uint64_t seed = 1;

    void validate() const {
        if (!(drop_probability >= 0.0 && drop_probability <= 1.0)) {
            throw ConfigError("drop_probability must lie in [0, 1]");
        }
        if (!(latency >= 0.0) || !std::isfinite(latency)) throw ConfigError("latency must be >= 0");
        if (std::isnan(snr_db)) throw ConfigError("snr_db is NaN");
        if (!(video_noise_gain >= 0.0)) throw ConfigError("video_noise_gain must be >= 0");
    }
};

using Rng = std::mt19937_64;

enum class LinkDirection : std::uint64_t { Uplink = 1, Downlink = 2 };

inline Rng make_link_rng(std::uint64_t seed, LinkDirection dir) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(dir)};
    return Rng(seq);
}

template <class T>
struct Delivery {
    T payload;
    double delay = 0.0; // s after transmission
};

namespace detail {

inline bool draw_drop(double p, Rng& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return u(rng) < p;
}

} // namespace detail

inline double signal_power(std::span<const double> samples) {
    if (samples.empty()) return 0.0;
    double acc = 0.0;
    for (double x : samples) acc += x * x;
    return acc / static_cast<double>(samples.size());
}

inline std::optional<Delivery<dtmf::ToneFrame>> transmit_audio(const dtmf::ToneFrame& frame,
                                                               const ChannelConfig& config, Rng& rng) {
    if (detail::draw_drop(config.drop_probability, rng)) return std::nullopt;
    Delivery<dtmf::ToneFrame> out{frame, config.latency};
    const double power = signal_power(frame.samples);
    if (std::isfinite(config.snr_db) && power > 0.0) {
        const double sigma = std::sqrt(power / std::pow(10.0, config.snr_db / 10.0));
        std::normal_distribution<double> noise(0.0, sigma);
        for (double& x : out.payload.samples) x = std::clamp(x + noise(rng), -1.0, 1.0);
    }
    return out;
}

inline std::optional<Delivery<TelemetryFrame>> transmit_telemetry(const TelemetryFrame& frame,
                                                                  double motor_current_a,
                                                                  const ChannelConfig& config,
                                                                  Rng& rng) {
    if (!(motor_current_a >= 0.0)) throw ArgumentError("transmit_telemetry: negative motor current");
    if (detail::draw_drop(config.drop_probability, rng)) return std::nullopt;
    Delivery<TelemetryFrame> out{frame, config.latency};
    const double sigma = config.video_noise_gain * motor_current_a;
    out.payload.camera_noise_sigma = sigma;
    if (sigma > 0.0) {
        std::normal_distribution<double> jitter(0.0, sigma);
        for (auto& s : out.payload.camera) {
            s.bearing += jitter(rng);
            s.distance = std::max(0.0, s.distance * (1.0 + jitter(rng)));
        }
    }
    return out;
}

// One direction of the radio link; owns its random stream.
class Link {
public:
    Link(const ChannelConfig& config, LinkDirection dir)
        : config_(config), rng_(make_link_rng(config.seed, dir)) {
        config_.validate();
    }

    const ChannelConfig& config() const noexcept { return config_; }

    std::optional<Delivery<dtmf::ToneFrame>> send(const dtmf::ToneFrame& frame) {
        return transmit_audio(frame, config_, rng_);
    }

    std::optional<Delivery<TelemetryFrame>> send(const TelemetryFrame& frame, double motor_current_a) {
        return transmit_telemetry(frame, motor_current_a, config_, rng_);
    }

private:
    ChannelConfig config_;
    Rng rng_;
};

} // namespace ugv

#endif
