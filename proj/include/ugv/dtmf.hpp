#ifndef UGV_DTMF_HPP_
#define UGV_DTMF_HPP_

// DTMF tone synthesis and Goertzel-based detection.
//
// Symbols use the standard telephony 4x4 grid, row-major:
//
//          1209  1336  1477  1633
//    697    1     2     3     A
//    770    4     5     6     B
//    852    7     8     9     C
//    941    *     0     #     D

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ugv/errors.hpp"

namespace ugv::dtmf {

inline constexpr std::array<double, 4> kLowGroupHz{697.0, 770.0, 852.0, 941.0};
inline constexpr std::array<double, 4> kHighGroupHz{1209.0, 1336.0, 1477.0, 1633.0};
inline constexpr std::array<char, 16> kKeypad{'1', '2', '3', 'A', '4', '5', '6', 'B',
                                              '7', '8', '9', 'C', '*', '0', '#', 'D'};

struct FrequencyPair {
    double low_hz;
    double high_hz;
    friend bool operator==(const FrequencyPair&, const FrequencyPair&) = default;
};

class Symbol {
public:
    static constexpr std::optional<Symbol> from_char(char c) noexcept {
        if (c >= 'a' && c <= 'd') c = static_cast<char>(c - 'a' + 'A');
        for (std::uint8_t i = 0; i < kKeypad.size(); ++i) {
            if (kKeypad[i] == c) return Symbol{i};
        }
        return std::nullopt;
    }

    static constexpr Symbol from_grid(int row, int col) noexcept {
        return Symbol{static_cast<std::uint8_t>((row & 3) * 4 + (col & 3))};
    }

    static constexpr std::array<Symbol, 16> all() noexcept {
        std::array<Symbol, 16> out{};
        for (std::uint8_t i = 0; i < out.size(); ++i) out[i] = Symbol{i};
        return out;
    }

    constexpr Symbol() noexcept = default;

    constexpr char to_char() const noexcept { return kKeypad[index_]; }
    constexpr int row() const noexcept { return index_ / 4; }
    constexpr int col() const noexcept { return index_ % 4; }
    constexpr FrequencyPair frequencies() const noexcept {
        return {kLowGroupHz[static_cast<std::size_t>(row())],
                kHighGroupHz[static_cast<std::size_t>(col())]};
    }

    friend constexpr bool operator==(Symbol, Symbol) = default;

private:
    constexpr explicit Symbol(std::uint8_t index) noexcept : index_(index) {}
    std::uint8_t index_ = 0;
};

struct Config {
    int sample_rate = 8000;          // Hz
    double symbol_duration = 0.080;  // s
    double gap_duration = 0.080;     // s
    double amplitude = 0.45;         // peak per tone
    std::size_t detect_window = 320; // samples
    double power_ratio_threshold = 4.0;
    double twist_limit_db = 8.0;

    std::size_t tone_samples() const {
        return static_cast<std::size_t>(std::lround(sample_rate * symbol_duration));
    }
    std::size_t frame_samples() const {
        return static_cast<std::size_t>(
            std::lround(sample_rate * (symbol_duration + gap_duration)));
    }

    void validate() const {
        if (!(sample_rate > 2 * kHighGroupHz.back())) {
            throw ConfigError("sample_rate must exceed twice the highest DTMF tone (3266 Hz)");
        }
        if (!(symbol_duration > 0.0)) throw ConfigError("symbol_duration must be positive");
        if (!(gap_duration >= 0.0)) throw ConfigError("gap_duration must be non-negative");
        if (!(amplitude >= 0.0 && amplitude <= 0.5)) {
            throw ConfigError("amplitude must lie in [0, 0.5] so the tone pair peaks within [-1, 1]");
        }
        if (detect_window == 0) throw ConfigError("detect_window must be positive");
        if (static_cast<double>(detect_window) > symbol_duration * sample_rate + 1e-9) {
            throw ConfigError("detect_window longer than one symbol");
        }
        if (!(power_ratio_threshold > 0.0)) throw ConfigError("power_ratio_threshold must be positive");
        if (!(twist_limit_db >= 0.0)) throw ConfigError("twist_limit_db must be non-negative");
    }
};

struct ToneFrame {
    std::vector<double> samples;
    int sample_rate = 8000;
};

// Tone pair for symbol_duration followed by gap_duration of silence.
inline ToneFrame synthesize_symbol(Symbol symbol, const Config& config) {
    config.validate();
    const auto [f_low, f_high] = symbol.frequencies();
    const std::size_t total = config.frame_samples();
    const std::size_t tone = std::min(config.tone_samples(), total);

    ToneFrame frame;
    frame.sample_rate = config.sample_rate;
    frame.samples.assign(total, 0.0);
    const double w_low = 2.0 * std::numbers::pi * f_low / config.sample_rate;
    const double w_high = 2.0 * std::numbers::pi * f_high / config.sample_rate;
    for (std::size_t n = 0; n < tone; ++n) {
        const double t = static_cast<double>(n);
        frame.samples[n] = config.amplitude * (std::sin(w_low * t) + std::sin(w_high * t));
    }
    return frame;
}

inline ToneFrame synthesize_sequence(std::span<const Symbol> symbols, const Config& config) {
    ToneFrame out;
    out.sample_rate = config.sample_rate;
    for (Symbol s : symbols) {
        auto frame = synthesize_symbol(s, config);
        out.samples.insert(out.samples.end(), frame.samples.begin(), frame.samples.end());
    }
    return out;
}

// Squared magnitude of DFT bin round(N * f / fs), via the Goertzel recurrence.
inline double goertzel_power(std::span<const double> samples, double target_hz, double sample_rate) {
    if (samples.empty()) throw ArgumentError("goertzel_power: empty input");
    if (!(sample_rate > 0.0) || !(target_hz > 0.0) || !(target_hz < sample_rate / 2.0)) {
        throw ArgumentError("goertzel_power: target frequency outside (0, fs/2)");
    }
    const double n = static_cast<double>(samples.size());
    const double k = std::round(n * target_hz / sample_rate);
    const double w = 2.0 * std::numbers::pi * k / n;
    const double cw = std::cos(w);
    const double coeff = 2.0 * cw;

    double s1 = 0.0;
    double s2 = 0.0;
    for (double x : samples) {
        const double s0 = x + coeff * s1 - s2;
        s2 = s1;
        s1 = s0;
    }
    // Complex form of the final step; avoids the cancellation in s1^2 + s2^2 - c*s1*s2.
    const double re = s1 - s2 * cw;
    const double im = s2 * std::sin(w);
    return re * re + im * im;
}

struct Detection {
    Symbol symbol;
    double confidence;
};

namespace detail {

struct GroupPick {
    int index;
    double ratio;
    double power;
};

inline GroupPick pick_group(const std::array<double, 4>& powers) {
    int best = 0;
    for (int i = 1; i < 4; ++i) {
        if (powers[static_cast<std::size_t>(i)] > powers[static_cast<std::size_t>(best)]) best = i;
    }
    double rest = 0.0;
    for (int i = 0; i < 4; ++i) {
        if (i != best) rest += powers[static_cast<std::size_t>(i)];
    }
    const double win = powers[static_cast<std::size_t>(best)];
    const double ratio = rest > 0.0 ? win / rest
                                    : (win > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    return {best, ratio, win};
}

} // namespace detail

inline std::optional<Detection> detect_symbol(std::span<const double> window, const Config& config) {
    if (window.size() != config.detect_window) {
        throw ArgumentError("detect_symbol: window length " + std::to_string(window.size()) +
                            " != detect_window " + std::to_string(config.detect_window));
    }
    const double fs = config.sample_rate;
    std::array<double, 4> low{};
    std::array<double, 4> high{};
    for (std::size_t i = 0; i < 4; ++i) {
        low[i] = goertzel_power(window, kLowGroupHz[i], fs);
        high[i] = goertzel_power(window, kHighGroupHz[i], fs);
    }
    const auto lo = detail::pick_group(low);
    const auto hi = detail::pick_group(high);
    if (!(lo.ratio > config.power_ratio_threshold) || !(hi.ratio > config.power_ratio_threshold)) {
        return std::nullopt;
    }
    const double twist_db = 10.0 * std::log10(lo.power / hi.power);
    if (!(std::abs(twist_db) <= config.twist_limit_db)) return std::nullopt;
    return Detection{Symbol::from_grid(lo.index, hi.index), std::min(lo.ratio, hi.ratio)};
}

// Windowed detector with debounce: a symbol is emitted once two consecutive
// windows agree, and not again until a window without detection.
class StreamDecoder {
public:
    explicit StreamDecoder(Config config) : config_(config) {
        config_.validate();
        pending_.reserve(config_.detect_window);
    }

    const Config& config() const noexcept { return config_; }

    template <class Sink>
    void feed(std::span<const double> samples, Sink&& sink) {
        for (double x : samples) {
            pending_.push_back(x);
            if (pending_.size() == config_.detect_window) {
                if (auto sym = on_window()) sink(*sym);
                pending_.clear();
            }
        }
    }

    std::vector<Symbol> feed(std::span<const double> samples) {
        std::vector<Symbol> out;
        feed(samples, [&out](Symbol s) { out.push_back(s); });
        return out;
    }

private:
    std::optional<Symbol> on_window() {
        const auto det = detect_symbol(pending_, config_);
        if (!det) {
            candidate_.reset();
            run_ = 0;
            latched_.reset();
            return std::nullopt;
        }
        if (candidate_ == det->symbol) {
            ++run_;
        } else {
            candidate_ = det->symbol;
            run_ = 1;
        }
        if (run_ >= 2 && latched_ != candidate_) {
            latched_ = candidate_;
            return candidate_;
        }
        return std::nullopt;
    }

    Config config_;
    std::vector<double> pending_;
    std::optional<Symbol> candidate_;
    std::optional<Symbol> latched_;
    int run_ = 0;
};

// Non-overlapping detect_window blocks; a trailing partial block is ignored.
inline std::vector<Symbol> decode_stream(std::span<const double> samples, const Config& config) {
    StreamDecoder decoder(config);
    return decoder.feed(samples);
}

} // namespace ugv::dtmf

#endif
