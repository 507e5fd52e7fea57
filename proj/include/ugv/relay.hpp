#ifndef UGV_RELAY_HPP_
#define UGV_RELAY_HPP_

// Eight-relay dual H-bridge. K1..K4 drive the left track, K5..K8 the right.
// Per bridge (offset 0 for left, 4 for right):
//
//   K1  terminal A to supply      K2  terminal A to ground
//   K3  terminal B to supply      K4  terminal B to ground
//
// Forward = K1 & K4, Reverse = K2 & K3. K1 & K2 or K3 & K4 short a leg.

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include "ugv/command.hpp"
#include "ugv/errors.hpp"

namespace ugv {

enum class MotorState { Off, Forward, Reverse };

struct DriveState {
    MotorState left = MotorState::Off;
    MotorState right = MotorState::Off;
    friend constexpr bool operator==(const DriveState&, const DriveState&) = default;
};

constexpr std::string_view motor_token(MotorState m) noexcept {
    switch (m) {
    case MotorState::Forward: return "fwd";
    case MotorState::Reverse: return "rev";
    case MotorState::Off: return "off";
    }
    return "off";
}

// Bit i of the mask is relay K(i+1); K1 is the LSB.
class RelayBank {
public:
    constexpr RelayBank() noexcept = default;
    constexpr explicit RelayBank(std::uint8_t mask) noexcept : mask_(mask) {}

    template <class... K>
    static constexpr RelayBank closed(K... relays) noexcept {
        std::uint8_t mask = 0;
        ((mask = static_cast<std::uint8_t>(mask | (1u << (relays - 1)))), ...);
        return RelayBank{mask};
    }

    // 1-based relay index, as on the schematic.
    constexpr bool is_closed(int k) const noexcept { return (mask_ >> (k - 1)) & 1u; }
    constexpr std::uint8_t mask() const noexcept { return mask_; }

    friend constexpr bool operator==(RelayBank, RelayBank) = default;

private:
    std::uint8_t mask_ = 0;
};

constexpr bool validate_relays(RelayBank bank) noexcept {
    constexpr std::array<std::array<int, 2>, 4> legs{{{1, 2}, {3, 4}, {5, 6}, {7, 8}}};
    for (const auto& [a, b] : legs) {
        if (bank.is_closed(a) && bank.is_closed(b)) return false;
    }
    return true;
}

namespace detail {

constexpr MotorState bridge_state(RelayBank bank, int offset) noexcept {
    const bool a_high = bank.is_closed(offset + 1);
    const bool a_low = bank.is_closed(offset + 2);
    const bool b_high = bank.is_closed(offset + 3);
    const bool b_low = bank.is_closed(offset + 4);
    if (a_high && b_low) return MotorState::Forward;
    if (b_high && a_low) return MotorState::Reverse;
    return MotorState::Off;
}

constexpr std::uint8_t bridge_pattern(MotorState m) noexcept {
    switch (m) {
    case MotorState::Forward: return 0b1001; // K1, K4
    case MotorState::Reverse: return 0b0110; // K2, K3
    case MotorState::Off: return 0;
    }
    return 0;
}

} // namespace detail

inline DriveState relays_to_motors(RelayBank bank) {
    if (!validate_relays(bank)) {
        throw ShootThroughError("relay mask " + std::to_string(bank.mask()) +
                                " closes both switches of a supply leg");
    }
    return {detail::bridge_state(bank, 0), detail::bridge_state(bank, 4)};
}

constexpr RelayBank drive_to_relays(DriveState drive) noexcept {
    return RelayBank{static_cast<std::uint8_t>(detail::bridge_pattern(drive.left) |
                                               (detail::bridge_pattern(drive.right) << 4))};
}

struct DriveOptions {
    // Right spins counter-clockwise instead of clockwise.
    bool invert_turns = false;
};

constexpr DriveState navigation_drive(Command cmd, DriveOptions options = {}) {
    using M = MotorState;
    const DriveState right_spin{M::Forward, M::Reverse};
    const DriveState left_spin{M::Reverse, M::Forward};
    switch (cmd) {
    case Command::Forward: return {M::Forward, M::Forward};
    case Command::Backward: return {M::Reverse, M::Reverse};
    case Command::Right: return options.invert_turns ? left_spin : right_spin;
    case Command::Left: return options.invert_turns ? right_spin : left_spin;
    case Command::Stop: return {M::Off, M::Off};
    case Command::SearchlightOn:
    case Command::SearchlightOff:
        break;
    }
    throw ArgumentError("searchlight commands do not drive the relay bank");
}

inline RelayBank command_to_relays(Command cmd, DriveOptions options = {}) {
    if (!is_navigation(cmd)) {
        throw ArgumentError("command_to_relays: " + std::string(variant_name(cmd)) +
                            " is not a navigation command");
    }
    return drive_to_relays(navigation_drive(cmd, options));
}

} // namespace ugv

#endif
