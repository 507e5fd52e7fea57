#ifndef UGV_COMMAND_HPP_
#define UGV_COMMAND_HPP_

#include <algorithm>
#include <array>
#include <cctype>
#include <optional>
#include <string>
#include <string_view>

#include "ugv/dtmf.hpp"

namespace ugv {

enum class Command { Forward, Backward, Left, Right, Stop, SearchlightOn, SearchlightOff };

inline constexpr std::array<Command, 7> kAllCommands{
    Command::Forward, Command::Backward,      Command::Left,          Command::Right,
    Command::Stop,    Command::SearchlightOn, Command::SearchlightOff};

constexpr bool is_navigation(Command cmd) noexcept {
    switch (cmd) {
    case Command::Forward:
    case Command::Backward:
    case Command::Left:
    case Command::Right:
    case Command::Stop:
        return true;
    case Command::SearchlightOn:
    case Command::SearchlightOff:
        return false;
    }
    return false;
}

// Keypad-arrow mnemonic: 2 up, 8 down, 4 left, 6 right, 5 centre.
constexpr char command_key(Command cmd) noexcept {
    switch (cmd) {
    case Command::Forward: return '2';
    case Command::Backward: return '8';
    case Command::Left: return '4';
    case Command::Right: return '6';
    case Command::Stop: return '5';
    case Command::SearchlightOn: return '1';
    case Command::SearchlightOff: return '3';
    }
    return '5';
}

inline dtmf::Symbol encode_command(Command cmd) noexcept {
    return *dtmf::Symbol::from_char(command_key(cmd));
}

inline std::optional<Command> decode_command(dtmf::Symbol sym) noexcept {
    for (Command c : kAllCommands) {
        if (command_key(c) == sym.to_char()) return c;
    }
    return std::nullopt;
}

constexpr std::string_view variant_name(Command cmd) noexcept {
    switch (cmd) {
    case Command::Forward: return "Forward";
    case Command::Backward: return "Backward";
    case Command::Left: return "Left";
    case Command::Right: return "Right";
    case Command::Stop: return "Stop";
    case Command::SearchlightOn: return "SearchlightOn";
    case Command::SearchlightOff: return "SearchlightOff";
    }
    return "Stop";
}

// Names used on the TCP wire and in the DTMF tool's text files.
constexpr std::string_view wire_name(Command cmd) noexcept {
    switch (cmd) {
    case Command::Forward: return "forward";
    case Command::Backward: return "backward";
    case Command::Left: return "left";
    case Command::Right: return "right";
    case Command::Stop: return "stop";
    case Command::SearchlightOn: return "light_on";
    case Command::SearchlightOff: return "light_off";
    }
    return "stop";
}

// Accepts variant names and wire names, case-insensitive.
inline std::optional<Command> parse_command(std::string_view text) {
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    for (Command c : kAllCommands) {
        std::string variant(variant_name(c));
        std::transform(variant.begin(), variant.end(), variant.begin(),
                       [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
        if (lower == variant || lower == wire_name(c)) return c;
    }
    return std::nullopt;
}

} // namespace ugv

#endif
