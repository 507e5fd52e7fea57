#include <gtest/gtest.h>

#include "ugv/relay.hpp"

using namespace ugv;
using M = MotorState;

namespace {

// Hand-enumerated single-bridge truth table, indexed by the 4-bit mask
// (bit0 = A-high, bit1 = A-low, bit2 = B-high, bit3 = B-low).
// nullopt marks a shorted leg.
const std::array<std::optional<M>, 16> kBridgeTable{
    M::Off,       // 0000
    M::Off,       // 0001 A-high alone
    M::Off,       // 0010 A-low alone
    std::nullopt, // 0011 leg A shorted
    M::Off,       // 0100 B-high alone
    M::Off,       // 0101 both highs
    M::Reverse,   // 0110 B-high + A-low
    std::nullopt, // 0111
    M::Off,       // 1000 B-low alone
    M::Forward,   // 1001 A-high + B-low
    M::Off,       // 1010 both lows
    std::nullopt, // 1011
    std::nullopt, // 1100 leg B shorted
    std::nullopt, // 1101
    std::nullopt, // 1110
    std::nullopt, // 1111
};

} // namespace

TEST(Relay, ExamplesFromDriveTable) {
    EXPECT_EQ(command_to_relays(Command::Stop), RelayBank{});
    EXPECT_EQ(relays_to_motors(command_to_relays(Command::Stop)), (DriveState{M::Off, M::Off}));
    EXPECT_EQ(command_to_relays(Command::Forward), RelayBank::closed(1, 4, 5, 8));
    EXPECT_EQ(relays_to_motors(RelayBank::closed(1, 4, 5, 8)), (DriveState{M::Forward, M::Forward}));
    EXPECT_EQ(command_to_relays(Command::Right), RelayBank::closed(1, 4, 6, 7));
    EXPECT_EQ(relays_to_motors(RelayBank::closed(1, 4, 6, 7)), (DriveState{M::Forward, M::Reverse}));
}

TEST(Relay, RelaysToMotorsExamples) {
    EXPECT_EQ(relays_to_motors(RelayBank{}), (DriveState{M::Off, M::Off}));
    EXPECT_EQ(relays_to_motors(RelayBank::closed(2, 3)), (DriveState{M::Reverse, M::Off}));
    EXPECT_EQ(relays_to_motors(RelayBank::closed(1)), (DriveState{M::Off, M::Off}));
}

TEST(Relay, ValidateExamples) {
    EXPECT_TRUE(validate_relays(RelayBank{}));
    EXPECT_FALSE(validate_relays(RelayBank::closed(1, 2)));
    EXPECT_TRUE(validate_relays(RelayBank::closed(1, 4, 5, 8)));
    EXPECT_THROW(relays_to_motors(RelayBank::closed(7, 8)), ShootThroughError);
}

TEST(Relay, MaskBitOrderIsK1Lsb) {
    EXPECT_EQ(RelayBank::closed(1).mask(), 0x01);
    EXPECT_EQ(RelayBank::closed(8).mask(), 0x80);
    EXPECT_EQ(command_to_relays(Command::Forward).mask(), 0x99);
}

TEST(Relay, ExhaustiveAgainstTruthTable) {
    int flagged = 0;
    for (int m = 0; m < 256; ++m) {
        const RelayBank bank{static_cast<std::uint8_t>(m)};
        const auto left = kBridgeTable[static_cast<std::size_t>(m & 0xF)];
        const auto right = kBridgeTable[static_cast<std::size_t>(m >> 4)];
        const bool pair_closed = ((m & 0x03) == 0x03) || ((m & 0x0C) == 0x0C) || ((m & 0x30) == 0x30) ||
                                 ((m & 0xC0) == 0xC0);
        EXPECT_EQ(validate_relays(bank), !pair_closed) << m;
        if (pair_closed) {
            ++flagged;
            EXPECT_THROW(relays_to_motors(bank), ShootThroughError) << m;
        } else {
            ASSERT_TRUE(left && right) << m;
            EXPECT_EQ(relays_to_motors(bank), (DriveState{*left, *right})) << m;
        }
    }
    // 9 safe states per bridge: 256 - 81.
    EXPECT_EQ(flagged, 256 - 81);
}

TEST(Relay, MovementTable) {
    const std::pair<Command, DriveState> table[] = {
        {Command::Forward, {M::Forward, M::Forward}},
        {Command::Backward, {M::Reverse, M::Reverse}},
        {Command::Right, {M::Forward, M::Reverse}},
        {Command::Left, {M::Reverse, M::Forward}},
        {Command::Stop, {M::Off, M::Off}},
    };
    for (const auto& [cmd, drive] : table) {
        const auto bank = command_to_relays(cmd);
        EXPECT_TRUE(validate_relays(bank));
        EXPECT_EQ(relays_to_motors(bank), drive) << variant_name(cmd);
    }
}

TEST(Relay, InvertTurnsSwapsSpinDirection) {
    const DriveOptions inv{true};
    EXPECT_EQ(relays_to_motors(command_to_relays(Command::Right, inv)), (DriveState{M::Reverse, M::Forward}));
    EXPECT_EQ(relays_to_motors(command_to_relays(Command::Left, inv)), (DriveState{M::Forward, M::Reverse}));
    EXPECT_EQ(command_to_relays(Command::Forward, inv), command_to_relays(Command::Forward));
}

TEST(Relay, SearchlightNeverTouchesRelays) {
    EXPECT_THROW(command_to_relays(Command::SearchlightOn), ArgumentError);
    EXPECT_THROW(command_to_relays(Command::SearchlightOff), ArgumentError);
}
