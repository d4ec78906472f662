// Copyright 2026 The BridgeGuard Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace bridgeguard {

//! Unsigned 256-bit quantity (wei amounts). Only parsing, printing and comparison are needed.
struct Uint256 {
    // little-endian limbs
    std::array<std::uint64_t, 4> limbs{};

    static Uint256 from_u64(std::uint64_t v) { return Uint256{{v, 0, 0, 0}}; }

    //! Accepts "0x"-prefixed hex of up to 64 digits (odd length allowed, as RPC quantities are).
    static std::optional<Uint256> from_hex(std::string_view hex);

    //! Minimal quantity encoding, "0x0" for zero.
    [[nodiscard]] std::string hex() const;
    [[nodiscard]] bool is_zero() const { return (limbs[0] | limbs[1] | limbs[2] | limbs[3]) == 0; }

    friend bool operator==(const Uint256&, const Uint256&) = default;
    friend std::strong_ordering operator<=>(const Uint256& a, const Uint256& b) {
        for (int i = 3; i >= 0; --i) {
            if (auto c = a.limbs[static_cast<std::size_t>(i)] <=> b.limbs[static_cast<std::size_t>(i)]; c != 0) {
                return c;
            }
        }
        return std::strong_ordering::equal;
    }
};

}  // namespace bridgeguard
