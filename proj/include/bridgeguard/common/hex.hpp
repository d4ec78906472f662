// Copyright 2026 The BridgeGuard Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bridgeguard {

using Bytes = std::vector<std::uint8_t>;

//! Decodes an optionally 0x-prefixed hex string. Returns nullopt on odd length or bad digits.
std::optional<Bytes> from_hex(std::string_view hex);

//! Lowercase hex with 0x prefix.
std::string to_hex(std::span<const std::uint8_t> bytes);

//! Fixed-size byte string used for addresses, hashes and selectors.
template <std::size_t N>
struct FixedBytes {
    std::array<std::uint8_t, N> bytes{};

    static constexpr std::size_t kSize = N;

    static std::optional<FixedBytes> from_hex(std::string_view hex) {
        auto raw = bridgeguard::from_hex(hex);
        if (!raw || raw->size() != N) {
            return std::nullopt;
        }
        FixedBytes out;
        std::copy(raw->begin(), raw->end(), out.bytes.begin());
        return out;
    }

    [[nodiscard]] std::string hex() const { return to_hex(bytes); }
    [[nodiscard]] bool is_zero() const {
        for (auto b : bytes) {
            if (b != 0) return false;
        }
        return true;
    }

    friend auto operator<=>(const FixedBytes&, const FixedBytes&) = default;
};

using Address = FixedBytes<20>;
using Hash32 = FixedBytes<32>;
using Selector = FixedBytes<4>;

}  // namespace bridgeguard

template <std::size_t N>
struct std::hash<bridgeguard::FixedBytes<N>> {
    std::size_t operator()(const bridgeguard::FixedBytes<N>& v) const noexcept {
        std::size_t h = 1469598103934665603ULL;
        for (auto b : v.bytes) {
            h = (h ^ b) * 1099511628211ULL;
        }
        return h;
    }
};
