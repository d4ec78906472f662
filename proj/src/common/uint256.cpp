// Copyright 2026 The BridgeGuard Authors
// SPDX-License-Identifier: Apache-2.0

#include <bridgeguard/common/uint256.hpp>

namespace bridgeguard {

std::optional<Uint256> Uint256::from_hex(std::string_view hex) {
    if (hex.size() >= 2 && hex[0] == '0' && (hex[1] == 'x' || hex[1] == 'X')) {
        hex.remove_prefix(2);
    }
    if (hex.empty() || hex.size() > 64) {
        return std::nullopt;
    }
    Uint256 out;
    std::size_t bit = 0;
    for (auto it = hex.rbegin(); it != hex.rend(); ++it, bit += 4) {
        const char c = *it;
        std::uint64_t d = 0;
        if (c >= '0' && c <= '9') {
            d = static_cast<std::uint64_t>(c - '0');
        } else if (c >= 'a' && c <= 'f') {
            d = static_cast<std::uint64_t>(c - 'a' + 10);
        } else if (c >= 'A' && c <= 'F') {
            d = static_cast<std::uint64_t>(c - 'A' + 10);
        } else {
            return std::nullopt;
        }
        out.limbs[bit / 64] |= d << (bit % 64);
    }
    return out;
}

std::string Uint256::hex() const {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string digits;
    for (int limb = 3; limb >= 0; --limb) {
        for (int shift = 60; shift >= 0; shift -= 4) {
            const auto d = (limbs[static_cast<std::size_t>(limb)] >> shift) & 0xf;
            if (digits.empty() && d == 0) continue;
            digits += kDigits[d];
        }
    }
    return "0x" + (digits.empty() ? std::string{"0"} : digits);
}

}  // namespace bridgeguard
