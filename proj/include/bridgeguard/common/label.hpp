// Copyright 2026 The BridgeGuard Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace bridgeguard {

//! Transaction classes. The enumerator order is the fixed class order used for tie-breaking.
enum class Label : std::uint8_t {
    kNormal = 0,
    kAttackSrc = 1,
    kAttackTgt = 2,
};

inline constexpr std::size_t kNumLabels = 3;
inline constexpr std::array<Label, kNumLabels> kAllLabels{Label::kNormal, Label::kAttackSrc, Label::kAttackTgt};

constexpr std::string_view to_string(Label l) noexcept {
    switch (l) {
        case Label::kNormal: return "Normal";
        case Label::kAttackSrc: return "AttackSrc";
        case Label::kAttackTgt: return "AttackTgt";
    }
    return "?";
}

constexpr std::optional<Label> parse_label(std::string_view s) noexcept {
    for (auto l : kAllLabels) {
        if (to_string(l) == s) return l;
    }
    return std::nullopt;
}

constexpr std::size_t index_of(Label l) noexcept { return static_cast<std::size_t>(l); }
constexpr bool is_attack(Label l) noexcept { return l != Label::kNormal; }

}  // namespace bridgeguard
