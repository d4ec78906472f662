// Copyright 2026 The BridgeGuard Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bridgeguard::motif {

inline constexpr std::size_t kNumMotifs = 16;

//! One isomorphism class of directed graphs on three vertices {0, 1, 2}.
struct MotifClass {
    std::string_view id;    // "M1".."M16"
    std::string_view name;  // MAN label, e.g. "021C"
    std::string_view description;
    std::vector<std::pair<int, int>> arcs;  // representative arc list
    bool connected;
};

//! The full directed triad census in its fixed order:
//! M1..M16 = 003, 012, 102, 021D, 021U, 021C, 111D, 111U, 030T, 030C, 201, 120D, 120U, 120C, 210, 300.
const std::array<MotifClass, kNumMotifs>& motif_catalog();

//! 6-bit code of the arcs among an ordered vertex triple (x0, x1, x2):
//! bit0 x0->x1, bit1 x1->x0, bit2 x0->x2, bit3 x2->x0, bit4 x1->x2, bit5 x2->x1.
constexpr unsigned triad_code(bool a01, bool a10, bool a02, bool a20, bool a12, bool a21) {
    return (a01 ? 1u : 0u) | (a10 ? 2u : 0u) | (a02 ? 4u : 0u) | (a20 ? 8u : 0u) | (a12 ? 16u : 0u) |
           (a21 ? 32u : 0u);
}

//! Class index (0-based) of every 6-bit triad code, derived from the catalog by permutation.
const std::array<std::uint8_t, 64>& triad_class_table();

//! Markdown reference table mapping M1..M16 to their arc lists.
std::string motif_catalog_markdown();

}  // namespace bridgeguard::motif
