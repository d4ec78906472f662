// Copyright 2026 The BridgeGuard Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <string_view>

#include <bridgeguard/common/hex.hpp>

namespace bridgeguard {

//! Ethereum Keccak-256 (original padding, not FIPS-202 SHA3).
Hash32 keccak256(std::span<const std::uint8_t> data);
Hash32 keccak256(std::string_view text);

//! First four bytes of keccak256(signature), e.g. "transfer(address,uint256)".
Selector function_selector(std::string_view signature);

//! Event topic0 for a canonical event signature.
inline Hash32 event_topic(std::string_view signature) { return keccak256(signature); }

}  // namespace bridgeguard
