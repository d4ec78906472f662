// Copyright 2026 The BridgeGuard Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <bridgeguard/common/error.hpp>
#include <bridgeguard/ingest/trace.hpp>

namespace bridgeguard::ingest {

inline constexpr const char* kRpcUrlEnv = "BRIDGEGUARD_RPC_URL";

struct RpcConfig {
    std::string url;
    std::uint64_t chain_id{1};
    // Raw responses are stored here as trace documents; empty disables caching.
    std::filesystem::path cache_dir;
    std::chrono::seconds timeout{30};
    std::size_t max_concurrency{4};
};

//! JSON-RPC client for Ethereum-style nodes. Uses debug_traceTransaction with the call
//! tracer (logs included) and eth_getTransactionReceipt. Safe to call from multiple threads.
class RpcClient {
  public:
    explicit RpcClient(RpcConfig config);

    //! Throws Error{kRpcUnavailable | kTxNotFound | kTraceUnsupported | kMalformedTrace}.
    TxRecord fetch(const Hash32& tx_hash);

    struct Outcome {
        std::optional<TxRecord> record;
        std::optional<Error> error;
    };

    //! Fetches with at most config.max_concurrency requests in flight; outcomes are in input order.
    std::vector<Outcome> fetch_many(const std::vector<Hash32>& hashes);

    //! Path of the cached document for a hash (whether or not it exists).
    [[nodiscard]] std::filesystem::path cache_path(const Hash32& tx_hash) const;

    //! Number of HTTP requests issued so far.
    [[nodiscard]] std::size_t network_calls() const noexcept { return network_calls_.load(); }

  private:
    nlohmann::json call(const std::string& method, const nlohmann::json& params);

    RpcConfig config_;
    std::string scheme_host_port_;
    std::string path_;
    std::atomic<std::size_t> network_calls_{0};
    std::atomic<std::uint64_t> next_id_{1};
};

//! Resolves the RPC endpoint: explicit flag value first, then BRIDGEGUARD_RPC_URL.
std::optional<std::string> resolve_rpc_url(const std::optional<std::string>& flag_value);

}  // namespace bridgeguard::ingest
