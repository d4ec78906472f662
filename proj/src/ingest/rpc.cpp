// Copyright 2026 The BridgeGuard Authors
// SPDX-License-Identifier: Apache-2.0

#include <bridgeguard/ingest/rpc.hpp>

#include <cstdlib>
#include <fstream>

#include <httplib.h>

#include <bridgeguard/common/parallel.hpp>

namespace bridgeguard::ingest {

using nlohmann::json;

namespace {

    bool mentions(const std::string& haystack, std::string_view needle) {
        auto lower = haystack;
        std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
        return lower.find(needle) != std::string::npos;
    }

    // JSON-RPC error object from a response, if any.
    struct RpcFailure {
        std::int64_t code{0};
        std::string message;
    };

    class RpcErrorResponse : public std::exception {
      public:
        explicit RpcErrorResponse(RpcFailure f) : failure{std::move(f)} {}
        const char* what() const noexcept override { return failure.message.c_str(); }
        RpcFailure failure;
    };

}  // namespace

RpcClient::RpcClient(RpcConfig config) : config_{std::move(config)} {
    const auto scheme_end = config_.url.find("://");
    if (scheme_end == std::string::npos) {
        throw Error{ErrorCode::kInvalidConfig, "RPC URL needs a scheme: " + config_.url};
    }
    const auto path_start = config_.url.find('/', scheme_end + 3);
    scheme_host_port_ = config_.url.substr(0, path_start);
    path_ = path_start == std::string::npos ? "/" : config_.url.substr(path_start);
}

std::filesystem::path RpcClient::cache_path(const Hash32& tx_hash) const {
    return config_.cache_dir / std::to_string(config_.chain_id) / (tx_hash.hex() + ".json");
}

json RpcClient::call(const std::string& method, const json& params) {
    httplib::Client client{scheme_host_port_};
    client.set_connection_timeout(config_.timeout);
    client.set_read_timeout(config_.timeout);

    const json request{{"jsonrpc", "2.0"}, {"id", next_id_++}, {"method", method}, {"params", params}};
    ++network_calls_;
    auto res = client.Post(path_, request.dump(), "application/json");
    if (!res) {
        throw Error{ErrorCode::kRpcUnavailable,
                    "RPC request to " + config_.url + " failed: " + httplib::to_string(res.error())};
    }
    if (res->status != 200) {
        throw Error{ErrorCode::kRpcUnavailable, "RPC endpoint returned HTTP " + std::to_string(res->status)};
    }
    json body;
    try {
        body = json::parse(res->body);
    } catch (const json::parse_error& e) {
        throw Error{ErrorCode::kRpcUnavailable, std::string{"RPC response is not JSON: "} + e.what()};
    }
    if (auto err = body.find("error"); err != body.end() && !err->is_null()) {
        RpcFailure f;
        if (err->is_object()) {
            f.code = err->value("code", std::int64_t{0});
            f.message = err->value("message", std::string{});
        } else {
            f.message = err->dump();
        }
        throw RpcErrorResponse{std::move(f)};
    }
    return body.value("result", json{});
}

TxRecord RpcClient::fetch(const Hash32& tx_hash) {
    const bool caching = !config_.cache_dir.empty();
    if (caching) {
        if (auto cached = cache_path(tx_hash); std::filesystem::exists(cached)) {
            return load_trace_file(cached);
        }
    }

    json receipt;
    try {
        receipt = call("eth_getTransactionReceipt", json::array({tx_hash.hex()}));
    } catch (const RpcErrorResponse& e) {
        throw Error{ErrorCode::kRpcUnavailable, "eth_getTransactionReceipt: " + e.failure.message};
    }
    if (receipt.is_null()) {
        throw Error{ErrorCode::kTxNotFound, "transaction " + tx_hash.hex() + " not found"};
    }

    json trace;
    try {
        const json tracer{{"tracer", "callTracer"}, {"tracerConfig", {{"withLog", true}}}};
        trace = call("debug_traceTransaction", json::array({tx_hash.hex(), tracer}));
    } catch (const RpcErrorResponse& e) {
        const auto& f = e.failure;
        if (f.code == -32601 || mentions(f.message, "does not exist") || mentions(f.message, "not available") ||
            mentions(f.message, "not supported") || mentions(f.message, "unsupported")) {
            throw Error{ErrorCode::kTraceUnsupported, "node does not support call tracing: " + f.message};
        }
        if (mentions(f.message, "not found")) {
            throw Error{ErrorCode::kTxNotFound, "transaction " + tx_hash.hex() + " not found: " + f.message};
        }
        throw Error{ErrorCode::kRpcUnavailable, "debug_traceTransaction: " + f.message};
    }
    if (trace.is_null()) {
        throw Error{ErrorCode::kTxNotFound, "no trace for " + tx_hash.hex()};
    }

    json doc;
    doc["tx_hash"] = tx_hash.hex();
    doc["chain_id"] = config_.chain_id;
    if (receipt.contains("blockNumber")) doc["block_number"] = receipt["blockNumber"];
    doc["trace"] = std::move(trace);
    doc["logs"] = receipt.value("logs", json::array());

    auto record = parse_document(doc);

    if (caching) {
        const auto target = cache_path(tx_hash);
        std::filesystem::create_directories(target.parent_path());
        auto tmp = target;
        tmp += ".tmp";
        {
            std::ofstream out{tmp};
            if (!out) throw Error{ErrorCode::kIo, "cannot write cache file " + tmp.string()};
            out << doc.dump() << '\n';
        }
        std::filesystem::rename(tmp, target);
    }
    return record;
}

std::vector<RpcClient::Outcome> RpcClient::fetch_many(const std::vector<Hash32>& hashes) {
    std::vector<Outcome> out(hashes.size());
    parallel_for(hashes.size(), config_.max_concurrency, [&](std::size_t i) {
        try {
            out[i].record = fetch(hashes[i]);
        } catch (const Error& e) {
            out[i].error = e;
        }
    });
    return out;
}

std::optional<std::string> resolve_rpc_url(const std::optional<std::string>& flag_value) {
    if (flag_value && !flag_value->empty()) return flag_value;
    if (const char* env = std::getenv(kRpcUrlEnv); env != nullptr && *env != '\0') {
        return std::string{env};
    }
    return std::nullopt;
}

}  // namespace bridgeguard::ingest
