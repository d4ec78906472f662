// Copyright 2026 The BridgeGuard Authors
// SPDX-License-Identifier: Apache-2.0

#include <bridgeguard/ingest/trace.hpp>

#include <fstream>
#include <set>

#include <bridgeguard/common/error.hpp>
#include <bridgeguard/common/keccak.hpp>

namespace bridgeguard::ingest {

using nlohmann::json;

namespace {

    constexpr std::array<std::pair<FrameKind, std::string_view>, 7> kFrameKindNames{{
        {FrameKind::kCall, "CALL"},
        {FrameKind::kStaticCall, "STATICCALL"},
        {FrameKind::kDelegateCall, "DELEGATECALL"},
        {FrameKind::kCallCode, "CALLCODE"},
        {FrameKind::kCreate, "CREATE"},
        {FrameKind::kCreate2, "CREATE2"},
        {FrameKind::kSelfDestruct, "SELFDESTRUCT"},
    }};

    [[noreturn]] void malformed(const std::string& what) { throw Error{ErrorCode::kMalformedTrace, what}; }

    const std::string& require_string(const json& obj, const char* key) {
        auto it = obj.find(key);
        if (it == obj.end() || !it->is_string()) {
            malformed(std::string{"missing or non-string field '"} + key + "'");
        }
        return it->get_ref<const std::string&>();
    }

    template <typename T>
    T parse_fixed(const std::string& hex, const char* what) {
        auto v = T::from_hex(hex);
        if (!v) malformed(std::string{"invalid "} + what + ": " + hex);
        return *v;
    }

    std::uint64_t parse_quantity(const json& v, const char* what) {
        if (v.is_number_unsigned()) return v.get<std::uint64_t>();
        if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v.get<std::int64_t>());
        if (v.is_string()) {
            auto q = Uint256::from_hex(v.get_ref<const std::string&>());
            if (q && q->limbs[1] == 0 && q->limbs[2] == 0 && q->limbs[3] == 0) return q->limbs[0];
        }
        malformed(std::string{"invalid quantity for "} + what);
    }

    // One log as it appears inside a call-tracer frame, in execution order.
    struct EmbeddedLog {
        std::uint32_t frame;
        std::uint32_t position;
        Address emitter;
        std::vector<Hash32> topics;
        Bytes data;
        bool used{false};
    };

    struct ParsedLog {
        Address emitter;
        std::vector<Hash32> topics;
        Bytes data;
    };

    ParsedLog parse_log_body(const json& j) {
        if (!j.is_object()) malformed("log entry is not an object");
        ParsedLog out;
        out.emitter = parse_fixed<Address>(require_string(j, "address"), "log address");
        if (auto it = j.find("topics"); it != j.end()) {
            if (!it->is_array()) malformed("log topics is not an array");
            for (const auto& t : *it) {
                if (!t.is_string()) malformed("log topic is not a string");
                out.topics.push_back(parse_fixed<Hash32>(t.get_ref<const std::string&>(), "log topic"));
            }
        }
        if (auto it = j.find("data"); it != j.end() && !it->is_null()) {
            if (!it->is_string()) malformed("log data is not a string");
            auto bytes = from_hex(it->get_ref<const std::string&>());
            if (!bytes) malformed("invalid log data");
            out.data = std::move(*bytes);
        }
        return out;
    }

    class FrameParser {
      public:
        std::vector<EmbeddedLog> embedded;

        CallFrame parse(const json& j, std::uint32_t depth, bool inside_reverted) {
            if (!j.is_object()) malformed("call frame is not an object");
            CallFrame f;
            auto kind = parse_frame_kind(require_string(j, "type"));
            if (!kind) malformed("unknown frame type: " + j["type"].get<std::string>());
            f.kind = *kind;
            f.caller = parse_fixed<Address>(require_string(j, "from"), "from address");
            f.reverted = j.contains("error") && !j["error"].is_null();

            auto to = j.find("to");
            if (to != j.end() && !to->is_null()) {
                if (!to->is_string()) malformed("'to' is not a string");
                f.callee = parse_fixed<Address>(to->get_ref<const std::string&>(), "to address");
            } else if (f.kind != FrameKind::kSelfDestruct && f.kind != FrameKind::kCreate &&
                       f.kind != FrameKind::kCreate2) {
                malformed("call frame without 'to'");
            }

            if (auto in = j.find("input"); in != j.end() && !in->is_null()) {
                if (!in->is_string()) malformed("'input' is not a string");
                auto bytes = from_hex(in->get_ref<const std::string&>());
                if (!bytes) malformed("invalid input payload");
                if (bytes->size() >= 4) {
                    Selector s;
                    std::copy_n(bytes->begin(), 4, s.bytes.begin());
                    f.selector = s;
                }
            }
            if (auto v = j.find("value"); v != j.end() && !v->is_null()) {
                if (!v->is_string()) malformed("'value' is not a string");
                auto q = Uint256::from_hex(v->get_ref<const std::string&>());
                if (!q) malformed("invalid value");
                f.value = *q;
            }

            f.depth = depth;
            f.order = next_order_++;
            const bool reverted_scope = inside_reverted || f.reverted;

            auto calls = j.find("calls");
            if (calls != j.end() && !calls->is_null() && !calls->is_array()) malformed("'calls' is not an array");
            const std::size_t n_children = (calls != j.end() && calls->is_array()) ? calls->size() : 0;

            std::vector<EmbeddedLog> own_logs;
            if (auto logs = j.find("logs"); logs != j.end() && !logs->is_null()) {
                if (!logs->is_array()) malformed("frame logs is not an array");
                for (const auto& l : *logs) {
                    auto body = parse_log_body(l);
                    EmbeddedLog e{f.order, 0, body.emitter, std::move(body.topics), std::move(body.data)};
                    if (auto p = l.find("position"); p != l.end() && !p->is_null()) {
                        const auto pos = parse_quantity(*p, "log position");
                        if (pos > n_children) malformed("log position exceeds number of calls");
                        e.position = static_cast<std::uint32_t>(pos);
                    } else {
                        e.position = static_cast<std::uint32_t>(n_children);
                    }
                    own_logs.push_back(std::move(e));
                }
            }
            std::stable_sort(own_logs.begin(), own_logs.end(),
                             [](const EmbeddedLog& a, const EmbeddedLog& b) { return a.position < b.position; });

            auto log_it = own_logs.begin();
            auto emit_logs_before = [&](std::size_t child_index) {
                for (; log_it != own_logs.end() && log_it->position <= child_index; ++log_it) {
                    if (!reverted_scope) embedded.push_back(*log_it);
                }
            };
            for (std::size_t i = 0; i < n_children; ++i) {
                emit_logs_before(i);
                f.children.push_back(parse((*calls)[i], depth + 1, reverted_scope));
            }
            emit_logs_before(n_children);
            return f;
        }

      private:
        std::uint32_t next_order_{0};
    };

    // Deepest frame whose callee is the emitter, earliest in pre-order among equals.
    std::uint32_t fallback_frame(const std::vector<const CallFrame*>& frames, const Address& emitter) {
        const CallFrame* best = nullptr;
        for (const auto* f : frames) {
            if (f->callee == emitter && (best == nullptr || f->depth > best->depth)) {
                best = f;
            }
        }
        return best ? best->order : 0;
    }

    json frame_to_json(const CallFrame& f, const std::vector<std::vector<const LogEntry*>>& logs_by_frame) {
        json j;
        j["type"] = std::string{to_string(f.kind)};
        j["from"] = f.caller.hex();
        j["to"] = f.callee.hex();
        j["input"] = f.selector ? f.selector->hex() : std::string{"0x"};
        j["value"] = f.value.hex();
        if (f.reverted) j["error"] = "execution reverted";
        if (!logs_by_frame[f.order].empty()) {
            json logs = json::array();
            for (const auto* l : logs_by_frame[f.order]) {
                json lj;
                lj["address"] = l->emitter.hex();
                json topics = json::array();
                if (l->topic0) topics.push_back(l->topic0->hex());
                for (const auto& t : l->topics_rest) topics.push_back(t.hex());
                lj["topics"] = std::move(topics);
                lj["data"] = to_hex(l->data);
                lj["position"] = l->origin->position;
                logs.push_back(std::move(lj));
            }
            j["logs"] = std::move(logs);
        }
        if (!f.children.empty()) {
            json calls = json::array();
            for (const auto& c : f.children) calls.push_back(frame_to_json(c, logs_by_frame));
            j["calls"] = std::move(calls);
        }
        return j;
    }

    void flatten_into(const CallFrame& f, std::vector<const CallFrame*>& out) {
        out.push_back(&f);
        for (const auto& c : f.children) flatten_into(c, out);
    }

}  // namespace

std::string_view to_string(FrameKind kind) noexcept {
    for (const auto& [k, name] : kFrameKindNames) {
        if (k == kind) return name;
    }
    return "?";
}

std::optional<FrameKind> parse_frame_kind(std::string_view s) noexcept {
    for (const auto& [k, name] : kFrameKindNames) {
        if (name == s) return k;
    }
    return std::nullopt;
}

TxRecord parse_trace(const json& trace, const json& logs, const DocumentContext& ctx) {
    if (trace.is_null() || (trace.is_object() && trace.empty())) {
        throw Error{ErrorCode::kEmptyTrace, "trace has no root frame"};
    }
    TxRecord rec;
    FrameParser parser;
    rec.root_frame = parser.parse(trace, 0, false);
    rec.sender = rec.root_frame.caller;
    rec.chain_id = ctx.chain_id.value_or(1);
    rec.block_number = ctx.block_number.value_or(0);

    if (!logs.is_null() && !logs.is_array()) malformed("'logs' is not an array");
    const auto frames = flatten_frames(rec);
    std::set<std::uint64_t> seen_index;
    std::size_t cursor = 0;
    std::size_t position_in_array = 0;
    for (const auto& lj : logs.is_array() ? logs : json::array()) {
        auto body = parse_log_body(lj);
        LogEntry entry;
        entry.emitter = body.emitter;
        if (!body.topics.empty()) {
            entry.topic0 = body.topics.front();
            entry.topics_rest.assign(body.topics.begin() + 1, body.topics.end());
        }
        entry.data = std::move(body.data);
        if (auto it = lj.find("logIndex"); it != lj.end() && !it->is_null()) {
            entry.log_index = parse_quantity(*it, "logIndex");
        } else {
            entry.log_index = position_in_array;
        }
        ++position_in_array;
        if (!seen_index.insert(entry.log_index).second) {
            malformed("duplicate logIndex " + std::to_string(entry.log_index));
        }

        // Greedy in-order match against frame-embedded logs.
        for (std::size_t k = cursor; k < parser.embedded.size(); ++k) {
            auto& e = parser.embedded[k];
            if (!e.used && e.emitter == body.emitter && e.topics == body.topics && e.data == entry.data) {
                e.used = true;
                entry.origin = LogOrigin{e.frame, e.position};
                cursor = k + 1;
                break;
            }
        }
        if (!entry.origin) {
            const auto frame = fallback_frame(frames, entry.emitter);
            entry.origin = LogOrigin{frame, static_cast<std::uint32_t>(frames[frame]->children.size())};
        }
        rec.logs.push_back(std::move(entry));
    }
    std::stable_sort(rec.logs.begin(), rec.logs.end(),
                     [](const LogEntry& a, const LogEntry& b) { return a.log_index < b.log_index; });

    if (ctx.tx_hash) {
        rec.tx_hash = *ctx.tx_hash;
    } else {
        // Without an explicit hash, identity is the content of the document.
        rec.tx_hash = keccak256(json{{"trace", trace}, {"logs", logs}}.dump());
    }
    return rec;
}

TxRecord parse_document(const json& doc) {
    if (!doc.is_object()) malformed("document is not a JSON object");
    auto trace = doc.find("trace");
    if (trace == doc.end() || trace->is_null()) {
        throw Error{ErrorCode::kEmptyTrace, "document has no 'trace'"};
    }
    DocumentContext ctx;
    if (auto it = doc.find("tx_hash"); it != doc.end() && !it->is_null()) {
        if (!it->is_string()) malformed("'tx_hash' is not a string");
        ctx.tx_hash = parse_fixed<Hash32>(it->get_ref<const std::string&>(), "tx_hash");
    }
    if (auto it = doc.find("chain_id"); it != doc.end() && !it->is_null()) {
        ctx.chain_id = parse_quantity(*it, "chain_id");
    }
    if (auto it = doc.find("block_number"); it != doc.end() && !it->is_null()) {
        ctx.block_number = parse_quantity(*it, "block_number");
    }
    const auto logs = doc.contains("logs") ? doc["logs"] : json::array();
    return parse_trace(*trace, logs, ctx);
}

TxRecord load_trace_file(const std::filesystem::path& path) {
    std::ifstream in{path};
    if (!in) {
        throw Error{ErrorCode::kIo, "cannot open " + path.string()};
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        malformed(path.string() + ": " + e.what());
    }
    return parse_document(doc);
}

json to_document(const TxRecord& record) {
    const auto frames = flatten_frames(record);
    std::vector<std::vector<const LogEntry*>> logs_by_frame(frames.size());
    for (const auto& l : record.logs) {
        if (l.origin && l.origin->frame < frames.size()) logs_by_frame[l.origin->frame].push_back(&l);
    }
    json logs = json::array();
    for (const auto& l : record.logs) {
        json lj;
        lj["address"] = l.emitter.hex();
        json topics = json::array();
        if (l.topic0) topics.push_back(l.topic0->hex());
        for (const auto& t : l.topics_rest) topics.push_back(t.hex());
        lj["topics"] = std::move(topics);
        lj["data"] = to_hex(l.data);
        lj["logIndex"] = Uint256::from_u64(l.log_index).hex();
        logs.push_back(std::move(lj));
    }
    json doc;
    doc["tx_hash"] = record.tx_hash.hex();
    doc["chain_id"] = record.chain_id;
    doc["block_number"] = record.block_number;
    doc["trace"] = frame_to_json(record.root_frame, logs_by_frame);
    doc["logs"] = std::move(logs);
    return doc;
}

void write_trace_file(const std::filesystem::path& path, const TxRecord& record) {
    std::ofstream out{path};
    if (!out) {
        throw Error{ErrorCode::kIo, "cannot write " + path.string()};
    }
    out << to_document(record).dump() << '\n';
}

std::vector<const CallFrame*> flatten_frames(const TxRecord& record) {
    std::vector<const CallFrame*> out;
    flatten_into(record.root_frame, out);
    return out;
}

std::size_t frame_count(const CallFrame& root) {
    std::size_t n = 1;
    for (const auto& c : root.children) n += frame_count(c);
    return n;
}

}  // namespace bridgeguard::ingest
