// Copyright 2026 The BridgeGuard Authors
// SPDX-License-Identifier: Apache-2.0

#include <bridgeguard/xteg/xteg.hpp>

#include <algorithm>
#include <map>
#include <queue>
#include <tuple>

#include <bridgeguard/common/error.hpp>

namespace bridgeguard::xteg {

// --- SimpleDigraph ---------------------------------------------------------

SimpleDigraph SimpleDigraph::from_arcs(std::uint32_t n, const std::vector<Arc>& arcs) {
    SimpleDigraph g{n};
    for (const auto& [u, v] : arcs) {
        if (u >= n || v >= n) throw Error{ErrorCode::kInvalidArgument, "arc endpoint out of range"};
        if (u == v) throw Error{ErrorCode::kSelfLoopPresent, "self-loop on vertex " + std::to_string(u)};
        g.out_[u].push_back(v);
    }
    for (auto& row : g.out_) {
        std::sort(row.begin(), row.end());
        if (std::adjacent_find(row.begin(), row.end()) != row.end()) {
            throw Error{ErrorCode::kMultiEdgePresent, "parallel arcs present"};
        }
    }
    return g;
}

SimpleDigraph SimpleDigraph::simplify(std::uint32_t n, const std::vector<Arc>& arcs) {
    SimpleDigraph g{n};
    for (const auto& [u, v] : arcs) {
        if (u >= n || v >= n) throw Error{ErrorCode::kInvalidArgument, "arc endpoint out of range"};
        if (u != v) g.out_[u].push_back(v);
    }
    for (auto& row : g.out_) {
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
    }
    return g;
}

std::size_t SimpleDigraph::num_arcs() const noexcept {
    std::size_t m = 0;
    for (const auto& row : out_) m += row.size();
    return m;
}

bool SimpleDigraph::has_arc(std::uint32_t u, std::uint32_t v) const {
    return std::binary_search(out_[u].begin(), out_[u].end(), v);
}

std::vector<Arc> SimpleDigraph::arcs() const {
    std::vector<Arc> out;
    for (std::uint32_t u = 0; u < out_.size(); ++u) {
        for (auto v : out_[u]) out.emplace_back(u, v);
    }
    return out;
}

// --- names -----------------------------------------------------------------

std::string_view to_string(VertexKind kind) noexcept {
    switch (kind) {
        case VertexKind::kEoa: return "EOA";
        case VertexKind::kContractFunction: return "FN";
        case VertexKind::kLogEvent: return "LOG";
    }
    return "?";
}

std::string_view to_string(EdgeKind kind) noexcept {
    switch (kind) {
        case EdgeKind::kCall: return "CALL";
        case EdgeKind::kStaticCall: return "STATICCALL";
        case EdgeKind::kDelegateCall: return "DELEGATECALL";
        case EdgeKind::kCallCode: return "CALLCODE";
        case EdgeKind::kCreate: return "CREATE";
        case EdgeKind::kCreate2: return "CREATE2";
        case EdgeKind::kSelfDestruct: return "SELFDESTRUCT";
        case EdgeKind::kEmit: return "EMIT";
    }
    return "?";
}

EdgeKind edge_kind_of(ingest::FrameKind kind) noexcept {
    switch (kind) {
        case ingest::FrameKind::kCall: return EdgeKind::kCall;
        case ingest::FrameKind::kStaticCall: return EdgeKind::kStaticCall;
        case ingest::FrameKind::kDelegateCall: return EdgeKind::kDelegateCall;
        case ingest::FrameKind::kCallCode: return EdgeKind::kCallCode;
        case ingest::FrameKind::kCreate: return EdgeKind::kCreate;
        case ingest::FrameKind::kCreate2: return EdgeKind::kCreate2;
        case ingest::FrameKind::kSelfDestruct: return EdgeKind::kSelfDestruct;
    }
    return EdgeKind::kCall;
}

std::string Vertex::describe() const {
    switch (key.kind) {
        case VertexKind::kEoa: return "eoa " + key.address.hex();
        case VertexKind::kContractFunction: {
            std::string entry;
            switch (key.entry) {
                case EntryPoint::kSelector: entry = key.selector.hex(); break;
                case EntryPoint::kFallback: entry = "fallback"; break;
                case EntryPoint::kConstructor: entry = "constructor"; break;
            }
            return "fn " + key.address.hex() + ":" + entry;
        }
        case VertexKind::kLogEvent:
            return "log " + key.address.hex() + ":" + (key.topic0 ? key.topic0->hex() : std::string{"anonymous"});
    }
    return "?";
}

// --- construction ----------------------------------------------------------

namespace {

    class Builder {
      public:
        explicit Builder(const ingest::TxRecord& record) : record_{record} {}

        Xteg build() {
            Xteg g;
            g.tx_hash = record_.tx_hash;
            frames_ = ingest::flatten_frames(record_);
            logs_by_frame_.assign(frames_.size(), {});
            for (const auto& log : record_.logs) {
                logs_by_frame_[origin_frame(log)].push_back(&log);
            }
            for (auto& bucket : logs_by_frame_) {
                std::stable_sort(bucket.begin(), bucket.end(), [](const auto* a, const auto* b) {
                    return a->log_index < b->log_index;
                });
            }

            const auto sender = vertex_for(VertexKey{VertexKind::kEoa, record_.sender, EntryPoint::kFallback, {}, std::nullopt});
            visit(record_.root_frame, sender);

            g.vertices = std::move(vertices_);
            g.edges.reserve(edges_.size());
            for (auto& [key, e] : edges_) g.edges.push_back(e);
            std::sort(g.edges.begin(), g.edges.end(), [](const auto& a, const auto& b) { return a.order < b.order; });
            check_connected(g);
            return g;
        }

      private:
        std::uint32_t origin_frame(const ingest::LogEntry& log) const {
            if (log.origin && log.origin->frame < frames_.size()) return log.origin->frame;
            const ingest::CallFrame* best = nullptr;
            for (const auto* f : frames_) {
                if (f->callee == log.emitter && (best == nullptr || f->depth > best->depth)) best = f;
            }
            return best ? best->order : 0;
        }

        std::uint32_t vertex_for(const VertexKey& key) {
            auto [it, inserted] = ids_.try_emplace(key, static_cast<std::uint32_t>(vertices_.size()));
            if (inserted) vertices_.push_back(Vertex{key, it->second});
            return it->second;
        }

        std::uint32_t callee_vertex(const ingest::CallFrame& f) {
            if (f.callee == record_.sender) {
                return vertex_for(VertexKey{VertexKind::kEoa, f.callee, EntryPoint::kFallback, {}, std::nullopt});
            }
            VertexKey key{VertexKind::kContractFunction, f.callee, EntryPoint::kFallback, {}, std::nullopt};
            if (f.kind == ingest::FrameKind::kCreate || f.kind == ingest::FrameKind::kCreate2) {
                key.entry = EntryPoint::kConstructor;
            } else if (f.selector) {
                key.entry = EntryPoint::kSelector;
                key.selector = *f.selector;
            }
            return vertex_for(key);
        }

        void add_edge(std::uint32_t src, std::uint32_t dst, EdgeKind kind) {
            auto [it, inserted] = edges_.try_emplace(std::tuple{src, dst, kind}, XtegEdge{src, dst, kind, next_order_, 1});
            if (!inserted) ++it->second.multiplicity;
            ++next_order_;
        }

        void visit(const ingest::CallFrame& f, std::uint32_t executing) {
            const auto self = callee_vertex(f);
            add_edge(executing, self, edge_kind_of(f.kind));
            for (const auto* log : logs_by_frame_[f.order]) {
                const auto event = vertex_for(VertexKey{VertexKind::kLogEvent, log->emitter, EntryPoint::kFallback,
                                                        Selector{}, log->topic0});
                add_edge(self, event, EdgeKind::kEmit);
            }
            for (const auto& child : f.children) visit(child, self);
        }

        static void check_connected(const Xteg& g) {
            const auto n = g.num_vertices();
            std::vector<std::vector<std::uint32_t>> adj(n);
            for (const auto& e : g.edges) {
                adj[e.src].push_back(e.dst);
                adj[e.dst].push_back(e.src);
            }
            std::vector<bool> seen(n, false);
            std::queue<std::uint32_t> q;
            q.push(0);
            seen[0] = true;
            std::uint32_t reached = 1;
            while (!q.empty()) {
                const auto v = q.front();
                q.pop();
                for (auto w : adj[v]) {
                    if (!seen[w]) {
                        seen[w] = true;
                        ++reached;
                        q.push(w);
                    }
                }
            }
            if (reached != n) {
                throw Error{ErrorCode::kDisconnectedGraph, "xTEG for " + g.tx_hash.hex() + " is not weakly connected"};
            }
        }

        const ingest::TxRecord& record_;
        std::vector<const ingest::CallFrame*> frames_;
        std::vector<std::vector<const ingest::LogEntry*>> logs_by_frame_;
        std::map<VertexKey, std::uint32_t> ids_;
        std::vector<Vertex> vertices_;
        std::map<std::tuple<std::uint32_t, std::uint32_t, EdgeKind>, XtegEdge> edges_;
        std::uint32_t next_order_{0};
    };

}  // namespace

Xteg build_xteg(const ingest::TxRecord& record) { return Builder{record}.build(); }

std::size_t raw_edge_count(const Xteg& g) {
    std::size_t n = 0;
    for (const auto& e : g.edges) n += e.multiplicity;
    return n;
}

SimpleDigraph to_simple_digraph(const Xteg& g) {
    std::vector<Arc> arcs;
    arcs.reserve(g.edges.size());
    for (const auto& e : g.edges) arcs.emplace_back(e.src, e.dst);
    return SimpleDigraph::simplify(g.num_vertices(), arcs);
}

void write_edge_list(std::ostream& out, const Xteg& g) {
    out << "# xteg " << g.tx_hash.hex() << ' ' << g.vertices.size() << " vertices " << g.edges.size() << " edges\n";
    for (const auto& v : g.vertices) {
        out << "v " << v.id << ' ' << to_string(v.kind()) << ' ' << v.describe() << '\n';
    }
    for (const auto& e : g.edges) {
        out << e.src << ' ' << e.dst << ' ' << to_string(e.kind) << ' ' << e.order << ' ' << e.multiplicity << '\n';
    }
}

}  // namespace bridgeguard::xteg
