// Copyright 2026 The BridgeGuard Authors
// SPDX-License-Identifier: Apache-2.0

#include <bridgeguard/motif/catalog.hpp>

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace bridgeguard::motif {

const std::array<MotifClass, kNumMotifs>& motif_catalog() {
    static const std::array<MotifClass, kNumMotifs> catalog{{
        {"M1", "003", "empty", {}, false},
        {"M2", "012", "single arc", {{0, 1}}, false},
        {"M3", "102", "mutual pair", {{0, 1}, {1, 0}}, false},
        {"M4", "021D", "out-star A<-B->C", {{1, 0}, {1, 2}}, true},
        {"M5", "021U", "in-star A->B<-C", {{0, 1}, {2, 1}}, true},
        {"M6", "021C", "path A->B->C", {{0, 1}, {1, 2}}, true},
        {"M7", "111D", "A<->B<-C", {{0, 1}, {1, 0}, {2, 1}}, true},
        {"M8", "111U", "A<->B->C", {{0, 1}, {1, 0}, {1, 2}}, true},
        {"M9", "030T", "transitive triangle", {{0, 1}, {1, 2}, {0, 2}}, true},
        {"M10", "030C", "directed cycle", {{0, 1}, {1, 2}, {2, 0}}, true},
        {"M11", "201", "A<->B<->C", {{0, 1}, {1, 0}, {1, 2}, {2, 1}}, true},
        {"M12", "120D", "A<-C->B, A<->B", {{2, 0}, {2, 1}, {0, 1}, {1, 0}}, true},
        {"M13", "120U", "A->C<-B, A<->B", {{0, 2}, {1, 2}, {0, 1}, {1, 0}}, true},
        {"M14", "120C", "A->B->C, A<->C", {{0, 1}, {1, 2}, {0, 2}, {2, 0}}, true},
        {"M15", "210", "A->B<->C, A<->C", {{0, 1}, {1, 2}, {2, 1}, {0, 2}, {2, 0}}, true},
        {"M16", "300", "complete", {{0, 1}, {1, 0}, {0, 2}, {2, 0}, {1, 2}, {2, 1}}, true},
    }};
    return catalog;
}

namespace {

    unsigned code_of(const std::array<std::array<bool, 3>, 3>& adj) {
        return triad_code(adj[0][1], adj[1][0], adj[0][2], adj[2][0], adj[1][2], adj[2][1]);
    }

}  // namespace

const std::array<std::uint8_t, 64>& triad_class_table() {
    static const auto table = [] {
        std::array<std::uint8_t, 64> t{};
        t.fill(0xff);
        const auto& catalog = motif_catalog();
        for (std::uint8_t c = 0; c < kNumMotifs; ++c) {
            std::array<int, 3> perm{0, 1, 2};
            do {
                std::array<std::array<bool, 3>, 3> adj{};
                for (auto [u, v] : catalog[c].arcs) {
                    adj[static_cast<std::size_t>(perm[static_cast<std::size_t>(u)])]
                       [static_cast<std::size_t>(perm[static_cast<std::size_t>(v)])] = true;
                }
                const auto code = code_of(adj);
                if (t[code] != 0xff && t[code] != c) {
                    throw std::logic_error("motif catalog classes overlap");
                }
                t[code] = c;
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
        if (std::find(t.begin(), t.end(), 0xff) != t.end()) {
            throw std::logic_error("motif catalog does not cover every triad");
        }
        return t;
    }();
    return table;
}

std::string motif_catalog_markdown() {
    std::ostringstream out;
    out << "| Motif | MAN label | Shape | Representative arcs on {0,1,2} | Connected |\n";
    out << "|---|---|---|---|---|\n";
    for (const auto& m : motif_catalog()) {
        out << "| " << m.id << " | " << m.name << " | " << m.description << " | ";
        if (m.arcs.empty()) {
            out << "(none)";
        } else {
            for (std::size_t i = 0; i < m.arcs.size(); ++i) {
                if (i > 0) out << ", ";
                out << m.arcs[i].first << "->" << m.arcs[i].second;
            }
        }
        out << " | " << (m.connected ? "yes" : "no") << " |\n";
    }
    return out.str();
}

}  // namespace bridgeguard::motif
