// Copyright 2026 The BridgeGuard Authors
// SPDX-License-Identifier: Apache-2.0

#include <bridgeguard/motif/census.hpp>

#include <algorithm>
#include <numeric>

#include <bridgeguard/common/error.hpp>

namespace bridgeguard::motif {

std::uint64_t LocalFeature::total() const noexcept {
    return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

std::uint64_t LocalFeature::connected_total() const noexcept {
    std::uint64_t s = 0;
    const auto& catalog = motif_catalog();
    for (std::size_t i = 0; i < kNumMotifs; ++i) {
        if (catalog[i].connected) s += counts[i];
    }
    return s;
}

namespace {

    enum Triad : std::size_t {
        k003, k012, k102, k021D, k021U, k021C, k111D, k111U,
        k030T, k030C, k201, k120D, k120U, k120C, k210, k300,
    };

    using Row = std::vector<std::uint32_t>;

    std::int64_t common(const Row& a, const Row& b) {
        std::int64_t n = 0;
        auto i = a.begin();
        auto j = b.begin();
        while (i != a.end() && j != b.end()) {
            if (*i < *j) {
                ++i;
            } else if (*j < *i) {
                ++j;
            } else {
                ++n;
                ++i;
                ++j;
            }
        }
        return n;
    }

    // Sparse 0/1 matrices as sorted rows. For row lists X, Y: (X Y^T)_ab = |X(a) ∩ Y(b)|.
    struct Parts {
        std::vector<Row> mutual;   // B, symmetric
        std::vector<Row> out_asym; // rows of U
        std::vector<Row> in_asym;  // rows of U^T
        std::vector<Row> asym;     // rows of U + U^T
        std::vector<Row> any;      // rows of S = B + U + U^T
    };

    Parts decompose(const xteg::SimpleDigraph& g) {
        const auto n = g.num_vertices();
        Parts p;
        p.mutual.resize(n);
        p.out_asym.resize(n);
        p.in_asym.resize(n);
        p.asym.resize(n);
        p.any.resize(n);
        for (std::uint32_t u = 0; u < n; ++u) {
            for (auto v : g.out(u)) {
                if (g.has_arc(v, u)) {
                    p.mutual[u].push_back(v);
                } else {
                    p.out_asym[u].push_back(v);
                    p.in_asym[v].push_back(u);
                }
            }
        }
        for (std::uint32_t u = 0; u < n; ++u) {
            std::sort(p.in_asym[u].begin(), p.in_asym[u].end());
            std::merge(p.out_asym[u].begin(), p.out_asym[u].end(), p.in_asym[u].begin(), p.in_asym[u].end(),
                       std::back_inserter(p.asym[u]));
            std::merge(p.asym[u].begin(), p.asym[u].end(), p.mutual[u].begin(), p.mutual[u].end(),
                       std::back_inserter(p.any[u]));
        }
        return p;
    }

}  // namespace

LocalFeature motif_census_matrix(const xteg::SimpleDigraph& g) {
    const auto n = g.num_vertices();
    LocalFeature f;
    if (n < 3) return f;

    const Parts p = decompose(g);
    const auto& B = p.mutual;
    const auto& Uo = p.out_asym;
    const auto& Ui = p.in_asym;

    std::array<std::int64_t, kNumMotifs> c{};

    // Full sums of products over all ordered pairs a != b, from degrees:
    //   sum (B^2) = sum_c dB(c)(dB(c)-1)        sum (U^T U) = sum_c dOut(c)(dOut(c)-1)
    //   sum (U U^T) = sum_c dIn(c)(dIn(c)-1)    sum (U^2) = sum_c dIn(c) dOut(c)
    //   sum (B U^T) = sum_c dB(c) dIn(c)        sum (B U) = sum_c dB(c) dOut(c)
    std::int64_t all_bb = 0, all_utu = 0, all_uut = 0, all_uu = 0, all_but = 0, all_bu = 0;
    for (std::uint32_t v = 0; v < n; ++v) {
        const auto db = static_cast<std::int64_t>(B[v].size());
        const auto dout = static_cast<std::int64_t>(Uo[v].size());
        const auto din = static_cast<std::int64_t>(Ui[v].size());
        all_bb += db * (db - 1);
        all_utu += dout * (dout - 1);
        all_uut += din * (din - 1);
        all_uu += din * dout;
        all_but += db * din;
        all_bu += db * dout;
    }

    // The same products restricted to connected ordered pairs (S_ab = 1).
    std::int64_t adj_bb = 0, adj_utu = 0, adj_uut = 0, adj_uu = 0, adj_but = 0, adj_bu = 0;
    // Masked by B (ordered mutual pairs) for the one-mutual and three-mutual triangles.
    std::int64_t b_bb = 0, b_utu = 0, b_uut = 0, b_uu = 0;
    // Masked by U for 210 and the dyads.
    std::int64_t u_bb = 0, u_cycle = 0;
    // Masked by U + U^T for asymmetric triangles.
    std::int64_t asym_triangles6 = 0;
    std::int64_t dyad012 = 0, dyad102x2 = 0;

    const auto nn = static_cast<std::int64_t>(n);
    for (std::uint32_t a = 0; a < n; ++a) {
        for (auto b : p.any[a]) {
            const auto bb = common(B[a], B[b]);
            const auto utu = common(Ui[a], Ui[b]);
            const auto uut = common(Uo[a], Uo[b]);
            const auto uu = common(Uo[a], Ui[b]);
            adj_bb += bb;
            adj_utu += utu;
            adj_uut += uut;
            adj_uu += uu;
            adj_but += common(B[a], Uo[b]);
            adj_bu += common(B[a], Ui[b]);

            const auto shared = common(p.any[a], p.any[b]);
            const auto isolated = nn - static_cast<std::int64_t>(p.any[a].size()) -
                                  static_cast<std::int64_t>(p.any[b].size()) + shared;
            if (std::binary_search(B[a].begin(), B[a].end(), b)) {
                b_bb += bb;
                b_utu += utu;
                b_uut += uut;
                b_uu += uu;
                dyad102x2 += isolated;
            } else {
                asym_triangles6 += common(p.asym[a], p.asym[b]);
                if (std::binary_search(Uo[a].begin(), Uo[a].end(), b)) {
                    u_bb += bb;
                    u_cycle += common(Uo[b], Ui[a]);  // (U^2)_ba for arc a->b
                    dyad012 += isolated;
                }
            }
        }
    }

    c[k300] = b_bb / 6;
    c[k030C] = u_cycle / 3;
    c[k030T] = asym_triangles6 / 6 - c[k030C];
    c[k210] = u_bb;
    c[k120D] = b_utu / 2;
    c[k120U] = b_uut / 2;
    c[k120C] = b_uu;

    c[k201] = (all_bb - adj_bb) / 2;
    c[k021D] = (all_utu - adj_utu) / 2;
    c[k021U] = (all_uut - adj_uut) / 2;
    c[k021C] = all_uu - adj_uu;
    c[k111D] = all_but - adj_but;
    c[k111U] = all_bu - adj_bu;

    c[k012] = dyad012;
    c[k102] = dyad102x2 / 2;

    std::int64_t assigned = 0;
    for (std::size_t i = 1; i < kNumMotifs; ++i) assigned += c[i];
    c[k003] = static_cast<std::int64_t>(choose3(n)) - assigned;

    for (std::size_t i = 0; i < kNumMotifs; ++i) {
        if (c[i] < 0) throw std::logic_error("negative motif count");
        f.counts[i] = static_cast<std::uint64_t>(c[i]);
    }
    return f;
}

LocalFeature motif_census_matrix(std::uint32_t n, const std::vector<xteg::Arc>& arcs) {
    return motif_census_matrix(xteg::SimpleDigraph::from_arcs(n, arcs));
}

LocalFeature triad_census_bruteforce(const xteg::SimpleDigraph& g) {
    const auto n = g.num_vertices();
    if (n > kBruteForceMaxVertices) {
        throw Error{ErrorCode::kGraphTooLarge,
                    "brute-force census limited to " + std::to_string(kBruteForceMaxVertices) + " vertices"};
    }
    const auto& table = triad_class_table();
    LocalFeature f;
    for (std::uint32_t x = 0; x < n; ++x) {
        for (std::uint32_t y = x + 1; y < n; ++y) {
            for (std::uint32_t z = y + 1; z < n; ++z) {
                const auto code = triad_code(g.has_arc(x, y), g.has_arc(y, x), g.has_arc(x, z), g.has_arc(z, x),
                                             g.has_arc(y, z), g.has_arc(z, y));
                ++f.counts[table[code]];
            }
        }
    }
    return f;
}

LocalFeature local_feature(const xteg::Xteg& g) { return motif_census_matrix(xteg::to_simple_digraph(g)); }

}  // namespace bridgeguard::motif
