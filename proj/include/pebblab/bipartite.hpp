#pragma once
#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "pebblab/configuration.hpp"
#include "pebblab/rng.hpp"
#include "pebblab/rook.hpp"

namespace pebblab {

// Simple bipartite graph on n left + n right vertices. Edges are stored as
// a sorted, duplicate-free list of (left, right) pairs, 0-based.
struct BipartiteSimpleGraph {
    uint32_t n = 0;
    std::vector<std::pair<uint32_t, uint32_t>> edges;

    uint64_t edge_count() const { return edges.size(); }

    void normalize() {
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    }
};

// Bipartite multigraph (model B'): sparse non-negative multiplicities.
struct BipartiteMultigraph {
    uint32_t n = 0;
    // sorted by (left, right); only non-zero multiplicities stored
    std::vector<std::tuple<uint32_t, uint32_t, uint32_t>> edges;

    uint64_t total_edges() const {
        uint64_t m = 0;
        for (const auto& [i, j, mult] : edges) m += mult;
        return m;
    }
};

// The configuration <-> multigraph correspondence: a pebble count c at grid
// vertex (u,v) becomes the edge uv with multiplicity c.
inline BipartiteMultigraph config_to_multigraph(const RookGraph& rook,
                                                const PebbleConfiguration& config) {
    if (config.n_vertices() != rook.vertex_count())
        throw std::invalid_argument("config_to_multigraph: configuration does not match graph");
    BipartiteMultigraph b;
    b.n = rook.n();
    for (uint32_t i = 0; i < config.n_vertices(); ++i)
        if (config.counts[i] > 0) b.edges.push_back({i / b.n, i % b.n, config.counts[i]});
    return b;
}

inline PebbleConfiguration multigraph_to_config(const BipartiteMultigraph& b) {
    PebbleConfiguration c(b.n * b.n);
    for (const auto& [i, j, mult] : b.edges) c.counts[i * b.n + j] += mult;
    return c;
}

// Support: identify parallel edges.
inline BipartiteSimpleGraph support_of(const BipartiteMultigraph& b) {
    BipartiteSimpleGraph s;
    s.n = b.n;
    for (const auto& [i, j, mult] : b.edges)
        if (mult >= 1) s.edges.push_back({i, j});
    s.normalize();
    return s;
}

inline uint64_t support_size(const BipartiteMultigraph& b) {
    uint64_t z = 0;
    for (const auto& [i, j, mult] : b.edges)
        if (mult >= 1) ++z;
    return z;
}

inline uint64_t excess_of(const BipartiteMultigraph& b) { return b.total_edges() - support_size(b); }

// Model A: each of the N = n^2 possible edges present independently with
// probability p.
inline BipartiteSimpleGraph sample_gnp(uint32_t n, double p, uint64_t seed) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("sample_gnp: p outside [0,1]");
    SplitMix64 rng(mix_seed(seed, 0x676e70ull, n));
    BipartiteSimpleGraph g;
    g.n = n;
    for (uint32_t i = 0; i < n; ++i)
        for (uint32_t j = 0; j < n; ++j)
            if (rng.unit() < p) g.edges.push_back({i, j});
    return g;
}

namespace detail {

// Uniform M-subset of {0..slots-1} by partial Fisher-Yates over a sparse
// overlay, O(M) time and memory.
inline std::vector<uint64_t> sample_subset(uint64_t slots, uint64_t M, SplitMix64& rng) {
    if (M > slots) throw std::invalid_argument("sample_subset: M exceeds slot count");
    std::unordered_map<uint64_t, uint64_t> overlay;
    overlay.reserve(2 * M);
    auto slot_at = [&](uint64_t i) {
        auto it = overlay.find(i);
        return it == overlay.end() ? i : it->second;
    };
    std::vector<uint64_t> chosen(M);
    for (uint64_t i = 0; i < M; ++i) {
        uint64_t j = i + rng.below(slots - i);
        uint64_t vi = slot_at(i), vj = slot_at(j);
        overlay[j] = vi;
        chosen[i] = vj;
    }
    return chosen;
}

} // namespace detail

// Model B: uniform over all C(N, M) edge sets of exactly M edges.
inline BipartiteSimpleGraph sample_gnm(uint32_t n, uint64_t M, uint64_t seed) {
    uint64_t N = static_cast<uint64_t>(n) * n;
    if (M > N) throw std::invalid_argument("sample_gnm: M exceeds n^2");
    SplitMix64 rng(mix_seed(seed, 0x676e6dull, n, M));
    BipartiteSimpleGraph g;
    g.n = n;
    for (uint64_t slot : detail::sample_subset(N, M, rng))
        g.edges.push_back({static_cast<uint32_t>(slot / n), static_cast<uint32_t>(slot % n)});
    g.normalize();
    return g;
}

// Model B': uniform over all <N over m> multigraphs, realized as a uniform
// pebble configuration pushed through the correspondence.
inline BipartiteMultigraph sample_multigraph(uint32_t n, uint64_t m, uint64_t seed) {
    RookGraph rook(n);
    return config_to_multigraph(rook, sample_configuration(rook.vertex_count(), m, seed));
}

// One connected component over support edges. Vertex ids: left 0..n-1,
// right n..2n-1. Isolated vertices belong to no component.
struct ComponentReport {
    std::vector<uint32_t> vertices; // sorted
    uint64_t support_edge_count = 0;
    uint64_t cop_edge_count = 0; // edges with multiplicity >= 2
    uint32_t size = 0;           // vertex count
};

inline std::vector<ComponentReport> components_of(const BipartiteMultigraph& b) {
    detail::UnionFind uf(2 * b.n);
    for (const auto& [i, j, mult] : b.edges)
        if (mult >= 1) uf.unite(i, b.n + j);
    std::map<uint32_t, ComponentReport> by_label;
    for (const auto& [i, j, mult] : b.edges) {
        if (mult < 1) continue;
        auto& comp = by_label[uf.find(i)];
        comp.support_edge_count += 1;
        if (mult >= 2) comp.cop_edge_count += 1;
    }
    for (uint32_t v = 0; v < 2 * b.n; ++v) {
        uint32_t label = uf.find(v);
        auto it = by_label.find(label);
        if (it != by_label.end()) it->second.vertices.push_back(v);
    }
    std::vector<ComponentReport> out;
    for (auto& [label, comp] : by_label) {
        std::sort(comp.vertices.begin(), comp.vertices.end());
        comp.size = static_cast<uint32_t>(comp.vertices.size());
        out.push_back(std::move(comp));
    }
    std::sort(out.begin(), out.end(), [](const ComponentReport& a, const ComponentReport& b2) {
        return a.vertices.front() < b2.vertices.front();
    });
    return out;
}

inline std::vector<ComponentReport> components_of(const BipartiteSimpleGraph& g) {
    BipartiteMultigraph b;
    b.n = g.n;
    for (const auto& [i, j] : g.edges) b.edges.push_back({i, j, 1});
    return components_of(b);
}

// Randomized depth-first search over the whole graph (restarting on
// unvisited vertices in random order, neighbors shuffled per visit).
// The deepest point of any DFS tree is the far end of a simple path from
// that tree's root, so the maximum depth reached is a valid lower bound on
// the longest path. Returns the length in edges.
inline uint64_t longest_path_dfs(const BipartiteSimpleGraph& g, uint64_t seed) {
    const uint32_t V = 2 * g.n;
    if (V == 0) return 0;
    std::vector<std::vector<uint32_t>> adj(V);
    for (const auto& [i, j] : g.edges) {
        adj[i].push_back(g.n + j);
        adj[g.n + j].push_back(i);
    }
    SplitMix64 rng(mix_seed(seed, 0x646673ull, g.n));
    std::vector<uint32_t> order(V);
    std::iota(order.begin(), order.end(), 0u);
    for (uint32_t i = V - 1; i > 0; --i)
        std::swap(order[i], order[rng.below(i + 1)]);

    std::vector<char> visited(V, 0);
    uint64_t max_depth = 0;
    // simulated recursion so the recorded depth is the true stack depth;
    // the vertices on the stack form a simple path at all times
    std::vector<std::pair<uint32_t, uint32_t>> stack; // (vertex, next neighbor slot)
    for (uint32_t start : order) {
        if (visited[start]) continue;
        auto expand = [&](uint32_t v) {
            visited[v] = 1;
            auto& nb = adj[v];
            for (uint32_t i = static_cast<uint32_t>(nb.size()); i > 1; --i)
                std::swap(nb[i - 1], nb[rng.below(i)]);
            stack.push_back({v, 0});
            max_depth = std::max(max_depth, static_cast<uint64_t>(stack.size()) - 1);
        };
        expand(start);
        while (!stack.empty()) {
            auto& [v, slot] = stack.back();
            const auto& nb = adj[v];
            while (slot < nb.size() && visited[nb[slot]]) ++slot;
            if (slot < nb.size())
                expand(nb[slot++]);
            else
                stack.pop_back();
        }
    }
    return max_depth;
}

// --- JSON wire formats -----------------------------------------------------

inline nlohmann::json multigraph_to_json(const BipartiteMultigraph& b) {
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& [i, j, mult] : b.edges) edges.push_back({i, j, mult});
    return {{"n", b.n}, {"edges", edges}};
}

inline BipartiteMultigraph multigraph_from_json(const nlohmann::json& j) {
    BipartiteMultigraph b;
    b.n = j.at("n").get<uint32_t>();
    for (const auto& e : j.value("edges", nlohmann::json::array())) {
        uint32_t i = e.at(0).get<uint32_t>(), jj = e.at(1).get<uint32_t>(),
                 mult = e.at(2).get<uint32_t>();
        if (i >= b.n || jj >= b.n) throw std::invalid_argument("multigraph json: vertex out of range");
        if (mult > 0) b.edges.push_back({i, jj, mult});
    }
    std::sort(b.edges.begin(), b.edges.end());
    return b;
}

inline nlohmann::json components_to_json(const std::vector<ComponentReport>& comps) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& c : comps)
        out.push_back({{"vertices", c.vertices},
                       {"support_edge_count", c.support_edge_count},
                       {"cop_edge_count", c.cop_edge_count},
                       {"size", c.size}});
    return out;
}

} // namespace pebblab
