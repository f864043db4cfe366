#pragma once
#include <algorithm>
#include <cstdint>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

namespace pebblab {

// Undirected simple graph, adjacency-list representation.
// Self-loops and parallel edges are rejected at insertion.
class SimpleGraph {
public:
    explicit SimpleGraph(uint32_t vertex_count) : adj_(vertex_count) {
        if (vertex_count == 0) throw std::invalid_argument("SimpleGraph: empty vertex set");
    }

    uint32_t vertex_count() const { return static_cast<uint32_t>(adj_.size()); }

    void add_edge(uint32_t u, uint32_t v) {
        check_vertex(u);
        check_vertex(v);
        if (u == v) throw std::invalid_argument("SimpleGraph: self-loop");
        if (adjacent(u, v)) return;
        insert_sorted(adj_[u], v);
        insert_sorted(adj_[v], u);
    }

    bool adjacent(uint32_t u, uint32_t v) const {
        check_vertex(u);
        check_vertex(v);
        const auto& nb = adj_[u];
        return std::binary_search(nb.begin(), nb.end(), v);
    }

    const std::vector<uint32_t>& neighbors(uint32_t v) const {
        check_vertex(v);
        return adj_[v];
    }

    uint64_t edge_count() const {
        uint64_t deg_sum = 0;
        for (const auto& nb : adj_) deg_sum += nb.size();
        return deg_sum / 2;
    }

    // BFS distances from root; unreachable vertices get UINT32_MAX.
    std::vector<uint32_t> distances_from(uint32_t root) const {
        check_vertex(root);
        std::vector<uint32_t> dist(vertex_count(), std::numeric_limits<uint32_t>::max());
        std::queue<uint32_t> q;
        dist[root] = 0;
        q.push(root);
        while (!q.empty()) {
            uint32_t u = q.front();
            q.pop();
            for (uint32_t v : adj_[u]) {
                if (dist[v] == std::numeric_limits<uint32_t>::max()) {
                    dist[v] = dist[u] + 1;
                    q.push(v);
                }
            }
        }
        return dist;
    }

    bool connected() const {
        auto d = distances_from(0);
        return std::all_of(d.begin(), d.end(),
                           [](uint32_t x) { return x != std::numeric_limits<uint32_t>::max(); });
    }

    static SimpleGraph complete(uint32_t n) {
        SimpleGraph g(n);
        for (uint32_t u = 0; u < n; ++u)
            for (uint32_t v = u + 1; v < n; ++v) g.add_edge(u, v);
        return g;
    }

    static SimpleGraph path(uint32_t n) {
        SimpleGraph g(n);
        for (uint32_t v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
        return g;
    }

private:
    void check_vertex(uint32_t v) const {
        if (v >= adj_.size()) throw std::out_of_range("SimpleGraph: vertex out of range");
    }
    static void insert_sorted(std::vector<uint32_t>& nb, uint32_t v) {
        nb.insert(std::lower_bound(nb.begin(), nb.end(), v), v);
    }

    std::vector<std::vector<uint32_t>> adj_;
};

} // namespace pebblab
