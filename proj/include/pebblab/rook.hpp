#pragma once
#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pebblab/configuration.hpp"
#include "pebblab/graph.hpp"
#include "pebblab/solver.hpp"

namespace pebblab {

// Vertex of K_n box K_n, 1-based grid coordinates.
struct GridVertex {
    uint32_t row = 1;
    uint32_t col = 1;

    bool operator==(const GridVertex&) const = default;
    auto operator<=>(const GridVertex&) const = default;
};

// K_n box K_n: an n-by-n grid in which every row and every column induces
// a complete graph. Vertices are indexed row-major.
class RookGraph {
public:
    explicit RookGraph(uint32_t n) : n_(n) {
        if (n == 0) throw std::invalid_argument("RookGraph: n must be >= 1");
    }

    uint32_t n() const { return n_; }
    uint32_t vertex_count() const { return n_ * n_; }

    uint32_t index(GridVertex v) const {
        check(v);
        return (v.row - 1) * n_ + (v.col - 1);
    }
    GridVertex vertex(uint32_t idx) const {
        if (idx >= vertex_count()) throw std::out_of_range("RookGraph: index out of range");
        return {idx / n_ + 1, idx % n_ + 1};
    }

    bool adjacent(GridVertex u, GridVertex v) const {
        check(u);
        check(v);
        if (u == v) return false;
        return u.row == v.row || u.col == v.col;
    }

    SimpleGraph to_simple() const {
        SimpleGraph g(vertex_count());
        for (uint32_t a = 0; a < vertex_count(); ++a)
            for (uint32_t b = a + 1; b < vertex_count(); ++b)
                if (adjacent(vertex(a), vertex(b))) g.add_edge(a, b);
        return g;
    }

private:
    void check(GridVertex v) const {
        if (v.row < 1 || v.row > n_ || v.col < 1 || v.col > n_)
            throw std::out_of_range("RookGraph: vertex out of bounds");
    }
    uint32_t n_;
};

// Two distinct grid vertices see each other iff they share a row or column.
inline bool sees(GridVertex u, GridVertex v) {
    if (u == v) throw std::invalid_argument("sees: vertices must be distinct");
    return u.row == v.row || u.col == v.col;
}

// P / T / R split: two or more pebbles, exactly one, none.
struct CitizenPartition {
    std::vector<GridVertex> cops;
    std::vector<GridVertex> citizens;
    std::vector<GridVertex> robbers;
};

inline CitizenPartition classify(const RookGraph& rook, const PebbleConfiguration& config) {
    if (config.n_vertices() != rook.vertex_count())
        throw std::invalid_argument("classify: configuration does not match graph");
    CitizenPartition p;
    for (uint32_t i = 0; i < config.n_vertices(); ++i) {
        GridVertex v = rook.vertex(i);
        if (config.counts[i] >= 2)
            p.cops.push_back(v);
        else if (config.counts[i] == 1)
            p.citizens.push_back(v);
        else
            p.robbers.push_back(v);
    }
    return p;
}

inline bool has_robocop(const PebbleConfiguration& config) {
    return std::any_of(config.counts.begin(), config.counts.end(),
                       [](uint32_t c) { return c >= 4; });
}

// Root already occupied, or some cop shares its row or column.
inline bool direct_catch(const RookGraph& rook, const PebbleConfiguration& config,
                         GridVertex root) {
    uint32_t ri = rook.index(root);
    if (config.counts[ri] >= 1) return true;
    for (uint32_t i = 0; i < config.n_vertices(); ++i) {
        if (config.counts[i] < 2) continue;
        GridVertex v = rook.vertex(i);
        if (v != root && sees(v, root)) return true;
    }
    return false;
}

// One connected component of the citizen subgraph G_C ("sees" graph on
// occupied vertices).
struct ComponentSummary {
    std::vector<GridVertex> members; // sorted lexicographically
    uint32_t cop_count = 0;
    uint32_t size = 0;
};

namespace detail {

// Union-find with path halving.
class UnionFind {
public:
    explicit UnionFind(uint32_t n) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), 0u);
    }
    uint32_t find(uint32_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(uint32_t a, uint32_t b) { parent_[find(a)] = find(b); }

private:
    std::vector<uint32_t> parent_;
};

// Occupied vertices sharing a row (or column) are mutually adjacent in G_C,
// so connectivity only needs one union per vertex to a row bucket and one
// to a column bucket: near-linear instead of quadratic edge enumeration.
// Returns component root label per occupied index, plus cop count per label.
inline void occupied_components(const RookGraph& rook, const PebbleConfiguration& config,
                                std::vector<std::pair<uint32_t, uint32_t>>& occupied_with_label) {
    const uint32_t n = rook.n();
    UnionFind uf(rook.vertex_count() + 2 * n); // grid nodes + row nodes + col nodes
    occupied_with_label.clear();
    for (uint32_t i = 0; i < config.n_vertices(); ++i) {
        if (config.counts[i] == 0) continue;
        uint32_t row = i / n, col = i % n;
        uf.unite(i, rook.vertex_count() + row);
        uf.unite(i, rook.vertex_count() + n + col);
        occupied_with_label.push_back({i, 0});
    }
    for (auto& [idx, label] : occupied_with_label) label = uf.find(idx);
}

} // namespace detail

inline std::vector<ComponentSummary> citizen_components(const RookGraph& rook,
                                                        const PebbleConfiguration& config) {
    std::vector<std::pair<uint32_t, uint32_t>> occ;
    detail::occupied_components(rook, config, occ);
    std::stable_sort(occ.begin(), occ.end(),
                     [](const auto& a, const auto& b) { return a.second < b.second; });
    std::vector<ComponentSummary> out;
    for (std::size_t i = 0; i < occ.size();) {
        std::size_t j = i;
        ComponentSummary comp;
        while (j < occ.size() && occ[j].second == occ[i].second) {
            uint32_t idx = occ[j].first;
            comp.members.push_back(rook.vertex(idx));
            if (config.counts[idx] >= 2) ++comp.cop_count;
            ++j;
        }
        std::sort(comp.members.begin(), comp.members.end());
        comp.size = static_cast<uint32_t>(comp.members.size());
        out.push_back(std::move(comp));
        i = j;
    }
    // Deterministic order: by lexicographically smallest member.
    std::sort(out.begin(), out.end(),
              [](const ComponentSummary& a, const ComponentSummary& b) {
                  return a.members.front() < b.members.front();
              });
    return out;
}

inline bool has_police_component(const RookGraph& rook, const PebbleConfiguration& config) {
    for (const auto& comp : citizen_components(rook, config))
        if (comp.cop_count >= 2) return true;
    return false;
}

struct Move {
    GridVertex from;
    GridVertex to;
    bool operator==(const Move&) const = default;
};
using CatchPlan = std::vector<Move>;

// Replays a plan; throws on an illegal step. Returns the final configuration.
inline PebbleConfiguration replay_plan(const RookGraph& rook, const PebbleConfiguration& start,
                                       const CatchPlan& plan) {
    SimpleGraph g = rook.to_simple();
    PebbleConfiguration c = start;
    for (const Move& m : plan) c = apply_move(c, rook.index(m.from), rook.index(m.to), g);
    return c;
}

namespace detail {

// Shortest "sees" path from one cop to the nearest other cop inside a
// police component, expanding neighbors in lexicographic order for
// deterministic output. Members must be sorted.
inline std::vector<GridVertex> cop_to_cop_path(const RookGraph& rook,
                                               const PebbleConfiguration& config,
                                               const ComponentSummary& comp) {
    const auto& members = comp.members;
    auto is_cop = [&](GridVertex v) { return config.counts[rook.index(v)] >= 2; };
    GridVertex start = *std::find_if(members.begin(), members.end(), is_cop);

    std::vector<int32_t> parent(members.size(), -1);
    std::vector<char> seen(members.size(), 0);
    auto pos = [&](GridVertex v) {
        return static_cast<uint32_t>(
            std::lower_bound(members.begin(), members.end(), v) - members.begin());
    };
    std::queue<uint32_t> q;
    uint32_t s = pos(start);
    seen[s] = 1;
    q.push(s);
    while (!q.empty()) {
        uint32_t u = q.front();
        q.pop();
        if (u != s && is_cop(members[u])) {
            std::vector<GridVertex> path;
            for (int32_t x = static_cast<int32_t>(u); x != -1; x = parent[x])
                path.push_back(members[x]);
            std::reverse(path.begin(), path.end()); // start cop first
            return path;
        }
        for (uint32_t v = 0; v < members.size(); ++v) {
            if (seen[v] || v == u) continue;
            if (!sees(members[u], members[v])) continue;
            seen[v] = 1;
            parent[v] = static_cast<int32_t>(u);
            q.push(v);
        }
    }
    throw std::logic_error("cop_to_cop_path: component has fewer than two cops");
}

} // namespace detail

// Constructive plan from the sufficient conditions, tried in order:
// direct catch, robocop, police component. Absent when none fires.
// tier_out (optional) names the condition used.
inline std::optional<CatchPlan> catch_plan(const RookGraph& rook,
                                           const PebbleConfiguration& config, GridVertex root,
                                           std::string* tier_out = nullptr) {
    if (config.n_vertices() != rook.vertex_count())
        throw std::invalid_argument("catch_plan: configuration does not match graph");
    auto set_tier = [&](const char* t) {
        if (tier_out) *tier_out = t;
    };

    // Direct: root occupied, or a cop sees the root (lex-smallest cop wins).
    if (config.counts[rook.index(root)] >= 1) {
        set_tier("direct");
        return CatchPlan{};
    }
    for (uint32_t i = 0; i < config.n_vertices(); ++i) {
        if (config.counts[i] < 2) continue;
        GridVertex v = rook.vertex(i);
        if (sees(v, root)) {
            set_tier("direct");
            return CatchPlan{{v, root}};
        }
    }
    // Robocop: four pebbles reach any root in two hops via the row/column
    // intersection. No cop sees the root here, so u is in general position.
    for (uint32_t i = 0; i < config.n_vertices(); ++i) {
        if (config.counts[i] < 4) continue;
        GridVertex u = rook.vertex(i);
        GridVertex w{u.row, root.col};
        set_tier("robocop");
        return CatchPlan{{u, w}, {u, w}, {w, root}};
    }
    // Police component: spend cop v1 to drop a citizen at the intersection
    // of v1's line with the root's line, then cascade the far cop down the
    // chain and finish from the intersection vertex.
    auto comps = citizen_components(rook, config);
    for (const auto& comp : comps) {
        if (comp.cop_count < 2) continue;
        auto path = detail::cop_to_cop_path(rook, config, comp);
        GridVertex v1 = path.front();
        GridVertex v2 = path[1];
        // v1 does not see the root (no cop does), so the intersection vertex
        // is distinct from both v1 and root.
        GridVertex v1p = (v1.row == v2.row) ? GridVertex{v1.row, root.col}
                                            : GridVertex{root.row, v1.col};
        CatchPlan plan;
        plan.push_back({v1, v1p});
        for (std::size_t i = path.size() - 1; i >= 2; --i) plan.push_back({path[i], path[i - 1]});
        if (v2 != v1p) plan.push_back({v2, v1p});
        plan.push_back({v1p, root});
        set_tier("police-component");
        return plan;
    }
    return std::nullopt;
}

enum class Verdict { Solvable, Unsolvable, Unknown };

struct TieredVerdict {
    Verdict verdict = Verdict::Unknown;
    std::string tier = "unknown";
    std::optional<CatchPlan> plan; // only for single-root Solvable verdicts
};

inline constexpr uint32_t kExactFallbackMaxVertices = 16;

namespace detail {

struct RookAggregates {
    uint64_t total = 0;
    bool any_cop = false;
    bool any_robocop = false;
    std::vector<uint64_t> row_sum, col_sum;
    std::vector<char> row_cop, col_cop;
};

inline RookAggregates aggregate(const RookGraph& rook, const PebbleConfiguration& config) {
    const uint32_t n = rook.n();
    RookAggregates a;
    a.row_sum.assign(n, 0);
    a.col_sum.assign(n, 0);
    a.row_cop.assign(n, 0);
    a.col_cop.assign(n, 0);
    for (uint32_t i = 0; i < config.n_vertices(); ++i) {
        uint32_t c = config.counts[i];
        if (c == 0) continue;
        uint32_t row = i / n, col = i % n;
        a.total += c;
        a.row_sum[row] += c;
        a.col_sum[col] += c;
        if (c >= 2) {
            a.any_cop = true;
            a.row_cop[row] = 1;
            a.col_cop[col] = 1;
        }
        if (c >= 4) a.any_robocop = true;
    }
    return a;
}

} // namespace detail

// Tiered solvability for one root or (root absent) all roots at once.
// Tier order: sufficient conditions with constructive plans, then sound
// unsolvability certificates (distance weight; frozen board with no cops),
// then the exact solver on small boards, else Unknown. The all-roots mode
// uses row/column aggregates so each root costs O(1) past the setup.
inline TieredVerdict solvable_tiered(const RookGraph& rook, const PebbleConfiguration& config,
                                     std::optional<GridVertex> root = std::nullopt,
                                     const SolveBudget& budget = {}) {
    if (config.n_vertices() != rook.vertex_count())
        throw std::invalid_argument("solvable_tiered: configuration does not match graph");
    const uint32_t n = rook.n();
    const uint32_t N = rook.vertex_count();

    if (n == 1) {
        // Single vertex: it is its own root.
        bool occupied = config.counts[0] >= 1;
        return {occupied ? Verdict::Solvable : Verdict::Unsolvable,
                occupied ? "direct" : "weight-certificate",
                occupied ? std::optional<CatchPlan>(CatchPlan{}) : std::nullopt};
    }

    detail::RookAggregates agg = detail::aggregate(rook, config);

    if (root) {
        std::string tier;
        if (auto plan = catch_plan(rook, config, *root, &tier))
            return {Verdict::Solvable, tier, plan};
        uint32_t ri = rook.index(*root);
        uint32_t row = ri / n, col = ri % n;
        if (config.counts[ri] == 0) {
            // diameter 2: weight*4 = t + (pebbles seeing the root).
            uint64_t s = agg.row_sum[row] + agg.col_sum[col];
            if (agg.total + s < 4) return {Verdict::Unsolvable, "weight-certificate", {}};
            if (!agg.any_cop) return {Verdict::Unsolvable, "frozen", {}};
        }
        if (N <= kExactFallbackMaxVertices) {
            SolveStatus s = is_root_solvable_exact(rook.to_simple(), config, ri, budget);
            if (s == SolveStatus::Solvable) return {Verdict::Solvable, "exact", {}};
            if (s == SolveStatus::Unsolvable) return {Verdict::Unsolvable, "exact", {}};
        }
        return {Verdict::Unknown, "unknown", {}};
    }

    // All-roots verdict.
    if (agg.any_robocop) return {Verdict::Solvable, "robocop", {}};
    if (has_police_component(rook, config)) return {Verdict::Solvable, "police-component", {}};

    bool any_undecided = false;
    std::vector<uint32_t> undecided;
    for (uint32_t i = 0; i < N; ++i) {
        uint32_t row = i / n, col = i % n;
        if (config.counts[i] >= 1 || agg.row_cop[row] || agg.col_cop[col]) continue;
        uint64_t s = agg.row_sum[row] + agg.col_sum[col];
        if (agg.total + s < 4) return {Verdict::Unsolvable, "weight-certificate", {}};
        if (!agg.any_cop) return {Verdict::Unsolvable, "frozen", {}};
        any_undecided = true;
        undecided.push_back(i);
    }
    if (!any_undecided) return {Verdict::Solvable, "direct", {}};
    if (N <= kExactFallbackMaxVertices) {
        SimpleGraph g = rook.to_simple();
        bool exhausted = false;
        for (uint32_t ri : undecided) {
            SolveStatus s = is_root_solvable_exact(g, config, ri, budget);
            if (s == SolveStatus::Unsolvable) return {Verdict::Unsolvable, "exact", {}};
            if (s == SolveStatus::BudgetExhausted) exhausted = true;
        }
        if (!exhausted) return {Verdict::Solvable, "exact", {}};
    }
    return {Verdict::Unknown, "unknown", {}};
}

// Explicit check that (i,j) |-> edge {left_i, right_j} identifies the rook
// graph with the line graph of K_{n,n}: edges of K_{n,n} share an endpoint
// exactly when the grid vertices share a coordinate.
inline bool verify_line_graph_iso(uint32_t n) {
    if (n == 0 || n > 30) throw std::invalid_argument("verify_line_graph_iso: n in [1,30]");
    RookGraph rook(n);
    for (uint32_t a = 0; a < n * n; ++a) {
        GridVertex u = rook.vertex(a);
        for (uint32_t b = a + 1; b < n * n; ++b) {
            GridVertex v = rook.vertex(b);
            bool share_endpoint = (u.row == v.row) || (u.col == v.col);
            if (share_endpoint != rook.adjacent(u, v)) return false;
        }
    }
    return true;
}

// --- JSON wire formats -----------------------------------------------------

inline nlohmann::json rook_config_to_json(const RookGraph& rook,
                                          const PebbleConfiguration& config) {
    nlohmann::json pebbles = nlohmann::json::array();
    for (uint32_t i = 0; i < config.n_vertices(); ++i)
        if (config.counts[i] > 0) {
            GridVertex v = rook.vertex(i);
            pebbles.push_back({v.row, v.col, config.counts[i]});
        }
    return {{"n", rook.n()}, {"pebbles", pebbles}};
}

inline PebbleConfiguration rook_config_from_json(const nlohmann::json& j, RookGraph& rook_out) {
    rook_out = RookGraph(j.at("n").get<uint32_t>());
    PebbleConfiguration c(rook_out.vertex_count());
    for (const auto& entry : j.value("pebbles", nlohmann::json::array())) {
        GridVertex v{entry.at(0).get<uint32_t>(), entry.at(1).get<uint32_t>()};
        c.counts[rook_out.index(v)] += entry.at(2).get<uint32_t>();
    }
    return c;
}

inline nlohmann::json verdict_to_json(const TieredVerdict& v) {
    nlohmann::json j;
    switch (v.verdict) {
        case Verdict::Solvable: j["verdict"] = "solvable"; break;
        case Verdict::Unsolvable: j["verdict"] = "unsolvable"; break;
        case Verdict::Unknown: j["verdict"] = "unknown"; break;
    }
    j["tier"] = v.tier;
    if (v.plan) {
        nlohmann::json plan = nlohmann::json::array();
        for (const Move& m : *v.plan)
            plan.push_back({m.from.row, m.from.col, m.to.row, m.to.col});
        j["plan"] = plan;
    }
    return j;
}

} // namespace pebblab
