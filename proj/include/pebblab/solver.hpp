#pragma once
#include <cstdint>
#include <cstring>
#include <deque>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "pebblab/configuration.hpp"
#include "pebblab/graph.hpp"

namespace pebblab {

enum class SolveStatus { Solvable, Unsolvable, BudgetExhausted };

struct SolveBudget {
    std::size_t max_states = 1'000'000;
};

// Distance-weight necessary condition: a pebbling step never increases
// sum c(v) * 2^-dist(v, root), and reaching the root needs weight >= 1.
// True certifies root-unsolvability; false says nothing.
inline bool weight_certificate_unsolvable(const SimpleGraph& graph,
                                          const PebbleConfiguration& config, uint32_t root) {
    auto dist = graph.distances_from(root);
    uint32_t dmax = 0;
    for (uint32_t v = 0; v < graph.vertex_count(); ++v)
        if (config.counts[v] > 0) dmax = std::max(dmax, dist[v]);
    if (dmax >= 63) return false; // scaled arithmetic would overflow; give no certificate
    // Compare sum c(v) * 2^(dmax - d(v)) against 2^dmax.
    unsigned __int128 weight = 0;
    for (uint32_t v = 0; v < graph.vertex_count(); ++v)
        if (config.counts[v] > 0)
            weight += static_cast<unsigned __int128>(config.counts[v]) << (dmax - dist[v]);
    return weight < (static_cast<unsigned __int128>(1) << dmax);
}

namespace detail {

// Depth-first search over the reachable configuration space for one root.
// Total pebble count drops by one per move, so the state graph is a DAG and
// plain recursion terminates. Failed states are memoized; successful states
// feed a bounded store used for pointwise-domination shortcuts.
class RootSolver {
public:
    RootSolver(const SimpleGraph& g, uint32_t root, std::size_t max_states)
        : graph_(g), root_(root), max_states_(max_states) {
        auto dist = g.distances_from(root);
        // Expand moves that reduce distance to the root first.
        move_order_.resize(g.vertex_count());
        for (uint32_t u = 0; u < g.vertex_count(); ++u) {
            move_order_[u] = g.neighbors(u);
            std::sort(move_order_[u].begin(), move_order_[u].end(),
                      [&](uint32_t a, uint32_t b) {
                          return dist[a] != dist[b] ? dist[a] < dist[b] : a < b;
                      });
        }
    }

    SolveStatus solve(const PebbleConfiguration& config) { return search(config.counts); }

private:
    SolveStatus search(const std::vector<uint32_t>& counts) {
        if (counts[root_] > 0) return SolveStatus::Solvable;
        if (dominates_known_solvable(counts)) return SolveStatus::Solvable;
        std::string key = pack(counts);
        if (failed_.count(key)) return SolveStatus::Unsolvable;
        if (++states_ > max_states_) return SolveStatus::BudgetExhausted;

        for (uint32_t u = 0; u < counts.size(); ++u) {
            if (counts[u] < 2) continue;
            for (uint32_t v : move_order_[u]) {
                std::vector<uint32_t> child = counts;
                child[u] -= 2;
                child[v] += 1;
                SolveStatus r = search(child);
                if (r == SolveStatus::Solvable) {
                    remember_solvable(counts);
                    return SolveStatus::Solvable;
                }
                if (r == SolveStatus::BudgetExhausted) return r;
            }
        }
        failed_.insert(std::move(key));
        return SolveStatus::Unsolvable;
    }

    bool dominates_known_solvable(const std::vector<uint32_t>& counts) const {
        for (const auto& s : solvable_) {
            bool dom = true;
            for (uint32_t v = 0; v < counts.size(); ++v)
                if (counts[v] < s[v]) {
                    dom = false;
                    break;
                }
            if (dom) return true;
        }
        return false;
    }

    void remember_solvable(const std::vector<uint32_t>& counts) {
        if (solvable_.size() >= kSolvableStoreCap) solvable_.pop_front();
        solvable_.push_back(counts);
    }

    static std::string pack(const std::vector<uint32_t>& counts) {
        std::string key(counts.size() * sizeof(uint32_t), '\0');
        std::memcpy(key.data(), counts.data(), key.size());
        return key;
    }

    static constexpr std::size_t kSolvableStoreCap = 512;

    const SimpleGraph& graph_;
    uint32_t root_;
    std::size_t max_states_;
    std::size_t states_ = 0;
    std::vector<std::vector<uint32_t>> move_order_;
    std::unordered_set<std::string> failed_;
    std::deque<std::vector<uint32_t>> solvable_;
};

} // namespace detail

// Can some sequence of pebbling steps place a pebble on root?
// Intended for small instances; the budget bounds expanded states and its
// exhaustion is a distinct outcome, never silently folded into false.
inline SolveStatus is_root_solvable_exact(const SimpleGraph& graph,
                                          const PebbleConfiguration& config, uint32_t root,
                                          const SolveBudget& budget = {}) {
    if (root >= graph.vertex_count()) throw std::out_of_range("root out of range");
    detail::RootSolver solver(graph, root, budget.max_states);
    return solver.solve(config);
}

// Solvable for every root. BudgetExhausted wins over Solvable but loses to
// a definite Unsolvable (one bad root settles the conjunction).
inline SolveStatus is_solvable_exact(const SimpleGraph& graph, const PebbleConfiguration& config,
                                     const SolveBudget& budget = {}) {
    bool exhausted = false;
    for (uint32_t r = 0; r < graph.vertex_count(); ++r) {
        SolveStatus s = is_root_solvable_exact(graph, config, r, budget);
        if (s == SolveStatus::Unsolvable) return SolveStatus::Unsolvable;
        if (s == SolveStatus::BudgetExhausted) exhausted = true;
    }
    return exhausted ? SolveStatus::BudgetExhausted : SolveStatus::Solvable;
}

// pi(G): smallest t such that every t-pebble configuration is solvable.
// Exhaustive over the configuration space, so tiny graphs only; the caps
// make refusal explicit.
inline uint32_t pebbling_number(const SimpleGraph& graph, uint64_t enumeration_cap = 2'000'000,
                                const SolveBudget& budget = {}) {
    if (!graph.connected()) throw std::invalid_argument("pebbling_number: graph not connected");
    const uint32_t N = graph.vertex_count();
    for (uint32_t t = 1;; ++t) {
        if (configuration_count(N, t) > enumeration_cap)
            throw std::runtime_error("pebbling_number: enumeration cap exceeded at t=" +
                                     std::to_string(t));
        bool all_solvable = true;
        bool exhausted = false;
        for_each_configuration(N, t, [&](const PebbleConfiguration& c) {
            if (!all_solvable || exhausted) return;
            SolveStatus s = is_solvable_exact(graph, c, budget);
            if (s == SolveStatus::Unsolvable) all_solvable = false;
            if (s == SolveStatus::BudgetExhausted) exhausted = true;
        });
        if (exhausted) throw std::runtime_error("pebbling_number: search budget exhausted");
        if (all_solvable) return t;
    }
}

} // namespace pebblab
