#pragma once
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "pebblab/bigmath.hpp"
#include "pebblab/graph.hpp"
#include "pebblab/rng.hpp"

namespace pebblab {

// A placement of pebbles on the vertices 0..N-1 of a host graph.
// Value-semantic; apply_move returns a fresh configuration.
struct PebbleConfiguration {
    std::vector<uint32_t> counts;

    PebbleConfiguration() = default;
    explicit PebbleConfiguration(uint32_t n_vertices) : counts(n_vertices, 0) {}
    explicit PebbleConfiguration(std::vector<uint32_t> c) : counts(std::move(c)) {}

    uint32_t n_vertices() const { return static_cast<uint32_t>(counts.size()); }

    uint64_t total() const {
        return std::accumulate(counts.begin(), counts.end(), uint64_t{0});
    }

    bool operator==(const PebbleConfiguration& o) const = default;

    nlohmann::json to_json() const {
        return {{"n_vertices", n_vertices()}, {"counts", counts}};
    }

    static PebbleConfiguration from_json(const nlohmann::json& j) {
        uint32_t n = j.at("n_vertices").get<uint32_t>();
        PebbleConfiguration c(n);
        if (j.contains("counts")) {
            auto counts = j.at("counts").get<std::vector<uint32_t>>();
            if (counts.size() > n)
                throw std::invalid_argument("configuration json: more counts than vertices");
            std::copy(counts.begin(), counts.end(), c.counts.begin());
        }
        return c;
    }
};

// One pebbling step: two pebbles leave `from`, one arrives at `to`.
inline PebbleConfiguration apply_move(const PebbleConfiguration& config, uint32_t from,
                                      uint32_t to, const SimpleGraph& graph) {
    if (from >= config.n_vertices() || to >= config.n_vertices())
        throw std::out_of_range("apply_move: vertex out of range");
    if (config.counts[from] < 2) throw std::invalid_argument("illegal move: fewer than 2 pebbles");
    if (!graph.adjacent(from, to)) throw std::invalid_argument("not an edge");
    PebbleConfiguration next = config;
    next.counts[from] -= 2;
    next.counts[to] += 1;
    return next;
}

// |C_{N,t}| = <N over t> = C(N+t-1, t), exact.
inline BigInt configuration_count(uint64_t N, uint64_t t) {
    if (N == 0) throw std::invalid_argument("configuration_count: N must be >= 1");
    return multiset_coefficient(N, t);
}

// Visit every multiset of t pebbles over N vertices exactly once, starting
// from (t,0,...,0). The successor rule moves the leftmost pebble block one
// slot right and resets the prefix, which yields the order
// (2,0),(1,1),(0,2) for N=t=2.
inline void for_each_configuration(uint32_t N, uint64_t t,
                                   const std::function<void(const PebbleConfiguration&)>& visit) {
    if (N == 0) throw std::invalid_argument("for_each_configuration: N must be >= 1");
    PebbleConfiguration c(N);
    c.counts[0] = static_cast<uint32_t>(t);
    for (;;) {
        visit(c);
        uint32_t i = 0;
        while (i < N && c.counts[i] == 0) ++i;
        if (i >= N - 1) return; // all pebbles in the last slot (or t == 0)
        uint32_t v = c.counts[i];
        c.counts[i] = 0;
        c.counts[i + 1] += 1;
        c.counts[0] = v - 1;
    }
}

inline constexpr uint64_t kDefaultEnumerationCap = 10'000'000;

// Materialized enumeration; refuses (rather than truncates) above the cap.
inline std::vector<PebbleConfiguration> enumerate_configurations(
    uint32_t N, uint64_t t, uint64_t cap = kDefaultEnumerationCap) {
    BigInt count = configuration_count(N, t);
    if (count > cap)
        throw std::runtime_error("enumerate_configurations: space larger than cap (" +
                                 count.str() + " > " + std::to_string(cap) + ")");
    std::vector<PebbleConfiguration> out;
    out.reserve(count.convert_to<uint64_t>());
    for_each_configuration(N, t, [&](const PebbleConfiguration& c) { out.push_back(c); });
    return out;
}

// Uniform draw over all <N over t> multisets via stars and bars: a uniform
// t-subset of the N+t-1 slot positions marks the pebbles, the remaining
// N-1 slots are urn separators. A pebble in slot p with rank j among the
// chosen slots has p-j separators before it, i.e. lands in urn p-j.
// The t-subset comes from a partial Fisher-Yates shuffle kept sparse in a
// hash map, so the cost is O(t) regardless of N.
inline PebbleConfiguration sample_configuration(uint32_t N, uint64_t t, uint64_t seed) {
    if (N == 0) throw std::invalid_argument("sample_configuration: N must be >= 1");
    PebbleConfiguration c(N);
    if (t == 0) return c;
    const uint64_t slots = static_cast<uint64_t>(N) + t - 1;
    SplitMix64 rng(mix_seed(seed, 0x73616d706c65ull, N, t));
    std::unordered_map<uint64_t, uint64_t> overlay;
    overlay.reserve(2 * t);
    auto slot_at = [&](uint64_t i) {
        auto it = overlay.find(i);
        return it == overlay.end() ? i : it->second;
    };
    std::vector<uint64_t> stars(t);
    for (uint64_t i = 0; i < t; ++i) {
        uint64_t j = i + rng.below(slots - i);
        uint64_t vi = slot_at(i), vj = slot_at(j);
        overlay[j] = vi;
        stars[i] = vj;
    }
    std::sort(stars.begin(), stars.end());
    for (uint64_t j = 0; j < t; ++j) c.counts[stars[j] - j] += 1;
    return c;
}

} // namespace pebblab
