#pragma once
#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "pebblab/bipartite.hpp"
#include "pebblab/configuration.hpp"
#include "pebblab/rook.hpp"
#include "pebblab/stats_util.hpp"
#include "pebblab/support_stats.hpp"

namespace pebblab {

// One row of a threshold sweep. Unknown verdicts are never guessed:
// solvable_lower counts them as unsolvable, solvable_upper as solvable, so
// the true probability is bracketed whenever the tiers are sound.
struct SweepRecord {
    uint32_t n = 0;
    uint64_t N = 0;
    uint64_t t = 0;
    uint64_t trials = 0;
    double solvable_lower = 0;
    double solvable_upper = 0;
    double unknown_rate = 0;
    double ci_low = 0; // 95% Wilson interval on solvable_lower
    double ci_high = 0;
    uint64_t seed = 0;
};

namespace detail {

template <class Fn>
inline void parallel_trials(uint64_t trials, unsigned jobs, Fn&& per_trial) {
    if (jobs <= 1) {
        for (uint64_t i = 0; i < trials; ++i) per_trial(i);
        return;
    }
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < jobs; ++w)
        workers.emplace_back([&, w] {
            for (uint64_t i = w; i < trials; i += jobs) per_trial(i);
        });
    for (auto& th : workers) th.join();
}

struct VerdictTally {
    uint64_t solvable = 0, unsolvable = 0, unknown = 0;
    void add(Verdict v) {
        if (v == Verdict::Solvable)
            ++solvable;
        else if (v == Verdict::Unsolvable)
            ++unsolvable;
        else
            ++unknown;
    }
    void merge(const VerdictTally& o) {
        solvable += o.solvable;
        unsolvable += o.unsolvable;
        unknown += o.unknown;
    }
};

} // namespace detail

// Monte Carlo estimate of the solvable fraction of C_{N,t} on the rook
// graph. Per-trial sub-seeds are a stable mix of (seed, n, t, trial), so the
// result is independent of how trials are scheduled across threads.
inline SweepRecord estimate_solvability(uint32_t n, uint64_t t, uint64_t trials, uint64_t seed,
                                        unsigned jobs = 1) {
    if (trials == 0) throw std::invalid_argument("estimate_solvability: trials must be >= 1");
    RookGraph rook(n);
    const uint64_t N = rook.vertex_count();
    unsigned lanes = std::max(1u, jobs);
    std::vector<detail::VerdictTally> tallies(lanes);
    detail::parallel_trials(trials, lanes, [&](uint64_t trial) {
        uint64_t sub = mix_seed(seed, n, t, trial);
        PebbleConfiguration c = sample_configuration(static_cast<uint32_t>(N), t, sub);
        tallies[trial % lanes].add(solvable_tiered(rook, c).verdict);
    });
    detail::VerdictTally tally;
    for (const auto& lane : tallies) tally.merge(lane);

    SweepRecord rec;
    rec.n = n;
    rec.N = N;
    rec.t = t;
    rec.trials = trials;
    rec.seed = seed;
    rec.solvable_lower = static_cast<double>(tally.solvable) / trials;
    rec.solvable_upper = static_cast<double>(tally.solvable + tally.unknown) / trials;
    rec.unknown_rate = rec.solvable_upper - rec.solvable_lower;
    Interval ci = wilson_interval(tally.solvable, trials);
    rec.ci_low = ci.low;
    rec.ci_high = ci.high;
    return rec;
}

// Exact P(n, t): solvable fraction of the full configuration space, judged
// by the exact solver. Enumeration-capped, so small boards only.
inline BigRat exact_probability(uint32_t n, uint64_t t,
                                uint64_t cap = kDefaultEnumerationCap) {
    RookGraph rook(n);
    const uint32_t N = rook.vertex_count();
    BigInt space = configuration_count(N, t);
    if (space > cap) throw std::runtime_error("exact_probability: enumeration cap exceeded");
    SimpleGraph g = rook.to_simple();
    BigInt solvable = 0;
    for_each_configuration(N, t, [&](const PebbleConfiguration& c) {
        if (is_solvable_exact(g, c) == SolveStatus::Solvable) ++solvable;
    });
    return BigRat(solvable, space);
}

// Geometric grid of t values around t = n, spanning n/16 .. 16n.
inline std::vector<uint64_t> default_t_grid(uint32_t n) {
    std::vector<uint64_t> grid;
    for (int k = -8; k <= 8; ++k) {
        double t = n * std::pow(2.0, k / 2.0);
        grid.push_back(std::max<uint64_t>(1, static_cast<uint64_t>(std::llround(t))));
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

inline std::vector<SweepRecord> sweep(const std::vector<uint32_t>& n_list,
                                      const std::vector<std::vector<uint64_t>>& t_grids,
                                      uint64_t trials, uint64_t seed, unsigned jobs = 1) {
    if (!t_grids.empty() && t_grids.size() != n_list.size())
        throw std::invalid_argument("sweep: t grid count does not match n list");
    std::vector<SweepRecord> rows;
    for (std::size_t i = 0; i < n_list.size(); ++i) {
        const auto grid = t_grids.empty() ? default_t_grid(n_list[i]) : t_grids[i];
        for (uint64_t t : grid)
            rows.push_back(estimate_solvability(n_list[i], t, trials, seed, jobs));
    }
    return rows;
}

inline std::string sweep_csv(const std::vector<SweepRecord>& rows) {
    std::string out = "n,N,t,trials,solvable_lower,solvable_upper,unknown_rate,ci_low,ci_high,seed\n";
    char buf[256];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%u,%llu,%llu,%llu,%.6f,%.6f,%.6f,%.6f,%.6f,%llu\n", r.n,
                      static_cast<unsigned long long>(r.N), static_cast<unsigned long long>(r.t),
                      static_cast<unsigned long long>(r.trials), r.solvable_lower,
                      r.solvable_upper, r.unknown_rate, r.ci_low, r.ci_high,
                      static_cast<unsigned long long>(r.seed));
        out += buf;
    }
    return out;
}

struct ThresholdLocation {
    uint64_t t_half = 0;
    // evaluated grid, raw and isotonic-smoothed lower estimates
    std::vector<uint64_t> t_values;
    std::vector<double> raw;
    std::vector<double> smoothed;
};

// Median crossing of the solvability curve: bisection on the raw lower
// estimate over t in [1, 3N+1], then pool-adjacent-violators smoothing of
// everything evaluated, then the smallest evaluated t with smoothed
// estimate >= 1/2. Throws if the curve never crosses.
inline ThresholdLocation locate_t_half(uint32_t n, uint64_t trials, uint64_t seed,
                                       uint64_t tolerance = 1, unsigned jobs = 1) {
    RookGraph rook(n);
    const uint64_t t_max = 3 * static_cast<uint64_t>(rook.vertex_count()) + 1;
    std::map<uint64_t, double> evaluated;
    auto estimate = [&](uint64_t t) {
        auto it = evaluated.find(t);
        if (it != evaluated.end()) return it->second;
        double v = estimate_solvability(n, t, trials, seed, jobs).solvable_lower;
        evaluated[t] = v;
        return v;
    };

    uint64_t lo = 1, hi = t_max;
    if (estimate(hi) < 0.5)
        throw std::runtime_error("locate_t_half: estimate never crosses 1/2 (flat curve)");
    if (estimate(lo) >= 0.5) {
        hi = lo;
    } else {
        while (hi - lo > std::max<uint64_t>(1, tolerance)) {
            uint64_t mid = lo + (hi - lo) / 2;
            (estimate(mid) >= 0.5 ? hi : lo) = mid;
        }
    }

    ThresholdLocation loc;
    for (const auto& [t, v] : evaluated) {
        loc.t_values.push_back(t);
        loc.raw.push_back(v);
    }
    loc.smoothed = isotonic_fit(loc.raw, std::vector<double>(loc.raw.size(), 1.0));
    for (std::size_t i = 0; i < loc.t_values.size(); ++i)
        if (loc.smoothed[i] >= 0.5) {
            loc.t_half = loc.t_values[i];
            return loc;
        }
    throw std::runtime_error("locate_t_half: smoothed estimate never crosses 1/2");
}

struct ScalingRow {
    uint32_t n;
    uint64_t t_half;
    double ratio; // t_half / sqrt(N) = t_half / n
};

struct ScalingReport {
    std::vector<ScalingRow> rows;
    double max_over_min_ratio = 0;
};

// Empirical sqrt(N) collapse: t_half should grow linearly in n, so the
// ratios t_half/n across n should stay within a constant band.
inline ScalingReport scaling_report(const std::vector<uint32_t>& n_list, uint64_t trials,
                                    uint64_t seed, unsigned jobs = 1) {
    ScalingReport rep;
    double lo = std::numeric_limits<double>::infinity(), hi = 0;
    for (uint32_t n : n_list) {
        auto loc = locate_t_half(n, trials, seed, 1, jobs);
        double ratio = static_cast<double>(loc.t_half) / n;
        rep.rows.push_back({n, loc.t_half, ratio});
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    rep.max_over_min_ratio = rep.rows.empty() ? 0 : hi / lo;
    return rep;
}

// --- model transfer --------------------------------------------------------

struct GraphProperty {
    enum class Kind {
        LargestComponentAtLeast, // >= threshold vertices
        ContainsPathAtLeast,     // DFS-found path >= threshold edges
        CopPairInOneComponent,   // some component with >= 2 multiplicity-2 edges
    };
    Kind kind = Kind::LargestComponentAtLeast;
    uint64_t threshold = 0;

    std::string name() const {
        switch (kind) {
            case Kind::LargestComponentAtLeast:
                return "largest-component>=" + std::to_string(threshold);
            case Kind::ContainsPathAtLeast:
                return "contains-path>=" + std::to_string(threshold);
            case Kind::CopPairInOneComponent:
                return "has-cop-pair-in-one-component";
        }
        return "?";
    }

    bool holds(const BipartiteMultigraph& b, uint64_t dfs_seed) const {
        switch (kind) {
            case Kind::LargestComponentAtLeast: {
                for (const auto& comp : components_of(b))
                    if (comp.size >= threshold) return true;
                return threshold == 0;
            }
            case Kind::ContainsPathAtLeast:
                return longest_path_dfs(support_of(b), dfs_seed) >= threshold;
            case Kind::CopPairInOneComponent: {
                for (const auto& comp : components_of(b))
                    if (comp.cop_edge_count >= 2) return true;
                return false;
            }
        }
        return false;
    }
};

inline BipartiteMultigraph as_multigraph(const BipartiteSimpleGraph& g) {
    BipartiteMultigraph b;
    b.n = g.n;
    for (const auto& [i, j] : g.edges) b.edges.push_back({i, j, 1});
    return b;
}

struct TransferReport {
    uint32_t n = 0;
    uint64_t m = 0;
    uint64_t M = 0;
    double p = 0;
    std::string property;
    double freq_a = 0;
    double freq_b = 0;
    double freq_bprime = 0;
    uint64_t trials = 0;
    uint64_t seed = 0;

    nlohmann::json to_json() const {
        return {{"n", n},           {"m", m},           {"M", M},
                {"p", p},           {"property", property}, {"freq_a", freq_a},
                {"freq_b", freq_b}, {"freq_bprime", freq_bprime}, {"trials", trials},
                {"seed", seed}};
    }
};

// Frequencies of an increasing property under models A (gnp with p = M/N),
// B (gnm with M = round(mq)) and B' (uniform multigraph with m edges).
inline TransferReport model_transfer_experiment(uint32_t n, uint64_t m,
                                                const GraphProperty& property, uint64_t trials,
                                                uint64_t seed, unsigned jobs = 1) {
    if (trials == 0) throw std::invalid_argument("model_transfer_experiment: trials must be >= 1");
    const uint64_t N = static_cast<uint64_t>(n) * n;
    double q = m == 0 ? 1.0 : to_double(support_q(N, m));
    uint64_t M = static_cast<uint64_t>(std::llround(static_cast<double>(m) * q));
    double p = static_cast<double>(M) / static_cast<double>(N);

    unsigned lanes = std::max(1u, jobs);
    std::vector<std::array<uint64_t, 3>> hits(lanes, {0, 0, 0});
    detail::parallel_trials(trials, lanes, [&](uint64_t trial) {
        uint64_t sa = mix_seed(seed, 0xa0, n, trial);
        uint64_t sb = mix_seed(seed, 0xb0, n, trial);
        uint64_t sc = mix_seed(seed, 0xb1, n, trial);
        auto& h = hits[trial % lanes];
        if (property.holds(as_multigraph(sample_gnp(n, p, sa)), mix_seed(sa, 1))) ++h[0];
        if (property.holds(as_multigraph(sample_gnm(n, M, sb)), mix_seed(sb, 1))) ++h[1];
        if (property.holds(sample_multigraph(n, m, sc), mix_seed(sc, 1))) ++h[2];
    });
    std::array<uint64_t, 3> total{0, 0, 0};
    for (const auto& h : hits)
        for (int i = 0; i < 3; ++i) total[i] += h[i];

    TransferReport rep;
    rep.n = n;
    rep.m = m;
    rep.M = M;
    rep.p = p;
    rep.property = property.name();
    rep.freq_a = static_cast<double>(total[0]) / trials;
    rep.freq_b = static_cast<double>(total[1]) / trials;
    rep.freq_bprime = static_cast<double>(total[2]) / trials;
    rep.trials = trials;
    rep.seed = seed;
    return rep;
}

// --- police components -----------------------------------------------------

struct PoliceReport {
    uint32_t n = 0;
    uint64_t m = 0;
    double alpha = 0;
    double freq_large_component = 0; // largest component >= alpha * 2n vertices
    double freq_police = 0;          // largest component has >= 2 cop edges
    double mean_excess = 0;
    uint64_t trials = 0;
    uint64_t seed = 0;

    nlohmann::json to_json() const {
        return {{"n", n},       {"m", m},
                {"alpha", alpha}, {"freq_large_component", freq_large_component},
                {"freq_police", freq_police}, {"mean_excess", mean_excess},
                {"trials", trials}, {"seed", seed}};
    }
};

inline PoliceReport police_component_experiment(uint32_t n, uint64_t m, uint64_t trials,
                                                uint64_t seed,
                                                std::optional<double> alpha = std::nullopt,
                                                unsigned jobs = 1) {
    if (trials == 0)
        throw std::invalid_argument("police_component_experiment: trials must be >= 1");
    const uint64_t N = static_cast<uint64_t>(n) * n;
    double q = m == 0 ? 1.0 : to_double(support_q(N, m));
    double a = alpha.value_or(q / 4.0);

    unsigned lanes = std::max(1u, jobs);
    struct Lane {
        uint64_t large = 0, police = 0;
        double excess = 0;
    };
    std::vector<Lane> lanesv(lanes);
    detail::parallel_trials(trials, lanes, [&](uint64_t trial) {
        auto b = sample_multigraph(n, m, mix_seed(seed, 0x706f6cull, trial));
        auto comps = components_of(b);
        const ComponentReport* largest = nullptr;
        for (const auto& c : comps)
            if (!largest || c.size > largest->size) largest = &c;
        auto& lane = lanesv[trial % lanes];
        if (largest && largest->size >= a * 2.0 * n) ++lane.large;
        if (largest && largest->cop_edge_count >= 2) ++lane.police;
        lane.excess += static_cast<double>(excess_of(b));
    });
    PoliceReport rep;
    rep.n = n;
    rep.m = m;
    rep.alpha = a;
    rep.trials = trials;
    rep.seed = seed;
    uint64_t large = 0, police = 0;
    double excess = 0;
    for (const auto& lane : lanesv) {
        large += lane.large;
        police += lane.police;
        excess += lane.excess;
    }
    rep.freq_large_component = static_cast<double>(large) / trials;
    rep.freq_police = static_cast<double>(police) / trials;
    rep.mean_excess = excess / static_cast<double>(trials);
    return rep;
}

// --- long path -------------------------------------------------------------

struct PathReport {
    uint32_t n = 0;
    double beta = 0;
    double p = 0;
    uint64_t bound = 0; // ceil((1 - ln16/beta) * 2n)
    double fraction_meeting_bound = 0;
    uint64_t trials = 0;
    uint64_t seed = 0;

    nlohmann::json to_json() const {
        return {{"n", n}, {"beta", beta}, {"p", p}, {"bound", bound},
                {"fraction_meeting_bound", fraction_meeting_bound},
                {"trials", trials}, {"seed", seed}};
    }
};

inline PathReport path_experiment(uint32_t n, double beta, uint64_t trials, uint64_t seed,
                                  unsigned jobs = 1) {
    const double ln16 = std::log(16.0);
    if (!(beta > ln16)) throw std::invalid_argument("path_experiment: beta must exceed ln 16");
    if (trials == 0) throw std::invalid_argument("path_experiment: trials must be >= 1");
    double bound_real = (1.0 - ln16 / beta) * 2.0 * n;
    PathReport rep;
    rep.n = n;
    rep.beta = beta;
    rep.p = beta / n;
    rep.bound = static_cast<uint64_t>(std::ceil(bound_real));
    rep.trials = trials;
    rep.seed = seed;

    unsigned lanes = std::max(1u, jobs);
    std::vector<uint64_t> hits(lanes, 0);
    detail::parallel_trials(trials, lanes, [&](uint64_t trial) {
        uint64_t sub = mix_seed(seed, 0x70617468ull, trial);
        auto g = sample_gnp(n, rep.p, sub);
        if (static_cast<double>(longest_path_dfs(g, mix_seed(sub, 1))) >= bound_real)
            ++hits[trial % lanes];
    });
    uint64_t total = 0;
    for (uint64_t h : hits) total += h;
    rep.fraction_meeting_bound = static_cast<double>(total) / trials;
    return rep;
}

} // namespace pebblab
