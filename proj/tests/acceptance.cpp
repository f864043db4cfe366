// Acceptance suite: one quantitative criterion per check, each printed as a
// single PASS/FAIL line. Exit status is the number of failed criteria.
// Optionally pass criterion numbers as arguments to run a subset.
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "pebblab/threshold.hpp"

using namespace pebblab;

namespace {

unsigned jobs() {
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : std::min(hw, 8u);
}

constexpr uint64_t kSeed = 20240117;

struct Outcome {
    bool pass;
    std::string detail;
};

// 1. Sufficient conditions (police component, robocop, all-roots direct
//    catch) are confirmed solvable by the exact solver; zero violations.
Outcome criterion_claim1_soundness() {
    uint64_t checked = 0, sufficient = 0, violations = 0;
    for (uint32_t n : {2u, 3u}) {
        RookGraph rook(n);
        SimpleGraph g = rook.to_simple();
        const uint32_t N = rook.vertex_count();
        auto all_roots_direct = [&](const PebbleConfiguration& c) {
            for (uint32_t r = 0; r < N; ++r)
                if (!direct_catch(rook, c, rook.vertex(r))) return false;
            return true;
        };
        auto check = [&](const PebbleConfiguration& c) {
            ++checked;
            if (!(has_robocop(c) || has_police_component(rook, c) || all_roots_direct(c)))
                return;
            ++sufficient;
            if (is_solvable_exact(g, c) != SolveStatus::Solvable) ++violations;
        };
        for (uint64_t t = 1; t <= 3 * N + 1; ++t) {
            BigInt space = configuration_count(N, t);
            if (space <= 700) {
                for_each_configuration(N, t, check);
            } else {
                for (uint64_t i = 0; i < 700; ++i)
                    check(sample_configuration(N, t, mix_seed(kSeed, n, t, i)));
            }
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "%llu configs, %llu sufficient, %llu violations",
                  (unsigned long long)checked, (unsigned long long)sufficient,
                  (unsigned long long)violations);
    return {violations == 0 && sufficient > 0, buf};
}

// 2. 10,000 emitted catch plans (n <= 10) replay cleanly and end with a
//    pebble on the root.
Outcome criterion_plan_replay() {
    uint64_t replayed = 0, violations = 0;
    SplitMix64 rng(mix_seed(kSeed, 2));
    while (replayed < 10000) {
        uint32_t n = 2 + static_cast<uint32_t>(rng.below(9)); // 2..10
        RookGraph rook(n);
        uint64_t t = 1 + rng.below(3ull * n);
        auto c = sample_configuration(rook.vertex_count(), t, rng.next());
        GridVertex root = rook.vertex(static_cast<uint32_t>(rng.below(rook.vertex_count())));
        auto plan = catch_plan(rook, c, root);
        if (!plan) continue;
        ++replayed;
        try {
            auto fin = replay_plan(rook, c, *plan);
            if (fin.counts[rook.index(root)] < 1) ++violations;
        } catch (const std::exception&) {
            ++violations;
        }
    }
    char buf[120];
    std::snprintf(buf, sizeof buf, "%llu plans replayed, %llu violations",
                  (unsigned long long)replayed, (unsigned long long)violations);
    return {violations == 0, buf};
}

// 3. Support law exactness on the full N,m <= 12 grid, including the
//    exhaustive enumeration oracle (rational equality throughout).
Outcome criterion_support_law() {
    for (uint64_t N = 1; N <= 12; ++N)
        for (uint64_t m = 1; m <= 12; ++m) {
            BigRat q = support_q(N, m);
            BigRat sum = 0;
            for (uint64_t s = 0; s <= std::min(N, m); ++s) sum += support_pmf(N, m, s);
            if (sum != 1) return {false, "pmf does not sum to 1"};
            if (support_moment(N, m, 1) != BigRat(m) * q) return {false, "mean != mq"};
            BigRat var_closed = support_variance(N, m);
            BigRat var_moments =
                support_moment(N, m, 2) - support_moment(N, m, 1) * support_moment(N, m, 1);
            if (var_closed != var_moments) return {false, "variance mismatch"};
            // enumeration oracle
            std::vector<BigInt> hist(std::min(N, m) + 1, 0);
            for_each_configuration(static_cast<uint32_t>(N), m,
                                   [&](const PebbleConfiguration& c) {
                                       uint64_t z = 0;
                                       for (uint32_t x : c.counts) z += x > 0;
                                       ++hist[z];
                                   });
            BigInt space = configuration_count(N, m);
            BigInt mean_num = 0, sq_num = 0;
            for (uint64_t s = 0; s < hist.size(); ++s) {
                if (support_pmf(N, m, s) != BigRat(hist[s], space))
                    return {false, "pmf != enumeration"};
                mean_num += BigInt(s) * hist[s];
                sq_num += BigInt(s) * BigInt(s) * hist[s];
            }
            if (support_moment(N, m, 1) != BigRat(mean_num, space))
                return {false, "mean != enumeration"};
            if (support_moment(N, m, 2) != BigRat(sq_num, space))
                return {false, "second moment != enumeration"};
        }
    return {true, "all N,m <= 12 exact (pmf, mean=mq, variance, enumeration oracle)"};
}

// 4. Empirical concentration of Z at (n,m)=(30,300), 1e5 samples.
Outcome criterion_concentration() {
    const uint32_t n = 30;
    const uint64_t m = 300, N = 900, trials = 100000;
    double mq = to_double(BigRat(m) * support_q(N, m));
    double var_closed = to_double(support_variance(N, m));
    double sum = 0, sumsq = 0;
    for (uint64_t i = 0; i < trials; ++i) {
        double z = static_cast<double>(support_size(sample_multigraph(n, m, mix_seed(kSeed, 4, i))));
        sum += z;
        sumsq += z * z;
    }
    double mean = sum / trials;
    double var_emp = (sumsq - trials * mean * mean) / (trials - 1);
    double mean_tol = 4.0 * std::sqrt(var_closed / trials);
    bool pass = std::abs(mean - mq) <= mean_tol &&
                std::abs(var_emp - var_closed) <= 0.10 * var_closed;
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "mean %.4f vs mq %.4f (tol %.4f); var %.3f vs %.3f (tol 10%%)", mean, mq,
                  mean_tol, var_emp, var_closed);
    return {pass, buf};
}

// 5. Monte Carlo vs exact oracle at n=2, t=1..12, 1e5 trials, unknown-free.
Outcome criterion_monte_carlo_vs_exact() {
    double worst = 0;
    for (uint64_t t = 1; t <= 12; ++t) {
        double exact = to_double(exact_probability(2, t));
        auto rec = estimate_solvability(2, t, 100000, kSeed, jobs());
        if (rec.unknown_rate != 0.0) return {false, "unknown verdicts at n=2"};
        worst = std::max(worst, std::abs(rec.solvable_lower - exact));
    }
    char buf[80];
    std::snprintf(buf, sizeof buf, "max |estimate - exact| = %.4f (tol 0.01)", worst);
    return {worst <= 0.01, buf};
}

// 6. Threshold collapse: t_half/n within a factor 2 across n=16..128, and
//    the n=128 curve saturates at t=16n and vanishes at t=n/16.
Outcome criterion_threshold_collapse() {
    std::vector<double> ratios;
    std::string detail;
    for (uint32_t n : {16u, 32u, 64u, 128u}) {
        auto loc = locate_t_half(n, 1000, kSeed, 1, jobs());
        ratios.push_back(static_cast<double>(loc.t_half) / n);
        detail += "t_half(" + std::to_string(n) + ")=" + std::to_string(loc.t_half) + " ";
    }
    double lo = *std::min_element(ratios.begin(), ratios.end());
    double hi = *std::max_element(ratios.begin(), ratios.end());
    auto top = estimate_solvability(128, 16 * 128, 1000, kSeed, jobs());
    auto bottom = estimate_solvability(128, 128 / 16, 1000, kSeed, jobs());
    char buf[120];
    std::snprintf(buf, sizeof buf, "max/min ratio %.3f; P(16n)=%.3f P(n/16)=%.3f", hi / lo,
                  top.solvable_lower, bottom.solvable_upper);
    bool pass = hi / lo <= 2.0 && top.solvable_lower >= 0.9 && bottom.solvable_upper <= 0.1;
    return {pass, detail + buf};
}

// 7. Police-component frequency and mean excess at n=128, m=ceil(n ln n).
Outcome criterion_police_component() {
    const uint32_t n = 128;
    const uint64_t m = static_cast<uint64_t>(std::ceil(n * std::log(static_cast<double>(n))));
    auto rep = police_component_experiment(n, m, 200, kSeed, std::nullopt, jobs());
    double expected_excess = static_cast<double>(m) -
                             to_double(BigRat(m) * support_q(static_cast<uint64_t>(n) * n, m));
    bool pass = rep.freq_police >= 0.9 &&
                std::abs(rep.mean_excess - expected_excess) <= 0.05 * expected_excess;
    char buf[160];
    std::snprintf(buf, sizeof buf, "m=%llu freq_police=%.3f mean_excess=%.2f (expect %.2f +-5%%)",
                  (unsigned long long)m, rep.freq_police, rep.mean_excess, expected_excess);
    return {pass, buf};
}

// 8. Long-path bound: DFS path >= 276 on B(256, 6/256) in >= 90% of trials.
Outcome criterion_long_path() {
    auto rep = path_experiment(256, 6.0, 50, kSeed, jobs());
    char buf[120];
    std::snprintf(buf, sizeof buf, "bound=%llu fraction=%.3f",
                  (unsigned long long)rep.bound, rep.fraction_meeting_bound);
    return {rep.bound == 276 && rep.fraction_meeting_bound >= 0.9, buf};
}

// 9. Model transfer: pairwise frequency differences among A, B, B' <= 0.05
//    for "largest component >= n vertices" at n=64, m=4n.
Outcome criterion_model_transfer() {
    const uint32_t n = 64;
    GraphProperty prop{GraphProperty::Kind::LargestComponentAtLeast, n};
    auto rep = model_transfer_experiment(n, 4ull * n, prop, 2000, kSeed, jobs());
    double d1 = std::abs(rep.freq_a - rep.freq_b);
    double d2 = std::abs(rep.freq_b - rep.freq_bprime);
    double d3 = std::abs(rep.freq_a - rep.freq_bprime);
    double worst = std::max({d1, d2, d3});
    char buf[140];
    std::snprintf(buf, sizeof buf, "freqs A=%.3f B=%.3f B'=%.3f max diff %.3f (tol 0.05)",
                  rep.freq_a, rep.freq_b, rep.freq_bprime, worst);
    return {worst <= 0.05, buf};
}

// 10. Sampler uniformity: chi-square over all multisets (N=4,t=3) and all
//     multigraphs (n=2,m=2), 1e5 samples each, p > 0.001.
Outcome criterion_sampler_uniformity() {
    const uint64_t samples = 100000;

    auto cells = enumerate_configurations(4, 3);
    std::map<std::vector<uint32_t>, std::size_t> index;
    for (std::size_t i = 0; i < cells.size(); ++i) index[cells[i].counts] = i;
    std::vector<uint64_t> obs(cells.size(), 0);
    for (uint64_t i = 0; i < samples; ++i)
        ++obs[index.at(sample_configuration(4, 3, mix_seed(kSeed, 10, i)).counts)];
    double p1 = chi_square_p_value(
        chi_square_statistic(obs, std::vector<double>(cells.size(), 1.0 / cells.size()), samples),
        static_cast<double>(cells.size() - 1));

    std::map<std::vector<std::tuple<uint32_t, uint32_t, uint32_t>>, uint64_t> hist;
    for (uint64_t i = 0; i < samples; ++i)
        ++hist[sample_multigraph(2, 2, mix_seed(kSeed, 11, i)).edges];
    if (hist.size() != 10) return {false, "multigraph sampler missed outcomes"};
    std::vector<uint64_t> obs2;
    for (const auto& [k, v] : hist) obs2.push_back(v);
    double p2 = chi_square_p_value(
        chi_square_statistic(obs2, std::vector<double>(10, 0.1), samples), 9);

    char buf[100];
    std::snprintf(buf, sizeof buf, "p(configs)=%.4f p(multigraphs)=%.4f (floor 0.001)", p1, p2);
    return {p1 > 0.001 && p2 > 0.001, buf};
}

// 11. Pigeonhole ceiling: t = 3N+1 forces a robocop, so the tiered solver
//     returns Solvable on every trial at n in {4, 8}.
Outcome criterion_pigeonhole() {
    for (uint32_t n : {4u, 8u}) {
        RookGraph rook(n);
        const uint64_t t = 3ull * rook.vertex_count() + 1;
        for (uint64_t i = 0; i < 1000; ++i) {
            auto c = sample_configuration(rook.vertex_count(), t, mix_seed(kSeed, 12, n, i));
            if (solvable_tiered(rook, c).verdict != Verdict::Solvable)
                return {false, "non-solvable verdict at t=3N+1"};
        }
    }
    return {true, "2000/2000 solvable at t=3N+1"};
}

} // namespace

int main(int argc, char** argv) {
    struct Criterion {
        int id;
        const char* name;
        Outcome (*run)();
    };
    const Criterion criteria[] = {
        {1, "sufficiency soundness (police/robocop/direct)", criterion_claim1_soundness},
        {2, "catch plan replay", criterion_plan_replay},
        {3, "support law exactness", criterion_support_law},
        {4, "empirical concentration of Z", criterion_concentration},
        {5, "monte carlo vs exact oracle (n=2)", criterion_monte_carlo_vs_exact},
        {6, "threshold collapse t_half = Theta(n)", criterion_threshold_collapse},
        {7, "police component frequency", criterion_police_component},
        {8, "long DFS path bound", criterion_long_path},
        {9, "model transfer A/B/B'", criterion_model_transfer},
        {10, "sampler uniformity", criterion_sampler_uniformity},
        {11, "pigeonhole ceiling at t=3N+1", criterion_pigeonhole},
    };

    std::set<int> selected;
    for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

    int failures = 0;
    for (const auto& c : criteria) {
        if (!selected.empty() && !selected.count(c.id)) continue;
        Outcome o = c.run();
        std::printf("[%s] criterion %2d: %s — %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                    o.detail.c_str());
        std::fflush(stdout);
        if (!o.pass) ++failures;
    }
    return failures;
}
