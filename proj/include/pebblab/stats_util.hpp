#pragma once
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

namespace pebblab {

struct Interval {
    double low = 0.0;
    double high = 0.0;
};

// 95% Wilson score interval for a binomial proportion.
inline Interval wilson_interval(uint64_t successes, uint64_t trials) {
    if (trials == 0) throw std::invalid_argument("wilson_interval: trials must be >= 1");
    const double z = 1.959963984540054;
    double nd = static_cast<double>(trials);
    double phat = static_cast<double>(successes) / nd;
    double z2 = z * z;
    double denom = 1.0 + z2 / nd;
    double center = (phat + z2 / (2 * nd)) / denom;
    double half = z * std::sqrt(phat * (1 - phat) / nd + z2 / (4 * nd * nd)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

// Upper-tail p-value of a chi-square statistic with the given degrees of
// freedom.
inline double chi_square_p_value(double statistic, double dof) {
    if (statistic < 0 || dof <= 0) throw std::invalid_argument("chi_square_p_value: bad input");
    boost::math::chi_squared dist(dof);
    return boost::math::cdf(boost::math::complement(dist, statistic));
}

// Pearson statistic for observed counts against expected probabilities.
inline double chi_square_statistic(const std::vector<uint64_t>& observed,
                                   const std::vector<double>& expected_probs, uint64_t total) {
    if (observed.size() != expected_probs.size())
        throw std::invalid_argument("chi_square_statistic: size mismatch");
    double stat = 0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        double e = expected_probs[i] * static_cast<double>(total);
        if (e <= 0) throw std::invalid_argument("chi_square_statistic: zero expected cell");
        double d = static_cast<double>(observed[i]) - e;
        stat += d * d / e;
    }
    return stat;
}

// Pool-adjacent-violators: least-squares non-decreasing fit with weights.
inline std::vector<double> isotonic_fit(const std::vector<double>& y,
                                        const std::vector<double>& w) {
    if (y.size() != w.size()) throw std::invalid_argument("isotonic_fit: size mismatch");
    struct Block {
        double sum, weight;
        std::size_t count;
    };
    std::vector<Block> blocks;
    for (std::size_t i = 0; i < y.size(); ++i) {
        blocks.push_back({y[i] * w[i], w[i], 1});
        while (blocks.size() >= 2) {
            auto& b = blocks[blocks.size() - 2];
            auto& t = blocks.back();
            if (b.sum / b.weight <= t.sum / t.weight) break;
            b.sum += t.sum;
            b.weight += t.weight;
            b.count += t.count;
            blocks.pop_back();
        }
    }
    std::vector<double> out;
    out.reserve(y.size());
    for (const auto& b : blocks) {
        double v = b.sum / b.weight;
        for (std::size_t i = 0; i < b.count; ++i) out.push_back(v);
    }
    return out;
}

} // namespace pebblab
