#include "reprank/metrics.hpp"

#include <cmath>

#include "reprank/ranker.hpp"

namespace reprank {

std::optional<double> kendall_tau(std::span<const double> x, std::span<const double> y,
                                  const KendallOptions& opts) {
    if (x.size() != y.size()) throw ConfigError("kendall_tau: size mismatch");

    // pairwise exclusion of undefined entries
    std::vector<double> xs, ys;
    xs.reserve(x.size());
    ys.reserve(y.size());
    for (size_t i = 0; i < x.size(); ++i) {
        if (std::isnan(x[i]) || std::isnan(y[i])) continue;
        xs.push_back(x[i]);
        ys.push_back(y[i]);
    }
    const int n = static_cast<int>(xs.size());
    if (n < 2) return std::nullopt;

    long long concordant = 0, discordant = 0, ties_x = 0, ties_y = 0;
#pragma omp parallel for schedule(static) \
    reduction(+ : concordant, discordant, ties_x, ties_y)
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double dx = xs[i] - xs[j], dy = ys[i] - ys[j];
            if (dx == 0.0 && dy == 0.0) continue;
            if (dx == 0.0) ++ties_x;
            else if (dy == 0.0) ++ties_y;
            else if (dx * dy > 0.0) ++concordant;
            else ++discordant;
        }
    }

    if (opts.tau_b) {
        const double denom = std::sqrt(double(concordant + discordant + ties_x)) *
                             std::sqrt(double(concordant + discordant + ties_y));
        if (denom == 0.0) return std::nullopt;
        return double(concordant - discordant) / denom;
    }
    if (concordant + discordant == 0) return std::nullopt;
    return double(concordant - discordant) / double(concordant + discordant);
}

namespace ref {

// Plain double loop, kept independent of the parallel path.
std::optional<double> kendall_tau(std::span<const double> x, std::span<const double> y) {
    std::vector<double> xs, ys;
    for (size_t i = 0; i < x.size(); ++i) {
        if (std::isnan(x[i]) || std::isnan(y[i])) continue;
        xs.push_back(x[i]);
        ys.push_back(y[i]);
    }
    if (xs.size() < 2) return std::nullopt;
    long long c = 0, d = 0;
    for (size_t i = 0; i < xs.size(); ++i)
        for (size_t j = i + 1; j < xs.size(); ++j) {
            const double prod = (xs[i] - xs[j]) * (ys[i] - ys[j]);
            if (prod > 0.0) ++c;
            else if (prod < 0.0) ++d;
        }
    if (c + d == 0) return std::nullopt;
    return double(c - d) / double(c + d);
}

} // namespace ref

std::optional<double> generalized_tau(const std::vector<size_t>& cluster_sizes,
                                      const std::vector<std::optional<double>>& taus) {
    if (cluster_sizes.size() != taus.size())
        throw ConfigError("generalized_tau: size mismatch");
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < taus.size(); ++i) {
        if (!taus[i]) continue;
        num += static_cast<double>(cluster_sizes[i]) * *taus[i];
        den += static_cast<double>(cluster_sizes[i]);
    }
    if (den == 0.0) return std::nullopt;
    return num / den;
}

std::vector<double> arithmetic_average(const RatingDataset& d) {
    std::vector<double> avg(d.num_items(), kUndefinedRank);
    for (uint32_t j = 0; j < d.num_items(); ++j) {
        const auto idxs = d.item_ratings(j);
        if (idxs.empty()) continue;
        double sum = 0.0;
        for (uint32_t idx : idxs) sum += d.ratings[idx].value;
        avg[j] = sum / static_cast<double>(idxs.size());
    }
    return avg;
}

std::optional<double> effectiveness(std::span<const double> r, const RatingDataset& d) {
    const std::vector<double> aa = arithmetic_average(d);
    return kendall_tau(r, aa);
}

std::optional<double> robustness(std::span<const double> r_clean,
                                 std::span<const double> r_attacked) {
    return kendall_tau(r_clean, r_attacked);
}

} // namespace reprank
