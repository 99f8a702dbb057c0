#include "reprank/synth.hpp"

#include <cmath>
#include <algorithm>

namespace reprank {

RatingDataset synthetic_dataset(const SynthConfig& cfg) {
    RatingDataset d;
    d.scale = cfg.scale;
    for (size_t u = 0; u < cfg.num_users; ++u) d.user_ids.push_back("u" + std::to_string(u));
    for (size_t j = 0; j < cfg.num_items; ++j) d.item_ids.push_back("o" + std::to_string(j));

    const size_t half_items = std::max<size_t>(cfg.num_items / 2, 1);
    Rng rng(splitmix64(cfg.seed));

    // Continuous per-mode consensus quality for every item; users rate by
    // stochastic rounding so the expected rating equals the consensus.
    // Qualities cluster around mid-scale and honest ratings stay off the
    // extreme grades, which profile-cloning attackers rely on.
    const double span = double(cfg.scale.r_max - cfg.scale.r_min);
    const bool interior = span > 2.0;
    const int band_lo = interior ? cfg.scale.r_min + 1 : cfg.scale.r_min;
    const int band_hi = interior ? cfg.scale.r_max - 1 : cfg.scale.r_max;
    const double mid = 0.5 * (cfg.scale.r_min + cfg.scale.r_max);
    const double q_lo = interior ? mid - 0.2 : double(cfg.scale.r_min);
    const double q_span = interior ? 0.4 : span;
    std::vector<double> quality(2 * cfg.num_items);
    for (double& q : quality) q = q_lo + rng.uniform() * q_span;

    // Item popularity grows with quality: users discover good items more
    // often, so the most-voted item is also a well-liked one.
    std::vector<uint32_t> weight(2 * cfg.num_items);
    for (size_t k = 0; k < weight.size(); ++k)
        weight[k] = 5 + static_cast<uint32_t>(
                            std::lround(40.0 * (quality[k] - q_lo) / q_span));

    for (size_t u = 0; u < cfg.num_users; ++u) {
        const bool mode_a = u < cfg.num_users / 2;
        std::vector<char> taken(cfg.num_items, 0);
        size_t placed = 0;
        const size_t want = std::min(cfg.ratings_per_user, cfg.num_items);
        size_t guard = 0;
        while (placed < want && guard++ < 256 * cfg.num_items) {
            // mode A's own half is [0, half), mode B's is [half, end)
            const bool in_focus = rng.uniform() < cfg.mode_focus;
            const bool own_half = mode_a == in_focus;
            const size_t lo = own_half ? 0 : half_items;
            const size_t hi = own_half ? half_items : cfg.num_items;
            if (hi <= lo) continue;
            // popularity-weighted draw within the chosen half
            uint32_t total = 0;
            for (size_t j = lo; j < hi; ++j) total += weight[(mode_a ? 0 : cfg.num_items) + j];
            uint64_t pick = rng.uniform_int(total);
            size_t item = lo;
            for (size_t j = lo; j < hi; ++j) {
                const uint32_t w = weight[(mode_a ? 0 : cfg.num_items) + j];
                if (pick < w) { item = j; break; }
                pick -= w;
            }
            if (taken[item]) continue;
            taken[item] = 1;
            ++placed;

            const double q = quality[(mode_a ? 0 : cfg.num_items) + item];
            int raw = static_cast<int>(std::floor(q));
            if (rng.uniform() < q - std::floor(q)) raw += 1;
            raw = std::clamp(raw, band_lo, band_hi);
            if (rng.uniform() < cfg.noise) {
                if (raw <= band_lo) {
                    raw += 1;
                } else if (raw >= band_hi) {
                    raw -= 1;
                } else {
                    raw += rng.uniform() < 0.5 ? -1 : 1;
                }
            }
            raw = std::clamp(raw, band_lo, band_hi);
            d.ratings.push_back({static_cast<uint32_t>(u), static_cast<uint32_t>(item), raw,
                                 cfg.scale.normalize(raw), 0});
        }
    }
    d.build_index();
    return d;
}

RatingDataset random_dataset(size_t num_users, size_t num_items, size_t max_ratings_per_user,
                             const RatingScale& scale, uint64_t seed) {
    RatingDataset d;
    d.scale = scale;
    for (size_t u = 0; u < num_users; ++u) d.user_ids.push_back("u" + std::to_string(u));
    for (size_t j = 0; j < num_items; ++j) d.item_ids.push_back("o" + std::to_string(j));

    Rng rng(splitmix64(seed));
    for (size_t u = 0; u < num_users; ++u) {
        const size_t n = std::min(num_items, 1 + rng.uniform_int(max_ratings_per_user));
        std::vector<char> taken(num_items, 0);
        for (size_t k = 0; k < n; ++k) {
            uint32_t item;
            do {
                item = static_cast<uint32_t>(rng.uniform_int(num_items));
            } while (taken[item]);
            taken[item] = 1;
            const int raw = scale.r_min + static_cast<int>(rng.uniform_int(scale.grid_size()));
            d.ratings.push_back({static_cast<uint32_t>(u), item, raw, scale.normalize(raw), 0});
        }
    }
    d.build_index();
    return d;
}

} // namespace reprank
