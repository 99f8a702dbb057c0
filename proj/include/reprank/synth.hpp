#pragma once

#include <cstdint>

#include "reprank/dataset.hpp"
#include "reprank/rng.hpp"

namespace reprank {

struct SynthConfig {
    size_t num_users = 500;
    size_t num_items = 100;
    size_t ratings_per_user = 14;
    // Fraction of a user's ratings that land inside their mode's own half of
    // the item set.
    double mode_focus = 1.0;
    // Probability a rating deviates one grid step from the mode's consensus
    // value for the item.
    double noise = 0.1;
    RatingScale scale{1, 5};
    uint64_t seed = 1;
};

// Two planted preference modes: users split in half, items split in half.
// Each mode holds a consensus quality score for every item; users rate items
// from their mode's half at the consensus value plus grid noise.
RatingDataset synthetic_dataset(const SynthConfig& cfg);

// Uniform random dataset for oracle-style tests: each user rates a random
// subset of items with uniform grid ratings.
RatingDataset random_dataset(size_t num_users, size_t num_items, size_t max_ratings_per_user,
                             const RatingScale& scale, uint64_t seed);

} // namespace reprank
