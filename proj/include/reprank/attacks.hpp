#pragma once

#include <cstdint>
#include <vector>

#include "reprank/dataset.hpp"
#include "reprank/rng.hpp"

namespace reprank {

enum class AttackKind { RandomSpam, LoveHate, ReputationAttack };
enum class Direction { Push, Nuke };

struct AttackSpec {
    AttackKind kind = AttackKind::RandomSpam;
    // RandomSpam: fraction of all users; LoveHate/ReputationAttack: fraction
    // of the target item's raters.
    double fraction = 0.0;
    Direction direction = Direction::Nuke;
    int filler_count = 9;
    double poisson_lambda = 5.0;
    uint64_t seed = 0;

    void validate() const {
        if (fraction < 0.0) throw ConfigError("attack: fraction must be >= 0");
        if (filler_count < 1) throw ConfigError("attack: filler_count must be >= 1");
    }
};

// Item with the most raters; ties broken by smallest item id.
uint32_t most_voted_item(const RatingDataset& d);

// floor(fraction * |U|) new users, each rating 1 + Poisson(lambda_P) items
// (capped at |O|) drawn without replacement proportionally to the original
// per-item rater counts, with uniform grid ratings.
RatingDataset random_spam(const RatingDataset& d, const AttackSpec& spec);

// Attackers hit the most voted item with the directional extreme and give
// filler_count random other items the opposite extreme.
RatingDataset love_hate(const RatingDataset& d, const AttackSpec& spec);

// Attackers hit the target with the extreme and rate the filler_count most
// popular other items at the grid point nearest each item's displayed
// ranking (ties to the lower rating).
RatingDataset reputation_attack(const RatingDataset& d, const AttackSpec& spec,
                                const std::vector<double>& displayed);

// Grid rating (normalized) nearest to x, ties resolved downward.
double nearest_grid_rating(double x, const RatingScale& scale);

} // namespace reprank
