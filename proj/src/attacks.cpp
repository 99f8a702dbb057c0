#include "reprank/attacks.hpp"

#include <algorithm>
#include <cmath>

namespace reprank {

uint32_t most_voted_item(const RatingDataset& d) {
    if (d.empty()) throw ConfigError("most_voted_item: empty dataset");
    uint32_t best = 0;
    for (uint32_t j = 1; j < d.num_items(); ++j) {
        const size_t dj = d.item_degree(j), db = d.item_degree(best);
        if (dj > db || (dj == db && d.item_ids[j] < d.item_ids[best])) best = j;
    }
    return best;
}

double nearest_grid_rating(double x, const RatingScale& scale) {
    double best = scale.normalize(scale.r_min);
    double best_dist = std::abs(x - best);
    for (int raw = scale.r_min + 1; raw <= scale.r_max; ++raw) {
        const double g = scale.normalize(raw);
        const double dist = std::abs(x - g);
        if (dist < best_dist) {  // strict: ties stay at the lower grid point
            best = g;
            best_dist = dist;
        }
    }
    return best;
}

namespace {

// Fresh attacker id, disjoint from existing users by construction.
std::string attacker_id(const RatingDataset& d, size_t n) {
    std::string id = "spam_" + std::to_string(n);
    while (std::find(d.user_ids.begin(), d.user_ids.end(), id) != d.user_ids.end())
        id += "_";
    return id;
}

uint32_t add_attacker(RatingDataset& out, size_t n) {
    const uint32_t u = static_cast<uint32_t>(out.user_ids.size());
    out.user_ids.push_back(attacker_id(out, n));
    return u;
}

void add_rating(RatingDataset& out, uint32_t u, uint32_t item, int raw) {
    out.ratings.push_back({u, item, raw, out.scale.normalize(raw), 0});
}

int extreme_raw(const RatingScale& scale, Direction dir) {
    return dir == Direction::Push ? scale.r_max : scale.r_min;
}

int opposite_extreme_raw(const RatingScale& scale, Direction dir) {
    return dir == Direction::Push ? scale.r_min : scale.r_max;
}

size_t attacker_count_for_target(const RatingDataset& d, const AttackSpec& spec,
                                 uint32_t target) {
    return static_cast<size_t>(spec.fraction * static_cast<double>(d.item_degree(target)));
}

} // namespace

RatingDataset random_spam(const RatingDataset& d, const AttackSpec& spec) {
    spec.validate();
    RatingDataset out = d;

    const size_t n_spammers = static_cast<size_t>(spec.fraction * double(d.num_users()));
    const std::vector<uint32_t> item_weights = ratings_per_item(d);

    for (size_t a = 0; a < n_spammers; ++a) {
        Rng rng(splitmix64(spec.seed ^ splitmix64(a)));
        const uint32_t u = add_attacker(out, a);
        size_t n = 1 + static_cast<size_t>(rng.poisson(spec.poisson_lambda));
        n = std::min(n, d.num_items());
        for (uint32_t item : rng.weighted_sample_without_replacement(item_weights, n)) {
            const int raw = d.scale.r_min + static_cast<int>(rng.uniform_int(d.scale.grid_size()));
            add_rating(out, u, item, raw);
        }
    }
    out.build_index();
    return out;
}

RatingDataset love_hate(const RatingDataset& d, const AttackSpec& spec) {
    spec.validate();
    if (d.num_items() < static_cast<size_t>(spec.filler_count) + 1)
        throw ConfigError("love_hate: not enough items for fillers");

    RatingDataset out = d;
    const uint32_t target = most_voted_item(d);
    const size_t n_attackers = attacker_count_for_target(d, spec, target);
    const int target_raw = extreme_raw(d.scale, spec.direction);
    const int filler_raw = opposite_extreme_raw(d.scale, spec.direction);

    for (size_t a = 0; a < n_attackers; ++a) {
        Rng rng(splitmix64(spec.seed ^ splitmix64(a)));
        const uint32_t u = add_attacker(out, a);
        add_rating(out, u, target, target_raw);
        // filler_count distinct random items, target excluded
        std::vector<char> taken(d.num_items(), 0);
        taken[target] = 1;
        for (int f = 0; f < spec.filler_count; ++f) {
            uint32_t item;
            do {
                item = static_cast<uint32_t>(rng.uniform_int(d.num_items()));
            } while (taken[item]);
            taken[item] = 1;
            add_rating(out, u, item, filler_raw);
        }
    }
    out.build_index();
    return out;
}

RatingDataset reputation_attack(const RatingDataset& d, const AttackSpec& spec,
                                const std::vector<double>& displayed) {
    spec.validate();
    if (displayed.size() != d.num_items())
        throw ConfigError("reputation_attack: displayed rankings size mismatch");
    if (d.num_items() < static_cast<size_t>(spec.filler_count) + 1)
        throw ConfigError("reputation_attack: not enough items for fillers");

    RatingDataset out = d;
    const uint32_t target = most_voted_item(d);
    const size_t n_attackers = attacker_count_for_target(d, spec, target);
    const int target_raw = extreme_raw(d.scale, spec.direction);

    // most popular items excluding the target; ties by smallest item id
    std::vector<uint32_t> items(d.num_items());
    for (uint32_t j = 0; j < d.num_items(); ++j) items[j] = j;
    std::sort(items.begin(), items.end(), [&](uint32_t a, uint32_t b) {
        if (d.item_degree(a) != d.item_degree(b)) return d.item_degree(a) > d.item_degree(b);
        return d.item_ids[a] < d.item_ids[b];
    });
    std::vector<uint32_t> fillers;
    for (uint32_t j : items) {
        if (j == target) continue;
        fillers.push_back(j);
        if (fillers.size() == static_cast<size_t>(spec.filler_count)) break;
    }

    for (size_t a = 0; a < n_attackers; ++a) {
        const uint32_t u = add_attacker(out, a);
        add_rating(out, u, target, target_raw);
        for (uint32_t j : fillers) {
            const double r = std::isnan(displayed[j]) ? d.scale.normalize(d.scale.r_min)
                                                      : displayed[j];
            const double g = nearest_grid_rating(r, d.scale);
            add_rating(out, u, j, static_cast<int>(std::lround(g * d.scale.r_max)));
        }
    }
    out.build_index();
    return out;
}

} // namespace reprank
