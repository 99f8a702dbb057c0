#include <doctest.h>

#include <set>

#include "helpers.hpp"
#include "reprank/attacks.hpp"
#include "reprank/clustering.hpp"
#include "reprank/metrics.hpp"
#include "reprank/synth.hpp"

using namespace reprank;
using reprank::testing::make_dataset;

namespace {

bool originals_preserved(const RatingDataset& before, const RatingDataset& after) {
    std::set<std::tuple<std::string, std::string, int>> b;
    for (const Rating& r : before.ratings)
        b.insert({before.user_ids[r.user], before.item_ids[r.item], r.raw});
    for (const auto& t : b) {
        bool found = false;
        for (const Rating& r : after.ratings)
            if (std::tuple{after.user_ids[r.user], after.item_ids[r.item], r.raw} == t)
                found = true;
        if (!found) return false;
    }
    return true;
}

} // namespace

TEST_CASE("most_voted_item") {
    auto d = make_dataset("u1,o1,3,0\nu2,o1,3,0\nu3,o2,3,0\n");
    CHECK(most_voted_item(d) == 0);

    // tie between o1 and o5: smallest id wins
    auto d2 = make_dataset("u1,o5,3,0\nu2,o5,3,0\nu1,o1,3,0\nu2,o1,3,0\n");
    CHECK(d2.item_ids[most_voted_item(d2)] == "o1");

    // matches a linear scan over the ratings list
    auto d3 = random_dataset(40, 15, 8, {1, 5}, 91);
    std::vector<size_t> counts(d3.num_items(), 0);
    for (const Rating& r : d3.ratings) ++counts[r.item];
    const uint32_t mv = most_voted_item(d3);
    for (uint32_t j = 0; j < d3.num_items(); ++j) CHECK(counts[mv] >= counts[j]);
}

TEST_CASE("nearest_grid_rating") {
    RatingScale scale{1, 5};
    CHECK(nearest_grid_rating(0.78, scale) == doctest::Approx(0.8));
    CHECK(nearest_grid_rating(0.6, scale) == doctest::Approx(0.6));
    // exact midpoint between 0.4 and 0.6 resolves downward
    CHECK(nearest_grid_rating(0.5, scale) == doctest::Approx(0.4));
    CHECK(nearest_grid_rating(0.0, scale) == doctest::Approx(0.2));
    CHECK(nearest_grid_rating(2.0, scale) == doctest::Approx(1.0));
}

TEST_CASE("random_spam basics") {
    auto d = random_dataset(40, 15, 8, {1, 5}, 101);
    AttackSpec spec{.kind = AttackKind::RandomSpam, .fraction = 0.0, .seed = 5};
    auto unchanged = random_spam(d, spec);
    CHECK(reprank::testing::same_ratings(d, unchanged));

    spec.fraction = 0.5;
    auto spammed = random_spam(d, spec);
    CHECK(spammed.num_users() == d.num_users() + 20);
    CHECK(originals_preserved(d, spammed));
    // attacker ids disjoint from originals
    std::set<std::string> orig(d.user_ids.begin(), d.user_ids.end());
    for (size_t u = d.num_users(); u < spammed.num_users(); ++u)
        CHECK(!orig.count(spammed.user_ids[u]));

    // determinism
    auto again = random_spam(d, spec);
    CHECK(reprank::testing::same_ratings(spammed, again));

    // different seed, different injection
    spec.seed = 6;
    auto other = random_spam(d, spec);
    CHECK(!reprank::testing::same_ratings(spammed, other));
}

TEST_CASE("random_spam follows the per-item rating distribution") {
    // two items with very different popularity; spam frequencies should track it
    std::string csv;
    for (int u = 0; u < 30; ++u) csv += "u" + std::to_string(u) + ",hot,3,0\n";
    csv += "u0,cold,3,0\n";
    auto d = make_dataset(csv);
    AttackSpec spec{.kind = AttackKind::RandomSpam, .fraction = 20.0, .poisson_lambda = 0.01,
                    .seed = 7};
    auto spammed = random_spam(d, spec);
    size_t hot = 0, cold = 0;
    for (const Rating& r : spammed.ratings) {
        if (spammed.user_ids[r.user].starts_with("spam_")) {
            if (spammed.item_ids[r.item] == "hot") ++hot;
            else ++cold;
        }
    }
    CHECK(hot + cold >= 500);
    // expected ratio 30:1; allow generous sampling slack
    CHECK(double(hot) / double(hot + cold) > 0.9);
}

TEST_CASE("love_hate nuke lowers the target's average") {
    auto d = synthetic_dataset({.num_users = 80, .num_items = 30, .ratings_per_user = 10, .seed = 4});
    const uint32_t target = most_voted_item(d);
    AttackSpec spec{.kind = AttackKind::LoveHate, .fraction = 0.5,
                    .direction = Direction::Nuke, .filler_count = 9, .seed = 11};
    auto attacked = love_hate(d, spec);

    auto aa_before = arithmetic_average(d);
    auto aa_after = arithmetic_average(attacked);
    CHECK(aa_after[target] < aa_before[target]);
    CHECK(originals_preserved(d, attacked));

    // each attacker rates exactly 1 + filler_count items; target gets r_min, fillers r_max
    const size_t n_attackers = size_t(0.5 * double(d.item_degree(target)));
    CHECK(attacked.num_ratings() == d.num_ratings() + n_attackers * 10);
    for (size_t u = d.num_users(); u < attacked.num_users(); ++u) {
        auto rs = attacked.user_ratings(uint32_t(u));
        CHECK(rs.size() == 10);
        int extremes_low = 0;
        for (const Rating& r : rs) {
            if (r.item == target) {
                CHECK(r.raw == d.scale.r_min);
                ++extremes_low;
            } else {
                CHECK(r.raw == d.scale.r_max);
            }
        }
        CHECK(extremes_low == 1);
    }

    // fraction 0 leaves the dataset unchanged
    spec.fraction = 0.0;
    CHECK(reprank::testing::same_ratings(d, love_hate(d, spec)));
}

TEST_CASE("love_hate push mirrors nuke") {
    auto d = synthetic_dataset({.num_users = 60, .num_items = 30, .ratings_per_user = 10, .seed = 6});
    AttackSpec spec{.kind = AttackKind::LoveHate, .fraction = 0.4,
                    .direction = Direction::Push, .seed = 12};
    auto attacked = love_hate(d, spec);
    const uint32_t target = most_voted_item(d);
    for (size_t u = d.num_users(); u < attacked.num_users(); ++u)
        for (const Rating& r : attacked.user_ratings(uint32_t(u)))
            CHECK(r.raw == (r.item == target ? d.scale.r_max : d.scale.r_min));
}

TEST_CASE("love_hate needs enough filler items") {
    auto d = make_dataset("u1,o1,3,0\nu2,o2,4,0\n");
    AttackSpec spec{.kind = AttackKind::LoveHate, .fraction = 0.5, .filler_count = 9};
    CHECK_THROWS_AS(love_hate(d, spec), ConfigError);
}

TEST_CASE("reputation_attack rates fillers at the nearest grid point") {
    auto d = synthetic_dataset({.num_users = 80, .num_items = 30, .ratings_per_user = 12, .seed = 8});
    auto displayed = arithmetic_average(d);
    AttackSpec spec{.kind = AttackKind::ReputationAttack, .fraction = 0.5,
                    .direction = Direction::Nuke, .filler_count = 9, .seed = 13};
    auto attacked = reputation_attack(d, spec, displayed);
    const uint32_t target = most_voted_item(d);

    CHECK(originals_preserved(d, attacked));
    for (size_t u = d.num_users(); u < attacked.num_users(); ++u) {
        for (const Rating& r : attacked.user_ratings(uint32_t(u))) {
            if (r.item == target) {
                CHECK(r.raw == d.scale.r_min);
            } else {
                CHECK(r.value == doctest::Approx(nearest_grid_rating(displayed[r.item], d.scale)));
            }
        }
    }

    spec.fraction = 0.0;
    CHECK(reprank::testing::same_ratings(d, reputation_attack(d, spec, displayed)));

    // determinism
    spec.fraction = 0.5;
    auto again = reputation_attack(d, spec, displayed);
    CHECK(reprank::testing::same_ratings(attacked, again));
}

TEST_CASE("attack spec validation") {
    AttackSpec bad{.fraction = -0.1};
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    AttackSpec bad2{.fraction = 0.2, .filler_count = 0};
    CHECK_THROWS_AS(bad2.validate(), ConfigError);
}
