#include <doctest.h>

#include <sstream>

#include "helpers.hpp"
#include "reprank/dataset.hpp"
#include "reprank/rng.hpp"
#include "reprank/synth.hpp"

using namespace reprank;
using reprank::testing::make_dataset;

TEST_CASE("parse normalizes by r_max") {
    auto d = make_dataset("u1,o1,5,100\n");
    REQUIRE(d.num_ratings() == 1);
    CHECK(d.ratings[0].value == doctest::Approx(1.0).epsilon(1e-15));

    auto d2 = make_dataset("u1,o1,1,100\n");
    CHECK(d2.ratings[0].value == doctest::Approx(0.2).epsilon(1e-15));
}

TEST_CASE("duplicate (user,item) keeps latest timestamp") {
    auto d = make_dataset("u1,o1,3,100\nu1,o1,4,200\n");
    REQUIRE(d.num_ratings() == 1);
    CHECK(d.ratings[0].raw == 4);
    CHECK(d.ratings[0].value == doctest::Approx(0.8));

    // reversed line order, same result
    auto d2 = make_dataset("u1,o1,4,200\nu1,o1,3,100\n");
    REQUIRE(d2.num_ratings() == 1);
    CHECK(d2.ratings[0].raw == 4);
}

TEST_CASE("parse accepts CRLF and skips blank lines") {
    auto d = make_dataset("u1,o1,3,100\r\n\nu2,o1,4,100\r\n");
    CHECK(d.num_ratings() == 2);
    CHECK(d.num_users() == 2);
}

TEST_CASE("parse errors carry line numbers") {
    CHECK_THROWS_AS(make_dataset("u1,o1,3\n"), ParseError);
    CHECK_THROWS_AS(make_dataset("u1,o1,notanumber,100\n"), ParseError);
    CHECK_THROWS_AS(make_dataset("u1,o1,3,100\nu2,o1,9,100\n"), ParseError);
    try {
        make_dataset("u1,o1,3,100\nu2,o1,9,100\n");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    CHECK_THROWS_AS(make_dataset("u1,o1,0,100\n"), ParseError);
}

TEST_CASE("normalization is order preserving") {
    RatingScale scale{1, 5};
    for (int a = 1; a < 5; ++a)
        for (int b = a + 1; b <= 5; ++b) CHECK(scale.normalize(a) < scale.normalize(b));
}

TEST_CASE("k_core_filter fixed points") {
    // every user and item already has >= 2 ratings
    auto d = make_dataset("u1,o1,3,0\nu1,o2,4,0\nu2,o1,2,0\nu2,o2,5,0\n");
    auto f = k_core_filter(d, 2);
    CHECK(reprank::testing::same_ratings(d, f));

    // k=1 is a no-op
    auto d2 = make_dataset("u1,o1,3,0\nu2,o2,4,0\n");
    CHECK(reprank::testing::same_ratings(d2, k_core_filter(d2, 1)));
}

TEST_CASE("k_core_filter cascades to empty") {
    // 3 users each rating the same 2 items; k=3 removes users (deg 2), then all
    auto d = make_dataset("u1,o1,3,0\nu1,o2,3,0\nu2,o1,3,0\nu2,o2,3,0\nu3,o1,3,0\nu3,o2,3,0\n");
    auto f = k_core_filter(d, 3);
    CHECK(f.num_users() == 0);
    CHECK(f.num_items() == 0);
    CHECK(f.num_ratings() == 0);
}

TEST_CASE("k_core_filter users-only mode keeps item side") {
    auto d = make_dataset("u1,o1,3,0\nu1,o2,3,0\nu2,o1,3,0\nu2,o3,3,0\n");
    auto f = k_core_filter(d, 2, /*users_only=*/true);
    CHECK(f.num_users() == 2);
    CHECK(f.num_items() == 3);  // o2, o3 have 1 rating each but survive
}

TEST_CASE("k_core_filter is idempotent and monotone in k") {
    auto d = random_dataset(60, 25, 8, {1, 5}, 42);
    for (int k = 1; k <= 5; ++k) {
        auto once = k_core_filter(d, k);
        auto twice = k_core_filter(once, k);
        CHECK(reprank::testing::same_ratings(once, twice));
    }

    // result for k+1 is a sub-dataset of result for k
    for (int k = 1; k <= 4; ++k) {
        auto fk = k_core_filter(d, k);
        auto fk1 = k_core_filter(d, k + 1);
        for (const Rating& r : fk1.ratings) {
            bool found = false;
            for (const Rating& s : fk.ratings)
                if (fk.user_ids[s.user] == fk1.user_ids[r.user] &&
                    fk.item_ids[s.item] == fk1.item_ids[r.item] && s.raw == r.raw)
                    found = true;
            CHECK(found);
        }
    }
}

TEST_CASE("dataset_stats counts") {
    RatingDataset empty;
    empty.scale = {1, 5};
    empty.build_index();
    auto s0 = dataset_stats(empty);
    CHECK(s0.users == 0);
    CHECK(s0.items == 0);
    CHECK(s0.ratings == 0);
    CHECK(s0.ratings_per_item_hist.empty());

    // 2 users x 2 items fully rated
    auto d = make_dataset("u1,o1,3,0\nu1,o2,4,0\nu2,o1,2,0\nu2,o2,5,0\n");
    auto s = dataset_stats(d);
    CHECK(s.users == 2);
    CHECK(s.items == 2);
    CHECK(s.ratings == 4);
    CHECK(s.ratings_per_item_hist.at(2) == 2);
}

TEST_CASE("csv round trip preserves content") {
    auto d = random_dataset(20, 10, 5, {1, 5}, 7);
    std::ostringstream out;
    write_ratings(out, d);
    std::istringstream in(out.str());
    auto d2 = parse_ratings(in, d.scale);
    CHECK(reprank::testing::same_ratings(d, d2));
}
