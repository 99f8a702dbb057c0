#pragma once

#include <algorithm>
#include <sstream>
#include <tuple>
#include <string>

#include "reprank/dataset.hpp"

namespace reprank::testing {

inline RatingDataset make_dataset(const std::string& csv, RatingScale scale = {1, 5}) {
    std::istringstream in(csv);
    return parse_ratings(in, scale);
}

// Content equality by id, insensitive to internal index assignment.
inline bool same_ratings(const RatingDataset& a, const RatingDataset& b) {
    if (a.num_users() != b.num_users() || a.num_items() != b.num_items() ||
        a.num_ratings() != b.num_ratings())
        return false;
    auto triples = [](const RatingDataset& d) {
        std::vector<std::tuple<std::string, std::string, int>> t;
        for (const Rating& r : d.ratings)
            t.emplace_back(d.user_ids[r.user], d.item_ids[r.item], r.raw);
        std::sort(t.begin(), t.end());
        return t;
    };
    return triples(a) == triples(b);
}

} // namespace reprank::testing
