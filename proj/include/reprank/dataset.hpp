#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "reprank/errors.hpp"

namespace reprank {

// Raw rating bounds and the normalized range they induce.
struct RatingScale {
    int r_min = 1;
    int r_max = 5;

    double delta_norm() const { return static_cast<double>(r_max - r_min) / r_max; }
    double normalize(int raw) const { return static_cast<double>(raw) / r_max; }
    int grid_size() const { return r_max - r_min + 1; }

    void validate() const {
        if (r_min <= 0 || r_min >= r_max)
            throw ConfigError("rating scale requires 0 < r_min < r_max");
    }
};

struct Rating {
    uint32_t user;
    uint32_t item;
    int raw;           // integer rating in [r_min, r_max]
    double value;      // raw / r_max
    int64_t timestamp;
};

// Immutable after build_index(); shared concurrent reads are safe.
class RatingDataset {
public:
    RatingScale scale;
    std::vector<std::string> user_ids;
    std::vector<std::string> item_ids;
    std::vector<Rating> ratings;   // sorted by (user, item) once indexed

    size_t num_users() const { return user_ids.size(); }
    size_t num_items() const { return item_ids.size(); }
    size_t num_ratings() const { return ratings.size(); }
    bool empty() const { return ratings.empty(); }

    // Ratings of one user, contiguous and sorted by item index.
    std::span<const Rating> user_ratings(uint32_t u) const {
        return {ratings.data() + user_offsets_[u], ratings.data() + user_offsets_[u + 1]};
    }

    // Indices into `ratings` for every rating of item j.
    std::span<const uint32_t> item_ratings(uint32_t j) const {
        return {item_rating_idx_.data() + item_offsets_[j],
                item_rating_idx_.data() + item_offsets_[j + 1]};
    }

    size_t item_degree(uint32_t j) const { return item_offsets_[j + 1] - item_offsets_[j]; }
    size_t user_degree(uint32_t u) const { return user_offsets_[u + 1] - user_offsets_[u]; }

    // Sorts ratings and rebuilds the CSR views. Call after any mutation.
    void build_index();

private:
    std::vector<uint32_t> user_offsets_;
    std::vector<uint32_t> item_offsets_;
    std::vector<uint32_t> item_rating_idx_;
};

// Line-oriented CSV `user,item,rating,timestamp`, no header, LF or CRLF.
// Ratings are normalized by r_max; duplicate (user,item) keeps the latest
// timestamp (later line wins ties).
RatingDataset parse_ratings(std::istream& source, const RatingScale& scale);
RatingDataset load_ratings_file(const std::string& path, const RatingScale& scale);

// Iterative peeling until every surviving user and item has >= k ratings.
// users_only restricts the degree condition to the user side.
RatingDataset k_core_filter(const RatingDataset& d, int k, bool users_only = false);

struct DatasetStats {
    size_t users = 0;
    size_t items = 0;
    size_t ratings = 0;
    std::map<size_t, size_t> ratings_per_item_hist;  // degree -> item count
};

DatasetStats dataset_stats(const RatingDataset& d);

// Per-item rater counts, the sampling weights for random spam.
std::vector<uint32_t> ratings_per_item(const RatingDataset& d);

// CSV export in the parse_ratings input format.
void write_ratings(std::ostream& out, const RatingDataset& d);

} // namespace reprank
