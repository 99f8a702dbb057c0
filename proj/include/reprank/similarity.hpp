#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "reprank/dataset.hpp"

namespace reprank {

enum class Measure { LD, KD, CD };

struct SimilarityConfig {
    Measure measure = Measure::LD;
    int theta = 3;              // LD confidence threshold
    int compression_level = 9;  // zlib level, pinned for determinism

    void validate() const {
        if (theta < 1) throw ConfigError("similarity: theta must be >= 1");
    }
};

// `<item_id>:<raw_rating>;` pairs, item ids in sorted order. Raw integer
// ratings keep the encoding float-free.
std::string encode_profile(const RatingDataset& d, uint32_t u);

// zlib-compressed output length at the given level. Deterministic.
size_t compressed_length(std::string_view bytes, int level = 9);

// LD(u,v) = l(|I_uv|) * [1 - mean |R_ui - R_vi| / delta] on normalized
// ratings, with l(x) = 1/theta for x <= theta and 1 otherwise. 0 when the
// users share no item.
double linear_distance(const RatingDataset& d, uint32_t u, uint32_t v, int theta);

// KD(u,v) = 1 / (1 + |C(u~) - C(v~)|); 0 when no shared item.
double kolmogorov_distance(const RatingDataset& d, uint32_t u, uint32_t v, int level = 9);

// CD(u,v) = 1 - (C(u~v~) - min{C(u~),C(v~)}) / max{C(u~),C(v~)}, clamped to
// [0,1]; concatenation ordered by user id. 0 when no shared item.
double compression_distance(const RatingDataset& d, uint32_t u, uint32_t v, int level = 9);

double similarity(const RatingDataset& d, uint32_t u, uint32_t v, const SimilarityConfig& cfg);

// Number of items rated by both users.
size_t shared_items(const RatingDataset& d, uint32_t u, uint32_t v);

} // namespace reprank
