#include "reprank/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <zlib.h>

namespace reprank {

std::string encode_profile(const RatingDataset& d, uint32_t u) {
    auto rs = d.user_ratings(u);
    if (rs.empty()) throw ConfigError("encode_profile: user has no ratings");

    std::vector<const Rating*> pairs;
    pairs.reserve(rs.size());
    for (const Rating& r : rs) pairs.push_back(&r);
    std::sort(pairs.begin(), pairs.end(), [&](const Rating* a, const Rating* b) {
        return d.item_ids[a->item] < d.item_ids[b->item];
    });

    std::string out;
    for (const Rating* r : pairs) {
        out += d.item_ids[r->item];
        out += ':';
        out += std::to_string(r->raw);
        out += ';';
    }
    return out;
}

size_t compressed_length(std::string_view bytes, int level) {
    uLongf out_len = compressBound(static_cast<uLong>(bytes.size()));
    std::vector<Bytef> out(out_len);
    const int rc = compress2(out.data(), &out_len,
                             reinterpret_cast<const Bytef*>(bytes.data()),
                             static_cast<uLong>(bytes.size()), level);
    if (rc != Z_OK) throw NumericError("compressed_length: zlib error " + std::to_string(rc));
    return out_len;
}

size_t shared_items(const RatingDataset& d, uint32_t u, uint32_t v) {
    auto ru = d.user_ratings(u), rv = d.user_ratings(v);
    size_t i = 0, j = 0, count = 0;
    while (i < ru.size() && j < rv.size()) {
        if (ru[i].item < rv[j].item) ++i;
        else if (ru[i].item > rv[j].item) ++j;
        else { ++count; ++i; ++j; }
    }
    return count;
}

double linear_distance(const RatingDataset& d, uint32_t u, uint32_t v, int theta) {
    auto ru = d.user_ratings(u), rv = d.user_ratings(v);
    const double delta = d.scale.delta_norm();
    size_t i = 0, j = 0, shared = 0;
    double diff_sum = 0.0;
    while (i < ru.size() && j < rv.size()) {
        if (ru[i].item < rv[j].item) ++i;
        else if (ru[i].item > rv[j].item) ++j;
        else {
            diff_sum += std::abs(ru[i].value - rv[j].value) / delta;
            ++shared;
            ++i;
            ++j;
        }
    }
    if (shared == 0) return 0.0;
    const double confidence = shared <= static_cast<size_t>(theta) ? 1.0 / theta : 1.0;
    return confidence * (1.0 - diff_sum / static_cast<double>(shared));
}

double kolmogorov_distance(const RatingDataset& d, uint32_t u, uint32_t v, int level) {
    if (shared_items(d, u, v) == 0) return 0.0;
    const auto cu = static_cast<double>(compressed_length(encode_profile(d, u), level));
    const auto cv = static_cast<double>(compressed_length(encode_profile(d, v), level));
    return 1.0 / (1.0 + std::abs(cu - cv));
}

double compression_distance(const RatingDataset& d, uint32_t u, uint32_t v, int level) {
    if (shared_items(d, u, v) == 0) return 0.0;
    std::string pu = encode_profile(d, u), pv = encode_profile(d, v);
    // concatenation ordered by user id; real compressors are not symmetric
    if (d.user_ids[v] < d.user_ids[u]) std::swap(pu, pv);
    const double cu = static_cast<double>(compressed_length(pu, level));
    const double cv = static_cast<double>(compressed_length(pv, level));
    const double cuv = static_cast<double>(compressed_length(pu + pv, level));
    const double cd = 1.0 - (cuv - std::min(cu, cv)) / std::max(cu, cv);
    return std::clamp(cd, 0.0, 1.0);
}

double similarity(const RatingDataset& d, uint32_t u, uint32_t v, const SimilarityConfig& cfg) {
    switch (cfg.measure) {
    case Measure::LD: return linear_distance(d, u, v, cfg.theta);
    case Measure::KD: return kolmogorov_distance(d, u, v, cfg.compression_level);
    case Measure::CD: return compression_distance(d, u, v, cfg.compression_level);
    }
    return 0.0;
}

} // namespace reprank
