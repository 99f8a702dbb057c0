#include "reprank/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <ostream>
#include <unordered_map>

namespace reprank {

void RatingDataset::build_index() {
    std::sort(ratings.begin(), ratings.end(), [](const Rating& a, const Rating& b) {
        return a.user != b.user ? a.user < b.user : a.item < b.item;
    });

    const size_t nu = user_ids.size(), ni = item_ids.size();
    user_offsets_.assign(nu + 1, 0);
    item_offsets_.assign(ni + 1, 0);
    for (const Rating& r : ratings) {
        ++user_offsets_[r.user + 1];
        ++item_offsets_[r.item + 1];
    }
    for (size_t u = 0; u < nu; ++u) user_offsets_[u + 1] += user_offsets_[u];
    for (size_t j = 0; j < ni; ++j) item_offsets_[j + 1] += item_offsets_[j];

    item_rating_idx_.resize(ratings.size());
    std::vector<uint32_t> cursor(item_offsets_.begin(), item_offsets_.end() - 1);
    for (uint32_t idx = 0; idx < ratings.size(); ++idx)
        item_rating_idx_[cursor[ratings[idx].item]++] = idx;
}

namespace {

int parse_int_field(std::string_view field, size_t line_no, const char* what) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw ParseError("line " + std::to_string(line_no) + ": bad " + what + " '" +
                         std::string(field) + "'");
    return value;
}

int64_t parse_i64_field(std::string_view field, size_t line_no, const char* what) {
    int64_t value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw ParseError("line " + std::to_string(line_no) + ": bad " + what + " '" +
                         std::string(field) + "'");
    return value;
}

} // namespace

RatingDataset parse_ratings(std::istream& source, const RatingScale& scale) {
    scale.validate();
    RatingDataset d;
    d.scale = scale;

    std::unordered_map<std::string, uint32_t> user_index, item_index;
    // (user,item) -> position in d.ratings, for latest-timestamp dedup
    std::unordered_map<uint64_t, uint32_t> seen;

    std::string line;
    size_t line_no = 0;
    while (std::getline(source, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        std::string_view sv{line};
        size_t c1 = sv.find(','), c2 = sv.find(',', c1 + 1), c3 = sv.find(',', c2 + 1);
        if (c1 == std::string_view::npos || c2 == std::string_view::npos ||
            c3 == std::string_view::npos || sv.find(',', c3 + 1) != std::string_view::npos)
            throw ParseError("line " + std::to_string(line_no) +
                             ": expected user,item,rating,timestamp");

        std::string_view user_sv = sv.substr(0, c1);
        std::string_view item_sv = sv.substr(c1 + 1, c2 - c1 - 1);
        std::string_view rating_sv = sv.substr(c2 + 1, c3 - c2 - 1);
        std::string_view ts_sv = sv.substr(c3 + 1);
        if (user_sv.empty() || item_sv.empty())
            throw ParseError("line " + std::to_string(line_no) + ": empty user or item id");

        const int raw = parse_int_field(rating_sv, line_no, "rating");
        if (raw < scale.r_min || raw > scale.r_max)
            throw ParseError("line " + std::to_string(line_no) + ": rating " +
                             std::to_string(raw) + " outside [" + std::to_string(scale.r_min) +
                             "," + std::to_string(scale.r_max) + "]");
        const int64_t ts = parse_i64_field(ts_sv, line_no, "timestamp");

        auto [uit, unew] = user_index.try_emplace(std::string(user_sv),
                                                  static_cast<uint32_t>(d.user_ids.size()));
        if (unew) d.user_ids.emplace_back(user_sv);
        auto [iit, inew] = item_index.try_emplace(std::string(item_sv),
                                                  static_cast<uint32_t>(d.item_ids.size()));
        if (inew) d.item_ids.emplace_back(item_sv);

        const Rating rec{uit->second, iit->second, raw, scale.normalize(raw), ts};
        const uint64_t key = (uint64_t(rec.user) << 32) | rec.item;
        auto [sit, snew] = seen.try_emplace(key, static_cast<uint32_t>(d.ratings.size()));
        if (snew) {
            d.ratings.push_back(rec);
        } else if (rec.timestamp >= d.ratings[sit->second].timestamp) {
            d.ratings[sit->second] = rec;
        }
    }

    d.build_index();
    return d;
}

RatingDataset load_ratings_file(const std::string& path, const RatingScale& scale) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    return parse_ratings(in, scale);
}

RatingDataset k_core_filter(const RatingDataset& d, int k, bool users_only) {
    if (k < 1) throw ConfigError("k_core_filter: k must be >= 1");

    std::vector<uint32_t> user_deg(d.num_users(), 0), item_deg(d.num_items(), 0);
    for (const Rating& r : d.ratings) {
        ++user_deg[r.user];
        ++item_deg[r.item];
    }
    std::vector<char> user_alive(d.num_users(), 1), item_alive(d.num_items(), 1);

    bool changed = true;
    while (changed) {
        changed = false;
        for (uint32_t u = 0; u < d.num_users(); ++u) {
            if (user_alive[u] && user_deg[u] < static_cast<uint32_t>(k)) {
                user_alive[u] = 0;
                changed = true;
                for (const Rating& r : d.user_ratings(u))
                    if (item_alive[r.item]) --item_deg[r.item];
            }
        }
        if (users_only) continue;
        for (uint32_t j = 0; j < d.num_items(); ++j) {
            if (item_alive[j] && item_deg[j] < static_cast<uint32_t>(k)) {
                item_alive[j] = 0;
                changed = true;
                for (uint32_t idx : d.item_ratings(j))
                    if (user_alive[d.ratings[idx].user]) --user_deg[d.ratings[idx].user];
            }
        }
    }

    RatingDataset out;
    out.scale = d.scale;
    std::vector<uint32_t> user_map(d.num_users()), item_map(d.num_items());
    for (uint32_t u = 0; u < d.num_users(); ++u)
        if (user_alive[u]) {
            user_map[u] = static_cast<uint32_t>(out.user_ids.size());
            out.user_ids.push_back(d.user_ids[u]);
        }
    for (uint32_t j = 0; j < d.num_items(); ++j)
        if (item_alive[j]) {
            item_map[j] = static_cast<uint32_t>(out.item_ids.size());
            out.item_ids.push_back(d.item_ids[j]);
        }
    for (const Rating& r : d.ratings)
        if (user_alive[r.user] && item_alive[r.item])
            out.ratings.push_back({user_map[r.user], item_map[r.item], r.raw, r.value, r.timestamp});
    out.build_index();
    return out;
}

DatasetStats dataset_stats(const RatingDataset& d) {
    DatasetStats s;
    s.users = d.num_users();
    s.items = d.num_items();
    s.ratings = d.num_ratings();
    for (uint32_t j = 0; j < d.num_items(); ++j) ++s.ratings_per_item_hist[d.item_degree(j)];
    return s;
}

std::vector<uint32_t> ratings_per_item(const RatingDataset& d) {
    std::vector<uint32_t> counts(d.num_items());
    for (uint32_t j = 0; j < d.num_items(); ++j)
        counts[j] = static_cast<uint32_t>(d.item_degree(j));
    return counts;
}

void write_ratings(std::ostream& out, const RatingDataset& d) {
    for (const Rating& r : d.ratings)
        out << d.user_ids[r.user] << ',' << d.item_ids[r.item] << ',' << r.raw << ','
            << r.timestamp << '\n';
}

} // namespace reprank
