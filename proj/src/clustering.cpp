#include "reprank/clustering.hpp"

#include <algorithm>
#include <numeric>

namespace reprank {

namespace {

// Every user pair sharing at least one item, as packed u<v keys, sorted.
std::vector<uint64_t> candidate_pairs(const RatingDataset& d) {
    std::vector<uint64_t> pairs;
    for (uint32_t j = 0; j < d.num_items(); ++j) {
        auto idxs = d.item_ratings(j);
        for (size_t a = 0; a < idxs.size(); ++a) {
            const uint32_t ua = d.ratings[idxs[a]].user;
            for (size_t b = a + 1; b < idxs.size(); ++b) {
                const uint32_t ub = d.ratings[idxs[b]].user;
                const uint32_t lo = std::min(ua, ub), hi = std::max(ua, ub);
                pairs.push_back((uint64_t(lo) << 32) | hi);
            }
        }
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    return pairs;
}

struct ProfileCache {
    std::vector<std::string> profile;
    std::vector<double> clen;
};

ProfileCache cache_profiles(const RatingDataset& d, const SimilarityConfig& cfg) {
    ProfileCache pc;
    const int nu = static_cast<int>(d.num_users());
    pc.profile.resize(nu);
    pc.clen.resize(nu);
#pragma omp parallel for schedule(dynamic, 64)
    for (int u = 0; u < nu; ++u) {
        pc.profile[u] = encode_profile(d, u);
        pc.clen[u] = static_cast<double>(compressed_length(pc.profile[u], cfg.compression_level));
    }
    return pc;
}

double pair_similarity(const RatingDataset& d, const SimilarityConfig& cfg,
                       const ProfileCache& pc, uint32_t u, uint32_t v) {
    switch (cfg.measure) {
    case Measure::LD:
        return linear_distance(d, u, v, cfg.theta);
    case Measure::KD:
        // candidates already share an item, so the zero law does not apply
        return 1.0 / (1.0 + std::abs(pc.clen[u] - pc.clen[v]));
    case Measure::CD: {
        uint32_t a = u, b = v;
        if (d.user_ids[b] < d.user_ids[a]) std::swap(a, b);
        const double cuv = static_cast<double>(
            compressed_length(pc.profile[a] + pc.profile[b], cfg.compression_level));
        const double cd = 1.0 - (cuv - std::min(pc.clen[u], pc.clen[v])) /
                                    std::max(pc.clen[u], pc.clen[v]);
        return std::clamp(cd, 0.0, 1.0);
    }
    }
    return 0.0;
}

} // namespace

SimilarityGraph build_similarity_graph(const RatingDataset& d, const SimilarityConfig& cfg,
                                       double alpha) {
    cfg.validate();
    if (alpha < 0.0 || alpha > 1.0) throw ConfigError("similarity graph: alpha must be in [0,1]");

    SimilarityGraph g;
    g.num_users = static_cast<uint32_t>(d.num_users());
    g.alpha = alpha;

    const std::vector<uint64_t> pairs = candidate_pairs(d);
    ProfileCache pc;
    if (cfg.measure != Measure::LD) pc = cache_profiles(d, cfg);

    const int np = static_cast<int>(pairs.size());
    std::vector<char> keep(np, 0);
#pragma omp parallel for schedule(dynamic, 256)
    for (int i = 0; i < np; ++i) {
        const uint32_t u = static_cast<uint32_t>(pairs[i] >> 32);
        const uint32_t v = static_cast<uint32_t>(pairs[i]);
        keep[i] = pair_similarity(d, cfg, pc, u, v) > alpha ? 1 : 0;
    }
    for (int i = 0; i < np; ++i)
        if (keep[i])
            g.edges.emplace_back(static_cast<uint32_t>(pairs[i] >> 32),
                                 static_cast<uint32_t>(pairs[i]));
    return g;
}

namespace ref {

SimilarityGraph build_similarity_graph(const RatingDataset& d, const SimilarityConfig& cfg,
                                       double alpha) {
    cfg.validate();
    SimilarityGraph g;
    g.num_users = static_cast<uint32_t>(d.num_users());
    g.alpha = alpha;
    for (uint32_t u = 0; u < g.num_users; ++u)
        for (uint32_t v = u + 1; v < g.num_users; ++v)
            if (similarity(d, u, v, cfg) > alpha) g.edges.emplace_back(u, v);
    return g;
}

} // namespace ref

namespace {

struct UnionFind {
    std::vector<uint32_t> parent;
    explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
    uint32_t find(uint32_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(uint32_t a, uint32_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

} // namespace

ClusterPartition connected_components(const SimilarityGraph& g) {
    UnionFind uf(g.num_users);
    for (auto [u, v] : g.edges) uf.unite(u, v);

    ClusterPartition p;
    p.cluster_of.assign(g.num_users, 0);
    // roots are the minimum member of each component, so iterating users in
    // order yields components ordered by smallest member
    std::vector<int32_t> root_to_comp(g.num_users, -1);
    for (uint32_t u = 0; u < g.num_users; ++u) {
        const uint32_t r = uf.find(u);
        if (root_to_comp[r] < 0) {
            root_to_comp[r] = static_cast<int32_t>(p.components.size());
            p.components.emplace_back();
        }
        p.cluster_of[u] = static_cast<uint32_t>(root_to_comp[r]);
        p.components[root_to_comp[r]].push_back(u);
    }
    return p;
}

std::vector<double> aggregate_displayed(const std::vector<ClusterRankResult::Cluster>& clusters,
                                        size_t num_items) {
    std::vector<double> displayed(num_items, kUndefinedRank);
    std::vector<double> weight(num_items, 0.0), acc(num_items, 0.0);
    for (const auto& cl : clusters) {
        const double w = static_cast<double>(cl.users.size());
        for (size_t j = 0; j < num_items; ++j) {
            if (!rank_defined(cl.rankings[j])) continue;
            acc[j] += w * cl.rankings[j];
            weight[j] += w;
        }
    }
    for (size_t j = 0; j < num_items; ++j)
        if (weight[j] > 0.0) displayed[j] = acc[j] / weight[j];
    return displayed;
}

ClusterRankResult cluster_rank(const RatingDataset& d, const ClusterPartition& partition,
                               const RankerConfig& cfg, size_t min_cluster_size) {
    cfg.validate(d.scale);
    ClusterRankResult result;

    for (const auto& members : partition.components) {
        if (members.size() < min_cluster_size) continue;

        // induced sub-dataset: cluster users, every item they rated
        RatingDataset sub;
        sub.scale = d.scale;
        std::vector<int32_t> item_map(d.num_items(), -1);
        std::vector<uint32_t> sub_items;
        for (uint32_t u : members) {
            const uint32_t local_u = static_cast<uint32_t>(sub.user_ids.size());
            sub.user_ids.push_back(d.user_ids[u]);
            for (const Rating& r : d.user_ratings(u)) {
                if (item_map[r.item] < 0) {
                    item_map[r.item] = static_cast<int32_t>(sub.item_ids.size());
                    sub.item_ids.push_back(d.item_ids[r.item]);
                    sub_items.push_back(r.item);
                }
                sub.ratings.push_back({local_u, static_cast<uint32_t>(item_map[r.item]), r.raw,
                                       r.value, r.timestamp});
            }
        }
        if (sub.ratings.empty()) continue;  // skipped, nothing to rank
        sub.build_index();

        FixedPointResult fp = run_fixed_point(sub, cfg);

        ClusterRankResult::Cluster cl;
        cl.users = members;
        cl.reputations = std::move(fp.state.reputations);
        cl.converged = fp.converged;
        cl.iterations = fp.iterations;
        cl.rankings.assign(d.num_items(), kUndefinedRank);
        for (size_t lj = 0; lj < sub_items.size(); ++lj)
            cl.rankings[sub_items[lj]] = fp.state.rankings[lj];
        result.per_cluster.push_back(std::move(cl));
    }

    result.displayed = aggregate_displayed(result.per_cluster, d.num_items());
    return result;
}

} // namespace reprank
