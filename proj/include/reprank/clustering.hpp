#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "reprank/ranker.hpp"
#include "reprank/similarity.hpp"

namespace reprank {

// Thresholded user-user similarity graph. Edges are stored once as (u,v)
// with u < v, sorted.
struct SimilarityGraph {
    uint32_t num_users = 0;
    double alpha = 0.0;
    std::vector<std::pair<uint32_t, uint32_t>> edges;
};

// Edge for every pair with similarity strictly above alpha. Only pairs
// sharing at least one item are candidates.
SimilarityGraph build_similarity_graph(const RatingDataset& d, const SimilarityConfig& cfg,
                                       double alpha);

struct ClusterPartition {
    // Disjoint, covering, each sorted ascending; components ordered by their
    // smallest member.
    std::vector<std::vector<uint32_t>> components;
    std::vector<uint32_t> cluster_of;  // user -> component index

    size_t size(size_t i) const { return components[i].size(); }
};

// Union-find over the similarity edges; isolated users become singletons.
ClusterPartition connected_components(const SimilarityGraph& g);

struct ClusterRankResult {
    struct Cluster {
        std::vector<uint32_t> users;           // global user indices
        std::vector<double> rankings;          // global item index, NaN if unrated in cluster
        std::vector<double> reputations;       // aligned with `users`
        bool converged = false;
        int iterations = 0;
    };
    std::vector<Cluster> per_cluster;
    std::vector<double> displayed;  // size-weighted average over rating clusters
};

// Runs the fixed point on each cluster's induced sub-dataset and aggregates
// the displayed ranking. Clusters below min_cluster_size are skipped.
ClusterRankResult cluster_rank(const RatingDataset& d, const ClusterPartition& partition,
                               const RankerConfig& cfg, size_t min_cluster_size = 1);

// r_bar_j = sum_m |M_m| r_j^m / sum_m |M_m| over clusters with a rater of j.
// NaN when no cluster rated j.
std::vector<double> aggregate_displayed(const std::vector<ClusterRankResult::Cluster>& clusters,
                                        size_t num_items);

namespace ref {
SimilarityGraph build_similarity_graph(const RatingDataset& d, const SimilarityConfig& cfg,
                                       double alpha);
} // namespace ref

} // namespace reprank
