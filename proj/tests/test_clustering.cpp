#include <doctest.h>

#include <queue>

#include "helpers.hpp"
#include "reprank/clustering.hpp"
#include "reprank/metrics.hpp"
#include "reprank/rng.hpp"
#include "reprank/synth.hpp"

using namespace reprank;
using reprank::testing::make_dataset;

namespace {

// Independent BFS oracle over an explicit adjacency list.
std::vector<std::vector<uint32_t>> bfs_components(uint32_t n,
                                                  const std::vector<std::pair<uint32_t, uint32_t>>& edges) {
    std::vector<std::vector<uint32_t>> adj(n);
    for (auto [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    std::vector<char> seen(n, 0);
    std::vector<std::vector<uint32_t>> comps;
    for (uint32_t s = 0; s < n; ++s) {
        if (seen[s]) continue;
        std::vector<uint32_t> comp;
        std::queue<uint32_t> q;
        q.push(s);
        seen[s] = 1;
        while (!q.empty()) {
            uint32_t u = q.front();
            q.pop();
            comp.push_back(u);
            for (uint32_t v : adj[u])
                if (!seen[v]) {
                    seen[v] = 1;
                    q.push(v);
                }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

} // namespace

TEST_CASE("similarity graph thresholding") {
    // identical ratings on 4 shared items: LD = 1
    auto d = make_dataset(
        "u1,o1,4,0\nu1,o2,2,0\nu1,o3,5,0\nu1,o4,1,0\n"
        "u2,o1,4,0\nu2,o2,2,0\nu2,o3,5,0\nu2,o4,1,0\n");
    SimilarityConfig cfg{Measure::LD, 3};

    auto g = build_similarity_graph(d, cfg, 0.8);
    REQUIRE(g.edges.size() == 1);
    CHECK(g.edges[0] == std::pair<uint32_t, uint32_t>{0, 1});

    // alpha = 1: strict inequality empties the graph
    auto g1 = build_similarity_graph(d, cfg, 1.0);
    CHECK(g1.edges.empty());
}

TEST_CASE("parallel and serial graph builders agree") {
    auto d = random_dataset(40, 15, 7, {1, 5}, 51);
    for (Measure m : {Measure::LD, Measure::KD, Measure::CD}) {
        SimilarityConfig cfg{m, 3};
        auto gp = build_similarity_graph(d, cfg, 0.5);
        auto gs = ref::build_similarity_graph(d, cfg, 0.5);
        CHECK(gp.edges == gs.edges);
    }
}

TEST_CASE("connected components basics") {
    SimilarityGraph g;
    g.num_users = 4;

    // empty edge set -> all singletons
    auto p = connected_components(g);
    CHECK(p.components.size() == 4);
    for (size_t i = 0; i < 4; ++i) CHECK(p.components[i] == std::vector<uint32_t>{uint32_t(i)});

    // path u0-u1-u2 -> one component plus the isolated u3
    g.edges = {{0, 1}, {1, 2}};
    auto p2 = connected_components(g);
    REQUIRE(p2.components.size() == 2);
    CHECK(p2.components[0] == std::vector<uint32_t>{0, 1, 2});
    CHECK(p2.components[1] == std::vector<uint32_t>{3});
    CHECK(p2.cluster_of[2] == 0);
    CHECK(p2.cluster_of[3] == 1);
}

TEST_CASE("connected components match a BFS oracle on random graphs") {
    Rng rng(123);
    for (int trial = 0; trial < 30; ++trial) {
        const uint32_t n = 10 + uint32_t(rng.uniform_int(50));
        SimilarityGraph g;
        g.num_users = n;
        const size_t m = rng.uniform_int(2 * n);
        for (size_t e = 0; e < m; ++e) {
            uint32_t u = uint32_t(rng.uniform_int(n)), v = uint32_t(rng.uniform_int(n));
            if (u != v) g.edges.emplace_back(std::min(u, v), std::max(u, v));
        }
        auto ours = connected_components(g);
        auto oracle = bfs_components(n, g.edges);
        REQUIRE(ours.components.size() == oracle.size());
        CHECK(ours.components == oracle);
    }
}

TEST_CASE("raising alpha refines the partition") {
    auto d = random_dataset(30, 12, 6, {1, 5}, 61);
    SimilarityConfig cfg{Measure::LD, 3};
    ClusterPartition prev;
    bool have_prev = false;
    for (double alpha : {0.0, 0.2, 0.4, 0.6, 0.8}) {
        auto p = connected_components(build_similarity_graph(d, cfg, alpha));
        if (have_prev) {
            // every finer component sits inside one coarser component
            for (const auto& comp : p.components) {
                const uint32_t coarse = prev.cluster_of[comp[0]];
                for (uint32_t u : comp) CHECK(prev.cluster_of[u] == coarse);
            }
        }
        prev = std::move(p);
        have_prev = true;
    }
}

TEST_CASE("cluster_rank on a single all-user cluster equals the bipartite run") {
    auto d = random_dataset(30, 12, 6, {1, 5}, 71);
    ClusterPartition p;
    p.components.emplace_back();
    p.cluster_of.assign(d.num_users(), 0);
    for (uint32_t u = 0; u < d.num_users(); ++u) p.components[0].push_back(u);

    RankerConfig cfg = RankerConfig::bwa(0.3);
    auto cr = cluster_rank(d, p, cfg);
    auto fp = run_fixed_point(d, cfg);
    REQUIRE(cr.per_cluster.size() == 1);
    for (uint32_t j = 0; j < d.num_items(); ++j) {
        if (!rank_defined(fp.state.rankings[j])) continue;
        CHECK(cr.displayed[j] == doctest::Approx(fp.state.rankings[j]).epsilon(1e-14));
    }
}

TEST_CASE("all-singleton partition ranks items at each user's own rating") {
    auto d = make_dataset("u1,o1,4,0\nu2,o1,2,0\n");
    ClusterPartition p;
    p.components = {{0}, {1}};
    p.cluster_of = {0, 1};
    auto cr = cluster_rank(d, p, RankerConfig::bwa(0.3));
    REQUIRE(cr.per_cluster.size() == 2);
    CHECK(cr.per_cluster[0].rankings[0] == doctest::Approx(0.8));
    CHECK(cr.per_cluster[1].rankings[0] == doctest::Approx(0.4));
    // displayed: equal singleton weights -> midpoint
    CHECK(cr.displayed[0] == doctest::Approx(0.6));
}

TEST_CASE("aggregate_displayed weighting") {
    ClusterRankResult::Cluster a, b;
    a.users = {0, 1, 2};
    a.rankings = {0.4};
    b.users = {3};
    b.rankings = {0.8};
    auto disp = aggregate_displayed({a, b}, 1);
    CHECK(disp[0] == doctest::Approx(0.5));  // (3*0.4 + 1*0.8)/4

    // single rating cluster: identity
    ClusterRankResult::Cluster c;
    c.users = {0, 1};
    c.rankings = {kUndefinedRank, 0.7};
    auto disp2 = aggregate_displayed({c}, 2);
    CHECK(!rank_defined(disp2[0]));
    CHECK(disp2[1] == doctest::Approx(0.7));
}

TEST_CASE("aggregation stays within the per-cluster envelope") {
    auto d = synthetic_dataset({.num_users = 60, .num_items = 20, .ratings_per_user = 8, .seed = 3});
    SimilarityConfig scfg{Measure::LD, 3};
    auto p = connected_components(build_similarity_graph(d, scfg, 0.8));
    auto cr = cluster_rank(d, p, RankerConfig::bwa(0.3));
    for (uint32_t j = 0; j < d.num_items(); ++j) {
        if (!rank_defined(cr.displayed[j])) continue;
        double lo = 1.0, hi = 0.0;
        for (const auto& cl : cr.per_cluster) {
            if (!rank_defined(cl.rankings[j])) continue;
            lo = std::min(lo, cl.rankings[j]);
            hi = std::max(hi, cl.rankings[j]);
        }
        CHECK(cr.displayed[j] >= lo - 1e-12);
        CHECK(cr.displayed[j] <= hi + 1e-12);
    }
}

TEST_CASE("partition is disjoint and covering") {
    auto d = random_dataset(50, 15, 6, {1, 5}, 81);
    SimilarityConfig cfg{Measure::LD, 3};
    auto p = connected_components(build_similarity_graph(d, cfg, 0.6));
    std::vector<int> hits(d.num_users(), 0);
    for (const auto& comp : p.components)
        for (uint32_t u : comp) ++hits[u];
    for (int h : hits) CHECK(h == 1);
}
