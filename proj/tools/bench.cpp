// Serial-vs-OpenMP timing for the inner kernels: ranking/reputation steps,
// similarity graph construction, Kendall tau.
#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "reprank/clustering.hpp"
#include "reprank/metrics.hpp"
#include "reprank/ranker.hpp"
#include "reprank/synth.hpp"

using namespace reprank;
using Clock = std::chrono::steady_clock;

namespace {

template <typename F> double time_best_of(int reps, F&& fn) {
    double best = 1e100;
    for (int i = 0; i < reps; ++i) {
        const auto t0 = Clock::now();
        fn();
        best = std::min(best, std::chrono::duration<double>(Clock::now() - t0).count());
    }
    return best;
}

void report(const char* name, double serial, double parallel) {
    std::printf("%-26s serial %8.4f s   parallel %8.4f s   speedup %5.2fx\n", name, serial,
                parallel, serial / parallel);
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP\n");
#endif

    auto d = synthetic_dataset({.num_users = 2000, .num_items = 400, .ratings_per_user = 40,
                                .seed = 2024});
    std::printf("dataset: %zu users, %zu items, %zu ratings\n\n", d.num_users(), d.num_items(),
                d.num_ratings());

    std::vector<double> c(d.num_users(), 1.0);
    std::vector<double> r;
    report("ranking_step",
           time_best_of(5, [&] { r = ref::ranking_step(d, c); }),
           time_best_of(5, [&] { r = ranking_step(d, c); }));

    RankerConfig cfg = RankerConfig::bwa(0.3);
    report("reputation_step",
           time_best_of(5, [&] { c = ref::reputation_step(d, r, cfg); }),
           time_best_of(5, [&] { c = reputation_step(d, r, cfg); }));

    SimilarityConfig ld{Measure::LD, 3};
    report("similarity_graph (LD)",
           time_best_of(2, [&] { ref::build_similarity_graph(d, ld, 0.8); }),
           time_best_of(2, [&] { build_similarity_graph(d, ld, 0.8); }));

    SimilarityConfig kd{Measure::KD, 3};
    report("similarity_graph (KD)",
           time_best_of(1, [&] { ref::build_similarity_graph(d, kd, 0.8); }),
           time_best_of(1, [&] { build_similarity_graph(d, kd, 0.8); }));

    std::vector<double> x(4000), y(4000);
    Rng rng(5);
    for (size_t i = 0; i < x.size(); ++i) {
        x[i] = rng.uniform();
        y[i] = rng.uniform();
    }
    report("kendall_tau (n=4000)",
           time_best_of(3, [&] { ref::kendall_tau(x, y); }),
           time_best_of(3, [&] { kendall_tau(x, y); }));
    return 0;
}
