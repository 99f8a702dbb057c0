#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "reprank/attacks.hpp"
#include "reprank/clustering.hpp"
#include "reprank/csv.hpp"
#include "reprank/metrics.hpp"
#include "reprank/ranker.hpp"
#include "reprank/similarity.hpp"

namespace fs = std::filesystem;
using namespace reprank;

namespace {

bool log_enabled() {
    const char* lvl = std::getenv("REPRANK_LOG");
    return !(lvl && std::string(lvl) == "quiet");
}

void log_line(const std::string& msg) {
    if (log_enabled()) std::cerr << msg << "\n";
}

struct CommonOpts {
    std::string dataset_path;
    int r_min = 1;
    int r_max = 5;
    int k_core = 0;  // 0 = no filtering
    bool k_core_users_only = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("-d,--dataset", o.dataset_path, "ratings CSV (user,item,rating,timestamp)")
        ->required();
    cmd->add_option("--r-min", o.r_min, "minimum raw rating");
    cmd->add_option("--r-max", o.r_max, "maximum raw rating");
    cmd->add_option("--k-core", o.k_core, "apply k-core filtering before ranking (0 = off)");
    cmd->add_flag("--k-core-users-only", o.k_core_users_only,
                  "restrict the core condition to users");
}

RatingDataset load_common(const CommonOpts& o) {
    RatingScale scale{o.r_min, o.r_max};
    RatingDataset d = load_ratings_file(o.dataset_path, scale);
    if (o.k_core > 0) d = k_core_filter(d, o.k_core, o.k_core_users_only);
    return d;
}

struct RankOpts {
    double lambda = 0.3;
    int p = 1;
    std::string aggregation = "average";
    std::string decay_kind = "constant";
    double upsilon = 0.2;
    int s = 5;
    double epsilon = 1e-9;
    int max_iters = 1000;
    double initial_reputation = 1.0;
    std::string guard = "per-item";
    std::string mode = "bipartite";
    std::string measure = "ld";
    int theta = 3;
    double alpha = 0.8;
    int min_cluster_size = 1;
};

void add_rank_opts(CLI::App* cmd, RankOpts& o) {
    cmd->add_option("--lambda", o.lambda, "penalty magnitude, in [0,1[");
    cmd->add_option("-p", o.p, "disagreement exponent");
    cmd->add_option("--aggregation", o.aggregation)
        ->check(CLI::IsMember({"average", "max", "min"}));
    cmd->add_option("--decay", o.decay_kind)
        ->check(CLI::IsMember({"constant", "exponential", "logistic"}));
    cmd->add_option("--upsilon", o.upsilon, "logistic decay floor");
    cmd->add_option("-s", o.s, "logistic decay midpoint");
    cmd->add_option("--epsilon", o.epsilon, "convergence tolerance");
    cmd->add_option("--max-iters", o.max_iters);
    cmd->add_option("--initial-reputation", o.initial_reputation);
    cmd->add_option("--guard", o.guard)->check(CLI::IsMember({"per-item", "global-l1"}));
    cmd->add_option("--mode", o.mode)->check(CLI::IsMember({"bipartite", "multipartite"}));
    cmd->add_option("--measure", o.measure)->check(CLI::IsMember({"ld", "kd", "cd"}));
    cmd->add_option("--theta", o.theta, "LD confidence threshold");
    cmd->add_option("--alpha", o.alpha, "similarity threshold for clustering");
    cmd->add_option("--min-cluster-size", o.min_cluster_size);
}

RankerConfig to_ranker_config(const RankOpts& o) {
    RankerConfig cfg;
    cfg.lambda = o.lambda;
    cfg.p = o.p;
    cfg.aggregation = o.aggregation == "max"   ? Aggregation::Max
                      : o.aggregation == "min" ? Aggregation::Min
                                               : Aggregation::Average;
    cfg.decay = o.decay_kind == "exponential" ? Decay::Exponential
                : o.decay_kind == "logistic"  ? Decay::Logistic
                                              : Decay::Constant;
    cfg.upsilon = o.upsilon;
    cfg.s = o.s;
    cfg.epsilon = o.epsilon;
    cfg.max_iters = o.max_iters;
    cfg.initial_reputation = o.initial_reputation;
    cfg.guard = o.guard == "global-l1" ? DenomGuard::GlobalL1 : DenomGuard::PerItemEpsilon;
    return cfg;
}

SimilarityConfig to_similarity_config(const RankOpts& o) {
    SimilarityConfig cfg;
    cfg.measure = o.measure == "kd" ? Measure::KD : o.measure == "cd" ? Measure::CD : Measure::LD;
    cfg.theta = o.theta;
    return cfg;
}

std::ofstream open_out(const fs::path& p) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    return f;
}

void write_rankings_csv(const fs::path& p, const RatingDataset& d,
                        const std::vector<double>& r) {
    auto f = open_out(p);
    f << "item,ranking\n";
    for (size_t j = 0; j < r.size(); ++j)
        if (rank_defined(r[j])) f << d.item_ids[j] << ',' << format_number(r[j]) << '\n';
}

// ---------------------------------------------------------------- rank

int cmd_rank(const CommonOpts& common, const RankOpts& opts, const std::string& out_dir) {
    RatingDataset d = load_common(common);
    RankerConfig cfg = to_ranker_config(opts);
    cfg.validate(d.scale);
    fs::create_directories(out_dir);
    const fs::path out(out_dir);

    if (opts.mode == "bipartite") {
        FixedPointResult res = run_fixed_point(d, cfg);
        write_rankings_csv(out / "rankings.csv", d, res.state.rankings);
        auto f = open_out(out / "reputations.csv");
        f << "user,reputation\n";
        for (size_t u = 0; u < d.num_users(); ++u)
            f << d.user_ids[u] << ',' << format_number(res.state.reputations[u]) << '\n';
        std::cout << "iterations=" << res.iterations
                  << " converged=" << (res.converged ? "yes" : "no") << "\n";
        if (!res.converged) {
            std::cerr << "warning: fixed point did not reach tolerance; output is partial\n";
            return 2;
        }
        return 0;
    }

    SimilarityConfig scfg = to_similarity_config(opts);
    log_line("building similarity graph (" + opts.measure + ", alpha=" +
             format_number(opts.alpha) + ")");
    SimilarityGraph g = build_similarity_graph(d, scfg, opts.alpha);
    ClusterPartition part = connected_components(g);
    log_line("clusters: " + std::to_string(part.components.size()));
    ClusterRankResult cr = cluster_rank(d, part, cfg, opts.min_cluster_size);

    write_rankings_csv(out / "rankings.csv", d, cr.displayed);
    {
        auto f = open_out(out / "clusters.csv");
        f << "user_id,cluster_id\n";
        for (size_t u = 0; u < d.num_users(); ++u)
            f << d.user_ids[u] << ',' << part.cluster_of[u] << '\n';
    }
    {
        auto f = open_out(out / "cluster_rankings.csv");
        f << "cluster_id,item,ranking\n";
        for (size_t ci = 0; ci < cr.per_cluster.size(); ++ci) {
            const auto& cl = cr.per_cluster[ci];
            const uint32_t cid = part.cluster_of[cl.users.front()];
            for (size_t j = 0; j < cl.rankings.size(); ++j)
                if (rank_defined(cl.rankings[j]))
                    f << cid << ',' << d.item_ids[j] << ',' << format_number(cl.rankings[j])
                      << '\n';
        }
    }
    {
        auto f = open_out(out / "reputations.csv");
        f << "user,reputation\n";
        std::vector<double> rep(d.num_users(), std::numeric_limits<double>::quiet_NaN());
        for (const auto& cl : cr.per_cluster)
            for (size_t k = 0; k < cl.users.size(); ++k) rep[cl.users[k]] = cl.reputations[k];
        for (size_t u = 0; u < d.num_users(); ++u)
            f << d.user_ids[u] << ',' << format_cell(rep[u]) << '\n';
    }

    bool all_converged = true;
    int max_iter = 0;
    for (const auto& cl : cr.per_cluster) {
        all_converged = all_converged && cl.converged;
        max_iter = std::max(max_iter, cl.iterations);
    }
    std::cout << "clusters=" << cr.per_cluster.size() << " max_iterations=" << max_iter
              << " converged=" << (all_converged ? "yes" : "no") << "\n";
    if (!all_converged) {
        std::cerr << "warning: some clusters did not reach tolerance; output is partial\n";
        return 2;
    }
    return 0;
}

// ---------------------------------------------------------------- attack-eval

struct MethodRun {
    std::vector<double> visible;                 // what an attacker can see
    std::vector<double> ranking;                 // metric vector (same as visible here)
    std::optional<double> largest_cluster_rank;  // target ranking in largest clean cluster
    std::optional<int> iterations;
};

// `clean_users`: evaluate cluster sizes by members drawn from the original
// user set only, so injected attackers cannot claim the "largest cluster".
MethodRun run_method(const std::string& method, const RatingDataset& d, const RankOpts& opts,
                     uint32_t target, size_t clean_users) {
    MethodRun out;
    if (method == "aa") {
        out.visible = arithmetic_average(d);
        out.ranking = out.visible;
        return out;
    }
    RankerConfig cfg = to_ranker_config(opts);
    if (method == "bwa") {
        FixedPointResult res = run_fixed_point(d, cfg);
        out.visible = res.state.rankings;
        out.ranking = res.state.rankings;
        out.iterations = res.iterations;
        return out;
    }
    RankOpts mp = opts;
    mp.measure = method;
    SimilarityGraph g = build_similarity_graph(d, to_similarity_config(mp), opts.alpha);
    ClusterPartition part = connected_components(g);
    ClusterRankResult cr = cluster_rank(d, part, cfg, opts.min_cluster_size);
    out.visible = cr.displayed;
    out.ranking = cr.displayed;

    size_t best = 0, best_size = 0;
    for (size_t ci = 0; ci < cr.per_cluster.size(); ++ci) {
        size_t sz = 0;
        for (uint32_t u : cr.per_cluster[ci].users) sz += u < clean_users ? 1 : 0;
        if (sz > best_size) {
            best_size = sz;
            best = ci;
        }
    }
    int iters = 0;
    for (const auto& cl : cr.per_cluster) iters = std::max(iters, cl.iterations);
    out.iterations = iters;
    if (best_size > 0 && rank_defined(cr.per_cluster[best].rankings[target]))
        out.largest_cluster_rank = cr.per_cluster[best].rankings[target];
    return out;
}

int cmd_attack_eval(const CommonOpts& common, const RankOpts& opts, const std::string& attack,
                    const std::string& direction, std::vector<double> fractions,
                    std::vector<std::string> methods, int filler_count, double poisson_lambda,
                    uint64_t seed, const std::string& out_path, bool timing) {
    RatingDataset d = load_common(common);
    const uint32_t target = most_voted_item(d);

    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << "method,fraction,robustness,target_item,r_target_clean,r_target_attacked,"
           "largest_cluster_r_clean,largest_cluster_r_attacked,iterations_clean,"
           "iterations_attacked";
    if (timing) out << ",wall_time_s";
    out << '\n';

    for (const std::string& method : methods) {
        log_line("method " + method + ": clean run");
        const MethodRun clean = run_method(method, d, opts, target, d.num_users());

        for (size_t fi = 0; fi < fractions.size(); ++fi) {
            const double fraction = fractions[fi];
            const auto t0 = std::chrono::steady_clock::now();

            AttackSpec spec;
            spec.fraction = fraction;
            spec.direction = direction == "push" ? Direction::Push : Direction::Nuke;
            spec.filler_count = filler_count;
            spec.poisson_lambda = poisson_lambda;
            spec.seed = splitmix64(seed ^ splitmix64(fi));

            RatingDataset attacked;
            if (attack == "random-spam") {
                spec.kind = AttackKind::RandomSpam;
                attacked = random_spam(d, spec);
            } else if (attack == "love-hate") {
                spec.kind = AttackKind::LoveHate;
                attacked = love_hate(d, spec);
            } else {
                spec.kind = AttackKind::ReputationAttack;
                attacked = reputation_attack(d, spec, clean.visible);
            }

            const MethodRun hit = run_method(method, attacked, opts, target, d.num_users());
            const std::optional<double> rob = robustness(clean.ranking, hit.ranking);
            const double secs =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

            out << method << ',' << format_number(fraction) << ',' << format_cell(rob) << ','
                << d.item_ids[target] << ',' << format_cell(clean.ranking[target]) << ','
                << format_cell(hit.ranking[target]) << ','
                << format_cell(clean.largest_cluster_rank) << ','
                << format_cell(hit.largest_cluster_rank) << ','
                << (clean.iterations ? std::to_string(*clean.iterations) : "NA") << ','
                << (hit.iterations ? std::to_string(*hit.iterations) : "NA");
            if (timing) out << ',' << format_number(secs);
            out << '\n';
        }
    }
    return 0;
}

// ---------------------------------------------------------------- stats

int cmd_stats(const CommonOpts& common, bool as_json) {
    RatingDataset d = load_common(common);
    DatasetStats s = dataset_stats(d);
    if (as_json) {
        std::cout << "{\"users\":" << s.users << ",\"items\":" << s.items
                  << ",\"ratings\":" << s.ratings << ",\"ratings_per_item_hist\":{";
        bool first = true;
        for (auto [deg, count] : s.ratings_per_item_hist) {
            if (!first) std::cout << ',';
            std::cout << "\"" << deg << "\":" << count;
            first = false;
        }
        std::cout << "}}\n";
    } else {
        std::cout << "users,items,ratings\n"
                  << s.users << ',' << s.items << ',' << s.ratings << "\n";
        std::cout << "ratings_per_item,count\n";
        for (auto [deg, count] : s.ratings_per_item_hist)
            std::cout << deg << ',' << count << '\n';
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"reputation-based ranking on rating networks"};
    app.require_subcommand(1);
    app.set_config("--config", "", "INI config file; flags override");

    CommonOpts rank_common, eval_common, stats_common;
    RankOpts rank_opts, eval_opts;
    std::string out_dir = "out";
    std::string eval_out = "attack_eval.csv";
    std::string attack = "random-spam", direction = "nuke";
    std::vector<double> fractions{0.0, 0.25, 0.5, 0.75};
    std::vector<std::string> methods{"aa", "bwa", "ld", "kd", "cd"};
    int filler_count = 9;
    double poisson_lambda = 5.0;
    uint64_t seed = 0;
    bool timing = false, as_json = false;

    CLI::App* rank = app.add_subcommand("rank", "rank items, bipartite or clustered");
    add_common(rank, rank_common);
    add_rank_opts(rank, rank_opts);
    rank->add_option("-o,--out", out_dir, "output directory");

    CLI::App* eval = app.add_subcommand("attack-eval", "clean-vs-attacked robustness sweep");
    add_common(eval, eval_common);
    add_rank_opts(eval, eval_opts);
    eval->add_option("--attack", attack)
        ->check(CLI::IsMember({"random-spam", "love-hate", "reputation"}));
    eval->add_option("--direction", direction)->check(CLI::IsMember({"push", "nuke"}));
    eval->add_option("--fractions", fractions, "spammer fractions to sweep")->expected(-1);
    eval->add_option("--methods", methods, "methods to compare")->expected(-1);
    eval->add_option("--filler-count", filler_count);
    eval->add_option("--poisson-lambda", poisson_lambda);
    eval->add_option("--seed", seed);
    eval->add_option("-o,--out", eval_out, "output CSV path");
    eval->add_flag("--timing", timing, "append a wall_time_s column (breaks byte determinism)");

    CLI::App* stats = app.add_subcommand("stats", "dataset summary");
    add_common(stats, stats_common);
    stats->add_flag("--json", as_json);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (rank->parsed()) return cmd_rank(rank_common, rank_opts, out_dir);
        if (eval->parsed())
            return cmd_attack_eval(eval_common, eval_opts, attack, direction, fractions, methods,
                                   filler_count, poisson_lambda, seed, eval_out, timing);
        if (stats->parsed()) return cmd_stats(stats_common, as_json);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
