#include "reprank/ranker.hpp"

#include <algorithm>
#include <cmath>

namespace reprank {

void RankerConfig::validate(const RatingScale& scale) const {
    if (lambda < 0.0 || lambda >= 1.0)
        throw ConfigError("ranker: lambda must be in [0,1[");
    if (guard == DenomGuard::PerItemEpsilon && lambda >= 1.0 / (1.0 + scale.delta_norm()))
        throw ConfigError("ranker: lambda >= (1+delta)^-1 needs the GlobalL1 guard for "
                          "guaranteed convergence");
    if (p < 1) throw ConfigError("ranker: p must be >= 1");
    if (decay == Decay::Logistic && (upsilon <= 0.0 || upsilon >= 1.0))
        throw ConfigError("ranker: upsilon must be in ]0,1[");
    if (decay == Decay::Logistic && s < 1) throw ConfigError("ranker: s must be >= 1");
    if (epsilon <= 0.0) throw ConfigError("ranker: epsilon must be > 0");
    if (max_iters < 1) throw ConfigError("ranker: max_iters must be >= 1");
    if (initial_reputation <= 0.0 || initial_reputation > 1.0)
        throw ConfigError("ranker: initial_reputation must be in ]0,1]");
}

double decay(Decay kind, int rated_items, double lambda, double upsilon, int s) {
    switch (kind) {
    case Decay::Constant:
        return lambda;
    case Decay::Exponential:
        return lambda * (1.0 - std::exp(-rated_items / 2.0));
    case Decay::Logistic:
        return lambda * (1.0 - (1.0 - upsilon) / (1.0 + std::exp(double(s) - rated_items)));
    }
    return lambda;
}

namespace {

inline double item_rank(const RatingDataset& d, uint32_t j, const std::vector<double>& c,
                        double global_denom) {
    double num = 0.0, den = 0.0;
    for (uint32_t idx : d.item_ratings(j)) {
        const Rating& r = d.ratings[idx];
        num += r.value * c[r.user];
        den += c[r.user];
    }
    return num / (global_denom > 0.0 ? global_denom : den);
}

inline double user_reputation(const RatingDataset& d, uint32_t u, const std::vector<double>& r,
                              const RankerConfig& cfg) {
    auto rs = d.user_ratings(u);
    double agg = cfg.aggregation == Aggregation::Min ? std::numeric_limits<double>::max() : 0.0;
    for (const Rating& rec : rs) {
        const double diff = std::pow(std::abs(rec.value - r[rec.item]), cfg.p);
        switch (cfg.aggregation) {
        case Aggregation::Average: agg += diff; break;
        case Aggregation::Max: agg = std::max(agg, diff); break;
        case Aggregation::Min: agg = std::min(agg, diff); break;
        }
    }
    if (cfg.aggregation == Aggregation::Average) agg /= static_cast<double>(rs.size());
    const double f = decay(cfg.decay, static_cast<int>(rs.size()), cfg.lambda, cfg.upsilon, cfg.s);
    return 1.0 - f * agg;
}

} // namespace

std::vector<double> ranking_step(const RatingDataset& d, const std::vector<double>& c,
                                 DenomGuard guard, double denom_epsilon) {
    double c_l1 = 0.0;
    for (double ci : c) c_l1 += ci;
    if (c_l1 <= 0.0) throw NumericError("ranking_step: all reputations are zero");
    const double global_denom = guard == DenomGuard::GlobalL1 ? std::max(c_l1, 1.0) : 0.0;

    const int ni = static_cast<int>(d.num_items());
    std::vector<double> r(ni, kUndefinedRank);
#pragma omp parallel for schedule(static)
    for (int j = 0; j < ni; ++j) {
        if (d.item_degree(j) == 0) continue;
        if (guard == DenomGuard::GlobalL1) {
            r[j] = item_rank(d, j, c, global_denom);
        } else {
            double num = 0.0, den = 0.0;
            for (uint32_t idx : d.item_ratings(j)) {
                const Rating& rec = d.ratings[idx];
                num += rec.value * c[rec.user];
                den += c[rec.user];
            }
            r[j] = num / std::max(den, denom_epsilon);
        }
    }
    return r;
}

std::vector<double> reputation_step(const RatingDataset& d, const std::vector<double>& r,
                                    const RankerConfig& cfg) {
    const int nu = static_cast<int>(d.num_users());
    std::vector<double> c(nu);
#pragma omp parallel for schedule(static)
    for (int u = 0; u < nu; ++u) c[u] = user_reputation(d, u, r, cfg);
    return c;
}

namespace ref {

std::vector<double> ranking_step(const RatingDataset& d, const std::vector<double>& c,
                                 DenomGuard guard, double denom_epsilon) {
    double c_l1 = 0.0;
    for (double ci : c) c_l1 += ci;
    if (c_l1 <= 0.0) throw NumericError("ranking_step: all reputations are zero");

    std::vector<double> r(d.num_items(), kUndefinedRank);
    for (uint32_t j = 0; j < d.num_items(); ++j) {
        if (d.item_degree(j) == 0) continue;
        double num = 0.0, den = 0.0;
        for (uint32_t idx : d.item_ratings(j)) {
            const Rating& rec = d.ratings[idx];
            num += rec.value * c[rec.user];
            den += c[rec.user];
        }
        if (guard == DenomGuard::GlobalL1)
            r[j] = num / std::max(c_l1, 1.0);
        else
            r[j] = num / std::max(den, denom_epsilon);
    }
    return r;
}

std::vector<double> reputation_step(const RatingDataset& d, const std::vector<double>& r,
                                    const RankerConfig& cfg) {
    std::vector<double> c(d.num_users());
    for (uint32_t u = 0; u < d.num_users(); ++u) c[u] = user_reputation(d, u, r, cfg);
    return c;
}

} // namespace ref

FixedPointResult run_fixed_point(const RatingDataset& d, const RankerConfig& cfg) {
    cfg.validate(d.scale);
    if (d.empty()) throw ConfigError("run_fixed_point: empty dataset");

    FixedPointResult res;
    std::vector<double> c(d.num_users(), cfg.initial_reputation);
    std::vector<double> r = ranking_step(d, c, cfg.guard, cfg.denom_epsilon);

    for (int k = 1; k <= cfg.max_iters; ++k) {
        c = reputation_step(d, r, cfg);
        std::vector<double> r_next = ranking_step(d, c, cfg.guard, cfg.denom_epsilon);

        double diff = 0.0;
        for (size_t j = 0; j < r.size(); ++j) {
            if (!rank_defined(r_next[j])) continue;
            if (!std::isfinite(r_next[j]))
                throw NumericError("run_fixed_point: non-finite ranking at iteration " +
                                   std::to_string(k));
            diff = std::max(diff, std::abs(r_next[j] - r[j]));
        }
        r = std::move(r_next);
        res.residuals.push_back(diff);
        res.iterations = k;
        if (diff < cfg.epsilon) {
            res.converged = true;
            break;
        }
    }

    res.state.reputations = std::move(c);
    res.state.rankings = std::move(r);
    res.state.iteration = res.iterations;
    return res;
}

int iteration_bound(double eta, double epsilon) {
    if (eta <= 0.0 || eta >= 1.0) throw ConfigError("iteration_bound: eta must be in ]0,1[");
    if (epsilon <= 0.0 || epsilon >= 1.0)
        throw ConfigError("iteration_bound: epsilon must be in ]0,1[");
    return static_cast<int>(std::ceil(std::log(epsilon) / std::log(eta)));
}

} // namespace reprank
