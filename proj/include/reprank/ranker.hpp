#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "reprank/dataset.hpp"

namespace reprank {

enum class Aggregation { Average, Max, Min };
enum class Decay { Constant, Exponential, Logistic };

// Which denominator the ranking step normalizes by when reputations collapse.
// PerItemEpsilon keeps the per-item sum with a small floor; GlobalL1 divides
// every item by max{||c||_1, 1}.
enum class DenomGuard { PerItemEpsilon, GlobalL1 };

struct RankerConfig {
    double lambda = 0.3;
    int p = 1;
    Aggregation aggregation = Aggregation::Average;
    Decay decay = Decay::Constant;
    double upsilon = 0.2;        // logistic floor
    int s = 5;                   // logistic midpoint
    double epsilon = 1e-9;
    int max_iters = 1000;
    double initial_reputation = 1.0;
    DenomGuard guard = DenomGuard::PerItemEpsilon;
    double denom_epsilon = 1e-9;

    // Average aggregation + constant decay, the paper-default scheme.
    static RankerConfig bwa(double lambda = 0.3) {
        RankerConfig cfg;
        cfg.lambda = lambda;
        return cfg;
    }

    void validate(const RatingScale& scale) const;
};

constexpr double kUndefinedRank = std::numeric_limits<double>::quiet_NaN();

inline bool rank_defined(double r) { return !std::isnan(r); }

struct RankState {
    std::vector<double> reputations;  // per user, ]0,1]
    std::vector<double> rankings;     // per item, NaN where no rater exists
    int iteration = 0;
};

struct FixedPointResult {
    RankState state;
    bool converged = false;
    int iterations = 0;
    std::vector<double> residuals;  // ||r^{k+1} - r^k||_inf per iteration
};

// r_j = sum_{i in I_j} R_ij c_i / sum_{i in I_j} c_i. Items with no raters
// get NaN. Throws NumericError if all reputations are zero.
std::vector<double> ranking_step(const RatingDataset& d, const std::vector<double>& c,
                                 DenomGuard guard = DenomGuard::PerItemEpsilon,
                                 double denom_epsilon = 1e-9);

// c_i = 1 - f_{lambda,s}(|O_i|) * A_i with A_i the configured aggregation of
// |R_ij - r_j|^p over the user's rated items.
std::vector<double> reputation_step(const RatingDataset& d, const std::vector<double>& r,
                                    const RankerConfig& cfg);

double decay(Decay kind, int rated_items, double lambda, double upsilon, int s);

FixedPointResult run_fixed_point(const RatingDataset& d, const RankerConfig& cfg);

// ceil(log eps / log eta), the contraction iteration bound.
int iteration_bound(double eta, double epsilon);

namespace ref {
// Serial reference kernels, kept verbatim-simple for testing the parallel path.
std::vector<double> ranking_step(const RatingDataset& d, const std::vector<double>& c,
                                 DenomGuard guard = DenomGuard::PerItemEpsilon,
                                 double denom_epsilon = 1e-9);
std::vector<double> reputation_step(const RatingDataset& d, const std::vector<double>& r,
                                    const RankerConfig& cfg);
} // namespace ref

} // namespace reprank
