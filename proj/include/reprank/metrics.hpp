#pragma once

#include <optional>
#include <span>
#include <vector>

#include "reprank/dataset.hpp"

namespace reprank {

struct KendallOptions {
    bool tau_b = false;  // tie-corrected variant; default excludes tied pairs
};

// tau = (C - D) / (C + D) over index pairs; entries where either vector is
// NaN are excluded pairwise. nullopt when fewer than 2 usable items remain
// or every pair is tied.
std::optional<double> kendall_tau(std::span<const double> x, std::span<const double> y,
                                  const KendallOptions& opts = {});

// Cluster-size-weighted mean of the defined per-cluster taus; weights of
// undefined taus are dropped from the normalization.
std::optional<double> generalized_tau(const std::vector<size_t>& cluster_sizes,
                                      const std::vector<std::optional<double>>& taus);

// Per-item mean of normalized ratings; NaN for items with no rater.
std::vector<double> arithmetic_average(const RatingDataset& d);

// kendall_tau(r, AA(d)).
std::optional<double> effectiveness(std::span<const double> r, const RatingDataset& d);

// kendall_tau(clean, attacked) on the common defined items.
std::optional<double> robustness(std::span<const double> r_clean,
                                 std::span<const double> r_attacked);

namespace ref {
std::optional<double> kendall_tau(std::span<const double> x, std::span<const double> y);
} // namespace ref

} // namespace reprank
