#include "reprank/rng.hpp"

#include <numeric>
#include <stdexcept>

namespace reprank {

std::vector<uint32_t> Rng::weighted_sample_without_replacement(
    const std::vector<uint32_t>& weights, size_t k) {
    uint64_t total = std::accumulate(weights.begin(), weights.end(), uint64_t{0});
    if (total == 0) throw std::invalid_argument("weighted sample: all weights zero");

    std::vector<uint32_t> chosen;
    std::vector<char> taken(weights.size(), 0);
    while (chosen.size() < k) {
        uint64_t t = uniform_int(total);
        size_t idx = 0;
        for (; idx < weights.size(); ++idx) {
            const uint64_t w = taken[idx] ? 0 : weights[idx];
            if (t < w) break;
            t -= w;
        }
        if (idx >= weights.size()) continue;  // only zero-weight items left untaken
        taken[idx] = 1;
        chosen.push_back(static_cast<uint32_t>(idx));
        total -= weights[idx];
        if (total == 0) break;
    }
    return chosen;
}

} // namespace reprank
