#include "hrodds/concordance.hpp"

#include <stdexcept>

#include "hrodds/errors.hpp"

namespace hrodds {

namespace {

bool comparable_pair(const Observation& a, const Observation& b, PairRule rule) {
    if (a.time == b.time) return false;
    if (rule == PairRule::PaperBothEvents) return a.event && b.event;
    const Observation& earlier = a.time < b.time ? a : b;
    return earlier.event;
}

ConcordanceResult finalize(ConcordanceResult r) {
    if (r.comparable == 0) {
        throw ModelError("concordance: no comparable pairs under the selected rule");
    }
    r.c = (static_cast<double>(r.concordant) + 0.5 * static_cast<double>(r.tied_prediction)) /
          static_cast<double>(r.comparable);
    return r;
}

}  // namespace

ConcordanceResult harrell_c(const SurvivalDataset& data, std::span<const double> scores,
                            PairRule pair_rule) {
    const auto& obs = data.observations();
    if (scores.size() != obs.size()) {
        throw std::invalid_argument("concordance: need one score per observation");
    }
    ConcordanceResult r;
    r.pair_rule = pair_rule;
    for (std::size_t i = 0; i < obs.size(); ++i) {
        for (std::size_t j = i + 1; j < obs.size(); ++j) {
            if (!comparable_pair(obs[i], obs[j], pair_rule)) continue;
            ++r.comparable;
            const bool i_shorter = obs[i].time < obs[j].time;
            const double score_short = i_shorter ? scores[i] : scores[j];
            const double score_long = i_shorter ? scores[j] : scores[i];
            if (score_short > score_long) {
                ++r.concordant;
            } else if (score_short < score_long) {
                ++r.discordant;
            } else {
                ++r.tied_prediction;
            }
        }
    }
    return finalize(r);
}

ConcordanceResult between_group_concordance(const SurvivalDataset& data, PairRule pair_rule) {
    const auto& obs = data.observations();
    bool arms[2] = {false, false};
    for (const Observation& o : obs) arms[o.arm] = true;
    if (!arms[0] || !arms[1]) {
        throw ModelError("between-group concordance: both arms must be present");
    }
    ConcordanceResult r;
    r.pair_rule = pair_rule;
    for (std::size_t i = 0; i < obs.size(); ++i) {
        for (std::size_t j = i + 1; j < obs.size(); ++j) {
            if (obs[i].arm == obs[j].arm) continue;
            if (!comparable_pair(obs[i], obs[j], pair_rule)) continue;
            ++r.comparable;
            const Observation& treated = obs[i].arm == 1 ? obs[i] : obs[j];
            const Observation& control = obs[i].arm == 1 ? obs[j] : obs[i];
            if (treated.time < control.time) {
                ++r.concordant;
            } else {
                ++r.discordant;
            }
        }
    }
    return finalize(r);
}

}  // namespace hrodds
