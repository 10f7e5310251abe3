#pragma once

#include <cstdint>
#include <span>

#include "hrodds/core.hpp"

namespace hrodds {

// Which pairs count as comparable.
//   PaperBothEvents: both members experienced the event (censored subjects
//     never enter a pair); times must differ.
//   HarrellStandard: the earlier observed time is an uncensored event; times
//     must differ.
// Pairs with tied observed times are excluded under both rules: neither
// ordering was observed.
enum class PairRule { PaperBothEvents, HarrellStandard };

struct ConcordanceResult {
    std::int64_t concordant = 0;
    std::int64_t discordant = 0;
    std::int64_t tied_prediction = 0;
    std::int64_t comparable = 0;
    double c = 0.0;  // (concordant + tied_prediction/2) / comparable
    PairRule pair_rule = PairRule::HarrellStandard;
};

// Exhaustive O(n^2) pair enumeration. A pair is concordant when the
// higher-score subject has the shorter time; equal scores earn half credit.
// Throws ModelError when no pair is comparable.
ConcordanceResult harrell_c(const SurvivalDataset& data, std::span<const double> scores,
                            PairRule pair_rule = PairRule::HarrellStandard);

// Concordance over treatment x control pairs only, scoring treatment as the
// higher risk: c estimates the probability that the treatment subject's
// event precedes the control subject's. Default rule is PaperBothEvents,
// the estimator whose expectation the precedence identity describes.
ConcordanceResult between_group_concordance(const SurvivalDataset& data,
                                            PairRule pair_rule = PairRule::PaperBothEvents);

}  // namespace hrodds
