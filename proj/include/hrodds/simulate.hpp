#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "hrodds/baseline.hpp"
#include "hrodds/core.hpp"

namespace hrodds {

// Right-censoring mechanism applied on top of the event times.
struct CensoringSpec {
    enum class Kind { None, Administrative, RandomExponential };

    Kind kind = Kind::None;
    double param = 0.0;  // administrative cutoff, or exponential rate

    static CensoringSpec none() { return {}; }
    static CensoringSpec administrative(double cutoff);
    static CensoringSpec random_exponential(double rate);

    std::string spec_string() const;
};

// Parses `none`, `admin(cutoff=5)` or `exp(rate=0.25)`. Throws ParseError.
CensoringSpec parse_censoring(std::string_view spec);

struct TrialConfig {
    std::int64_t n_control = 0;
    std::int64_t n_treatment = 0;
    HazardRatio lambda;
    BaselineDistribution baseline;
    CensoringSpec censoring = CensoringSpec::none();
    std::uint64_t seed = 0;
};

// Inverse-transform draw from the control arm: t = S^{-1}(u).
double sample_control(const BaselineDistribution& dist, double u);

// Treatment draw with survival S(t)^lambda, sampled exactly by solving
// S(t)^lambda = u, i.e. t = S^{-1}(u^{1/lambda}). Shares the control arm's
// inverse-survival code path so an error there shows up in both arms.
double sample_treatment(const BaselineDistribution& dist, const HazardRatio& lambda,
                        double u);

// Draws the full two-arm trial: control block first (arm 0), then treatment
// (arm 1). Observed time = min(event, censor); the event flag is true when
// the event comes no later than the censoring time, except that an event
// exactly at an administrative cutoff counts as censored. Deterministic per
// seed; subject draws are indexed, so any parallel split reproduces the
// same dataset.
SurvivalDataset simulate_trial(const TrialConfig& config);

// Draws n_pairs independent (treatment, control) pairs and counts those with
// the treatment event strictly first. Ties (a measure-zero event in
// continuous time) count as non-precedence. stream_context selects the RNG
// stream block, e.g. one verification grid cell.
std::uint64_t race_pairs(const BaselineDistribution& dist, const HazardRatio& lambda,
                         std::uint64_t n_pairs, std::uint64_t seed,
                         std::uint64_t stream_context = 0);

// Demonstration sampler that breaks proportional hazards: the treatment
// hazard equals the control hazard up to the baseline median and lambda
// times it afterwards. Used to show the precedence identity failing; not
// part of any gated check.
std::uint64_t race_pairs_delayed_effect(const BaselineDistribution& dist,
                                        const HazardRatio& lambda,
                                        std::uint64_t n_pairs, std::uint64_t seed,
                                        std::uint64_t stream_context = 0);

}  // namespace hrodds
