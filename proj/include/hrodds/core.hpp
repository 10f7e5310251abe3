#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace hrodds {

// Ratio of treatment to control hazards. Dimensionless, strictly positive.
class HazardRatio {
public:
    explicit HazardRatio(double lambda);
    double value() const noexcept { return lambda_; }

private:
    double lambda_;
};

// Probability that the treatment subject's event precedes the control
// subject's. The complement is carried alongside: deriving it as 1-p loses
// up to half the significand near p -> 1, which would wreck hazard-ratio
// reconstruction for large ratios.
class PrecedenceProbability {
public:
    explicit PrecedenceProbability(double p);
    PrecedenceProbability(double p, double complement);
    double value() const noexcept { return p_; }
    double complement() const noexcept { return q_; }

private:
    double p_;
    double q_;
};

// Odds displayed against a fixed denominator of 1, e.g. "2:1" or "3.5:1".
struct OddsRendering {
    double numerator = 0.0;
    int display_precision = 1;

    // Numerator rounded half-away-from-zero to display_precision decimals,
    // trailing zeros (and a bare '.') stripped, then ":1".
    std::string text() const;
};

// lambda / (1 + lambda): probability the treatment subject's event comes first.
PrecedenceProbability hr_to_prob(const HazardRatio& hr);

// p / (1 - p): inverse of hr_to_prob.
HazardRatio prob_to_hr(const PrecedenceProbability& p);

// 1 / (1 + lambda): probability the treatment subject's event comes later.
PrecedenceProbability prob_later(const HazardRatio& hr);

OddsRendering odds_rendering(const HazardRatio& hr, int display_precision = 1);

// Percentage rounded half-away-from-zero to the nearest integer. 2/3 -> 67.
int percent(const PrecedenceProbability& p);

// Fixed plain-language template for clinicians:
//   "The odds are roughly <odds>:1 (the probability is <pct>%) that you will
//    <event_name> before someone in the comparison group."
std::string explain(const HazardRatio& hr, std::string_view event_name);

// One subject: observed time, event indicator (false = right-censored),
// study arm (0 = control, 1 = treatment).
struct Observation {
    double time = 0.0;
    bool event = false;
    int arm = 0;

    Observation() = default;
    Observation(double time, bool event, int arm);
};

// Immutable ordered sample of observations. Nonempty by construction;
// per-observation invariants are enforced by Observation itself.
class SurvivalDataset {
public:
    explicit SurvivalDataset(std::vector<Observation> observations);

    const std::vector<Observation>& observations() const noexcept { return observations_; }
    std::size_t size() const noexcept { return observations_.size(); }

private:
    std::vector<Observation> observations_;
};

}  // namespace hrodds
