#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "hrodds/core.hpp"

namespace hrodds {

// Product-limit survival estimate. One entry per distinct time with at least
// one event; censored-only times shrink later risk sets without a jump.
struct StepSurvivalCurve {
    std::vector<double> jump_times;
    std::vector<double> values;            // S just after each jump
    std::vector<std::int64_t> at_risk;     // risk-set size just before the jump
    std::vector<std::int64_t> events;      // events at the jump

    // Step evaluation; 1 before the first jump.
    double value_at(double t) const;
};

// arm = nullopt pools both arms. Throws std::invalid_argument when the
// selection is empty.
StepSurvivalCurve kaplan_meier(const SurvivalDataset& data,
                               std::optional<int> arm = std::nullopt);

enum class TiesMethod { Breslow, Efron };

struct PartialLikelihood {
    double value = 0.0;
    double score = 0.0;        // d value / d beta
    double information = 0.0;  // -d2 value / d beta2
};

// Log partial likelihood for the single binary treatment indicator, with
// exact analytic first and second derivatives. Breslow gives every tied
// event the full risk-set denominator; Efron steps the tied block out of the
// denominator in d equal fractions.
PartialLikelihood partial_loglik(const SurvivalDataset& data, double beta,
                                 TiesMethod ties = TiesMethod::Breslow);

struct CoxFit {
    double beta_hat = 0.0;
    double se = 0.0;
    double loglik_at_zero = 0.0;
    double loglik_at_hat = 0.0;
    int iterations = 0;
    bool converged = false;
    TiesMethod ties = TiesMethod::Breslow;
};

// Newton-Raphson from beta = 0 with step halving whenever a step would
// decrease the log likelihood. Throws ModelError when events occur in only
// one arm (monotone likelihood), when |beta| exceeds 20 during iteration
// (separation), or when max_iter is exhausted (message carries the
// iteration trace).
CoxFit cox_fit(const SurvivalDataset& data, TiesMethod ties = TiesMethod::Breslow,
               double tol = 1e-10, int max_iter = 50);

struct HazardRatioInterval {
    double low = 0.0;
    double high = 0.0;
    double level = 0.0;
};

// Wald interval on the hazard-ratio scale: exp(beta_hat -+ z * se).
// Requires a converged fit.
HazardRatioInterval wald_ci(const CoxFit& fit, double level);

// Standard normal quantile, |error| < 1e-13 over (0,1).
double normal_quantile(double p);

struct ClogLogCurve {
    int arm = 0;
    std::vector<double> log_time;
    std::vector<double> cloglog_survival;  // log(-log S(t)) at each kept jump
};

// log(-log S) transforms of the per-arm Kaplan-Meier curves; under
// proportional hazards the two curves differ by the constant log lambda.
// Points with S in {0,1} (and any jump at t <= 0) are dropped. Throws
// ModelError when an arm retains fewer than two points.
std::array<ClogLogCurve, 2> cloglog_curves(const SurvivalDataset& data);

}  // namespace hrodds
