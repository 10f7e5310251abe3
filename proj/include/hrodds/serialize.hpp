#pragma once

#include <json.hpp>

#include "hrodds/concordance.hpp"
#include "hrodds/estimate.hpp"
#include "hrodds/verify.hpp"

namespace hrodds {

// JSON shapes are part of the command-line contract; field names are stable.

inline const char* to_string(TiesMethod ties) {
    return ties == TiesMethod::Breslow ? "breslow" : "efron";
}

inline const char* to_string(PairRule rule) {
    return rule == PairRule::PaperBothEvents ? "paper_both_events" : "harrell_standard";
}

inline nlohmann::json fit_to_json(const CoxFit& fit, const HazardRatioInterval& ci) {
    return nlohmann::json{{"beta_hat", fit.beta_hat},
                          {"hr", std::exp(fit.beta_hat)},
                          {"se", fit.se},
                          {"ci_level", ci.level},
                          {"ci_low", ci.low},
                          {"ci_high", ci.high},
                          {"loglik0", fit.loglik_at_zero},
                          {"loglik1", fit.loglik_at_hat},
                          {"iterations", fit.iterations},
                          {"converged", fit.converged},
                          {"ties", to_string(fit.ties)}};
}

inline void to_json(nlohmann::json& j, const ConcordanceResult& r) {
    j = nlohmann::json{{"concordant", r.concordant},
                       {"discordant", r.discordant},
                       {"tied_prediction", r.tied_prediction},
                       {"comparable", r.comparable},
                       {"c", r.c},
                       {"pair_rule", to_string(r.pair_rule)}};
}

inline void to_json(nlohmann::json& j, const StepSurvivalCurve& curve) {
    j = nlohmann::json{{"jump_times", curve.jump_times},
                       {"values", curve.values},
                       {"at_risk", curve.at_risk},
                       {"events", curve.events}};
}

inline void to_json(nlohmann::json& j, const VerificationReport& r) {
    j = nlohmann::json{{"baseline", r.baseline},
                       {"lambda", r.lambda},
                       {"analytic_p_before", r.analytic_p_before},
                       {"analytic_p_after", r.analytic_p_after},
                       {"quadrature_p_after", r.quadrature_p_after},
                       {"quadrature_abs_error_estimate", r.quadrature_abs_error_estimate},
                       {"mc_p_before", r.mc_p_before},
                       {"mc_pairs", r.mc_pairs},
                       {"mc_halfwidth_4sigma", r.mc_halfwidth_4sigma},
                       {"pass", r.pass},
                       {"seed", r.seed}};
    if (!r.note.empty()) j["note"] = r.note;
}

}  // namespace hrodds
