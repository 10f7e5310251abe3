#include "hrodds/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "hrodds/errors.hpp"

namespace hrodds {

namespace {

constexpr double kSeparationBetaBound = 20.0;  // e^20 exceeds any plausible HR

struct TimeGroup {
    double time;
    std::int64_t at_risk;         // subjects with observed time >= time
    std::int64_t events;          // events exactly at time
    std::int64_t treated_events;  // events at time with arm == 1
};

// Distinct observed times in ascending order with risk-set sizes, via one
// descending sweep over the sorted sample.
std::vector<TimeGroup> group_by_time(const SurvivalDataset& data) {
    std::vector<const Observation*> sorted;
    sorted.reserve(data.size());
    for (const Observation& o : data.observations()) sorted.push_back(&o);
    std::sort(sorted.begin(), sorted.end(),
              [](const Observation* a, const Observation* b) { return a->time < b->time; });

    std::vector<TimeGroup> groups;
    std::int64_t remaining = static_cast<std::int64_t>(sorted.size());
    std::size_t i = 0;
    while (i < sorted.size()) {
        const double t = sorted[i]->time;
        TimeGroup g{t, remaining, 0, 0};
        while (i < sorted.size() && sorted[i]->time == t) {
            if (sorted[i]->event) {
                ++g.events;
                if (sorted[i]->arm == 1) ++g.treated_events;
            }
            ++i;
            --remaining;
        }
        groups.push_back(g);
    }
    return groups;
}

// Arm-1 membership of every risk set, aligned with group_by_time output.
std::vector<std::int64_t> treated_at_risk(const SurvivalDataset& data,
                                          const std::vector<TimeGroup>& groups) {
    std::vector<double> treated_times;
    for (const Observation& o : data.observations()) {
        if (o.arm == 1) treated_times.push_back(o.time);
    }
    std::sort(treated_times.begin(), treated_times.end());
    std::vector<std::int64_t> counts(groups.size());
    for (std::size_t k = 0; k < groups.size(); ++k) {
        const auto it = std::lower_bound(treated_times.begin(), treated_times.end(),
                                         groups[k].time);
        counts[k] = static_cast<std::int64_t>(treated_times.end() - it);
    }
    return counts;
}

}  // namespace

double StepSurvivalCurve::value_at(double t) const {
    const auto it = std::upper_bound(jump_times.begin(), jump_times.end(), t);
    if (it == jump_times.begin()) return 1.0;
    return values[static_cast<std::size_t>(it - jump_times.begin()) - 1];
}

StepSurvivalCurve kaplan_meier(const SurvivalDataset& data, std::optional<int> arm) {
    std::vector<Observation> selected;
    for (const Observation& o : data.observations()) {
        if (!arm || o.arm == *arm) selected.push_back(o);
    }
    if (selected.empty()) {
        throw std::invalid_argument("Kaplan-Meier: no observations in the selected arm");
    }
    const SurvivalDataset subset{std::move(selected)};
    const auto groups = group_by_time(subset);

    StepSurvivalCurve curve;
    double s = 1.0;
    for (const TimeGroup& g : groups) {
        if (g.events == 0) continue;  // censoring only: risk set shrinks, no jump
        s *= 1.0 - static_cast<double>(g.events) / static_cast<double>(g.at_risk);
        curve.jump_times.push_back(g.time);
        curve.values.push_back(s);
        curve.at_risk.push_back(g.at_risk);
        curve.events.push_back(g.events);
    }
    return curve;
}

PartialLikelihood partial_loglik(const SurvivalDataset& data, double beta,
                                 TiesMethod ties) {
    const auto groups = group_by_time(data);
    const auto treated = treated_at_risk(data, groups);

    bool any_event = false;
    for (const TimeGroup& g : groups) any_event |= g.events > 0;
    if (!any_event) throw std::invalid_argument("partial likelihood needs at least one event");

    const double ebeta = std::exp(beta);
    PartialLikelihood out;
    for (std::size_t k = 0; k < groups.size(); ++k) {
        const TimeGroup& g = groups[k];
        if (g.events == 0) continue;
        const double d = static_cast<double>(g.events);
        const double d1 = static_cast<double>(g.treated_events);
        const double n1 = static_cast<double>(treated[k]);
        const double n0 = static_cast<double>(g.at_risk - treated[k]);

        // Weighted risk-set sums over e^{beta z}; z is the binary arm, so the
        // z- and z^2-weighted sums coincide.
        const double denom = n0 + n1 * ebeta;
        const double num = n1 * ebeta;

        out.value += beta * d1;
        const double steps = ties == TiesMethod::Efron ? d : 1.0;
        const double tied_denom = (d - d1) + d1 * ebeta;
        const double tied_num = d1 * ebeta;
        for (double l = 0.0; l < steps; ++l) {
            const double frac = l / d;
            const double s = denom - (ties == TiesMethod::Efron ? frac * tied_denom : 0.0);
            const double a = num - (ties == TiesMethod::Efron ? frac * tied_num : 0.0);
            const double weight = ties == TiesMethod::Efron ? 1.0 : d;
            const double p = a / s;
            out.value -= weight * std::log(s);
            out.score -= weight * p;
            out.information += weight * p * (1.0 - p);
        }
        out.score += d1;
    }
    return out;
}

CoxFit cox_fit(const SurvivalDataset& data, TiesMethod ties, double tol, int max_iter) {
    std::int64_t events_by_arm[2] = {0, 0};
    for (const Observation& o : data.observations()) {
        if (o.event) ++events_by_arm[o.arm];
    }
    if (events_by_arm[0] + events_by_arm[1] == 0) {
        throw std::invalid_argument("Cox fit needs at least one event");
    }
    if (events_by_arm[0] == 0 || events_by_arm[1] == 0) {
        throw ModelError(
            "monotone likelihood: all events lie in one arm, the hazard-ratio "
            "estimate diverges");
    }

    CoxFit fit;
    fit.ties = ties;
    double beta = 0.0;
    PartialLikelihood current = partial_loglik(data, beta, ties);
    fit.loglik_at_zero = current.value;

    std::string trace;
    char line[128];
    for (int iter = 1; iter <= max_iter; ++iter) {
        fit.iterations = iter;
        std::snprintf(line, sizeof(line), "  iter %d: beta=%.12g loglik=%.12g score=%.3e\n",
                      iter, beta, current.value, current.score);
        trace += line;

        if (std::fabs(current.score) < tol) {
            fit.converged = true;
            break;
        }
        if (current.information <= 0.0) {
            throw ModelError("Cox fit: observed information is not positive at beta=" +
                             std::to_string(beta));
        }
        double step = current.score / current.information;
        PartialLikelihood next = partial_loglik(data, beta + step, ties);
        int halvings = 0;
        while (next.value < current.value && halvings < 30) {
            step *= 0.5;
            ++halvings;
            next = partial_loglik(data, beta + step, ties);
        }
        beta += step;
        if (std::fabs(beta) > kSeparationBetaBound) {
            throw ModelError("Cox fit diverged: |beta| exceeded " +
                             std::to_string(kSeparationBetaBound) +
                             ", the data are separated or nearly so");
        }
        current = next;
        if (std::fabs(step) < tol) {
            fit.converged = true;
            break;
        }
    }
    if (!fit.converged) {
        throw ModelError("Cox fit did not converge in " + std::to_string(max_iter) +
                         " iterations; trace:\n" + trace);
    }
    if (current.information <= 0.0) {
        throw ModelError("Cox fit: observed information is not positive at the optimum");
    }
    fit.beta_hat = beta;
    fit.se = 1.0 / std::sqrt(current.information);
    fit.loglik_at_hat = current.value;
    return fit;
}

HazardRatioInterval wald_ci(const CoxFit& fit, double level) {
    if (!fit.converged) throw ModelError("Wald interval requires a converged fit");
    if (!(level > 0.0) || !(level < 1.0)) {
        throw std::invalid_argument("confidence level must lie in (0,1)");
    }
    const double z = normal_quantile(0.5 + 0.5 * level);
    return {std::exp(fit.beta_hat - z * fit.se), std::exp(fit.beta_hat + z * fit.se), level};
}

double normal_quantile(double p) {
    if (!(p > 0.0) || !(p < 1.0)) {
        throw std::invalid_argument("normal quantile needs p in (0,1)");
    }
    // Acklam's rational approximation, then one Halley step against erfc for
    // full double accuracy.
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double p_low = 0.02425;
    double x;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
    const double u = e * std::sqrt(2.0 * M_PI) * std::exp(0.5 * x * x);
    return x - u / (1.0 + 0.5 * x * u);
}

std::array<ClogLogCurve, 2> cloglog_curves(const SurvivalDataset& data) {
    std::array<ClogLogCurve, 2> out;
    for (int arm = 0; arm < 2; ++arm) {
        ClogLogCurve& curve = out[static_cast<std::size_t>(arm)];
        curve.arm = arm;
        StepSurvivalCurve km;
        try {
            km = kaplan_meier(data, arm);
        } catch (const std::invalid_argument&) {
            throw ModelError("cloglog diagnostic: arm " + std::to_string(arm) +
                             " has no observations");
        }
        for (std::size_t k = 0; k < km.jump_times.size(); ++k) {
            const double s = km.values[k];
            if (s <= 0.0 || s >= 1.0 || km.jump_times[k] <= 0.0) continue;
            curve.log_time.push_back(std::log(km.jump_times[k]));
            curve.cloglog_survival.push_back(std::log(-std::log(s)));
        }
        if (curve.log_time.size() < 2) {
            throw ModelError("cloglog diagnostic: arm " + std::to_string(arm) +
                             " has fewer than two usable event times");
        }
    }
    return out;
}

}  // namespace hrodds
