#include "hrodds/simulate.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <vector>

#include "hrodds/errors.hpp"
#include "hrodds/rng.hpp"

namespace hrodds {

CensoringSpec CensoringSpec::administrative(double cutoff) {
    if (!std::isfinite(cutoff) || cutoff <= 0.0) {
        throw std::invalid_argument("administrative cutoff must be finite and > 0");
    }
    return {Kind::Administrative, cutoff};
}

CensoringSpec CensoringSpec::random_exponential(double rate) {
    if (!std::isfinite(rate) || rate <= 0.0) {
        throw std::invalid_argument("censoring rate must be finite and > 0");
    }
    return {Kind::RandomExponential, rate};
}

std::string CensoringSpec::spec_string() const {
    char buf[48];
    switch (kind) {
        case Kind::None:
            return "none";
        case Kind::Administrative:
            std::snprintf(buf, sizeof(buf), "admin(cutoff=%.17g)", param);
            return buf;
        case Kind::RandomExponential:
            std::snprintf(buf, sizeof(buf), "exp(rate=%.17g)", param);
            return buf;
    }
    return "none";
}

namespace {

double parse_full_number(std::string_view text, std::string_view spec, std::size_t at) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ParseError("bad censoring spec '" + std::string(spec) + "': expected a number",
                         at);
    }
    return value;
}

}  // namespace

CensoringSpec parse_censoring(std::string_view spec) {
    std::size_t i = 0;
    while (i < spec.size() && spec[i] == ' ') ++i;
    std::size_t j = spec.size();
    while (j > i && spec[j - 1] == ' ') --j;
    const std::string_view body = spec.substr(i, j - i);
    if (body == "none") return CensoringSpec::none();

    try {
        if (body.rfind("admin(", 0) == 0 && body.back() == ')') {
            const std::string_view inner = body.substr(6, body.size() - 7);
            if (inner.rfind("cutoff=", 0) != 0) {
                throw ParseError("bad censoring spec '" + std::string(spec) +
                                     "': expected cutoff=",
                                 i + 6);
            }
            return CensoringSpec::administrative(
                parse_full_number(inner.substr(7), spec, i + 13));
        }
        if (body.rfind("exp(", 0) == 0 && body.back() == ')') {
            const std::string_view inner = body.substr(4, body.size() - 5);
            if (inner.rfind("rate=", 0) != 0) {
                throw ParseError("bad censoring spec '" + std::string(spec) +
                                     "': expected rate=",
                                 i + 4);
            }
            return CensoringSpec::random_exponential(
                parse_full_number(inner.substr(5), spec, i + 9));
        }
    } catch (const std::invalid_argument& e) {
        throw ParseError("bad censoring spec '" + std::string(spec) + "': " + e.what(), i);
    }
    throw ParseError("bad censoring spec '" + std::string(spec) +
                         "': expected none, admin(cutoff=...) or exp(rate=...)",
                     i);
}

double sample_control(const BaselineDistribution& dist, double u) {
    if (!(u > 0.0) || !(u < 1.0)) {
        throw std::invalid_argument("uniform draw must lie in (0,1)");
    }
    return dist.inverse_survival(u);
}

double sample_treatment(const BaselineDistribution& dist, const HazardRatio& lambda,
                        double u) {
    if (!(u > 0.0) || !(u < 1.0)) {
        throw std::invalid_argument("uniform draw must lie in (0,1)");
    }
    return dist.inverse_survival(std::pow(u, 1.0 / lambda.value()));
}

namespace {

struct Censored {
    double time;
    bool event;
};

Censored apply_censoring(double event_time, const CensoringSpec& censoring,
                         const RngStream& censor_stream, std::uint64_t subject) {
    switch (censoring.kind) {
        case CensoringSpec::Kind::None:
            return {event_time, true};
        case CensoringSpec::Kind::Administrative: {
            // Tie at the cutoff counts as censored.
            const double cutoff = censoring.param;
            if (event_time < cutoff) return {event_time, true};
            return {cutoff, false};
        }
        case CensoringSpec::Kind::RandomExponential: {
            const double u = censor_stream.u01_at(subject);
            const double censor_time = -std::log(u) / censoring.param;
            if (event_time <= censor_time) return {event_time, true};
            return {censor_time, false};
        }
    }
    return {event_time, true};
}

}  // namespace

SurvivalDataset simulate_trial(const TrialConfig& config) {
    if (config.n_control < 1 || config.n_treatment < 1) {
        throw std::invalid_argument("both arms need at least one subject");
    }
    const RngStream control(config.seed, stream_id(0, StreamRole::ControlArm));
    const RngStream treatment(config.seed, stream_id(0, StreamRole::TreatmentArm));
    const RngStream censor(config.seed, stream_id(0, StreamRole::Censoring));

    std::vector<Observation> obs;
    obs.reserve(static_cast<std::size_t>(config.n_control + config.n_treatment));
    std::uint64_t subject = 0;
    for (std::int64_t i = 0; i < config.n_control; ++i, ++subject) {
        const double t = sample_control(config.baseline, control.u01_at(subject));
        const Censored c = apply_censoring(t, config.censoring, censor, subject);
        obs.emplace_back(c.time, c.event, 0);
    }
    for (std::int64_t i = 0; i < config.n_treatment; ++i, ++subject) {
        const double t =
            sample_treatment(config.baseline, config.lambda, treatment.u01_at(subject));
        const Censored c = apply_censoring(t, config.censoring, censor, subject);
        obs.emplace_back(c.time, c.event, 1);
    }
    return SurvivalDataset(std::move(obs));
}

std::uint64_t race_pairs(const BaselineDistribution& dist, const HazardRatio& lambda,
                         std::uint64_t n_pairs, std::uint64_t seed,
                         std::uint64_t stream_context) {
    if (n_pairs < 1) throw std::invalid_argument("need at least one pair");
    const RngStream pairs(seed, stream_id(stream_context, StreamRole::RacePairs));
    std::uint64_t treatment_first = 0;
    for (std::uint64_t i = 0; i < n_pairs; ++i) {
        const auto [u_treatment, u_control] = pairs.u01_pair_at(i);
        const double y = sample_treatment(dist, lambda, u_treatment);
        const double x = sample_control(dist, u_control);
        if (y < x) ++treatment_first;
    }
    return treatment_first;
}

std::uint64_t race_pairs_delayed_effect(const BaselineDistribution& dist,
                                        const HazardRatio& lambda,
                                        std::uint64_t n_pairs, std::uint64_t seed,
                                        std::uint64_t stream_context) {
    if (n_pairs < 1) throw std::invalid_argument("need at least one pair");
    const RngStream pairs(seed, stream_id(stream_context, StreamRole::RacePairs));
    std::uint64_t treatment_first = 0;
    for (std::uint64_t i = 0; i < n_pairs; ++i) {
        const auto [u_treatment, u_control] = pairs.u01_pair_at(i);
        // S_Y(t) = S(t) up to the median, then 1/2 * (2 S(t))^lambda: the
        // hazard ratio kicks in only after half the control events would
        // have happened.
        double y;
        if (u_treatment >= 0.5) {
            y = dist.inverse_survival(u_treatment);
        } else {
            y = dist.inverse_survival(
                0.5 * std::pow(2.0 * u_treatment, 1.0 / lambda.value()));
        }
        const double x = sample_control(dist, u_control);
        if (y < x) ++treatment_first;
    }
    return treatment_first;
}

}  // namespace hrodds
