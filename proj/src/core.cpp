#include "hrodds/core.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <utility>

namespace hrodds {

HazardRatio::HazardRatio(double lambda) : lambda_(lambda) {
    if (!std::isfinite(lambda) || lambda <= 0.0) {
        throw std::invalid_argument("hazard ratio must be finite and > 0, got " +
                                    std::to_string(lambda));
    }
}

PrecedenceProbability::PrecedenceProbability(double p)
    : PrecedenceProbability(p, 1.0 - p) {}

PrecedenceProbability::PrecedenceProbability(double p, double complement)
    : p_(p), q_(complement) {
    if (!std::isfinite(p) || p <= 0.0 || p >= 1.0) {
        throw std::invalid_argument("precedence probability must lie in (0,1), got " +
                                    std::to_string(p));
    }
    if (!std::isfinite(q_) || q_ <= 0.0 || q_ >= 1.0) {
        throw std::invalid_argument("precedence probability complement out of (0,1)");
    }
}

std::string OddsRendering::text() const {
    if (numerator < 0.0 || !std::isfinite(numerator)) {
        throw std::invalid_argument("odds numerator must be finite and >= 0");
    }
    if (display_precision < 0 || display_precision > 9) {
        throw std::invalid_argument("odds display precision must lie in [0,9]");
    }
    double scale = 1.0;
    for (int i = 0; i < display_precision; ++i) scale *= 10.0;
    const long long scaled = std::llround(numerator * scale);

    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", display_precision,
                  static_cast<double>(scaled) / scale);
    std::string s(buf);
    if (s.find('.') != std::string::npos) {
        while (!s.empty() && s.back() == '0') s.pop_back();
        if (!s.empty() && s.back() == '.') s.pop_back();
    }
    return s + ":1";
}

PrecedenceProbability hr_to_prob(const HazardRatio& hr) {
    const double denom = 1.0 + hr.value();
    return PrecedenceProbability(hr.value() / denom, 1.0 / denom);
}

HazardRatio prob_to_hr(const PrecedenceProbability& p) {
    return HazardRatio(p.value() / p.complement());
}

PrecedenceProbability prob_later(const HazardRatio& hr) {
    const double denom = 1.0 + hr.value();
    return PrecedenceProbability(1.0 / denom, hr.value() / denom);
}

OddsRendering odds_rendering(const HazardRatio& hr, int display_precision) {
    return OddsRendering{hr.value(), display_precision};
}

int percent(const PrecedenceProbability& p) {
    return static_cast<int>(std::llround(100.0 * p.value()));
}

std::string explain(const HazardRatio& hr, std::string_view event_name) {
    std::string out = "The odds are roughly ";
    out += odds_rendering(hr).text();
    out += " (the probability is ";
    out += std::to_string(percent(hr_to_prob(hr)));
    out += "%) that you will ";
    out += event_name;
    out += " before someone in the comparison group.";
    return out;
}

Observation::Observation(double time, bool event, int arm)
    : time(time), event(event), arm(arm) {
    if (!std::isfinite(time) || time < 0.0) {
        throw std::invalid_argument("observation time must be finite and >= 0, got " +
                                    std::to_string(time));
    }
    if (arm != 0 && arm != 1) {
        throw std::invalid_argument("arm must be 0 (control) or 1 (treatment), got " +
                                    std::to_string(arm));
    }
}

SurvivalDataset::SurvivalDataset(std::vector<Observation> observations)
    : observations_(std::move(observations)) {
    if (observations_.empty()) {
        throw std::invalid_argument("survival dataset must be nonempty");
    }
}

}  // namespace hrodds
