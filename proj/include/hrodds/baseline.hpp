#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace hrodds {

// Constant hazard `rate`.
struct Exponential {
    double rate = 1.0;
};

// Hazard (shape/scale)*(t/scale)^(shape-1): decreasing for shape < 1,
// increasing for shape > 1, divergent at t = 0 when shape < 1.
struct Weibull {
    double shape = 1.0;
    double scale = 1.0;
};

// Hazard rate*exp(shape*t). shape >= 0 only: negative shape leaves survival
// bounded away from zero, i.e. an improper event-time distribution.
// shape == 0 degenerates to the exponential.
struct Gompertz {
    double shape = 0.0;
    double rate = 1.0;
};

// Piecewise-constant hazard: rates[k] applies on [breakpoints[k-1], breakpoints[k]),
// the last rate on [breakpoints.back(), inf). Hazard is right-continuous at
// breakpoints. Requires rates.size() == breakpoints.size() + 1.
struct PiecewiseExponential {
    std::vector<double> breakpoints;
    std::vector<double> rates;
};

// Control-arm event-time distribution. Immutable value; exposes the hazard
// h(t), the survival function S(t), the density f(t) = h(t)*S(t) and the
// inverse survival function needed for inverse-transform sampling.
class BaselineDistribution {
public:
    using Family = std::variant<Exponential, Weibull, Gompertz, PiecewiseExponential>;

    explicit BaselineDistribution(Exponential family);
    explicit BaselineDistribution(Weibull family);
    explicit BaselineDistribution(Gompertz family);
    explicit BaselineDistribution(PiecewiseExponential family);

    // S(t), exact closed form per family. Throws std::invalid_argument for t < 0.
    double survival(double t) const;

    // h(t). Throws std::invalid_argument at a divergent point
    // (Weibull shape < 1 at t = 0).
    double hazard(double t) const;

    // f(t) = h(t) * S(t). Same domain as hazard().
    double density(double t) const;

    // Integrated hazard H(t) = -log S(t).
    double cumulative_hazard(double t) const;

    // t with S(t) = u, for u in (0,1]. Closed form for exponential, Weibull
    // and piecewise families; monotone bisection to |S(t) - u| < 1e-12 for
    // Gompertz.
    double inverse_survival(double u) const;

    // True when the hazard diverges as t -> 0+ (Weibull shape < 1).
    bool hazard_singular_at_zero() const;

    // Canonical text form, parseable by parse_baseline().
    std::string spec_string() const;

    const Family& family() const noexcept { return family_; }

private:
    Family family_;
};

// Parses a distribution spec:
//   exp(rate=1)
//   weibull(shape=0.5,scale=2)
//   gompertz(shape=0.1,rate=1)
//   pwexp(breaks=1|2,rates=1|2|0.5)
// Keys may appear in any order; list values are '|'-separated. Throws
// ParseError with the offending position.
BaselineDistribution parse_baseline(std::string_view spec);

}  // namespace hrodds
