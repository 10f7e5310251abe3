#include "hrodds/baseline.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <stdexcept>

#include "hrodds/errors.hpp"

namespace hrodds {

namespace {

void require_nonnegative_time(double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw std::invalid_argument("time must be finite and >= 0, got " + std::to_string(t));
    }
}

double positive_or_throw(double v, const char* name) {
    if (!std::isfinite(v) || v <= 0.0) {
        throw std::invalid_argument(std::string(name) + " must be finite and > 0, got " +
                                    std::to_string(v));
    }
    return v;
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct CumulativeHazard {
    double operator()(const Exponential& d, double t) const { return d.rate * t; }
    double operator()(const Weibull& d, double t) const {
        return std::pow(t / d.scale, d.shape);
    }
    double operator()(const Gompertz& d, double t) const {
        if (d.shape == 0.0) return d.rate * t;
        return d.rate / d.shape * std::expm1(d.shape * t);
    }
    double operator()(const PiecewiseExponential& d, double t) const {
        double h = 0.0;
        double prev = 0.0;
        for (std::size_t k = 0; k < d.breakpoints.size(); ++k) {
            const double b = d.breakpoints[k];
            if (t <= b) return h + d.rates[k] * (t - prev);
            h += d.rates[k] * (b - prev);
            prev = b;
        }
        return h + d.rates.back() * (t - prev);
    }
};

struct Hazard {
    double operator()(const Exponential& d, double) const { return d.rate; }
    double operator()(const Weibull& d, double t) const {
        if (t == 0.0) {
            if (d.shape < 1.0) {
                throw std::invalid_argument("Weibull hazard diverges at t=0 for shape < 1");
            }
            if (d.shape == 1.0) return 1.0 / d.scale;
            return 0.0;
        }
        return d.shape / d.scale * std::pow(t / d.scale, d.shape - 1.0);
    }
    double operator()(const Gompertz& d, double t) const {
        return d.rate * std::exp(d.shape * t);
    }
    double operator()(const PiecewiseExponential& d, double t) const {
        const auto it =
            std::upper_bound(d.breakpoints.begin(), d.breakpoints.end(), t);
        return d.rates[static_cast<std::size_t>(it - d.breakpoints.begin())];
    }
};

}  // namespace

BaselineDistribution::BaselineDistribution(Exponential family) : family_(family) {
    positive_or_throw(family.rate, "exponential rate");
}

BaselineDistribution::BaselineDistribution(Weibull family) : family_(family) {
    positive_or_throw(family.shape, "Weibull shape");
    positive_or_throw(family.scale, "Weibull scale");
}

BaselineDistribution::BaselineDistribution(Gompertz family) : family_(family) {
    positive_or_throw(family.rate, "Gompertz rate");
    if (!std::isfinite(family.shape) || family.shape < 0.0) {
        throw std::invalid_argument(
            "Gompertz shape must be >= 0 (shape < 0 leaves S(inf) > 0, an improper "
            "event-time distribution), got " +
            std::to_string(family.shape));
    }
}

BaselineDistribution::BaselineDistribution(PiecewiseExponential family)
    : family_(std::move(family)) {
    const auto& d = std::get<PiecewiseExponential>(family_);
    if (d.rates.size() != d.breakpoints.size() + 1) {
        throw std::invalid_argument("piecewise exponential needs exactly one more rate "
                                    "than breakpoints");
    }
    for (double r : d.rates) positive_or_throw(r, "piecewise rate");
    for (std::size_t k = 0; k < d.breakpoints.size(); ++k) {
        const double b = d.breakpoints[k];
        if (!std::isfinite(b) || b < 0.0) {
            throw std::invalid_argument("breakpoints must be finite and >= 0");
        }
        if (k > 0 && b <= d.breakpoints[k - 1]) {
            throw std::invalid_argument("breakpoints must be strictly increasing");
        }
    }
}

double BaselineDistribution::cumulative_hazard(double t) const {
    require_nonnegative_time(t);
    return std::visit([t](const auto& d) { return CumulativeHazard{}(d, t); }, family_);
}

double BaselineDistribution::survival(double t) const {
    return std::exp(-cumulative_hazard(t));
}

double BaselineDistribution::hazard(double t) const {
    require_nonnegative_time(t);
    return std::visit([t](const auto& d) { return Hazard{}(d, t); }, family_);
}

double BaselineDistribution::density(double t) const {
    return hazard(t) * survival(t);
}

bool BaselineDistribution::hazard_singular_at_zero() const {
    if (const auto* w = std::get_if<Weibull>(&family_)) return w->shape < 1.0;
    return false;
}

double BaselineDistribution::inverse_survival(double u) const {
    if (!std::isfinite(u) || u <= 0.0 || u > 1.0) {
        throw std::invalid_argument("inverse survival needs u in (0,1], got " +
                                    std::to_string(u));
    }
    if (u == 1.0) return 0.0;
    const double target = -std::log(u);  // cumulative hazard at the solution

    if (const auto* d = std::get_if<Exponential>(&family_)) {
        return target / d->rate;
    }
    if (const auto* d = std::get_if<Weibull>(&family_)) {
        return d->scale * std::pow(target, 1.0 / d->shape);
    }
    if (const auto* d = std::get_if<PiecewiseExponential>(&family_)) {
        double h = 0.0;
        double prev = 0.0;
        for (std::size_t k = 0; k < d->breakpoints.size(); ++k) {
            const double b = d->breakpoints[k];
            const double seg = d->rates[k] * (b - prev);
            if (h + seg >= target) return prev + (target - h) / d->rates[k];
            h += seg;
            prev = b;
        }
        return prev + (target - h) / d->rates.back();
    }

    // Gompertz: bisection on the monotone survival function.
    double lo = 0.0;
    double hi = 1.0;
    while (survival(hi) > u) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e300) break;
    }
    double mid = 0.5 * (lo + hi);
    for (int iter = 0; iter < 500; ++iter) {
        mid = 0.5 * (lo + hi);
        const double s = survival(mid);
        if (std::fabs(s - u) < 1e-12) return mid;
        if (s > u) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo <= std::numeric_limits<double>::epsilon() * std::max(1.0, lo)) break;
    }
    return mid;
}

std::string BaselineDistribution::spec_string() const {
    if (const auto* d = std::get_if<Exponential>(&family_)) {
        return "exp(rate=" + format_number(d->rate) + ")";
    }
    if (const auto* d = std::get_if<Weibull>(&family_)) {
        return "weibull(shape=" + format_number(d->shape) + ",scale=" +
               format_number(d->scale) + ")";
    }
    if (const auto* d = std::get_if<Gompertz>(&family_)) {
        return "gompertz(shape=" + format_number(d->shape) + ",rate=" +
               format_number(d->rate) + ")";
    }
    const auto& d = std::get<PiecewiseExponential>(family_);
    std::string out = "pwexp(breaks=";
    for (std::size_t k = 0; k < d.breakpoints.size(); ++k) {
        if (k) out += '|';
        out += format_number(d.breakpoints[k]);
    }
    out += ",rates=";
    for (std::size_t k = 0; k < d.rates.size(); ++k) {
        if (k) out += '|';
        out += format_number(d.rates[k]);
    }
    out += ')';
    return out;
}

namespace {

// Minimal recursive-descent parser over name(key=value,key=v1|v2,...).
class SpecParser {
public:
    explicit SpecParser(std::string_view text) : text_(text) {}

    std::string parse_name() {
        skip_spaces();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) != 0)) {
            ++pos_;
        }
        if (pos_ == start) fail("expected distribution name");
        return std::string(text_.substr(start, pos_ - start));
    }

    std::map<std::string, std::vector<double>> parse_args() {
        std::map<std::string, std::vector<double>> args;
        expect('(');
        while (true) {
            skip_spaces();
            const std::size_t key_start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalpha(static_cast<unsigned char>(text_[pos_])) != 0)) {
                ++pos_;
            }
            if (pos_ == key_start) fail("expected parameter name");
            std::string key(text_.substr(key_start, pos_ - key_start));
            expect('=');
            std::vector<double> values;
            values.push_back(parse_number());
            while (peek() == '|') {
                ++pos_;
                values.push_back(parse_number());
            }
            if (!args.emplace(std::move(key), std::move(values)).second) {
                fail("duplicate parameter", key_start);
            }
            skip_spaces();
            if (peek() == ',') {
                ++pos_;
                continue;
            }
            break;
        }
        expect(')');
        skip_spaces();
        if (pos_ != text_.size()) fail("trailing characters after spec");
        return args;
    }

    [[noreturn]] void fail(const std::string& message) const { fail(message, pos_); }
    [[noreturn]] void fail(const std::string& message, std::size_t at) const {
        throw ParseError("bad distribution spec '" + std::string(text_) + "': " + message, at);
    }

private:
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void skip_spaces() {
        while (pos_ < text_.size() && text_[pos_] == ' ') ++pos_;
    }

    void expect(char c) {
        skip_spaces();
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    double parse_number() {
        skip_spaces();
        double value = 0.0;
        const char* begin = text_.data() + pos_;
        const char* end = text_.data() + text_.size();
        auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc{} || ptr == begin) fail("expected a number");
        pos_ += static_cast<std::size_t>(ptr - begin);
        return value;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

double single(const SpecParser& p, std::map<std::string, std::vector<double>>& args,
              const std::string& key) {
    const auto it = args.find(key);
    if (it == args.end()) p.fail("missing parameter '" + key + "'", 0);
    if (it->second.size() != 1) p.fail("parameter '" + key + "' takes one value", 0);
    const double v = it->second.front();
    args.erase(it);
    return v;
}

std::vector<double> list(const SpecParser& p, std::map<std::string, std::vector<double>>& args,
                         const std::string& key) {
    const auto it = args.find(key);
    if (it == args.end()) p.fail("missing parameter '" + key + "'", 0);
    std::vector<double> v = std::move(it->second);
    args.erase(it);
    return v;
}

void expect_exhausted(const SpecParser& p,
                      const std::map<std::string, std::vector<double>>& args) {
    if (!args.empty()) p.fail("unknown parameter '" + args.begin()->first + "'", 0);
}

}  // namespace

BaselineDistribution parse_baseline(std::string_view spec) {
    SpecParser parser(spec);
    const std::string name = parser.parse_name();
    auto args = parser.parse_args();
    try {
        if (name == "exp") {
            Exponential d{single(parser, args, "rate")};
            expect_exhausted(parser, args);
            return BaselineDistribution(d);
        }
        if (name == "weibull") {
            Weibull d{single(parser, args, "shape"), single(parser, args, "scale")};
            expect_exhausted(parser, args);
            return BaselineDistribution(d);
        }
        if (name == "gompertz") {
            Gompertz d{single(parser, args, "shape"), single(parser, args, "rate")};
            expect_exhausted(parser, args);
            return BaselineDistribution(d);
        }
        if (name == "pwexp") {
            PiecewiseExponential d{list(parser, args, "breaks"), list(parser, args, "rates")};
            expect_exhausted(parser, args);
            return BaselineDistribution(d);
        }
    } catch (const std::invalid_argument& e) {
        parser.fail(e.what(), 0);
    }
    parser.fail("unknown distribution '" + name + "'", 0);
}

}  // namespace hrodds
