// hrodds — hazard-ratio / precedence-odds toolkit.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
// 3 numerical or model error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "hrodds/concordance.hpp"
#include "hrodds/core.hpp"
#include "hrodds/csv.hpp"
#include "hrodds/errors.hpp"
#include "hrodds/estimate.hpp"
#include "hrodds/serialize.hpp"
#include "hrodds/simulate.hpp"
#include "hrodds/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitModel = 3;

using nlohmann::json;

hrodds::SurvivalDataset load_dataset(const std::string& path) {
    if (path == "-") return hrodds::read_dataset_csv(std::cin);
    std::ifstream in(path);
    if (!in) throw hrodds::ParseError("cannot open '" + path + "'", 0);
    return hrodds::read_dataset_csv(in);
}

hrodds::TiesMethod parse_ties(const std::string& name) {
    if (name == "breslow") return hrodds::TiesMethod::Breslow;
    if (name == "efron") return hrodds::TiesMethod::Efron;
    throw CLI::ValidationError("--ties", "must be 'breslow' or 'efron'");
}

hrodds::PairRule parse_pair_rule(const std::string& name) {
    if (name == "paper") return hrodds::PairRule::PaperBothEvents;
    if (name == "harrell") return hrodds::PairRule::HarrellStandard;
    throw CLI::ValidationError("--pair-rule", "must be 'paper' or 'harrell'");
}

void print_json(const json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_convert(const std::optional<double>& hr_flag, const std::optional<double>& prob_flag,
                const std::string& format) {
    if (hr_flag.has_value() == prob_flag.has_value()) {
        std::cerr << "convert: exactly one of --hr or --prob is required\n";
        return kExitUsage;
    }
    hrodds::HazardRatio hr = hr_flag ? hrodds::HazardRatio(*hr_flag)
                                     : hrodds::prob_to_hr(hrodds::PrecedenceProbability(*prob_flag));
    const auto before = hrodds::hr_to_prob(hr);
    const auto after = hrodds::prob_later(hr);
    if (format == "json") {
        print_json(json{{"hr", hr.value()},
                        {"odds", hrodds::odds_rendering(hr).text()},
                        {"p_before", before.value()},
                        {"p_after", after.value()}});
    } else {
        std::printf("hazard ratio   %.10g\n", hr.value());
        std::printf("odds           %s\n", hrodds::odds_rendering(hr).text().c_str());
        std::printf("P(event first) %.10g\n", before.value());
        std::printf("P(event later) %.10g\n", after.value());
    }
    return kExitOk;
}

int cmd_explain(double hr_value, const std::string& event_name, const std::string& format) {
    const hrodds::HazardRatio hr(hr_value);
    const std::string text = hrodds::explain(hr, event_name);
    if (format == "json") {
        print_json(json{{"hr", hr.value()},
                        {"odds", hrodds::odds_rendering(hr).text()},
                        {"percent", hrodds::percent(hrodds::hr_to_prob(hr))},
                        {"text", text}});
    } else {
        std::cout << text << "\n";
    }
    return kExitOk;
}

int cmd_simulate(std::int64_t n_control, std::int64_t n_treatment, double lambda,
                 const std::string& baseline_spec, const std::string& censor_spec,
                 std::uint64_t seed, const std::string& out_path) {
    hrodds::TrialConfig config{n_control,
                               n_treatment,
                               hrodds::HazardRatio(lambda),
                               hrodds::parse_baseline(baseline_spec),
                               hrodds::parse_censoring(censor_spec),
                               seed};
    const auto data = hrodds::simulate_trial(config);
    if (out_path == "-") {
        hrodds::write_dataset_csv(data, std::cout);
    } else {
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "simulate: cannot write '" << out_path << "'\n";
            return kExitUsage;
        }
        hrodds::write_dataset_csv(data, out);
    }
    return kExitOk;
}

int cmd_fit(const std::string& in_path, const std::string& ties_name, double level,
            const std::string& format) {
    const auto data = load_dataset(in_path);
    const auto fit = hrodds::cox_fit(data, parse_ties(ties_name));
    const auto ci = hrodds::wald_ci(fit, level);
    if (format == "json") {
        print_json(hrodds::fit_to_json(fit, ci));
    } else {
        std::printf("beta_hat   %.10g\nhr         %.10g\nse         %.10g\n",
                    fit.beta_hat, std::exp(fit.beta_hat), fit.se);
        std::printf("%.0f%% CI     [%.10g, %.10g]\n", 100.0 * level, ci.low, ci.high);
        std::printf("loglik     %.10g -> %.10g in %d iterations\n", fit.loglik_at_zero,
                    fit.loglik_at_hat, fit.iterations);
    }
    return kExitOk;
}

int cmd_km(const std::string& in_path, const std::string& arm_name, const std::string& format) {
    const auto data = load_dataset(in_path);
    std::optional<int> arm;
    if (arm_name == "0" || arm_name == "1") {
        arm = arm_name == "1" ? 1 : 0;
    } else if (arm_name != "all") {
        std::cerr << "km: --arm must be 0, 1 or all\n";
        return kExitUsage;
    }
    const auto curve = hrodds::kaplan_meier(data, arm);
    if (format == "json") {
        print_json(json(curve));
    } else {
        std::printf("%14s %14s %10s %8s\n", "time", "survival", "at_risk", "events");
        for (std::size_t k = 0; k < curve.jump_times.size(); ++k) {
            std::printf("%14.6g %14.8f %10lld %8lld\n", curve.jump_times[k], curve.values[k],
                        static_cast<long long>(curve.at_risk[k]),
                        static_cast<long long>(curve.events[k]));
        }
    }
    return kExitOk;
}

int cmd_concordance(const std::string& in_path, const std::string& mode,
                    const std::string& rule_name, const std::string& format) {
    const auto data = load_dataset(in_path);
    const hrodds::PairRule rule = parse_pair_rule(rule_name);
    hrodds::ConcordanceResult result;
    if (mode == "between") {
        result = hrodds::between_group_concordance(data, rule);
    } else if (mode == "overall") {
        // Risk score for the two-group setting is the arm indicator itself.
        std::vector<double> scores;
        scores.reserve(data.size());
        for (const auto& o : data.observations()) scores.push_back(o.arm);
        result = hrodds::harrell_c(data, scores, rule);
    } else {
        std::cerr << "concordance: --mode must be 'between' or 'overall'\n";
        return kExitUsage;
    }
    if (format == "json") {
        print_json(json(result));
    } else {
        std::printf("c           %.8f\ncomparable  %lld\nconcordant  %lld\ndiscordant  %lld\ntied        %lld\n",
                    result.c, static_cast<long long>(result.comparable),
                    static_cast<long long>(result.concordant),
                    static_cast<long long>(result.discordant),
                    static_cast<long long>(result.tied_prediction));
    }
    return kExitOk;
}

int cmd_verify(const std::vector<std::string>& baseline_specs,
               const std::vector<double>& lambdas, std::uint64_t pairs, std::uint64_t seed,
               const std::string& format, bool break_ph) {
    std::vector<hrodds::BaselineDistribution> baselines;
    baselines.reserve(baseline_specs.size());
    for (const auto& spec : baseline_specs) baselines.push_back(hrodds::parse_baseline(spec));

    hrodds::VerificationOptions options;
    options.n_pairs = pairs;
    options.seed = seed;
    options.break_proportional_hazards = break_ph;
    const auto reports = hrodds::run_verification(baselines, lambdas, options);

    if (format == "json") {
        print_json(json(reports));
    } else {
        std::cout << hrodds::render_table(reports);
    }
    return hrodds::all_pass(reports) ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Survival-analysis toolkit: hazard-ratio conversions, two-arm trial "
                 "simulation, Cox fits, concordance, and numerical verification that the "
                 "hazard ratio equals the odds of the treatment subject's event coming "
                 "first."};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);

    // convert
    auto* convert = app.add_subcommand("convert", "Convert between hazard ratio and "
                                                  "precedence probability");
    std::optional<double> hr_flag;
    std::optional<double> prob_flag;
    std::string convert_format = "json";
    convert->add_option("--hr", hr_flag, "hazard ratio (> 0)");
    convert->add_option("--prob", prob_flag, "precedence probability in (0,1)");
    convert->add_option("--format", convert_format, "json|text")
        ->check(CLI::IsMember({"json", "text"}));

    // explain
    auto* explain = app.add_subcommand("explain", "Plain-language sentence for a hazard ratio");
    double explain_hr = 0.0;
    std::string event_name;
    std::string explain_format = "text";
    explain->add_option("--hr", explain_hr, "hazard ratio (> 0)")->required();
    explain->add_option("--event", event_name, "event phrase, e.g. 'heal'")->required();
    explain->add_option("--format", explain_format, "json|text")
        ->check(CLI::IsMember({"json", "text"}));

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Simulate a two-arm proportional-hazards "
                                                    "trial and write the dataset CSV");
    std::int64_t n_control = 0;
    std::int64_t n_treatment = 0;
    double sim_lambda = 1.0;
    std::string baseline_spec;
    std::string censor_spec = "none";
    std::uint64_t sim_seed = 0;
    std::string out_path = "-";
    simulate->add_option("--n-control", n_control, "control-arm size")->required();
    simulate->add_option("--n-treatment", n_treatment, "treatment-arm size")->required();
    simulate->add_option("--lambda", sim_lambda, "hazard ratio")->required();
    simulate->add_option("--baseline", baseline_spec, "control distribution, e.g. exp(rate=1)")
        ->required();
    simulate->add_option("--censor", censor_spec,
                         "none | admin(cutoff=T) | exp(rate=R), default none");
    simulate->add_option("--seed", sim_seed, "RNG seed")->required();
    simulate->add_option("--out", out_path, "output path, '-' for stdout");

    // fit
    auto* fit = app.add_subcommand("fit", "Cox proportional-hazards fit of the treatment "
                                          "effect from a dataset CSV");
    std::string fit_in;
    std::string ties_name = "breslow";
    double ci_level = 0.95;
    std::string fit_format = "json";
    fit->add_option("--in", fit_in, "dataset CSV, '-' for stdin")->required();
    fit->add_option("--ties", ties_name, "breslow|efron");
    fit->add_option("--level", ci_level, "Wald CI level, default 0.95");
    fit->add_option("--format", fit_format, "json|text")
        ->check(CLI::IsMember({"json", "text"}));

    // km
    auto* km = app.add_subcommand("km", "Kaplan-Meier survival curve");
    std::string km_in;
    std::string km_arm = "all";
    std::string km_format = "json";
    km->add_option("--in", km_in, "dataset CSV, '-' for stdin")->required();
    km->add_option("--arm", km_arm, "0|1|all, default all");
    km->add_option("--format", km_format, "json|text")->check(CLI::IsMember({"json", "text"}));

    // concordance
    auto* conc = app.add_subcommand("concordance", "Concordance statistics over subject pairs");
    std::string conc_in;
    std::string conc_mode = "between";
    std::string rule_name = "paper";
    std::string conc_format = "json";
    conc->add_option("--in", conc_in, "dataset CSV, '-' for stdin")->required();
    conc->add_option("--mode", conc_mode, "between|overall, default between");
    conc->add_option("--pair-rule", rule_name, "paper|harrell, default paper");
    conc->add_option("--format", conc_format, "json|text")
        ->check(CLI::IsMember({"json", "text"}));

    // verify
    auto* verify = app.add_subcommand("verify", "Check the precedence identity over a grid of "
                                                "baselines and hazard ratios");
    std::vector<std::string> baseline_specs{
        "exp(rate=1)", "weibull(shape=0.5,scale=1)", "weibull(shape=2,scale=1)",
        "gompertz(shape=0.1,rate=1)", "pwexp(breaks=1|2,rates=1|2|0.5)"};
    std::vector<double> lambdas{0.5, 1.0, 2.0, 3.0, 10.0};
    std::uint64_t pairs = 100000;
    std::uint64_t verify_seed = 0;
    std::string verify_format = "table";
    bool break_ph = false;
    verify->add_option("--baselines", baseline_specs,
                       "distribution specs (repeatable; replaces the default grid)");
    verify->add_option("--lambdas", lambdas, "hazard ratios (repeatable)");
    verify->add_option("--pairs", pairs, "Monte Carlo pairs per cell, default 100000");
    verify->add_option("--seed", verify_seed, "RNG seed")->required();
    verify->add_option("--format", verify_format, "json|table")
        ->check(CLI::IsMember({"json", "table"}));
    verify
        ->add_flag("--break-ph", break_ph,
                   "demo: sample treatment times that violate proportional hazards "
                   "(the identity is expected to fail)")
        ->group("");  // hidden from the main listing

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (convert->parsed()) return cmd_convert(hr_flag, prob_flag, convert_format);
        if (explain->parsed()) return cmd_explain(explain_hr, event_name, explain_format);
        if (simulate->parsed()) {
            return cmd_simulate(n_control, n_treatment, sim_lambda, baseline_spec,
                                censor_spec, sim_seed, out_path);
        }
        if (fit->parsed()) return cmd_fit(fit_in, ties_name, ci_level, fit_format);
        if (km->parsed()) return cmd_km(km_in, km_arm, km_format);
        if (conc->parsed()) return cmd_concordance(conc_in, conc_mode, rule_name, conc_format);
        if (verify->parsed()) {
            return cmd_verify(baseline_specs, lambdas, pairs, verify_seed, verify_format,
                              break_ph);
        }
    } catch (const hrodds::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const hrodds::ModelError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitModel;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitModel;
    }
    return kExitOk;
}
