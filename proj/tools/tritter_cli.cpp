// tritter: covariance matrices, correlation measures, sweeps and thresholds
// for the two-mode squeezed vacuum + vacuum state sent through a tritter.

#include "tritter/analysis.hpp"
#include "tritter/error.hpp"
#include "tritter/io.hpp"
#include "tritter/tritter_state.hpp"
#include "tritter/verify.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using namespace tritter;

constexpr int kExitUsage = 1;
constexpr int kExitVerification = 2;
constexpr int kExitNumeric = 3;

struct UsageError : Error {
    using Error::Error;
};

struct StateFlags {
    std::optional<double> lambda;
    std::optional<double> r;
    std::string gamma = "0";
    std::optional<int> scenario;
    std::optional<double> t;
    std::optional<double> t1, t2, t3;
    std::string k = "c";
    std::optional<std::string> member;
    bool ideal = false;
    std::string via = "closed-form";
};

struct OutputFlags {
    std::string format = "csv";
    std::string out;
};

void add_state_flags(CLI::App* cmd, StateFlags& f, bool with_loss) {
    auto* lam = cmd->add_option("--lambda", f.lambda, "squeezing parameter lambda = tanh r, in [0, 0.999]");
    auto* r = cmd->add_option("--r", f.r, "squeezing r (alternative to --lambda)");
    lam->excludes(r);
    r->excludes(lam);
    cmd->add_option("--gamma", f.gamma, "coherent amplitude of the third input, e.g. 2+3i");
    cmd->add_option("--via", f.via, "construction path of the CM")->check(CLI::IsMember({"closed-form", "transform"}));
    if (!with_loss) return;
    auto* scenario = cmd->add_option("--scenario", f.scenario, "loss scenario")->check(CLI::Range(1, 5));
    cmd->add_option("--T", f.t, "shared transmissivity of the scenario")->check(CLI::Range(0.0, 1.0));
    auto* t1 = cmd->add_option("--T1", f.t1, "custom transmissivity of mode a")->check(CLI::Range(0.0, 1.0));
    auto* t2 = cmd->add_option("--T2", f.t2, "custom transmissivity of mode b")->check(CLI::Range(0.0, 1.0));
    auto* t3 = cmd->add_option("--T3", f.t3, "custom transmissivity of mode c")->check(CLI::Range(0.0, 1.0));
    for (auto* t : {t1, t2, t3}) t->excludes(scenario);
    cmd->add_option("--k", f.k, "single-mode module k")->check(CLI::IsMember({"a", "b", "c"}));
    cmd->add_option("--member", f.member, "lossy pair member in scenarios 2 and 4")->check(CLI::IsMember({"a", "b", "c"}));
    auto* ideal = cmd->add_flag("--ideal", f.ideal, "lossless state");
    ideal->excludes(scenario);
}

void add_output_flags(CLI::App* cmd, OutputFlags& f) {
    cmd->add_option("--format", f.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", f.out, "output file (default: stdout)");
}

InputSpec input_spec(const StateFlags& f) {
    const auto gamma = parse_complex(f.gamma);
    std::optional<InputSpec> spec;
    if (f.r) {
        if (*f.r < 0.0) throw UsageError("--r must be non-negative");
        spec = InputSpec::from_squeezing(*f.r, gamma);
    } else {
        spec = InputSpec::from_lambda(f.lambda.value_or(0.0), gamma);
    }
    if (!(spec->lambda() >= 0.0 && spec->lambda() <= kMaxCliLambda))
        throw UsageError("lambda must lie in [0, " + format_number(kMaxCliLambda) + "]");
    return *spec;
}

ScenarioRoles roles_of(const StateFlags& f) {
    const Mode k = mode_from_label(f.k[0]);
    if (!f.member) return ScenarioRoles::for_single(k);
    const Mode m = mode_from_label((*f.member)[0]);
    if (m == k) throw UsageError("--member must differ from --k");
    return ScenarioRoles::with_lossy_member(k, m);
}

bool custom_loss(const StateFlags& f) { return f.t1 || f.t2 || f.t3; }

LossConfig loss_of(const StateFlags& f) {
    if (custom_loss(f)) return LossConfig({f.t1.value_or(1.0), f.t2.value_or(1.0), f.t3.value_or(1.0)});
    if (f.ideal || !f.scenario) {
        if (f.t) throw UsageError("--T needs --scenario");
        return LossConfig::lossless(3);
    }
    if (!f.t) throw UsageError("--scenario needs --T");
    return scenario_config(Scenario{*f.scenario, *f.t, roles_of(f)});
}

CovarianceMatrix lossless_state(const StateFlags& f, const InputSpec& spec) {
    return f.via == "transform" ? output_cm_via_transform(spec) : ideal_output_cm(spec.lambda());
}

void emit(const OutputFlags& f, const std::string& text) {
    if (f.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(f.out, std::ios::binary);
    if (!file) throw UsageError("cannot open '" + f.out + "' for writing");
    file << text;
}

std::vector<double> parse_number_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(token, &used));
            if (used != token.size()) throw std::invalid_argument(token);
        } catch (const std::exception&) {
            throw UsageError("cannot parse number '" + token + "'");
        }
    }
    if (out.empty()) throw UsageError("empty number list");
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gaussian correlations of a squeezed-vacuum tritter under loss"};
    app.require_subcommand(1);

    StateFlags cm_state, meas_state;
    OutputFlags cm_out, meas_out, sweep_out, thr_out, verify_out;

    auto* cm = app.add_subcommand("cm", "print the 6x6 covariance matrix");
    add_state_flags(cm, cm_state, true);
    add_output_flags(cm, cm_out);

    auto* meas = app.add_subcommand("measures", "entanglement and steering report");
    add_state_flags(meas, meas_state, true);
    std::string meas_list = "default";
    meas->add_option("--measures", meas_list, "comma-separated measure ids, 'default' or 'all'");
    add_output_flags(meas, meas_out);

    auto* sweep = app.add_subcommand("sweep", "tabulate measures along T or lambda");
    SweepSpec spec;
    std::string var = "T";
    std::optional<double> sweep_lambda, sweep_t;
    int sweep_scenario = 0;
    std::string sweep_k = "c";
    std::optional<std::string> sweep_member;
    std::string sweep_list = "default";
    sweep->add_option("--var", var, "swept variable")->check(CLI::IsMember({"T", "lambda"}));
    sweep->add_option("--start", spec.start, "first grid value");
    sweep->add_option("--stop", spec.stop, "last grid value");
    sweep->add_option("--step", spec.step, "grid step");
    sweep->add_option("--lambda", sweep_lambda, "fixed lambda when sweeping T");
    sweep->add_option("--T", sweep_t, "fixed T when sweeping lambda")->check(CLI::Range(0.0, 1.0));
    sweep->add_option("--scenario", sweep_scenario, "loss scenario, 0 for lossless")->check(CLI::Range(0, 5));
    sweep->add_option("--k", sweep_k, "single-mode module k")->check(CLI::IsMember({"a", "b", "c"}));
    sweep->add_option("--member", sweep_member, "lossy pair member")->check(CLI::IsMember({"a", "b", "c"}));
    sweep->add_option("--measures", sweep_list, "comma-separated measure ids, 'default' or 'all'");
    sweep->add_option("--threads", spec.threads, "worker threads")->check(CLI::Range(1u, 256u));
    add_output_flags(sweep, sweep_out);

    auto* thr = app.add_subcommand("thresholds", "bisect the 1-vs-2 steering thresholds");
    std::string thr_lambdas = "0.1,0.3,0.5,0.7,0.9";
    std::string thr_scenarios = "1,2,3,4,5";
    std::string thr_k = "c";
    std::optional<std::string> thr_member;
    thr->add_option("--lambda", thr_lambdas, "comma-separated lambda values");
    thr->add_option("--scenario", thr_scenarios, "comma-separated scenario ids");
    thr->add_option("--k", thr_k, "single-mode module k")->check(CLI::IsMember({"a", "b", "c"}));
    thr->add_option("--member", thr_member, "lossy pair member")->check(CLI::IsMember({"a", "b", "c"}));
    add_output_flags(thr, thr_out);

    auto* verify = app.add_subcommand("verify", "run the acceptance checks");
    verify_out.format = "text";
    verify->add_option("--format", verify_out.format, "output format")->check(CLI::IsMember({"text", "csv", "json"}));
    verify->add_option("--out", verify_out.out, "output file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (cm->parsed()) {
            const InputSpec in = input_spec(cm_state);
            const LossConfig loss = loss_of(cm_state);
            const auto v = apply_loss(lossless_state(cm_state, in), loss);
            CmMeta meta{in.lambda(), in.gamma(), cm_state.via, loss.transmissivities()};
            emit(cm_out, write_cm(v, meta, parse_format(cm_out.format)));
        } else if (meas->parsed()) {
            const InputSpec in = input_spec(meas_state);
            const ScenarioRoles roles = roles_of(meas_state);
            const auto ids = parse_measure_list(meas_list, roles);
            CorrelationReport report;
            if (custom_loss(meas_state)) {
                report = build_report(in.lambda(), loss_of(meas_state), roles, ids);
            } else {
                (void)loss_of(meas_state);
                const int scenario = meas_state.ideal ? 0 : meas_state.scenario.value_or(0);
                report = build_report(lossless_state(meas_state, in), in.lambda(), scenario, meas_state.t.value_or(1.0),
                                      roles, ids);
            }
            emit(meas_out, write_report(report, parse_format(meas_out.format)));
        } else if (sweep->parsed()) {
            spec.variable = var == "T" ? SweepVariable::Transmissivity : SweepVariable::Lambda;
            if (spec.variable == SweepVariable::Transmissivity) {
                if (sweep_t) throw UsageError("--T is the swept variable; use --lambda for the fixed value");
                spec.fixed = sweep_lambda.value_or(0.5);
                if (spec.fixed > kMaxCliLambda) throw UsageError("lambda must not exceed 0.999");
            } else {
                if (sweep_lambda) throw UsageError("--lambda is the swept variable; use --T for the fixed value");
                if (spec.stop > kMaxCliLambda) throw UsageError("lambda must not exceed 0.999");
                spec.fixed = sweep_t.value_or(1.0);
            }
            spec.scenario = sweep_scenario;
            StateFlags rf;
            rf.k = sweep_k;
            rf.member = sweep_member;
            spec.roles = roles_of(rf);
            spec.measures = parse_measure_list(sweep_list, spec.roles);
            const SweepTable table = run_sweep(spec);
            emit(sweep_out, write_sweep(table, parse_format(sweep_out.format)));
            if (table.any_mismatch()) {
                std::cerr << "sweep: numeric and closed-form values disagree beyond 1e-9\n";
                return kExitVerification;
            }
        } else if (thr->parsed()) {
            const auto lambdas = parse_number_list(thr_lambdas);
            std::vector<int> scenarios;
            for (double s : parse_number_list(thr_scenarios)) {
                if (s != std::floor(s) || s < 1 || s > 5) throw UsageError("scenario ids must be 1..5");
                scenarios.push_back(static_cast<int>(s));
            }
            for (double l : lambdas)
                if (!(l >= 0.0 && l <= kMaxCliLambda)) throw UsageError("lambda must lie in [0, 0.999]");
            StateFlags rf;
            rf.k = thr_k;
            rf.member = thr_member;
            emit(thr_out, write_thresholds(threshold_table(lambdas, scenarios, roles_of(rf)), parse_format(thr_out.format)));
        } else if (verify->parsed()) {
            const VerifyReport report = run_acceptance();
            if (verify_out.format == "text") {
                std::string text;
                for (const auto& c : report.criteria) {
                    text += summary_line(c) + "\n";
                    for (const auto& note : c.notes) text += "       " + note + "\n";
                }
                emit(verify_out, text);
            } else {
                emit(verify_out, write_verify(report, parse_format(verify_out.format)));
            }
            return report.all_pass() ? 0 : kExitVerification;
        }
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const SingularBlockError& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return 0;
}
