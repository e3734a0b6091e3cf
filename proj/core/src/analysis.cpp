#include "tritter/analysis.hpp"

#include "tritter/error.hpp"
#include "tritter/tritter_state.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <thread>

namespace tritter {

std::string to_string(RegionLabel r) {
    switch (r) {
    case RegionLabel::I: return "I";
    case RegionLabel::II: return "II";
    case RegionLabel::III: return "III";
    case RegionLabel::Separable: return "separable";
    }
    return "?";
}

int severity(RegionLabel r) { return static_cast<int>(r); }

ThresholdResult find_threshold(const MeasureId& id, double lambda, std::array<double, 2> bracket,
                               const ScenarioRoles& roles) {
    check_lambda(lambda);
    const int scenario = id.scenario.value_or(0);
    if (scenario < 1 || scenario > 5) throw DomainError("threshold search needs a scenario context (@s1..@s5)");
    auto [lo, hi] = bracket;
    if (!(lo >= 0.0 && hi <= 1.0 && lo < hi)) throw DomainError("threshold bracket must satisfy 0 <= lo < hi <= 1");

    ThresholdResult result;
    std::function<double(double)> presence;
    if (has_closed_form(id, roles) && !reference_formula(id, lambda, hi, roles).suspected_erratum) {
        presence = [&](double t) { return reference_formula(id, lambda, t, roles).value; };
    } else {
        result.numeric = true;
        presence = [&](double t) { return violation_margin(lossy_state(lambda, scenario, t, roles), id); };
    }

    const bool present_lo = presence(lo) > 0.0;
    const bool present_hi = presence(hi) > 0.0;
    if (present_lo == present_hi) {
        result.present_throughout = present_hi;
        return result;
    }
    while (hi - lo > kThresholdResolution) {
        const double mid = 0.5 * (lo + hi);
        if ((presence(mid) > 0.0) == present_hi)
            hi = mid;
        else
            lo = mid;
    }
    result.t_star = 0.5 * (lo + hi);
    return result;
}

StatedThreshold stated_threshold(int scenario, bool pair_to_single) {
    switch (scenario) {
    case 1: return {0.5, false, false};
    case 2: return {std::nullopt, true, false};
    case 3: return pair_to_single ? StatedThreshold{0.5, false, false} : StatedThreshold{std::nullopt, true, false};
    case 4: return pair_to_single ? StatedThreshold{2.0 / 3.0, false, true} : StatedThreshold{0.5, false, false};
    case 5: return {pair_to_single ? 0.75 : 0.6, false, false};
    default: throw DomainError("scenario must be 1..5, got " + std::to_string(scenario));
    }
}

std::vector<ThresholdRow> threshold_table(const std::vector<double>& lambdas, const std::vector<int>& scenarios,
                                          const ScenarioRoles& r) {
    std::vector<ThresholdRow> rows;
    for (int s : scenarios) {
        for (double lambda : lambdas) {
            for (bool pair_to_single : {true, false}) {
                ThresholdRow row;
                row.scenario = s;
                row.lambda = lambda;
                row.id = pair_to_single ? MeasureId{MeasureKind::Steering, {r.i, r.j}, {r.k}, s}
                                        : MeasureId{MeasureKind::Steering, {r.k}, {r.i, r.j}, s};
                row.found = find_threshold(row.id, lambda, {kDefaultThresholdFloor, 1.0}, r);
                row.stated = stated_threshold(s, pair_to_single);
                if (row.found.t_star && row.stated.t_star)
                    row.deviation = std::abs(*row.found.t_star - *row.stated.t_star);
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

RegionLabel classify_region(const CovarianceMatrix& v, const ScenarioRoles& r) {
    const std::vector<Mode> kk{r.k}, ij{r.i, r.j};
    if (log_negativity(v, {kk, ij}) <= 0.0) return RegionLabel::Separable;
    if (gaussian_steering(v, {kk, ij}) > 0.0 || gaussian_steering(v, {ij, kk}) > 0.0) return RegionLabel::I;
    for (Mode x = 0; x < 3; ++x)
        for (Mode y = x + 1; y < 3; ++y)
            if (log_negativity(v, {{x}, {y}}) <= 0.0) return RegionLabel::III;
    return RegionLabel::II;
}

RegionLabel classify_region(double lambda, const Scenario& scenario) {
    const auto v = apply_loss(ideal_output_cm(lambda), scenario_config(scenario));
    return classify_region(v, scenario.roles);
}

std::array<int, 5> scenario_ranking(double lambda, double t, RankingKind kind, const ScenarioRoles& r) {
    const std::vector<Mode> kk{r.k}, ij{r.i, r.j};
    std::array<std::pair<double, int>, 5> scored{};
    for (int s = 1; s <= 5; ++s) {
        const auto v = lossy_state(lambda, s, t, r);
        double value = 0.0;
        switch (kind) {
        case RankingKind::Entanglement: value = log_negativity(v, {kk, ij}); break;
        case RankingKind::Steering: value = gaussian_steering(v, {ij, kk}) + gaussian_steering(v, {kk, ij}); break;
        case RankingKind::SteeringPairToSingle: value = gaussian_steering(v, {ij, kk}); break;
        case RankingKind::SteeringSingleToPair: value = gaussian_steering(v, {kk, ij}); break;
        }
        scored[s - 1] = {std::round(value * 1e12), s};
    }
    std::stable_sort(scored.begin(), scored.end(), [](const auto& x, const auto& y) {
        if (x.first != y.first) return x.first > y.first;
        return x.second < y.second;
    });
    std::array<int, 5> order{};
    for (int k = 0; k < 5; ++k) order[k] = scored[k].second;
    return order;
}

std::vector<double> sweep_grid(const SweepSpec& spec) {
    if (!(spec.step > 0.0)) throw DomainError("sweep step must be positive");
    if (!(spec.stop >= spec.start)) throw DomainError("sweep stop must be >= start");
    if (spec.variable == SweepVariable::Transmissivity) {
        if (spec.start < 0.0 || spec.stop > 1.0) throw DomainError("transmissivity sweep must stay inside [0, 1]");
    } else {
        if (spec.start < 0.0 || spec.stop >= 1.0) throw DomainError("lambda sweep must stay inside [0, 1)");
    }
    const auto count = static_cast<std::size_t>(std::floor((spec.stop - spec.start) / spec.step + 1e-9)) + 1;
    std::vector<double> grid;
    grid.reserve(count);
    for (std::size_t k = 0; k < count; ++k) grid.push_back(std::min(spec.stop, spec.start + spec.step * k));
    return grid;
}

bool SweepTable::any_mismatch() const {
    return std::any_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.mismatch; });
}

namespace {

std::vector<MeasureId> lexical(std::vector<MeasureId> ids) {
    std::stable_sort(ids.begin(), ids.end(),
                     [](const MeasureId& a, const MeasureId& b) { return a.to_string() < b.to_string(); });
    return ids;
}

SweepRow evaluate_row(const SweepSpec& spec, const std::vector<MeasureId>& measures, double x) {
    SweepRow row;
    if (spec.variable == SweepVariable::Transmissivity) {
        row.lambda = spec.fixed;
        row.t = x;
    } else {
        row.lambda = x;
        row.t = spec.fixed;
    }
    const auto v = lossy_state(row.lambda, spec.scenario, row.t, spec.roles);
    for (const auto& id : measures) {
        MeasureId ctx_id = id;
        if (!ctx_id.scenario) ctx_id.scenario = spec.scenario;
        const bool same_context = *ctx_id.scenario == spec.scenario;

        SweepCell cell;
        const NumericMeasure n = numeric_measure(v, id);
        cell.numeric = n.value;
        if (same_context && has_closed_form(ctx_id, spec.roles)) {
            cell.closed = reference_formula(ctx_id, row.lambda, row.t, spec.roles);
            if (!cell.closed->suspected_erratum)
                cell.mismatch = !compare_with_closed_form(n, *cell.closed, id.kind).within_tolerance;
        }
        row.mismatch = row.mismatch || cell.mismatch;
        row.cells.push_back(std::move(cell));
    }
    row.region = classify_region(v, spec.roles);
    return row;
}

} // namespace

SweepTable run_sweep(const SweepSpec& spec) {
    if (spec.scenario < 0 || spec.scenario > 5) throw DomainError("sweep scenario must be 0..5");
    if (spec.variable == SweepVariable::Transmissivity)
        check_lambda(spec.fixed);
    else if (!(spec.fixed >= 0.0 && spec.fixed <= 1.0))
        throw DomainError("fixed transmissivity must lie in [0, 1]");

    SweepTable table;
    table.spec = spec;
    table.measures = lexical(spec.measures);
    const auto grid = sweep_grid(spec);
    table.rows.resize(grid.size());

    const unsigned workers = std::max(1u, std::min<unsigned>(spec.threads, static_cast<unsigned>(grid.size())));
    if (workers == 1) {
        for (std::size_t k = 0; k < grid.size(); ++k) table.rows[k] = evaluate_row(spec, table.measures, grid[k]);
        return table;
    }

    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t k = w; k < grid.size(); k += workers)
                        table.rows[k] = evaluate_row(spec, table.measures, grid[k]);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return table;
}

namespace {

CorrelationReport report_on(const CovarianceMatrix& v, CorrelationReport report,
                            const std::vector<MeasureId>& measures, bool attach_closed_forms) {
    for (const auto& id : measures) {
        ReportEntry entry;
        entry.id = id;
        entry.numeric = numeric_measure(v, id);
        MeasureId ctx_id = id;
        if (!ctx_id.scenario) ctx_id.scenario = report.scenario;
        if (attach_closed_forms && *ctx_id.scenario == report.scenario && has_closed_form(ctx_id, report.roles)) {
            entry.closed = reference_formula(ctx_id, report.lambda, report.t, report.roles);
            entry.comparison = compare_with_closed_form(entry.numeric, *entry.closed, id.kind);
        }
        report.entries.push_back(std::move(entry));
    }
    for (Mode k = 0; k < 3; ++k) {
        const auto [p2s, s2p] = monogamy_residuals(v, k);
        report.monogamy.push_back({k, p2s, s2p});
    }
    report.region = classify_region(v, report.roles);
    return report;
}

} // namespace

CorrelationReport build_report(const CovarianceMatrix& lossless_state, double lambda, int scenario, double t,
                               const ScenarioRoles& roles, const std::vector<MeasureId>& measures) {
    check_lambda(lambda);
    if (scenario < 0 || scenario > 5) throw DomainError("scenario must be 0..5");
    CorrelationReport report;
    report.lambda = lambda;
    report.scenario = scenario;
    report.t = scenario == 0 ? 1.0 : t;
    report.roles = roles;
    report.loss = context_config(scenario, t, roles);
    const auto v = apply_loss(lossless_state, report.loss);
    return report_on(v, std::move(report), measures, true);
}

CorrelationReport build_report(double lambda, int scenario, double t, const ScenarioRoles& roles,
                               const std::vector<MeasureId>& measures) {
    return build_report(ideal_output_cm(lambda), lambda, scenario, t, roles, measures);
}

CorrelationReport build_report(double lambda, const LossConfig& loss, const ScenarioRoles& roles,
                               const std::vector<MeasureId>& measures) {
    check_lambda(lambda);
    CorrelationReport report;
    report.lambda = lambda;
    report.scenario = -1;
    report.roles = roles;
    report.loss = loss;
    const auto v = apply_loss(ideal_output_cm(lambda), loss);
    return report_on(v, std::move(report), measures, false);
}

} // namespace tritter
