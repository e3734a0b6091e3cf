#include "tritter/verify.hpp"

#include "tritter/analysis.hpp"
#include "tritter/io.hpp"
#include "tritter/tritter_state.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <array>
#include <limits>
#include <map>

namespace tritter {

namespace {

std::string fmt(const char* pattern, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, x);
    return buf;
}

std::vector<ScenarioRoles> role_variants() {
    std::vector<ScenarioRoles> out;
    for (Mode k = 0; k < 3; ++k) {
        const auto r = ScenarioRoles::for_single(k);
        out.push_back(r);
        out.push_back(ScenarioRoles::with_lossy_member(k, r.j));
    }
    return out;
}

std::vector<Mode> other_two(Mode k) {
    const auto r = ScenarioRoles::for_single(k);
    return {r.i, r.j};
}

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

} // namespace

bool VerifyReport::all_pass() const {
    return std::all_of(criteria.begin(), criteria.end(), [](const CriterionResult& c) { return c.pass; });
}

std::vector<double> verify_lambda_grid() {
    std::vector<double> g;
    for (int k = 1; k <= 9; ++k) g.push_back(0.1 * k);
    return g;
}

std::vector<double> verify_t_grid() {
    std::vector<double> g;
    for (int k = 0; k <= 20; ++k) g.push_back(0.05 * k);
    return g;
}

CriterionResult check_golden_cm() {
    CriterionResult c{1, "golden CM", true, {}, {}};
    double worst = 0.0;
    for (double l : standard_lambda_grid()) {
        const Eigen::MatrixXd golden = golden_matrix(l);
        worst = std::max(worst, max_abs(ideal_output_cm(l).matrix() - golden));
    }
    c.pass = worst <= 1e-12;
    c.detail = "max |V - table| = " + fmt("%.3g", worst) + " over 19 lambda values";
    return c;
}

CriterionResult check_convention_closure() {
    CriterionResult c{2, "convention closure and purity", true, {}, {}};
    double worst = 0.0, worst_purity = 0.0;
    for (double l : standard_lambda_grid()) {
        const auto v = output_cm_via_transform(InputSpec::from_lambda(l));
        worst = std::max(worst, max_abs(v.matrix() - ideal_output_cm(l).matrix()));
        for (double nu : symplectic_eigenvalues(v)) worst_purity = std::max(worst_purity, std::abs(nu - 0.5));
        for (double nu : symplectic_eigenvalues(ideal_output_cm(l)))
            worst_purity = std::max(worst_purity, std::abs(nu - 0.5));
    }
    c.pass = worst <= 1e-10 && worst_purity <= 1e-10;
    c.detail = "max |transform - closed| = " + fmt("%.3g", worst) + ", max |nu - 1/2| = " + fmt("%.3g", worst_purity) +
               " (" + to_string(kFrozenConvention) + ")";
    return c;
}

CriterionResult check_ideal_closed_forms() {
    CriterionResult c{3, "ideal closed forms", true, {}, {}};
    double worst = 0.0;
    double worst_pair_steer = 0.0;
    for (double l : standard_lambda_grid()) {
        const auto v = ideal_output_cm(l);
        const double e_pair = std::log(3 * (1 + l) / (3 - l));
        const double e_split = std::log(9 * (1 - l * l) / std::pow(std::sqrt(9 - l * l) - std::sqrt(8.0) * l, 2));
        const double s_split = std::log((9 - l * l) / (9 * (1 - l * l)));
        for (Mode k = 0; k < 3; ++k) {
            const auto ij = other_two(k);
            worst = std::max(worst, std::abs(log_negativity(v, {{ij[0]}, {ij[1]}}) - e_pair));
            worst = std::max(worst, std::abs(log_negativity(v, {{k}, ij}) - e_split));
            worst = std::max(worst, std::abs(gaussian_steering(v, {{k}, ij}) - s_split));
            worst = std::max(worst, std::abs(gaussian_steering(v, {ij, {k}}) - s_split));
            for (Mode x = 0; x < 3; ++x)
                if (x != k) worst_pair_steer = std::max(worst_pair_steer, gaussian_steering(v, {{x}, {k}}));
        }
    }
    c.pass = worst <= kOracleTolerance && worst_pair_steer == 0.0;
    c.detail = "max |numeric - closed| = " + fmt("%.3g", worst) + ", max pairwise steering = " +
               fmt("%.3g", worst_pair_steer);
    return c;
}

CriterionResult check_lossy_closed_forms() {
    CriterionResult c{4, "lossy closed forms", true, {}, {}};

    struct Tally {
        double worst = 0.0;
        int presence_disagreements = 0;
        int domain_failures = 0;
        bool erratum = false;
        std::size_t points = 0;
    };
    std::map<std::string, Tally> tallies;

    for (const auto& roles : role_variants()) {
        std::vector<MeasureId> ids;
        for (Mode x = 0; x < 3; ++x)
            for (Mode y = x + 1; y < 3; ++y) ids.push_back({MeasureKind::Entanglement, {x}, {y}, {}});
        ids.push_back({MeasureKind::Entanglement, {roles.k}, roles.pair(), {}});
        ids.push_back({MeasureKind::Steering, {roles.k}, roles.pair(), {}});
        ids.push_back({MeasureKind::Steering, roles.pair(), {roles.k}, {}});
        for (Mode x = 0; x < 3; ++x)
            for (Mode y = 0; y < 3; ++y)
                if (x != y) ids.push_back({MeasureKind::ConditionalEigenvalue, {x}, {y}, {}});

        for (int s = 1; s <= 5; ++s) {
            for (double l : verify_lambda_grid()) {
                for (double t : verify_t_grid()) {
                    const auto v = lossy_state(l, s, t, roles);
                    for (auto id : ids) {
                        id.scenario = s;
                        const ClosedForm cf = reference_formula(id, l, t, roles);
                        const auto cmp = compare_with_closed_form(numeric_measure(v, id), cf, id.kind);
                        auto& tally = tallies[cf.name + (cf.name.find(" s") == std::string::npos ? " s" + std::to_string(s) : "")];
                        tally.erratum = cf.suspected_erratum;
                        tally.points++;
                        if (!cf.domain_ok) {
                            tally.domain_failures++;
                            tally.worst = std::max(tally.worst, 1.0);
                            continue;
                        }
                        tally.worst = std::max(tally.worst, cmp.difference);
                        if (!cmp.presence_agrees) tally.presence_disagreements++;
                    }
                }
            }
        }
    }

    int matched = 0, errata = 0;
    for (const auto& [name, t] : tallies) {
        const bool agrees = t.worst <= kOracleTolerance && t.presence_disagreements == 0 && t.domain_failures == 0;
        if (t.erratum) {
            // Pinned errata must keep disagreeing; a silent agreement means the flag is stale.
            const bool persistent = t.worst >= 1e-6;
            c.pass = c.pass && persistent;
            ++errata;
            c.notes.push_back("suspected erratum: " + name + " (max diff " + fmt("%.3g", t.worst) +
                              (persistent ? ", numeric authoritative)" : ", but it now agrees: stale flag)"));
        } else {
            c.pass = c.pass && agrees;
            if (agrees)
                ++matched;
            else
                c.notes.push_back("MISMATCH: " + name + " max diff " + fmt("%.3g", t.worst) + ", presence disagreements " +
                                  std::to_string(t.presence_disagreements));
        }
    }
    c.detail = std::to_string(matched) + " expressions agree to 1e-9 with matching clip counts, " +
               std::to_string(errata) + " reported as suspected errata";
    return c;
}

CriterionResult check_thresholds() {
    CriterionResult c{5, "steering thresholds", true, {}, {}};
    const auto lambdas = verify_lambda_grid();
    double worst = 0.0;
    int checked = 0;
    for (const auto& row : threshold_table(lambdas, {1, 2, 3, 4, 5})) {
        if (row.stated.small_lambda_limit) continue;
        ++checked;
        if (row.stated.t_star) {
            const bool ok = row.deviation && *row.deviation <= 1e-6;
            if (row.deviation) worst = std::max(worst, *row.deviation);
            if (!ok) {
                c.pass = false;
                c.notes.push_back("s" + std::to_string(row.scenario) + " " + row.id.to_string() + " at lambda " +
                                  fmt("%.2f", row.lambda) + ": no match to " + fmt("%.6g", *row.stated.t_star));
            }
        } else if (row.found.t_star || row.found.present_throughout != row.stated.present_throughout) {
            c.pass = false;
            c.notes.push_back("s" + std::to_string(row.scenario) + " " + row.id.to_string() + " at lambda " +
                              fmt("%.2f", row.lambda) + ": expected no threshold");
        }
    }

    // Pair-to-single in scenario 4 is only stated in the small-squeezing limit.
    const double small = 0.01;
    const auto limit = threshold_table({small}, {4});
    for (const auto& row : limit) {
        if (!row.stated.small_lambda_limit) continue;
        const double dev = row.deviation.value_or(1.0);
        const bool ok = dev <= small * small;
        c.pass = c.pass && ok;
        c.notes.push_back("s4 S:ab->c at lambda 0.01: T* = " + fmt("%.9f", row.found.t_star.value_or(-1.0)) +
                          ", |T* - 2/3| = " + fmt("%.3g", dev) + " (tolerance lambda^2)");
    }
    for (const auto& row : threshold_table(lambdas, {4})) {
        if (!row.stated.small_lambda_limit || !row.found.t_star) continue;
        c.notes.push_back("s4 S:ab->c at lambda " + fmt("%.1f", row.lambda) + ": T* = " + fmt("%.6f", *row.found.t_star));
    }
    c.detail = std::to_string(checked) + " (scenario, direction, lambda) cases, max |T* - stated| = " + fmt("%.3g", worst);
    return c;
}

CriterionResult check_pairwise_steering() {
    CriterionResult c{6, "pairwise steering extinction", true, {}, {}};
    std::size_t evaluated = 0, nonzero = 0;
    for (Mode k = 0; k < 3; ++k) {
        const auto roles = ScenarioRoles::for_single(k);
        for (int s = 0; s <= 5; ++s) {
            for (double l : verify_lambda_grid()) {
                for (double t : verify_t_grid()) {
                    const auto v = lossy_state(l, s, t, roles);
                    for (Mode x = 0; x < 3; ++x)
                        for (Mode y = 0; y < 3; ++y) {
                            if (x == y) continue;
                            ++evaluated;
                            if (gaussian_steering(v, {{x}, {y}}) != 0.0) ++nonzero;
                        }
                    if (s == 0) break;
                }
            }
        }
    }
    c.pass = nonzero == 0;
    c.detail = std::to_string(nonzero) + " nonzero out of " + std::to_string(evaluated) + " ordered-pair evaluations";
    return c;
}

CriterionResult check_monogamy() {
    CriterionResult c{7, "steering monogamy", true, {}, {}};
    double least = std::numeric_limits<double>::infinity();
    for (Mode k = 0; k < 3; ++k) {
        const auto roles = ScenarioRoles::for_single(k);
        for (int s = 1; s <= 5; ++s)
            for (double l : verify_lambda_grid())
                for (double t : verify_t_grid()) {
                    const auto v = lossy_state(l, s, t, roles);
                    for (Mode m = 0; m < 3; ++m) {
                        const auto [a, b] = monogamy_residuals(v, m);
                        least = std::min({least, a, b});
                    }
                }
    }
    c.pass = least >= -1e-12;
    c.detail = "smallest residual = " + fmt("%.6g", least);
    return c;
}

CriterionResult check_hierarchy() {
    CriterionResult c{8, "steering vanishes before entanglement", true, {}, {}};
    const ScenarioRoles r{};
    int cases = 0;
    for (int s = 1; s <= 5; ++s) {
        for (double l : {0.3, 0.5, 0.8}) {
            auto vanish = [&](const MeasureId& id) {
                const auto found = find_threshold(id, l, {kDefaultThresholdFloor, 1.0}, r);
                if (found.t_star) return *found.t_star;
                return found.present_throughout ? 0.0 : 1.0;
            };
            const double steer_in = vanish({MeasureKind::Steering, r.pair(), {r.k}, s});
            const double steer_out = vanish({MeasureKind::Steering, {r.k}, r.pair(), s});
            const double ent = vanish({MeasureKind::Entanglement, {r.k}, r.pair(), s});
            ++cases;
            if (std::max(steer_in, steer_out) < ent) {
                c.pass = false;
                c.notes.push_back("s" + std::to_string(s) + " lambda " + fmt("%.1f", l) +
                                  ": steering threshold below entanglement threshold");
            }
            if ((s == 1 || s == 4) && steer_in + 1e-9 < steer_out) {
                c.pass = false;
                c.notes.push_back("s" + std::to_string(s) + " lambda " + fmt("%.1f", l) +
                                  ": ij->k threshold below k->ij threshold");
            }

            // Region labels along decreasing T.
            int previous = -1;
            for (int step = 100; step >= 0; --step) {
                const double t = 0.01 * step;
                const RegionLabel label = classify_region(l, Scenario{s, t, r});
                if (step == 100 && label != RegionLabel::I) {
                    c.pass = false;
                    c.notes.push_back("s" + std::to_string(s) + ": lossless state not in region I");
                }
                if (severity(label) < previous) {
                    c.pass = false;
                    c.notes.push_back("s" + std::to_string(s) + " lambda " + fmt("%.1f", l) + ": region label went back to " +
                                      to_string(label) + " at T = " + fmt("%.2f", t));
                    break;
                }
                previous = severity(label);
            }
        }
    }
    c.detail = std::to_string(cases) + " (scenario, lambda) cases; region labels monotone in T on a 0.01 grid";
    return c;
}

CriterionResult check_rankings() {
    CriterionResult c{9, "scenario rankings", true, {}, {}};
    const std::array<int, 5> expected{2, 3, 1, 4, 5};
    const std::pair<RankingKind, const char*> kinds[] = {
        {RankingKind::Entanglement, "E(k|ij)"},
        {RankingKind::SteeringPairToSingle, "S(ij->k)"},
        {RankingKind::SteeringSingleToPair, "S(k->ij)"},
        {RankingKind::Steering, "S(ij->k)+S(k->ij)"},
    };
    int checked = 0;
    for (double l : {0.3, 0.8})
        for (double t : {0.6, 0.8})
            for (const auto& [kind, label] : kinds) {
                ++checked;
                const auto got = scenario_ranking(l, t, kind);
                if (got != expected) {
                    c.pass = false;
                    std::string order;
                    for (int s : got) order += std::to_string(s);
                    c.notes.push_back(std::string(label) + " at lambda " + fmt("%.1f", l) + ", T " + fmt("%.1f", t) +
                                      ": got " + order);
                }
            }
    c.detail = std::to_string(checked) + " orderings compared with (2, 3, 1, 4, 5)";
    return c;
}

CriterionResult check_invariance_and_determinism() {
    CriterionResult c{10, "gamma invariance and determinism", true, {}, {}};
    const std::vector<std::complex<double>> gammas{{0, 0}, {1, 0}, {2, 3}};
    const auto measures = default_measures();
    int compared = 0;
    for (int s = 0; s <= 5; ++s) {
        std::string reference;
        for (const auto& g : gammas) {
            const auto v = output_cm_via_transform(InputSpec::from_lambda(0.5, g));
            const std::string text = write_report(build_report(v, 0.5, s, 0.7, {}, measures), Format::Json) +
                                     write_cm(v, {0.5, {}, "transform", {1, 1, 1}}, Format::Csv);
            if (reference.empty())
                reference = text;
            else if (text != reference)
                c.pass = false;
            ++compared;
        }
    }

    SweepSpec spec;
    spec.scenario = 5;
    spec.fixed = 0.5;
    spec.step = 0.02;
    spec.measures = all_measures();
    std::string first;
    for (unsigned threads : {1u, 4u, 1u, 3u}) {
        spec.threads = threads;
        const std::string text = write_sweep(run_sweep(spec), Format::Csv) + write_sweep(run_sweep(spec), Format::Json);
        if (first.empty())
            first = text;
        else if (text != first)
            c.pass = false;
    }
    const auto a = write_thresholds(threshold_table({0.3, 0.7}, {1, 2, 3, 4, 5}), Format::Json);
    const auto b = write_thresholds(threshold_table({0.3, 0.7}, {1, 2, 3, 4, 5}), Format::Json);
    c.pass = c.pass && a == b;

    c.detail = std::to_string(compared) + " reports across gamma in {0, 1, 2+3i}; sweeps with 1, 3 and 4 threads " +
               (c.pass ? "byte-identical" : "differ");
    return c;
}

VerifyReport run_acceptance() {
    VerifyReport r;
    r.criteria.push_back(check_golden_cm());
    r.criteria.push_back(check_convention_closure());
    r.criteria.push_back(check_ideal_closed_forms());
    r.criteria.push_back(check_lossy_closed_forms());
    r.criteria.push_back(check_thresholds());
    r.criteria.push_back(check_pairwise_steering());
    r.criteria.push_back(check_monogamy());
    r.criteria.push_back(check_hierarchy());
    r.criteria.push_back(check_rankings());
    r.criteria.push_back(check_invariance_and_determinism());
    return r;
}

std::string summary_line(const CriterionResult& c) {
    return std::string(c.pass ? "[PASS] " : "[FAIL] ") + "criterion " + std::to_string(c.id) + " " + c.name + ": " +
           c.detail;
}

} // namespace tritter
