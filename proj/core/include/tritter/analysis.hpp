#pragma once

#include "tritter/loss_model.hpp"
#include "tritter/measures.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace tritter {

/// Transmissivity resolution of the threshold bisection.
inline constexpr double kThresholdResolution = 1e-10;

/// Default lower bracket end; "present for all T > 0" is decided down to here.
inline constexpr double kDefaultThresholdFloor = 1e-6;

/// Correlation regime of a lossy state, ordered by increasing loss.
enum class RegionLabel {
    I,          // some 1-vs-2 steering and 1-vs-2 entanglement
    II,         // no steering; 1-vs-2 and every pairwise entanglement present
    III,        // no steering; 1-vs-2 entanglement present, some pair separable
    Separable,  // no 1-vs-2 entanglement
};

std::string to_string(RegionLabel r);
int severity(RegionLabel r);

struct ThresholdResult {
    /// Transmissivity where the measure switches on; empty when it does not
    /// change status inside the bracket.
    std::optional<double> t_star;
    /// With no threshold: whether the measure is present throughout.
    bool present_throughout = false;
    /// True when the bisection ran on the numeric pipeline instead of a closed form.
    bool numeric = false;
};

/// Bisection on the pre-clamp closed form, or on violation_margin when no
/// trusted closed form exists. id.scenario selects the loss context and must
/// be 1..5.
ThresholdResult find_threshold(const MeasureId& id, double lambda, std::array<double, 2> bracket = {kDefaultThresholdFloor, 1.0},
                               const ScenarioRoles& roles = {});

/// Threshold condition stated alongside the closed forms for a 1-vs-2
/// steering direction. An empty t_star with present_throughout means the
/// steering survives for all T > 0.
struct StatedThreshold {
    std::optional<double> t_star;
    bool present_throughout = false;
    /// The stated constant only holds as lambda -> 0.
    bool small_lambda_limit = false;
};

StatedThreshold stated_threshold(int scenario, bool pair_to_single);

struct ThresholdRow {
    int scenario = 1;
    /// S:ij->k@sN or S:k->ij@sN.
    MeasureId id;
    double lambda = 0.0;
    ThresholdResult found;
    StatedThreshold stated;
    /// |found - stated| when both exist.
    std::optional<double> deviation;
};

/// Both 1-vs-2 steering directions for every (scenario, lambda), in that
/// nesting order.
std::vector<ThresholdRow> threshold_table(const std::vector<double>& lambdas, const std::vector<int>& scenarios,
                                          const ScenarioRoles& roles = {});

/// Region of the state at (lambda, scenario) using the scenario's k.
RegionLabel classify_region(double lambda, const Scenario& scenario);
RegionLabel classify_region(const CovarianceMatrix& v, const ScenarioRoles& roles);

enum class RankingKind {
    Entanglement,          // E^{k|ij}
    Steering,              // S^{ij->k} + S^{k->ij}
    SteeringPairToSingle,  // S^{ij->k}
    SteeringSingleToPair,  // S^{k->ij}
};

/// Scenarios 1..5 sorted by measure value, descending; ties (to 1e-12) go to
/// the lower id.
std::array<int, 5> scenario_ranking(double lambda, double t, RankingKind kind, const ScenarioRoles& roles = {});

enum class SweepVariable { Transmissivity, Lambda };

struct SweepSpec {
    SweepVariable variable = SweepVariable::Transmissivity;
    double start = 0.0;
    double stop = 1.0;
    double step = 0.01;
    /// lambda when sweeping T, T when sweeping lambda.
    double fixed = 0.5;
    /// 0 = lossless.
    int scenario = 0;
    ScenarioRoles roles{};
    std::vector<MeasureId> measures;
    /// Rows are independent; output order never depends on this.
    unsigned threads = 1;
};

/// Throws DomainError on a bad range or step.
std::vector<double> sweep_grid(const SweepSpec& spec);

struct SweepCell {
    double numeric = 0.0;
    std::optional<ClosedForm> closed;
    bool mismatch = false;
};

struct SweepRow {
    double lambda = 0.0;
    double t = 1.0;
    std::vector<SweepCell> cells;
    RegionLabel region = RegionLabel::I;
    bool mismatch = false;
};

struct SweepTable {
    SweepSpec spec;
    /// Measures in output (lexical) order.
    std::vector<MeasureId> measures;
    std::vector<SweepRow> rows;

    bool any_mismatch() const;
};

SweepTable run_sweep(const SweepSpec& spec);

struct ReportEntry {
    MeasureId id;
    NumericMeasure numeric;
    std::optional<ClosedForm> closed;
    std::optional<OracleComparison> comparison;
};

struct MonogamyEntry {
    Mode k;
    double pair_to_single;
    double single_to_pair;
};

/// Every requested value for one (lambda, loss context).
struct CorrelationReport {
    double lambda = 0.0;
    int scenario = 0;
    double t = 1.0;
    ScenarioRoles roles{};
    LossConfig loss = LossConfig::lossless(3);
    std::vector<ReportEntry> entries;
    std::vector<MonogamyEntry> monogamy;
    RegionLabel region = RegionLabel::I;
};

/// Evaluate measures on lossy_state(lambda, scenario, t, roles). Closed forms
/// are attached where the measure's context matches the state's.
CorrelationReport build_report(double lambda, int scenario, double t, const ScenarioRoles& roles,
                               const std::vector<MeasureId>& measures);

/// Same, starting from a given lossless state (e.g. output_cm_via_transform).
CorrelationReport build_report(const CovarianceMatrix& lossless_state, double lambda, int scenario, double t,
                               const ScenarioRoles& roles, const std::vector<MeasureId>& measures);

/// Report on an arbitrary per-mode loss configuration (no closed forms).
CorrelationReport build_report(double lambda, const LossConfig& loss, const ScenarioRoles& roles,
                               const std::vector<MeasureId>& measures);

} // namespace tritter
