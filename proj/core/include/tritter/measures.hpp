#pragma once

// Entanglement (logarithmic negativity) and Gaussian EPR steering, computed
// numerically from symplectic spectra and, where available, from the
// closed-form catalogue for the tritter state.

#include "tritter/loss_model.hpp"
#include "tritter/symplectic.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tritter {

/// Spectrum entries within this distance of 1/2 count as exactly 1/2.
inline constexpr double kHalfSnap = 1e-12;

/// Oracle tolerance between numeric pipeline and closed forms.
inline constexpr double kOracleTolerance = 1e-9;

enum class MeasureKind {
    Entanglement,           // E, logarithmic negativity across party_a | party_b
    Steering,               // S, party_a -> party_b
    ConditionalEigenvalue,  // NU, symplectic eigenvalue of party_b conditioned on party_a
};

/// A measure on a named partition, optionally pinned to a loss context
/// (0 = lossless, 1..5 = scenario).
struct MeasureId {
    MeasureKind kind = MeasureKind::Entanglement;
    std::vector<Mode> party_a;
    std::vector<Mode> party_b;
    std::optional<int> scenario;

    ModePartition partition() const { return ModePartition(party_a, party_b); }

    /// Canonical text: "E:c|ab", "S:ab->c", "NU:b|a", with "@s3" or "@ideal"
    /// when a context is pinned.
    std::string to_string() const;

    friend bool operator==(const MeasureId&, const MeasureId&) = default;
};

/// Parse the measure grammar.
///
///   E:pair  E:1v2  E:<modes>|<modes>
///   S:k->ij  S:ij->k  S:i->j  S:j->i  S:<modes>-><modes>
///   NU:pair  NU:<steered>|<conditioning>
///   optional suffix @ideal or @s1 ... @s5
///
/// Role words (i, j, k, pair, 1v2) resolve against `roles`.
MeasureId parse_measure_id(const std::string& text, const ScenarioRoles& roles = {});

/// Comma-separated list; the keywords "default" and "all" expand to
/// default_measures / all_measures.
std::vector<MeasureId> parse_measure_list(const std::string& text, const ScenarioRoles& roles = {});

/// The pair, the 1-vs-2 split, both 1-vs-2 steering directions and the six
/// ordered pairwise steering directions.
std::vector<MeasureId> default_measures(const ScenarioRoles& roles = {});

/// Every entanglement and steering partition of three modes (no NU).
std::vector<MeasureId> all_measures();

/// Numeric value plus how many raw spectrum entries fell below 1/2.
struct NumericMeasure {
    double value = 0.0;
    int below_half = 0;
};

/// max[0, -sum ln(2 m)] over every modulus m < 1/2 of the spectrum of
/// i Omega V^{T_B} (the partial transpose acts on party_b). Modes outside the
/// partition are traced out first.
double log_negativity(const CovarianceMatrix& v, const ModePartition& partition);
NumericMeasure log_negativity_detail(const CovarianceMatrix& v, const ModePartition& partition);

/// Same sum over the spectrum of the Schur complement V^{B|A}.
double gaussian_steering(const CovarianceMatrix& v, const ModePartition& partition);
NumericMeasure gaussian_steering_detail(const CovarianceMatrix& v, const ModePartition& partition);

/// Smallest symplectic eigenvalue of V^{B|A}.
double conditional_eigenvalue(const CovarianceMatrix& v, const ModePartition& partition);

/// Dispatch on id.kind.
NumericMeasure numeric_measure(const CovarianceMatrix& v, const MeasureId& id);

/// 1/2 minus the smallest spectrum entry of the transposed (E) or
/// conditional (S) matrix; positive exactly when the measure is nonzero.
double violation_margin(const CovarianceMatrix& v, const MeasureId& id);

/// (S^{ij->k} - S^{i->k} - S^{j->k}, S^{k->ij} - S^{k->i} - S^{k->j}) for a
/// three-mode state.
std::pair<double, double> monogamy_residuals(const CovarianceMatrix& v, Mode k);

/// A closed-form evaluation, before clamping at zero.
struct ClosedForm {
    double value = 0.0;
    bool domain_ok = true;
    /// The printed expression is known to disagree with the numeric pipeline;
    /// numeric values are authoritative for it.
    bool suspected_erratum = false;
    std::string name;
};

/// Whether a closed form exists for the id under the given roles.
bool has_closed_form(const MeasureId& id, const ScenarioRoles& roles = {});

/// Evaluate the closed form for id in its context (id.scenario, lossless when
/// unset) at squeezing lambda and shared transmissivity t. Throws
/// UnsupportedFormulaError if has_closed_form is false.
ClosedForm reference_formula(const MeasureId& id, double lambda, double t, const ScenarioRoles& roles = {});

/// Result of comparing one measure between numeric pipeline and closed form.
struct OracleComparison {
    double numeric = 0.0;
    double closed_clamped = 0.0;
    double difference = 0.0;
    bool presence_agrees = true;
    bool within_tolerance = true;
};

/// Clamped comparison with the presence (clip-count) check for E and S; plain
/// absolute difference for NU.
OracleComparison compare_with_closed_form(const NumericMeasure& numeric, const ClosedForm& closed, MeasureKind kind);

/// Loss configuration for a context: lossless for 0, otherwise scenario_config.
LossConfig context_config(int scenario, double t, const ScenarioRoles& roles);

/// apply_loss(ideal_output_cm(lambda), context_config(...)).
CovarianceMatrix lossy_state(double lambda, int scenario, double t, const ScenarioRoles& roles = {});

} // namespace tritter
