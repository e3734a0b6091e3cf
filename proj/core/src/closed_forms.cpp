// Closed-form catalogue for the tritter state with and without loss. Each
// expression is transcribed as printed, including the auxiliary polynomials;
// the entries marked as suspected errata do not reduce to their lossless
// counterparts at T = 1 and disagree with the numeric pipeline.

#include "tritter/error.hpp"
#include "tritter/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tritter {

namespace {

enum class Family {
    None,
    PairEntanglement,       // E^{i|j}
    SingleVsPair,           // E^{k|ij}
    SingleToPairSteering,   // S^{k->ij}
    PairToSingleSteering,   // S^{ij->k}
    PairSteering,           // S^{i->j}
    PairConditionalEigen,   // v^{j|i}
};

bool same_set(std::vector<Mode> a, std::vector<Mode> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

Family classify(const MeasureId& id, const ScenarioRoles& r) {
    const std::vector<Mode> kk{r.k};
    const std::vector<Mode> pair{r.i, r.j};
    const bool single_a = id.party_a.size() == 1;
    const bool single_b = id.party_b.size() == 1;
    switch (id.kind) {
    case MeasureKind::Entanglement:
        if (single_a && single_b) return Family::PairEntanglement;
        if (id.party_a == kk && same_set(id.party_b, pair)) return Family::SingleVsPair;
        return Family::None;
    case MeasureKind::Steering:
        if (single_a && single_b) return Family::PairSteering;
        if (id.party_a == kk && same_set(id.party_b, pair)) return Family::SingleToPairSteering;
        if (same_set(id.party_a, pair) && id.party_b == kk) return Family::PairToSingleSteering;
        return Family::None;
    case MeasureKind::ConditionalEigenvalue:
        if (single_a && single_b) return Family::PairConditionalEigen;
        return Family::None;
    }
    return Family::None;
}

struct Eval {
    double value;
    bool domain_ok;
};

Eval checked_sqrt(double x) {
    if (x < 0.0) return {std::numeric_limits<double>::quiet_NaN(), false};
    return {std::sqrt(x), true};
}

Eval checked_log_ratio(double num, double den) {
    const double ratio = num / den;
    if (!(ratio > 0.0) || !std::isfinite(ratio)) return {std::numeric_limits<double>::quiet_NaN(), false};
    return {std::log(ratio), true};
}

// ln[ num / (base - root_coeff * sqrt(radicand)) ]
Eval log_over_sqrt_form(double num, double base, double root_coeff, double radicand) {
    const Eval root = checked_sqrt(radicand);
    if (!root.domain_ok) return root;
    return checked_log_ratio(num, base - root_coeff * root.value);
}

// --- lossless ------------------------------------------------------------

Eval pair_entanglement_ideal(double l) { return checked_log_ratio(3 * (1 + l), 3 - l); }

Eval single_vs_pair_ideal(double l) {
    const double d = std::sqrt(9 - l * l) - std::sqrt(8.0) * l;
    return checked_log_ratio(9 * (1 - l * l), d * d);
}

Eval one_vs_two_steering_ideal(double l) { return checked_log_ratio(9 - l * l, 9 * (1 - l * l)); }

// --- bipartite under loss --------------------------------------------------

Eval pair_entanglement_one_lossy(double l, double t) {
    const double l2 = l * l;
    const double delta1 = 5 - 16 * t + 8 * t * t;
    const double delta2 = (1 - t) * (1 - t) * (1 - 8 * t + 4 * t * t);
    return log_over_sqrt_form(9 * (1 - l2), 9 - delta1 * l2, 4 * l, delta2 * l2 + 9 * t);
}

Eval pair_entanglement_both_lossy(double l, double t) {
    return checked_log_ratio(3 * (1 - l * l), (3 - 3 * l + 2 * t * l) * (1 + l + 2 * t * l));
}

// --- 1 vs 2 entanglement under loss ---------------------------------------

Eval single_vs_pair_lossy(int scenario, double l, double t) {
    const double l2 = l * l;
    const double t2 = t * t;
    const double num = 9 * (1 - l2);
    switch (scenario) {
    case 1: {
        const double eps1 = 5 - 20 * t + 8 * t2;
        const double eps2 = (1 - 4 * t + t2) * (1 - 2 * t) * (1 - 2 * t);
        return log_over_sqrt_form(num, 9 - eps1 * l2, 4 * l, 18 * t + eps2 * l2);
    }
    case 2: {
        const double zeta1 = 5 - 12 * t + 4 * t2;
        const double zeta2 = (1 - 2 * t) * (1 - 2 * t) * (1 - 4 * t + t2);
        return log_over_sqrt_form(num, 9 - zeta1 * l2, 2 * l, 36 * t + zeta2 * l2);
    }
    case 3: {
        const double eps3 = 5 - 14 * t + 2 * t2;
        const double eps4 = (1 - 10 * t + t2) * (2 - t) * (2 - t);
        return log_over_sqrt_form(num, 9 - eps3 * l2, 2 * l, 72 * t + eps4 * l2);
    }
    case 4: {
        const double eta1 = 5 - 16 * t + 8 * t2;
        const double eta2 = (1 - 4 * t + t2) * (1 - 4 * t + t2);
        const double eta3 = 8 * t * (1 - t) * (1 - t);
        return log_over_sqrt_form(num, 9 - eta1 * l2, 2 * l, 36 * t + eta2 * l2 + eta3 * t2);
    }
    case 5: {
        const double eps5 = 9 - 18 * t + 2 * t2;
        const double eps6 = 9 - 18 * t + t2;
        return log_over_sqrt_form(num, 9 - eps5 * l2, 2 * t * l, 72 + eps6 * l2);
    }
    default: break;
    }
    throw UnsupportedFormulaError("no 1-vs-2 entanglement form for scenario " + std::to_string(scenario));
}

// --- pairwise conditional eigenvalue ---------------------------------------

Eval pair_conditional_eigenvalue(double l, double ti, double tj) {
    const double l2 = l * l;
    const double xi1 = 9 + 8 * (ti * ti + tj * tj) - 12 * (ti + tj) + 4 * ti * tj;
    const double xi2 = 3 - 4 * (ti + tj - ti * tj);
    const double num = 9 - 2 * xi1 * l2 + xi2 * xi2 * l2 * l2;
    const double den = 4 * (1 - l2) * (9 - (3 - ti) * (3 - ti) * l2);
    if (!(den > 0.0)) return {std::numeric_limits<double>::quiet_NaN(), false};
    return checked_sqrt(num / den);
}

// --- 1 vs 2 steering under loss --------------------------------------------

Eval pair_to_single_steering(int scenario, double l, double t) {
    const double l2 = l * l;
    const double l4 = l2 * l2;
    auto sq = [](double x) { return x * x; };
    switch (scenario) {
    case 1: return checked_log_ratio(9 - l2, 9 - sq(1 - 4 * t) * l2);
    case 2:
        return checked_log_ratio(9 - 2 * (5 - 8 * t + 8 * t * t) * l2 + l4,
                                 (1 - l2) * (9 - sq(1 - 4 * t) * l2));
    case 3: return checked_log_ratio(9 - sq(3 - 2 * t) * l2, 9 - sq(1 + 2 * t) * l2);
    case 4:
        return checked_log_ratio(9 - 2 * (5 - 8 * t + 8 * t * t) * l2 + l4,
                                 9 - 2 * (5 - 16 * t + 20 * t * t) * l2 + sq(1 - 4 * t * t) * l4);
    case 5: return checked_log_ratio(9 - sq(3 - 2 * t) * l2, 9 - sq(3 - 6 * t) * l2);
    default: break;
    }
    throw UnsupportedFormulaError("no ij->k steering form for scenario " + std::to_string(scenario));
}

Eval single_to_pair_steering(int scenario, double l, double t) {
    const double l2 = l * l;
    const double l4 = l2 * l2;
    auto sq = [](double x) { return x * x; };
    switch (scenario) {
    case 1: return checked_log_ratio(9 - sq(3 - 4 * t) * l2, 9 - sq(1 - 4 * t) * l2);
    case 2: {
        const double chi1 = 4 * t * l2 * (1 + l2 - 2 * t);
        const double chi2 = (1 - l2) * (9 - l2) + 4 * t * t * t - 4 * t * t * (1 + l2) - 4 * t * (2 - 3 * l2);
        const Eval root = checked_sqrt(t * chi2);
        if (!root.domain_ok) return root;
        const double base = (1 - l2) * (9 - l2);
        return checked_log_ratio(base, base + chi1 - 4 * l2 * root.value);
    }
    case 3: return checked_log_ratio(9 - l2, 9 - sq(1 + 2 * t) * l2);
    case 4: {
        const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t, t6 = t5 * t, t7 = t6 * t, t8 = t7 * t;
        const double th0 = 5 - 50 * t + 28 * t2 + 16 * t3 + 8 * t4;
        const double th1 = 7 - 14 * t + 14 * t2;
        const double th2 = 4 * t8 * l4 - 16 * t7 * l4;
        const double th3 = sq(1 - l2) - 4 * t6 * l2 * (3 - 7 * l2) + t5 * l2 * (60 - 52 * l2);
        const double th4 = t * (-7 + 18 * l2 - 11 * l4) - 4 * t3 * (6 - 29 * l2 + 23 * l4);
        const double th5 = t2 * (22 - 64 * l2 + 46 * l4) + t4 * (9 - 118 * l2 + 93 * l4);
        const Eval root = checked_sqrt(th2 + th3 + th4 + th5);
        if (!root.domain_ok) return root;
        return checked_log_ratio((1 - l2) * (9 - sq(3 - 4 * t) * l2),
                                 9 + th0 * l4 - 2 * l2 * (th1 + 2 * root.value));
    }
    case 5: return checked_log_ratio(9 - sq(3 - 4 * t) * l2, 9 - sq(3 - 6 * t) * l2);
    default: break;
    }
    throw UnsupportedFormulaError("no k->ij steering form for scenario " + std::to_string(scenario));
}

bool mode_is_lossy(int scenario, Mode m, const ScenarioRoles& r) {
    switch (scenario) {
    case 1: return m == r.k;
    case 2: return m == r.i;
    case 3: return m == r.i || m == r.j;
    case 4: return m == r.i || m == r.k;
    case 5: return true;
    default: return false;
    }
}

} // namespace

bool has_closed_form(const MeasureId& id, const ScenarioRoles& roles) {
    return classify(id, roles) != Family::None;
}

ClosedForm reference_formula(const MeasureId& id, double lambda, double t, const ScenarioRoles& roles) {
    if (!(lambda >= 0.0 && lambda < 1.0)) throw DomainError("lambda must lie in [0, 1)");
    if (!(t >= 0.0 && t <= 1.0)) throw DomainError("transmissivity must lie in [0, 1]");
    const int scenario = id.scenario.value_or(0);
    if (scenario < 0 || scenario > 5) throw DomainError("scenario must be 0..5");

    const Family family = classify(id, roles);
    const std::string ctx = scenario == 0 ? "ideal" : "s" + std::to_string(scenario);
    ClosedForm out;
    Eval e{0.0, true};

    switch (family) {
    case Family::None:
        throw UnsupportedFormulaError("no closed form for " + id.to_string() + " with k=" + mode_label(roles.k));

    case Family::PairEntanglement: {
        const int lossy = static_cast<int>(mode_is_lossy(scenario, id.party_a[0], roles)) +
                          static_cast<int>(mode_is_lossy(scenario, id.party_b[0], roles));
        if (lossy == 0) {
            e = pair_entanglement_ideal(lambda);
            out.name = "E(i|j) lossless";
        } else if (lossy == 1) {
            e = pair_entanglement_one_lossy(lambda, t);
            out.name = "E(i|j) one mode lossy";
        } else {
            e = pair_entanglement_both_lossy(lambda, t);
            out.name = "E(i|j) both modes lossy";
            out.suspected_erratum = true;
        }
        break;
    }
    case Family::SingleVsPair:
        e = scenario == 0 ? single_vs_pair_ideal(lambda) : single_vs_pair_lossy(scenario, lambda, t);
        out.name = "E(k|ij) " + ctx;
        out.suspected_erratum = scenario == 2 || scenario == 4;
        break;
    case Family::SingleToPairSteering:
        e = scenario == 0 ? one_vs_two_steering_ideal(lambda) : single_to_pair_steering(scenario, lambda, t);
        out.name = "S(k->ij) " + ctx;
        out.suspected_erratum = scenario == 4;
        break;
    case Family::PairToSingleSteering:
        e = scenario == 0 ? one_vs_two_steering_ideal(lambda) : pair_to_single_steering(scenario, lambda, t);
        out.name = "S(ij->k) " + ctx;
        break;
    case Family::PairSteering:
        // Stated as zero in every context: the conditional eigenvalue of one
        // mode given another never drops below 1/2.
        out.name = "S(i->j) " + ctx;
        e = {0.0, true};
        break;
    case Family::PairConditionalEigen: {
        const double ti = mode_is_lossy(scenario, id.party_a[0], roles) ? t : 1.0;
        const double tj = mode_is_lossy(scenario, id.party_b[0], roles) ? t : 1.0;
        e = pair_conditional_eigenvalue(lambda, ti, tj);
        out.name = "nu(j|i) " + ctx;
        out.suspected_erratum = true;
        break;
    }
    }
    out.value = e.value;
    out.domain_ok = e.domain_ok;
    return out;
}

} // namespace tritter
