#include "tritter/measures.hpp"

#include "tritter/error.hpp"
#include "tritter/tritter_state.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace tritter {

namespace {

NumericMeasure spectrum_sum(const std::vector<double>& raw) {
    NumericMeasure out;
    double sum = 0.0;
    for (double m : raw) {
        if (m < 0.5 - kHalfSnap) {
            sum -= std::log(2.0 * m);
            ++out.below_half;
        }
    }
    out.value = std::max(0.0, sum);
    return out;
}

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

std::vector<Mode> parse_modes(const std::string& text) {
    if (text.empty()) throw ParseError("empty mode list in measure id");
    std::vector<Mode> modes;
    for (char c : text) {
        const Mode m = mode_from_label(c);
        if (m > kModeC) throw ParseError(std::string("mode '") + c + "' outside a, b, c");
        modes.push_back(m);
    }
    return modes;
}

[[noreturn]] void kind_prefix_error(const std::string& text) {
    throw ParseError("measure id '" + text + "' must start with E:, S: or NU:");
}

} // namespace

std::string MeasureId::to_string() const {
    std::string s;
    switch (kind) {
    case MeasureKind::Entanglement: s = "E:" + modes_label(party_a) + "|" + modes_label(party_b); break;
    case MeasureKind::Steering: s = "S:" + modes_label(party_a) + "->" + modes_label(party_b); break;
    case MeasureKind::ConditionalEigenvalue: s = "NU:" + modes_label(party_b) + "|" + modes_label(party_a); break;
    }
    if (scenario) s += *scenario == 0 ? "@ideal" : "@s" + std::to_string(*scenario);
    return s;
}

MeasureId parse_measure_id(const std::string& raw_text, const ScenarioRoles& roles) {
    const std::string text = trim(raw_text);
    MeasureId id;

    std::string body = text;
    if (const auto at = text.find('@'); at != std::string::npos) {
        const std::string ctx = text.substr(at + 1);
        body = text.substr(0, at);
        if (ctx == "ideal") {
            id.scenario = 0;
        } else if (ctx.size() == 2 && ctx[0] == 's' && ctx[1] >= '1' && ctx[1] <= '5') {
            id.scenario = ctx[1] - '0';
        } else {
            throw ParseError("unknown measure context '@" + ctx + "' (use @ideal or @s1..@s5)");
        }
    }

    const auto colon = body.find(':');
    if (colon == std::string::npos) kind_prefix_error(text);
    const std::string kind = body.substr(0, colon);
    const std::string rest = body.substr(colon + 1);

    const std::vector<Mode> ii{roles.i}, jj{roles.j}, kk{roles.k}, pair{roles.i, roles.j};

    if (kind == "E") {
        id.kind = MeasureKind::Entanglement;
        if (rest == "pair") {
            id.party_a = ii;
            id.party_b = jj;
        } else if (rest == "1v2") {
            id.party_a = kk;
            id.party_b = pair;
        } else {
            const auto bar = rest.find('|');
            if (bar == std::string::npos) throw ParseError("entanglement id '" + text + "' needs A|B");
            id.party_a = parse_modes(rest.substr(0, bar));
            id.party_b = parse_modes(rest.substr(bar + 1));
        }
    } else if (kind == "S") {
        id.kind = MeasureKind::Steering;
        if (rest == "k->ij") {
            id.party_a = kk;
            id.party_b = pair;
        } else if (rest == "ij->k") {
            id.party_a = pair;
            id.party_b = kk;
        } else if (rest == "i->j") {
            id.party_a = ii;
            id.party_b = jj;
        } else if (rest == "j->i") {
            id.party_a = jj;
            id.party_b = ii;
        } else {
            const auto arrow = rest.find("->");
            if (arrow == std::string::npos) throw ParseError("steering id '" + text + "' needs A->B");
            id.party_a = parse_modes(rest.substr(0, arrow));
            id.party_b = parse_modes(rest.substr(arrow + 2));
        }
    } else if (kind == "NU") {
        id.kind = MeasureKind::ConditionalEigenvalue;
        if (rest == "pair") {
            id.party_a = ii;
            id.party_b = jj;
        } else {
            const auto bar = rest.find('|');
            if (bar == std::string::npos) throw ParseError("eigenvalue id '" + text + "' needs B|A");
            id.party_b = parse_modes(rest.substr(0, bar));
            id.party_a = parse_modes(rest.substr(bar + 1));
        }
        if (id.party_a.size() != 1 || id.party_b.size() != 1)
            throw ParseError("NU measures are defined for single modes only: '" + text + "'");
    } else {
        kind_prefix_error(text);
    }

    try {
        (void)id.partition();
    } catch (const ValidationError& e) {
        throw ParseError("measure id '" + text + "': " + e.what());
    }
    return id;
}

std::vector<MeasureId> parse_measure_list(const std::string& text, const ScenarioRoles& roles) {
    std::vector<MeasureId> out;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        token = trim(token);
        if (token.empty()) continue;
        if (token == "default") {
            const auto d = default_measures(roles);
            out.insert(out.end(), d.begin(), d.end());
        } else if (token == "all") {
            const auto a = all_measures();
            out.insert(out.end(), a.begin(), a.end());
        } else {
            out.push_back(parse_measure_id(token, roles));
        }
    }
    return out;
}

std::vector<MeasureId> default_measures(const ScenarioRoles& r) {
    using K = MeasureKind;
    return {
        {K::Entanglement, {r.i}, {r.j}, {}},
        {K::Entanglement, {r.k}, {r.i, r.j}, {}},
        {K::Steering, {r.k}, {r.i, r.j}, {}},
        {K::Steering, {r.i, r.j}, {r.k}, {}},
        {K::Steering, {r.i}, {r.j}, {}},
        {K::Steering, {r.j}, {r.i}, {}},
        {K::Steering, {r.i}, {r.k}, {}},
        {K::Steering, {r.k}, {r.i}, {}},
        {K::Steering, {r.j}, {r.k}, {}},
        {K::Steering, {r.k}, {r.j}, {}},
    };
}

std::vector<MeasureId> all_measures() {
    using K = MeasureKind;
    std::vector<MeasureId> out;
    for (Mode x = 0; x < 3; ++x)
        for (Mode y = x + 1; y < 3; ++y) out.push_back({K::Entanglement, {x}, {y}, {}});
    for (Mode k = 0; k < 3; ++k) {
        const auto r = ScenarioRoles::for_single(k);
        out.push_back({K::Entanglement, {k}, {r.i, r.j}, {}});
        out.push_back({K::Steering, {k}, {r.i, r.j}, {}});
        out.push_back({K::Steering, {r.i, r.j}, {k}, {}});
    }
    for (Mode x = 0; x < 3; ++x)
        for (Mode y = 0; y < 3; ++y)
            if (x != y) out.push_back({K::Steering, {x}, {y}, {}});
    return out;
}

NumericMeasure log_negativity_detail(const CovarianceMatrix& v, const ModePartition& partition) {
    partition.check_against(v.n_modes());
    std::vector<Mode> modes = partition.party_a();
    modes.insert(modes.end(), partition.party_b().begin(), partition.party_b().end());
    const CovarianceMatrix reduced = v.subsystem(modes);

    std::vector<Mode> transposed;
    for (std::size_t k = partition.party_a().size(); k < modes.size(); ++k) transposed.push_back(k);
    return spectrum_sum(symplectic_spectrum(partial_transpose(reduced, transposed)));
}

double log_negativity(const CovarianceMatrix& v, const ModePartition& partition) {
    return log_negativity_detail(v, partition).value;
}

NumericMeasure gaussian_steering_detail(const CovarianceMatrix& v, const ModePartition& partition) {
    return spectrum_sum(symplectic_spectrum(schur_complement(v, partition)));
}

double gaussian_steering(const CovarianceMatrix& v, const ModePartition& partition) {
    return gaussian_steering_detail(v, partition).value;
}

double conditional_eigenvalue(const CovarianceMatrix& v, const ModePartition& partition) {
    return symplectic_eigenvalues(schur_complement(v, partition)).front();
}

NumericMeasure numeric_measure(const CovarianceMatrix& v, const MeasureId& id) {
    switch (id.kind) {
    case MeasureKind::Entanglement: return log_negativity_detail(v, id.partition());
    case MeasureKind::Steering: return gaussian_steering_detail(v, id.partition());
    case MeasureKind::ConditionalEigenvalue: return {conditional_eigenvalue(v, id.partition()), 0};
    }
    return {};
}

double violation_margin(const CovarianceMatrix& v, const MeasureId& id) {
    const auto partition = id.partition();
    switch (id.kind) {
    case MeasureKind::Entanglement: {
        std::vector<Mode> modes = partition.party_a();
        modes.insert(modes.end(), partition.party_b().begin(), partition.party_b().end());
        std::vector<Mode> transposed;
        for (std::size_t k = partition.party_a().size(); k < modes.size(); ++k) transposed.push_back(k);
        return 0.5 - symplectic_eigenvalues(partial_transpose(v.subsystem(modes), transposed)).front();
    }
    case MeasureKind::Steering:
    case MeasureKind::ConditionalEigenvalue:
        return 0.5 - symplectic_eigenvalues(schur_complement(v, partition)).front();
    }
    return 0.0;
}

std::pair<double, double> monogamy_residuals(const CovarianceMatrix& v, Mode k) {
    if (v.n_modes() != 3) throw DimensionError("monogamy residuals are defined for three-mode states");
    v.check_mode(k);
    const auto r = ScenarioRoles::for_single(k);
    const std::vector<Mode> i{r.i}, j{r.j}, kk{k}, ij{r.i, r.j};
    const double group_to_single = gaussian_steering(v, {ij, kk}) - gaussian_steering(v, {i, kk}) -
                                   gaussian_steering(v, {j, kk});
    const double single_to_group = gaussian_steering(v, {kk, ij}) - gaussian_steering(v, {kk, i}) -
                                   gaussian_steering(v, {kk, j});
    return {group_to_single, single_to_group};
}

OracleComparison compare_with_closed_form(const NumericMeasure& numeric, const ClosedForm& closed, MeasureKind kind) {
    OracleComparison c;
    c.numeric = numeric.value;
    if (!closed.domain_ok || !std::isfinite(closed.value)) {
        c.closed_clamped = std::numeric_limits<double>::quiet_NaN();
        c.difference = std::numeric_limits<double>::infinity();
        c.presence_agrees = false;
        c.within_tolerance = false;
        return c;
    }
    if (kind == MeasureKind::ConditionalEigenvalue) {
        c.closed_clamped = closed.value;
        c.difference = std::abs(closed.value - numeric.value);
        c.within_tolerance = c.difference <= kOracleTolerance;
        return c;
    }
    c.closed_clamped = std::max(0.0, closed.value);
    c.difference = std::abs(c.closed_clamped - numeric.value);
    // Same snap width as the spectrum: a closed form within ~kHalfSnap of zero
    // corresponds to an eigenvalue sitting on 1/2.
    const bool closed_present = closed.value > 4.0 * kHalfSnap;
    const bool numeric_present = numeric.below_half > 0;
    c.presence_agrees = closed_present == numeric_present;
    c.within_tolerance = c.difference <= kOracleTolerance && c.presence_agrees;
    return c;
}

LossConfig context_config(int scenario, double t, const ScenarioRoles& roles) {
    if (scenario == 0) return LossConfig::lossless(3);
    return scenario_config(Scenario{scenario, t, roles});
}

CovarianceMatrix lossy_state(double lambda, int scenario, double t, const ScenarioRoles& roles) {
    return apply_loss(ideal_output_cm(lambda), context_config(scenario, t, roles));
}

} // namespace tritter
