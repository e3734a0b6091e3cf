#include "tritter/loss_model.hpp"

#include "tritter/error.hpp"

#include <cmath>

namespace tritter {

namespace {

void check_transmissivity(double t) {
    if (!(t >= 0.0 && t <= 1.0))
        throw DomainError("transmissivity must lie in [0, 1], got " + std::to_string(t));
}

} // namespace

LossConfig::LossConfig(std::vector<double> transmissivities) : t_(std::move(transmissivities)) {
    if (t_.empty()) throw DimensionError("loss configuration needs at least one mode");
    for (double t : t_) check_transmissivity(t);
}

LossConfig LossConfig::lossless(std::size_t n_modes) { return LossConfig(std::vector<double>(n_modes, 1.0)); }

ScenarioRoles ScenarioRoles::for_single(Mode k) {
    if (k > kModeC) throw RangeError("single-mode role must be a, b or c");
    ScenarioRoles r;
    r.k = k;
    std::vector<Mode> rest;
    for (Mode m = 0; m < 3; ++m)
        if (m != k) rest.push_back(m);
    r.i = rest[0];
    r.j = rest[1];
    return r;
}

ScenarioRoles ScenarioRoles::with_lossy_member(Mode k, Mode lossy_member) {
    ScenarioRoles r = for_single(k);
    if (lossy_member == k || lossy_member > kModeC)
        throw DomainError("lossy pair member must be one of the two modes other than k");
    if (lossy_member == r.j) std::swap(r.i, r.j);
    return r;
}

void validate(const Scenario& s) {
    if (s.id < 1 || s.id > 5) throw DomainError("scenario id must be 1..5, got " + std::to_string(s.id));
    check_transmissivity(s.shared_t);
    const auto& r = s.roles;
    if (r.k > kModeC || r.i > kModeC || r.j > kModeC || r.k == r.i || r.k == r.j || r.i == r.j)
        throw DomainError("scenario roles must be a permutation of the modes a, b, c");
}

LossConfig scenario_config(const Scenario& s) {
    validate(s);
    std::vector<double> t(3, 1.0);
    const auto& r = s.roles;
    const double v = s.shared_t;
    switch (s.id) {
    case 1: t[r.k] = v; break;
    case 2: t[r.i] = v; break;
    case 3: t[r.i] = t[r.j] = v; break;
    case 4: t[r.i] = t[r.k] = v; break;
    case 5: t = {v, v, v}; break;
    default: break;
    }
    return LossConfig(std::move(t));
}

CovarianceMatrix apply_loss(const CovarianceMatrix& v, const LossConfig& cfg) {
    if (cfg.n_modes() != v.n_modes())
        throw DimensionError("loss configuration has " + std::to_string(cfg.n_modes()) + " modes, state has " +
                             std::to_string(v.n_modes()));
    Eigen::MatrixXd out = v.matrix();
    const auto n = static_cast<Eigen::Index>(v.n_modes());
    for (Eigen::Index i = 0; i < n; ++i) {
        const double ti = cfg[static_cast<Mode>(i)];
        for (Eigen::Index j = 0; j < n; ++j) {
            auto blk = out.block<2, 2>(2 * i, 2 * j);
            if (i == j)
                blk = ti * blk + (1.0 - ti) * 0.5 * Eigen::Matrix2d::Identity();
            else
                blk *= std::sqrt(ti * cfg[static_cast<Mode>(j)]);
        }
    }
    return CovarianceMatrix(out);
}

std::string describe(const Scenario& s) {
    return "scenario " + std::to_string(s.id) + " (k=" + mode_label(s.roles.k) + ", i=" + mode_label(s.roles.i) +
           ", j=" + mode_label(s.roles.j) + ")";
}

} // namespace tritter
