#pragma once

#include "tritter/symplectic.hpp"

#include <string>
#include <vector>

namespace tritter {

/// Per-mode pure-loss transmissivities, T_i = cos^2(theta_i) in [0, 1].
class LossConfig {
public:
    explicit LossConfig(std::vector<double> transmissivities);

    /// T = 1 on every mode.
    static LossConfig lossless(std::size_t n_modes = 3);

    const std::vector<double>& transmissivities() const noexcept { return t_; }
    double operator[](Mode m) const { return t_.at(m); }
    std::size_t n_modes() const noexcept { return t_.size(); }

    friend bool operator==(const LossConfig&, const LossConfig&) = default;

private:
    std::vector<double> t_;
};

/// Mode roles of a loss scenario: k is the single-mode module, (i, j) the
/// pair, and i the pair member that is lossy in Scenarios 2 and 4.
struct ScenarioRoles {
    Mode k = kModeC;
    Mode i = kModeA;
    Mode j = kModeB;

    /// Roles for a given k; the lossy member defaults to the lower-indexed pair mode.
    static ScenarioRoles for_single(Mode k);
    static ScenarioRoles with_lossy_member(Mode k, Mode lossy_member);

    std::vector<Mode> pair() const { return {i, j}; }
};

/// One of the five loss distributions with a shared transmissivity.
///
///   1: T_k = T            (single-mode loss)
///   2: T_i = T            (one pair member)
///   3: T_i = T_j = T      (whole pair)
///   4: T_i = T_k = T      (one pair member and k)
///   5: T_i = T_j = T_k = T
struct Scenario {
    int id = 1;
    double shared_t = 1.0;
    ScenarioRoles roles{};
};

/// Throws DomainError for an id outside 1..5, T outside [0, 1] or
/// inconsistent roles.
void validate(const Scenario& s);

LossConfig scenario_config(const Scenario& s);

/// V_ij -> sqrt(T_i T_j) V_ij (i != j), V_ii -> T_i V_ii + (1 - T_i) I/2.
CovarianceMatrix apply_loss(const CovarianceMatrix& v, const LossConfig& cfg);

std::string describe(const Scenario& s);

} // namespace tritter
