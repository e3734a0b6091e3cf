#pragma once

// Covariance-matrix kernel. Quadratures are ordered (x_1, p_1, ..., x_n, p_n)
// with x = (a + a^dag)/sqrt(2), p = (a - a^dag)/(i sqrt(2)); the vacuum has
// variance 1/2 in every quadrature.

#include <Eigen/Dense>

#include <cstddef>
#include <string>
#include <vector>

namespace tritter {

using Mode = std::size_t;

inline constexpr Mode kModeA = 0;
inline constexpr Mode kModeB = 1;
inline constexpr Mode kModeC = 2;

/// Tolerance of the physicality test (min symplectic eigenvalue >= 1/2 - tol).
inline constexpr double kPhysicalTolerance = 1e-10;

/// Relative tolerance on the +/- pairing of the spectrum of i Omega V.
inline constexpr double kPairingTolerance = 1e-9;

/// Mode label 'a', 'b', 'c', ... for index 0, 1, 2, ...
char mode_label(Mode m);
/// Inverse of mode_label; throws ParseError on anything else.
Mode mode_from_label(char label);
/// Concatenated labels, e.g. {0, 1} -> "ab".
std::string modes_label(const std::vector<Mode>& modes);

/// Real symmetric 2n x 2n second-moment matrix.
///
/// The constructor symmetrizes its input, so small floating-point asymmetry
/// from upstream arithmetic never leaks into the spectral routines.
class CovarianceMatrix {
public:
    explicit CovarianceMatrix(const Eigen::MatrixXd& entries);

    /// Vacuum (I/2) on n modes.
    static CovarianceMatrix vacuum(std::size_t n_modes);

    std::size_t n_modes() const noexcept { return n_modes_; }
    std::size_t dim() const noexcept { return 2 * n_modes_; }
    const Eigen::MatrixXd& matrix() const noexcept { return entries_; }
    double operator()(std::size_t row, std::size_t col) const { return entries_(row, col); }

    /// 2x2 block coupling modes i and j.
    Eigen::Matrix2d block(Mode i, Mode j) const;

    /// Reduced covariance matrix of the given modes, in the given order.
    CovarianceMatrix subsystem(const std::vector<Mode>& modes) const;

    /// Throws RangeError if m >= n_modes().
    void check_mode(Mode m) const;

private:
    Eigen::MatrixXd entries_;
    std::size_t n_modes_ = 0;
};

/// Omega = direct sum of n copies of [[0, 1], [-1, 0]].
class SymplecticForm {
public:
    explicit SymplecticForm(std::size_t n_modes);

    std::size_t n_modes() const noexcept { return n_modes_; }
    const Eigen::MatrixXd& matrix() const noexcept { return omega_; }

private:
    std::size_t n_modes_;
    Eigen::MatrixXd omega_;
};

/// Ordered pair of disjoint, nonempty mode subsets. For steering, party_a is
/// the steering party and party_b the steered one.
class ModePartition {
public:
    ModePartition(std::vector<Mode> party_a, std::vector<Mode> party_b);

    const std::vector<Mode>& party_a() const noexcept { return party_a_; }
    const std::vector<Mode>& party_b() const noexcept { return party_b_; }

    /// Throws RangeError if any index is >= n_modes.
    void check_against(std::size_t n_modes) const;

    /// "c|ab" style label.
    std::string label() const;

private:
    std::vector<Mode> party_a_;
    std::vector<Mode> party_b_;
};

/// Moduli of all 2n eigenvalues of i Omega V, ascending. Every symplectic
/// eigenvalue appears twice.
std::vector<double> symplectic_spectrum(const CovarianceMatrix& v);

/// The n symplectic eigenvalues, ascending (each +/- pair reported once).
std::vector<double> symplectic_eigenvalues(const CovarianceMatrix& v);

/// P V P with P flipping the momentum of every transposed mode.
CovarianceMatrix partial_transpose(const CovarianceMatrix& v, const std::vector<Mode>& transposed_modes);

/// V_B - V_C^T V_A^{-1} V_C: the conditional CM of party_b given party_a.
/// Modes in neither party are ignored (traced out).
CovarianceMatrix schur_complement(const CovarianceMatrix& v, const ModePartition& partition);

/// Bona-fide test: min symplectic eigenvalue >= 1/2 - kPhysicalTolerance.
bool is_physical(const CovarianceMatrix& v);

} // namespace tritter
