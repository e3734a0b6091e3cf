#pragma once

// Three-mode state produced by a balanced tritter fed with a two-mode squeezed
// vacuum on modes a, b and a coherent state on mode c.

#include "tritter/symplectic.hpp"

#include <Eigen/Dense>

#include <complex>
#include <string>
#include <vector>

namespace tritter {

/// Largest lambda accepted by command-line entry points.
inline constexpr double kMaxCliLambda = 0.999;

/// Squeezing (canonical lambda = tanh r) and coherent amplitude gamma.
class InputSpec {
public:
    static InputSpec from_lambda(double lambda, std::complex<double> gamma = {});
    static InputSpec from_squeezing(double r, std::complex<double> gamma = {});

    double lambda() const noexcept { return lambda_; }
    double squeezing() const;
    std::complex<double> gamma() const noexcept { return gamma_; }

private:
    InputSpec(double lambda, std::complex<double> gamma) : lambda_(lambda), gamma_(gamma) {}

    double lambda_;
    std::complex<double> gamma_;
};

/// Throws DomainError unless 0 <= lambda < 1.
void check_lambda(double lambda);

/// Sign and phase conventions linking the tritter unitary to the output CM.
///
/// tmsv_sign is sigma in the input correlation block sinh(2r) diag(sigma, -sigma)/2.
/// With conjugate_phase the unitary acts on the state through conj(U), i.e.
/// omega = exp(2 i pi / 3) enters as its conjugate.
struct TritterConvention {
    int tmsv_sign = 1;
    bool conjugate_phase = false;

    friend bool operator==(const TritterConvention&, const TritterConvention&) = default;
};

/// The convention that reproduces the closed-form element table; fixed by
/// fit_conventions() over a lambda grid (see tests).
inline constexpr TritterConvention kFrozenConvention{1, true};

std::string to_string(const TritterConvention& c);

/// Quadrature means, same ordering as the CM.
struct DisplacementVector {
    Eigen::VectorXd means;
};

/// (1/sqrt 3) [[1, w, w], [w, 1, w], [w, w, 1]], w = exp(2 i pi / 3).
Eigen::Matrix3cd tritter_unitary();

/// The unitary actually applied to the mode operators under a convention.
Eigen::Matrix3cd effective_unitary(const TritterConvention& convention);

/// Orthogonal symplectic matrix of a passive transformation: 2x2 blocks
/// [[Re U_jk, -Im U_jk], [Im U_jk, Re U_jk]]. Throws ValidationError if U is
/// not unitary to 1e-10.
Eigen::MatrixXd unitary_to_symplectic(const Eigen::MatrixXcd& u);

/// TMSV on (a, b) times vacuum-noise mode c.
CovarianceMatrix input_cm(const InputSpec& spec, int tmsv_sign = kFrozenConvention.tmsv_sign);

/// Closed-form output CM, I/2 + blocks / (1 - lambda^2). Independent of gamma.
CovarianceMatrix ideal_output_cm(double lambda);

/// One labelled CM element, e.g. C(x_a, p_b).
struct CmElement {
    std::size_t row;
    std::size_t col;
    std::string label;
    double value;
};

/// The 21 distinct (upper-triangular) entries of the output CM, each evaluated
/// from its own element-wise expression. Serves as the golden table.
std::vector<CmElement> appendix_cm_elements(double lambda);

/// Symmetric 6x6 matrix assembled from appendix_cm_elements.
Eigen::MatrixXd golden_matrix(double lambda);

/// S_U input_cm S_U^T; the numeric cross-check of ideal_output_cm.
CovarianceMatrix output_cm_via_transform(const InputSpec& spec,
                                         const TritterConvention& convention = kFrozenConvention);

struct ConventionFit {
    TritterConvention convention;
    double max_deviation;
};

/// Max entrywise deviation from the golden table over the lambda grid for each
/// of the four (sign, phase) candidates.
std::vector<ConventionFit> fit_conventions(const std::vector<double>& lambda_grid);

/// Output quadrature means: amplitudes (0, 0, gamma) through the effective
/// unitary, then x = sqrt(2) Re alpha, p = sqrt(2) Im alpha.
DisplacementVector first_moments(const InputSpec& spec, const TritterConvention& convention = kFrozenConvention);

/// lambda = 0.05, 0.10, ..., 0.95.
std::vector<double> standard_lambda_grid();

} // namespace tritter
