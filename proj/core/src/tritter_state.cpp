#include "tritter/tritter_state.hpp"

#include "tritter/error.hpp"

#include <cmath>
#include <numbers>

namespace tritter {

namespace {

constexpr double kUnitarityTolerance = 1e-10;

const double kSqrt3 = std::sqrt(3.0);

} // namespace

void check_lambda(double lambda) {
    if (!(lambda >= 0.0 && lambda < 1.0))
        throw DomainError("squeezing lambda must lie in [0, 1), got " + std::to_string(lambda));
}

InputSpec InputSpec::from_lambda(double lambda, std::complex<double> gamma) {
    check_lambda(lambda);
    return InputSpec(lambda, gamma);
}

InputSpec InputSpec::from_squeezing(double r, std::complex<double> gamma) {
    if (!(r >= 0.0) || !std::isfinite(r))
        throw DomainError("squeezing r must be finite and >= 0, got " + std::to_string(r));
    const double lambda = std::tanh(r);
    check_lambda(lambda);
    return InputSpec(lambda, gamma);
}

double InputSpec::squeezing() const { return std::atanh(lambda_); }

std::string to_string(const TritterConvention& c) {
    return std::string("sigma=") + (c.tmsv_sign > 0 ? "+1" : "-1") + (c.conjugate_phase ? ",conj" : ",direct");
}

Eigen::Matrix3cd tritter_unitary() {
    const std::complex<double> w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
    Eigen::Matrix3cd u;
    u << 1.0, w, w,
         w, 1.0, w,
         w, w, 1.0;
    return u / kSqrt3;
}

Eigen::Matrix3cd effective_unitary(const TritterConvention& convention) {
    const Eigen::Matrix3cd u = tritter_unitary();
    return convention.conjugate_phase ? Eigen::Matrix3cd(u.conjugate()) : u;
}

Eigen::MatrixXd unitary_to_symplectic(const Eigen::MatrixXcd& u) {
    if (u.rows() != u.cols() || u.rows() == 0) throw DimensionError("unitary must be square and nonempty");
    const Eigen::Index n = u.rows();
    const double defect = (u * u.adjoint() - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
    if (defect > kUnitarityTolerance)
        throw ValidationError("matrix is not unitary (max |U U^dag - I| = " + std::to_string(defect) + ")");

    Eigen::MatrixXd s(2 * n, 2 * n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index k = 0; k < n; ++k) {
            const double re = u(j, k).real();
            const double im = u(j, k).imag();
            s.block<2, 2>(2 * j, 2 * k) << re, -im, im, re;
        }
    }
    return s;
}

CovarianceMatrix input_cm(const InputSpec& spec, int tmsv_sign) {
    const double l = spec.lambda();
    const double l2 = l * l;
    // cosh 2r and sinh 2r written in lambda = tanh r.
    const double ch = (1.0 + l2) / (1.0 - l2);
    const double sh = 2.0 * l / (1.0 - l2);
    const double sigma = tmsv_sign >= 0 ? 1.0 : -1.0;

    Eigen::MatrixXd v = 0.5 * Eigen::MatrixXd::Identity(6, 6);
    v.block<2, 2>(0, 0) = 0.5 * ch * Eigen::Matrix2d::Identity();
    v.block<2, 2>(2, 2) = 0.5 * ch * Eigen::Matrix2d::Identity();
    const Eigen::Matrix2d corr = Eigen::Vector2d(sigma, -sigma).asDiagonal();
    v.block<2, 2>(0, 2) = 0.5 * sh * corr;
    v.block<2, 2>(2, 0) = 0.5 * sh * corr;
    return CovarianceMatrix(v);
}

CovarianceMatrix ideal_output_cm(double lambda) {
    check_lambda(lambda);
    const double l = lambda;

    Eigen::Matrix2d v11;
    v11 << 2 * l - 1, -kSqrt3,
           -kSqrt3, 2 * l + 1;
    v11 *= l / 3.0;
    // Mode c carries the opposite x-p correlation of modes a and b.
    Eigen::Matrix2d v33 = v11;
    v33(0, 1) = -v33(0, 1);
    v33(1, 0) = -v33(1, 0);

    Eigen::Matrix2d v12;
    v12 << 1 - 2 * l, kSqrt3,
           kSqrt3, -1 - 2 * l;
    v12 *= l / 6.0;

    Eigen::Matrix2d v13;
    v13 << l - 2, -kSqrt3 * l,
           kSqrt3 * l, l + 2;
    v13 *= l / 6.0;

    Eigen::MatrixXd blocks(6, 6);
    blocks << v11, v12, v13,
              v12.transpose(), v11, v13,
              v13.transpose(), v13.transpose(), v33;

    return CovarianceMatrix(0.5 * Eigen::MatrixXd::Identity(6, 6) + blocks / (1.0 - l * l));
}

std::vector<CmElement> appendix_cm_elements(double lambda) {
    check_lambda(lambda);
    const double l = lambda;
    const double d6 = 6.0 * (1.0 - l * l);
    const double d3 = 3.0 * (1.0 - l * l);

    const double xx = (3 - 2 * l + l * l) / d6;
    const double pp = (3 + 2 * l + l * l) / d6;
    const double xp_ab = -kSqrt3 * l / d3;
    const double xp_c = kSqrt3 * l / d3;
    const double sq3l2 = kSqrt3 * l * l / d6;
    const double pc_pair = l * (l + 2) / d6;
    const double xc_pair = l * (l - 2) / d6;
    const double papb = -l * (1 + 2 * l) / d6;
    const double xaxb = l * (1 - 2 * l) / d6;
    const double cross_ab = kSqrt3 * l / d6;

    // Quadrature indices: x_a=0 p_a=1 x_b=2 p_b=3 x_c=4 p_c=5.
    std::vector<CmElement> e = {
        {0, 0, "x_a,x_a", xx},      {2, 2, "x_b,x_b", xx},      {4, 4, "x_c,x_c", xx},
        {1, 1, "p_a,p_a", pp},      {3, 3, "p_b,p_b", pp},      {5, 5, "p_c,p_c", pp},
        {0, 1, "x_a,p_a", xp_ab},   {2, 3, "x_b,p_b", xp_ab},   {4, 5, "x_c,p_c", xp_c},
        {1, 4, "p_a,x_c", sq3l2},   {3, 4, "p_b,x_c", sq3l2},
        {2, 5, "x_b,p_c", -sq3l2},  {0, 5, "x_a,p_c", -sq3l2},
        {3, 5, "p_b,p_c", pc_pair}, {1, 5, "p_a,p_c", pc_pair},
        {2, 4, "x_b,x_c", xc_pair}, {0, 4, "x_a,x_c", xc_pair},
        {1, 3, "p_a,p_b", papb},    {0, 2, "x_a,x_b", xaxb},
        {0, 3, "x_a,p_b", cross_ab}, {1, 2, "p_a,x_b", cross_ab},
    };
    return e;
}

Eigen::MatrixXd golden_matrix(double lambda) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(6, 6);
    for (const auto& e : appendix_cm_elements(lambda)) {
        m(e.row, e.col) = e.value;
        m(e.col, e.row) = e.value;
    }
    return m;
}

CovarianceMatrix output_cm_via_transform(const InputSpec& spec, const TritterConvention& convention) {
    const Eigen::MatrixXd s = unitary_to_symplectic(effective_unitary(convention));
    return CovarianceMatrix(s * input_cm(spec, convention.tmsv_sign).matrix() * s.transpose());
}

std::vector<ConventionFit> fit_conventions(const std::vector<double>& lambda_grid) {
    std::vector<ConventionFit> fits;
    for (int sign : {1, -1}) {
        for (bool conj : {false, true}) {
            const TritterConvention c{sign, conj};
            double worst = 0.0;
            for (double l : lambda_grid) {
                const auto v = output_cm_via_transform(InputSpec::from_lambda(l), c);
                worst = std::max(worst, (v.matrix() - golden_matrix(l)).cwiseAbs().maxCoeff());
            }
            fits.push_back({c, worst});
        }
    }
    return fits;
}

DisplacementVector first_moments(const InputSpec& spec, const TritterConvention& convention) {
    const Eigen::Vector3cd alpha_in(0.0, 0.0, spec.gamma());
    const Eigen::Vector3cd alpha_out = effective_unitary(convention) * alpha_in;
    DisplacementVector d{Eigen::VectorXd(6)};
    for (Eigen::Index k = 0; k < 3; ++k) {
        d.means(2 * k) = std::sqrt(2.0) * alpha_out(k).real();
        d.means(2 * k + 1) = std::sqrt(2.0) * alpha_out(k).imag();
    }
    return d;
}

std::vector<double> standard_lambda_grid() {
    std::vector<double> grid;
    for (int k = 1; k <= 19; ++k) grid.push_back(0.05 * k);
    return grid;
}

} // namespace tritter
