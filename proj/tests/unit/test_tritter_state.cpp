#include "test_support.hpp"

#include "tritter/error.hpp"
#include "tritter/tritter_state.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace tritter;
using tritter::testing::Gen;
using tritter::testing::max_abs_diff;

namespace {

const double kSqrt3 = std::sqrt(3.0);

double element(const std::vector<CmElement>& table, const std::string& label) {
    for (const auto& e : table)
        if (e.label == label) return e.value;
    ADD_FAILURE() << "no element " << label;
    return 0.0;
}

} // namespace

TEST(InputSpec, LambdaAndSqueezingAgree) {
    const auto s = InputSpec::from_squeezing(std::atanh(0.5));
    EXPECT_NEAR(s.lambda(), 0.5, 1e-12);
    EXPECT_NEAR(InputSpec::from_lambda(0.5).squeezing(), std::atanh(0.5), 1e-12);
    EXPECT_THROW(InputSpec::from_lambda(1.0), DomainError);
    EXPECT_THROW(InputSpec::from_lambda(-0.1), DomainError);
    EXPECT_THROW(InputSpec::from_squeezing(-1.0), DomainError);
}

TEST(TritterUnitary, UnitaryAndBalanced) {
    const auto u = tritter_unitary();
    EXPECT_LT((u * u.adjoint() - Eigen::Matrix3cd::Identity()).cwiseAbs().maxCoeff(), 1e-12);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) EXPECT_NEAR(std::norm(u(r, c)), 1.0 / 3.0, 1e-12);
    EXPECT_LT(std::abs(u.row(0).dot(u.row(1))), 1e-12);
}

TEST(UnitaryToSymplectic, IdentityAndPhaseShifter) {
    EXPECT_EQ(unitary_to_symplectic(Eigen::MatrixXcd::Identity(3, 3)), Eigen::MatrixXd::Identity(6, 6));

    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(3, 3);
    u(0, 0) = {0.0, 1.0};
    const Eigen::MatrixXd s = unitary_to_symplectic(u);
    Eigen::Matrix2d quarter_turn;
    quarter_turn << 0, -1, 1, 0;
    EXPECT_EQ(Eigen::Matrix2d(s.block(0, 0, 2, 2)), quarter_turn);
    EXPECT_EQ(Eigen::MatrixXd(s.block(2, 2, 4, 4)), Eigen::MatrixXd::Identity(4, 4));
}

TEST(UnitaryToSymplectic, TritterIsSymplecticAndOrthogonal) {
    const Eigen::MatrixXd s = unitary_to_symplectic(tritter_unitary());
    const Eigen::MatrixXd omega = SymplecticForm(3).matrix();
    EXPECT_LT(max_abs_diff(s * omega * s.transpose(), omega), 1e-12);
    EXPECT_LT(max_abs_diff(s * s.transpose(), Eigen::MatrixXd::Identity(6, 6)), 1e-12);
}

TEST(UnitaryToSymplectic, RejectsNonUnitary) {
    EXPECT_THROW(unitary_to_symplectic(2.0 * Eigen::MatrixXcd::Identity(2, 2)), ValidationError);
}

TEST(UnitaryToSymplectic, RandomUnitariesGiveSymplectics) {
    Gen gen(21);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = gen.integer(1, 4);
        const Eigen::MatrixXd s = unitary_to_symplectic(gen.unitary(n));
        const Eigen::MatrixXd omega = SymplecticForm(static_cast<std::size_t>(n)).matrix();
        EXPECT_LT(max_abs_diff(s * omega * s.transpose(), omega), 1e-12);
    }
}

TEST(InputCm, VacuumAtZeroSqueezing) {
    EXPECT_EQ(input_cm(InputSpec::from_lambda(0.0)).matrix(), 0.5 * Eigen::MatrixXd::Identity(6, 6));
}

TEST(InputCm, PureForAllLambda) {
    for (double l : standard_lambda_grid())
        for (double nu : symplectic_eigenvalues(input_cm(InputSpec::from_lambda(l)))) EXPECT_NEAR(nu, 0.5, 1e-10);
}

TEST(InputCm, HyperbolicIdentity) {
    // 2 V(x_a, x_a) = cosh 2r = (1 + lambda^2) / (1 - lambda^2) = 5/3 at lambda = 1/2.
    EXPECT_NEAR(2.0 * input_cm(InputSpec::from_lambda(0.5))(0, 0), 5.0 / 3.0, 1e-12);
}

TEST(IdealOutputCm, VacuumAtZeroSqueezing) {
    EXPECT_EQ(ideal_output_cm(0.0).matrix(), 0.5 * Eigen::MatrixXd::Identity(6, 6));
}

TEST(IdealOutputCm, ElementExamples) {
    const double l = 0.5;
    const auto v = ideal_output_cm(l);
    EXPECT_NEAR(v(0, 0), (3 - 2 * l + l * l) / (6 * (1 - l * l)), 1e-15);
    EXPECT_NEAR(v(0, 3), kSqrt3 * l / (6 * (1 - l * l)), 1e-15);
}

TEST(IdealOutputCm, MatchesElementTableOnGrid) {
    for (double l : standard_lambda_grid())
        EXPECT_LE(max_abs_diff(ideal_output_cm(l).matrix(), golden_matrix(l)), 1e-12) << "lambda " << l;
}

TEST(IdealOutputCm, BlockSymmetries) {
    Gen gen(22);
    for (int trial = 0; trial < 50; ++trial) {
        const auto v = ideal_output_cm(gen.lambda());
        EXPECT_EQ(v.block(0, 0), v.block(1, 1));
        EXPECT_EQ(v.block(0, 2), v.block(1, 2));
        EXPECT_EQ(v.block(2, 2).diagonal(), v.block(0, 0).diagonal());
        EXPECT_EQ(v.block(2, 2)(0, 1), -v.block(0, 0)(0, 1));
    }
}

TEST(IdealOutputCm, PureOnGrid) {
    for (double l : standard_lambda_grid())
        for (double nu : symplectic_eigenvalues(ideal_output_cm(l))) EXPECT_NEAR(nu, 0.5, 1e-10);
}

TEST(AppendixElements, TableEntries) {
    const double l = 0.3;
    const auto table = appendix_cm_elements(l);
    EXPECT_EQ(table.size(), 21u);
    const double d = 1 - l * l;
    EXPECT_NEAR(element(table, "p_a,p_a"), (3 + 2 * l + l * l) / (6 * d), 1e-15);
    EXPECT_NEAR(element(table, "x_c,p_c"), kSqrt3 * l / (3 * d), 1e-15);
    EXPECT_NEAR(element(table, "x_a,p_a"), -kSqrt3 * l / (3 * d), 1e-15);
}

TEST(AppendixElements, ZeroSqueezing) {
    for (const auto& e : appendix_cm_elements(0.0)) EXPECT_EQ(e.value, e.row == e.col ? 0.5 : 0.0) << e.label;
}

TEST(ConventionFit, OnlyFrozenConventionReproducesTable) {
    const auto fits = fit_conventions(standard_lambda_grid());
    ASSERT_EQ(fits.size(), 4u);
    int matching = 0;
    for (const auto& f : fits) {
        if (f.max_deviation <= 1e-10) {
            ++matching;
            EXPECT_EQ(f.convention, kFrozenConvention);
        }
    }
    EXPECT_EQ(matching, 1);
}

TEST(OutputViaTransform, MatchesClosedForm) {
    EXPECT_LE(max_abs_diff(output_cm_via_transform(InputSpec::from_lambda(0.7)).matrix(), ideal_output_cm(0.7).matrix()),
              1e-10);
    EXPECT_LE(max_abs_diff(output_cm_via_transform(InputSpec::from_lambda(0.0, {3, -1})).matrix(),
                           0.5 * Eigen::MatrixXd::Identity(6, 6)),
              1e-15);
}

TEST(OutputViaTransform, GammaIndependentAndPure) {
    Gen gen(23);
    for (int trial = 0; trial < 50; ++trial) {
        const double l = gen.lambda();
        const std::complex<double> g{gen.uniform(-5, 5), gen.uniform(-5, 5)};
        const auto v = output_cm_via_transform(InputSpec::from_lambda(l, g));
        EXPECT_EQ(v.matrix(), output_cm_via_transform(InputSpec::from_lambda(l)).matrix());
        for (double nu : symplectic_eigenvalues(v)) EXPECT_NEAR(nu, 0.5, 1e-10);
    }
}

TEST(FirstMoments, ZeroWithoutDisplacement) {
    EXPECT_EQ(first_moments(InputSpec::from_lambda(0.4)).means, Eigen::VectorXd::Zero(6));
}

TEST(FirstMoments, ModeCAmplitude) {
    const double g = 1.7;
    const auto d = first_moments(InputSpec::from_lambda(0.4, g));
    // <x_c> = sqrt(2) Re(gamma / sqrt 3), <p_c> = 0 for real gamma.
    EXPECT_NEAR(d.means(4), std::sqrt(2.0) * g / kSqrt3, 1e-12);
    EXPECT_NEAR(d.means(5), 0.0, 1e-12);
}

TEST(FirstMoments, Linear) {
    Gen gen(24);
    for (int trial = 0; trial < 50; ++trial) {
        const std::complex<double> g{gen.uniform(-3, 3), gen.uniform(-3, 3)};
        const auto one = first_moments(InputSpec::from_lambda(0.2, g)).means;
        const auto two = first_moments(InputSpec::from_lambda(0.2, 2.0 * g)).means;
        EXPECT_LT((two - 2.0 * one).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(LambdaGrid, NineteenPoints) {
    const auto g = standard_lambda_grid();
    ASSERT_EQ(g.size(), 19u);
    EXPECT_NEAR(g.front(), 0.05, 1e-15);
    EXPECT_NEAR(g.back(), 0.95, 1e-15);
}
