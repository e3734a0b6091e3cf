#include "test_support.hpp"

#include "tritter/error.hpp"
#include "tritter/loss_model.hpp"
#include "tritter/symplectic.hpp"
#include "tritter/tritter_state.hpp"

#include <gtest/gtest.h>

using namespace tritter;
using tritter::testing::Gen;
using tritter::testing::max_abs_diff;

namespace {

Eigen::MatrixXd diag(std::initializer_list<double> values) {
    Eigen::VectorXd d(static_cast<Eigen::Index>(values.size()));
    Eigen::Index k = 0;
    for (double v : values) d(k++) = v;
    return d.asDiagonal();
}

} // namespace

TEST(CovarianceMatrix, SymmetrizesOnConstruction) {
    Eigen::MatrixXd m = 0.5 * Eigen::MatrixXd::Identity(2, 2);
    m(0, 1) = 0.1;
    m(1, 0) = 0.3;
    const CovarianceMatrix v(m);
    EXPECT_DOUBLE_EQ(v(0, 1), 0.2);
    EXPECT_DOUBLE_EQ(v(1, 0), 0.2);
}

TEST(CovarianceMatrix, RejectsBadShapes) {
    EXPECT_THROW(CovarianceMatrix(Eigen::MatrixXd::Identity(3, 3)), DimensionError);
    EXPECT_THROW(CovarianceMatrix(Eigen::MatrixXd(2, 4)), DimensionError);
    EXPECT_THROW(CovarianceMatrix(Eigen::MatrixXd(0, 0)), DimensionError);
}

TEST(CovarianceMatrix, SubsystemKeepsRequestedOrder) {
    const auto v = ideal_output_cm(0.4);
    const auto sub = v.subsystem({kModeC, kModeA});
    EXPECT_EQ(sub.n_modes(), 2u);
    EXPECT_TRUE(sub.block(0, 1).isApprox(v.block(kModeC, kModeA)));
    EXPECT_THROW(v.subsystem({kModeA, 3}), RangeError);
}

TEST(SymplecticForm, AntisymmetricAndSquaresToMinusIdentity) {
    const SymplecticForm omega(3);
    const auto& o = omega.matrix();
    EXPECT_EQ(o, -o.transpose());
    EXPECT_EQ(o * o, -Eigen::MatrixXd::Identity(6, 6));
}

TEST(ModePartition, Validation) {
    EXPECT_THROW(ModePartition({}, {0}), ValidationError);
    EXPECT_THROW(ModePartition({0, 1}, {1}), ValidationError);
    const ModePartition p({kModeC}, {kModeA, kModeB});
    EXPECT_EQ(p.label(), "c|ab");
    EXPECT_THROW(p.check_against(2), RangeError);
}

TEST(SymplecticEigenvalues, Vacuum) {
    for (double nu : symplectic_eigenvalues(CovarianceMatrix::vacuum(3))) EXPECT_NEAR(nu, 0.5, 1e-14);
}

TEST(SymplecticEigenvalues, ThermalSingleMode) {
    const auto nu = symplectic_eigenvalues(CovarianceMatrix(diag({1.5, 1.5})));
    ASSERT_EQ(nu.size(), 1u);
    EXPECT_NEAR(nu[0], 1.5, 1e-14);
}

TEST(SymplecticEigenvalues, IdealOutputIsPure) {
    const auto nu = symplectic_eigenvalues(ideal_output_cm(0.5));
    ASSERT_EQ(nu.size(), 3u);
    for (double x : nu) EXPECT_NEAR(x, 0.5, 1e-10);
}

TEST(SymplecticEigenvalues, SpectrumListsEachValueTwice) {
    const CovarianceMatrix v(diag({0.7, 0.7, 2.0, 2.0}));
    const auto raw = symplectic_spectrum(v);
    ASSERT_EQ(raw.size(), 4u);
    EXPECT_NEAR(raw[0], 0.7, 1e-14);
    EXPECT_NEAR(raw[1], 0.7, 1e-14);
    EXPECT_NEAR(raw[2], 2.0, 1e-14);
    EXPECT_NEAR(raw[3], 2.0, 1e-14);
}

TEST(SymplecticEigenvalues, InvariantUnderSymplecticCongruence) {
    Gen gen(11);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = gen.integer(1, 3);
        const auto v = gen.physical_cm(n);
        const Eigen::MatrixXd s = gen.symplectic(n);
        const auto before = symplectic_eigenvalues(v);
        const auto after = symplectic_eigenvalues(CovarianceMatrix(s * v.matrix() * s.transpose()));
        for (std::size_t k = 0; k < before.size(); ++k) EXPECT_NEAR(before[k], after[k], 1e-9 * before[k]);
    }
}

TEST(SymplecticEigenvalues, TritterTransformPreservesSpectrum) {
    Gen gen(12);
    const Eigen::MatrixXd s = unitary_to_symplectic(tritter_unitary());
    for (int trial = 0; trial < 100; ++trial) {
        const auto v = gen.physical_cm(3);
        const auto before = symplectic_eigenvalues(v);
        const auto after = symplectic_eigenvalues(CovarianceMatrix(s * v.matrix() * s.transpose()));
        for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(before[k], after[k], 1e-9);
    }
}

TEST(PartialTranspose, VacuumUnchanged) {
    const auto v = CovarianceMatrix::vacuum(3);
    EXPECT_EQ(partial_transpose(v, {kModeC}).matrix(), v.matrix());
}

TEST(PartialTranspose, InvolutionAndSymmetry) {
    Gen gen(13);
    for (int trial = 0; trial < 100; ++trial) {
        const auto v = gen.physical_cm(3);
        std::vector<Mode> modes;
        for (Mode m = 0; m < 3; ++m)
            if (gen.integer(0, 1)) modes.push_back(m);
        if (modes.empty()) modes.push_back(static_cast<Mode>(gen.integer(0, 2)));
        const auto once = partial_transpose(v, modes);
        EXPECT_EQ(once.matrix(), once.matrix().transpose());
        EXPECT_LT(max_abs_diff(partial_transpose(once, modes).matrix(), v.matrix()), 1e-15);
    }
}

TEST(PartialTranspose, IdealStateViolatesPptAcrossC) {
    const auto pt = partial_transpose(ideal_output_cm(0.5), {kModeC});
    EXPECT_LT(symplectic_eigenvalues(pt).front(), 0.5);
}

TEST(SchurComplement, ProductStateGivesReducedBlock) {
    const CovarianceMatrix v(diag({0.7, 0.9, 1.2, 1.1}));
    const auto s = schur_complement(v, ModePartition({0}, {1}));
    EXPECT_EQ(s.matrix(), v.subsystem({1}).matrix());
}

TEST(SchurComplement, IdealPairConditionalIsPhysical) {
    for (double l : standard_lambda_grid()) {
        const auto s = schur_complement(ideal_output_cm(l), ModePartition({kModeA}, {kModeB}));
        EXPECT_GE(symplectic_eigenvalues(s).front(), 0.5 - 1e-10) << "lambda " << l;
    }
}

TEST(SchurComplement, IdealGroupConditionalBelowHalf) {
    const auto s = schur_complement(ideal_output_cm(0.5), ModePartition({kModeA, kModeB}, {kModeC}));
    EXPECT_LT(symplectic_eigenvalues(s).front(), 0.5);
}

TEST(SchurComplement, PhysicalInputGivesSymmetricPsdResult) {
    Gen gen(14);
    for (int trial = 0; trial < 200; ++trial) {
        const auto v = gen.physical_cm(3);
        const Mode k = static_cast<Mode>(gen.integer(0, 2));
        const auto r = ScenarioRoles::for_single(k);
        const auto s = schur_complement(v, ModePartition({r.i, r.j}, {k}));
        EXPECT_EQ(s.matrix(), s.matrix().transpose());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s.matrix());
        EXPECT_GE(es.eigenvalues().minCoeff(), -1e-12);
    }
}

TEST(SchurComplement, SingularConditioningBlockThrows) {
    Eigen::MatrixXd m = 0.5 * Eigen::MatrixXd::Identity(4, 4);
    m(0, 0) = 0.0;
    EXPECT_THROW(schur_complement(CovarianceMatrix(m), ModePartition({0}, {1})), SingularBlockError);
}

TEST(IsPhysical, Examples) {
    EXPECT_TRUE(is_physical(CovarianceMatrix::vacuum(3)));
    EXPECT_FALSE(is_physical(CovarianceMatrix(diag({0.1, 0.1}))));
    const auto lossy = apply_loss(ideal_output_cm(0.9), scenario_config(Scenario{5, 0.3, {}}));
    EXPECT_TRUE(is_physical(lossy));
}

TEST(IsPhysical, GeneratedStatesArePhysical) {
    Gen gen(15);
    for (int trial = 0; trial < 200; ++trial) EXPECT_TRUE(is_physical(gen.physical_cm(gen.integer(1, 3))));
}

TEST(ModeLabels, RoundTrip) {
    EXPECT_EQ(modes_label({kModeA, kModeC}), "ac");
    EXPECT_EQ(mode_from_label('b'), kModeB);
    EXPECT_THROW(mode_from_label('?'), ParseError);
}
