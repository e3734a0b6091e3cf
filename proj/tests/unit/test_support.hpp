#pragma once

// Fixed-seed generators for property tests.

#include "tritter/symplectic.hpp"
#include "tritter/tritter_state.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace tritter::testing {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    double lambda() { return uniform(0.0, 0.95); }
    double transmissivity() { return uniform(0.0, 1.0); }

    Eigen::MatrixXcd unitary(int n) {
        Eigen::MatrixXcd z(n, n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) z(r, c) = {normal(), normal()};
        Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
        return qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
    }

    /// Passive * squeezers * passive.
    Eigen::MatrixXd symplectic(int n) {
        Eigen::MatrixXd sq = Eigen::MatrixXd::Identity(2 * n, 2 * n);
        for (int m = 0; m < n; ++m) {
            const double r = uniform(-0.8, 0.8);
            sq(2 * m, 2 * m) = std::exp(r);
            sq(2 * m + 1, 2 * m + 1) = std::exp(-r);
        }
        return unitary_to_symplectic(unitary(n)) * sq * unitary_to_symplectic(unitary(n));
    }

    /// S diag(nu_1, nu_1, ..., nu_n, nu_n) S^T with nu_i >= 1/2.
    CovarianceMatrix physical_cm(int n, bool pure = false) {
        Eigen::VectorXd d(2 * n);
        for (int m = 0; m < n; ++m) d(2 * m) = d(2 * m + 1) = pure ? 0.5 : uniform(0.5, 2.0);
        const Eigen::MatrixXd s = symplectic(n);
        return CovarianceMatrix(s * d.asDiagonal() * s.transpose());
    }

private:
    double normal() { return std::normal_distribution<double>(0.0, 1.0)(rng_); }

    std::mt19937_64 rng_;
};

inline double max_abs_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

} // namespace tritter::testing
