#include "tritter/symplectic.hpp"

#include "tritter/error.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace tritter {

namespace {

std::string echo(const Eigen::MatrixXd& m) {
    std::ostringstream os;
    os.precision(12);
    os << m;
    return os.str();
}

std::vector<Eigen::Index> quadrature_indices(const std::vector<Mode>& modes) {
    std::vector<Eigen::Index> idx;
    idx.reserve(2 * modes.size());
    for (Mode m : modes) {
        idx.push_back(static_cast<Eigen::Index>(2 * m));
        idx.push_back(static_cast<Eigen::Index>(2 * m + 1));
    }
    return idx;
}

Eigen::MatrixXd gather(const Eigen::MatrixXd& m, const std::vector<Eigen::Index>& rows,
                       const std::vector<Eigen::Index>& cols) {
    Eigen::MatrixXd out(rows.size(), cols.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols.size(); ++c)
            out(r, c) = m(rows[r], cols[c]);
    return out;
}

} // namespace

char mode_label(Mode m) {
    if (m >= 26) throw RangeError("mode index " + std::to_string(m) + " has no letter label");
    return static_cast<char>('a' + m);
}

Mode mode_from_label(char label) {
    if (label < 'a' || label > 'z') throw ParseError(std::string("invalid mode label '") + label + "'");
    return static_cast<Mode>(label - 'a');
}

std::string modes_label(const std::vector<Mode>& modes) {
    std::string s;
    for (Mode m : modes) s.push_back(mode_label(m));
    return s;
}

CovarianceMatrix::CovarianceMatrix(const Eigen::MatrixXd& entries) {
    if (entries.rows() != entries.cols())
        throw DimensionError("covariance matrix must be square, got " + std::to_string(entries.rows()) + "x" +
                             std::to_string(entries.cols()));
    if (entries.rows() == 0 || entries.rows() % 2 != 0)
        throw DimensionError("covariance matrix dimension must be even and positive, got " +
                             std::to_string(entries.rows()));
    entries_ = 0.5 * (entries + entries.transpose());
    n_modes_ = static_cast<std::size_t>(entries.rows() / 2);
}

CovarianceMatrix CovarianceMatrix::vacuum(std::size_t n_modes) {
    const auto d = static_cast<Eigen::Index>(2 * n_modes);
    return CovarianceMatrix(0.5 * Eigen::MatrixXd::Identity(d, d));
}

void CovarianceMatrix::check_mode(Mode m) const {
    if (m >= n_modes_)
        throw RangeError("mode index " + std::to_string(m) + " out of range for " + std::to_string(n_modes_) +
                         "-mode state");
}

Eigen::Matrix2d CovarianceMatrix::block(Mode i, Mode j) const {
    check_mode(i);
    check_mode(j);
    return entries_.block<2, 2>(static_cast<Eigen::Index>(2 * i), static_cast<Eigen::Index>(2 * j));
}

CovarianceMatrix CovarianceMatrix::subsystem(const std::vector<Mode>& modes) const {
    if (modes.empty()) throw ValidationError("subsystem needs at least one mode");
    for (Mode m : modes) check_mode(m);
    const auto idx = quadrature_indices(modes);
    return CovarianceMatrix(gather(entries_, idx, idx));
}

SymplecticForm::SymplecticForm(std::size_t n_modes) : n_modes_(n_modes) {
    if (n_modes == 0) throw DimensionError("symplectic form needs at least one mode");
    const auto d = static_cast<Eigen::Index>(2 * n_modes);
    omega_ = Eigen::MatrixXd::Zero(d, d);
    for (Eigen::Index k = 0; k < d; k += 2) {
        omega_(k, k + 1) = 1.0;
        omega_(k + 1, k) = -1.0;
    }
}

ModePartition::ModePartition(std::vector<Mode> party_a, std::vector<Mode> party_b)
    : party_a_(std::move(party_a)), party_b_(std::move(party_b)) {
    if (party_a_.empty() || party_b_.empty()) throw ValidationError("both parties of a partition must be nonempty");
    std::set<Mode> seen;
    for (Mode m : party_a_)
        if (!seen.insert(m).second) throw ValidationError("mode repeated in partition");
    for (Mode m : party_b_)
        if (!seen.insert(m).second) throw ValidationError("partition parties overlap or repeat a mode");
}

void ModePartition::check_against(std::size_t n_modes) const {
    for (const auto* party : {&party_a_, &party_b_})
        for (Mode m : *party)
            if (m >= n_modes)
                throw RangeError("partition mode " + std::to_string(m) + " out of range for " +
                                 std::to_string(n_modes) + "-mode state");
}

std::string ModePartition::label() const {
    return modes_label(party_a_) + "|" + modes_label(party_b_);
}

std::vector<double> symplectic_spectrum(const CovarianceMatrix& v) {
    const SymplecticForm omega(v.n_modes());
    // i Omega V and Omega V share eigenvalue moduli; the real solver avoids complex arithmetic.
    const Eigen::MatrixXd omega_v = omega.matrix() * v.matrix();
    Eigen::EigenSolver<Eigen::MatrixXd> solver(omega_v, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw NumericError("eigen-solver did not converge on covariance matrix:\n" + echo(v.matrix()));

    std::vector<double> moduli;
    moduli.reserve(v.dim());
    for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k)
        moduli.push_back(std::abs(solver.eigenvalues()[k]));
    std::sort(moduli.begin(), moduli.end());

    for (std::size_t k = 0; k + 1 < moduli.size(); k += 2) {
        const double scale = std::max(1.0, moduli[k + 1]);
        if (std::abs(moduli[k + 1] - moduli[k]) > kPairingTolerance * scale)
            throw NumericError("symplectic spectrum is not +/- paired (" + std::to_string(moduli[k]) + " vs " +
                               std::to_string(moduli[k + 1]) + ") for covariance matrix:\n" + echo(v.matrix()));
    }
    return moduli;
}

std::vector<double> symplectic_eigenvalues(const CovarianceMatrix& v) {
    const auto raw = symplectic_spectrum(v);
    std::vector<double> nu;
    nu.reserve(v.n_modes());
    for (std::size_t k = 0; k < raw.size(); k += 2) nu.push_back(raw[k]);
    return nu;
}

CovarianceMatrix partial_transpose(const CovarianceMatrix& v, const std::vector<Mode>& transposed_modes) {
    if (transposed_modes.empty()) throw ValidationError("partial transpose needs at least one mode");
    Eigen::VectorXd signs = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(v.dim()));
    for (Mode m : transposed_modes) {
        v.check_mode(m);
        signs(static_cast<Eigen::Index>(2 * m + 1)) = -1.0;
    }
    return CovarianceMatrix(signs.asDiagonal() * v.matrix() * signs.asDiagonal());
}

CovarianceMatrix schur_complement(const CovarianceMatrix& v, const ModePartition& partition) {
    partition.check_against(v.n_modes());
    const auto ia = quadrature_indices(partition.party_a());
    const auto ib = quadrature_indices(partition.party_b());
    const Eigen::MatrixXd va = gather(v.matrix(), ia, ia);
    const Eigen::MatrixXd vb = gather(v.matrix(), ib, ib);
    const Eigen::MatrixXd vc = gather(v.matrix(), ia, ib);

    const double scale = va.cwiseAbs().maxCoeff();
    const double scaled_det = scale > 0.0 ? (va / scale).determinant() : 0.0;
    if (!(scaled_det > 1e-14))
        throw SingularBlockError("conditioning block of party '" + modes_label(partition.party_a()) +
                                 "' is singular (scaled det " + std::to_string(scaled_det) + ")");

    const Eigen::MatrixXd solved = va.partialPivLu().solve(vc);
    return CovarianceMatrix(vb - vc.transpose() * solved);
}

bool is_physical(const CovarianceMatrix& v) {
    const auto nu = symplectic_eigenvalues(v);
    return nu.front() >= 0.5 - kPhysicalTolerance;
}

} // namespace tritter
