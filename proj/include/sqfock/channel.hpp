// channel.hpp — short-time Kraus set of the loss+dephasing channel, the
// symmetric J matrix, and the eigen-transform to the orthogonalized Kraus
// operators F_i whose error subspaces the recovery unitaries address.

#pragma once

#include "sqfock/codes.hpp"

#include <array>

namespace sqfock {

struct NoiseParams {
    double kappa = 0.0;     // single-photon loss rate
    double kappa_phi = 0.0; // dephasing rate
    double tau = 0.0;       // short-time step

    void validate() const {
        if (kappa < 0 || kappa_phi < 0)
            throw std::invalid_argument("NoiseParams: negative rate");
        if (tau < 0) throw std::invalid_argument("NoiseParams: negative tau");
    }
};

// A1 = sqrt(kappa tau) a, A2 = sqrt(kappa_phi tau) n,
// A3 = I - (kappa tau/2) n - (kappa_phi tau/2) n^2
inline std::vector<Matrix> short_time_kraus(const FockSpace& space, const NoiseParams& p) {
    p.validate();
    const Matrix a = annihilation(space.dim);
    const Matrix n = number_op(space.dim);
    const Matrix id = Matrix::Identity(space.dim, space.dim);
    return {std::sqrt(p.kappa * p.tau) * a, std::sqrt(p.kappa_phi * p.tau) * n,
            id - (p.kappa * p.tau / 2.0) * n - (p.kappa_phi * p.tau / 2.0) * (n * n)};
}

// J_ij = <u_L| A_i^+ A_j |u_L>, computed at u = 0 and verified u-independent.
inline Eigen::Matrix3d j_matrix(const CodePair& pair, const std::vector<Matrix>& a_ops) {
    if (a_ops.size() != 3) throw std::invalid_argument("j_matrix: expected 3 Kraus operators");
    if (pair.family != CodeFamily::SqFockSuperposition)
        throw contract_error("j_matrix: requires the orthogonal superposition code family");
    std::array<Vector, 3> im0, im1;
    for (int i = 0; i < 3; ++i) {
        im0[std::size_t(i)] = a_ops[std::size_t(i)] * pair.zero;
        im1[std::size_t(i)] = a_ops[std::size_t(i)] * pair.one;
    }
    Eigen::Matrix3d j;
    for (int i = 0; i < 3; ++i) {
        for (int k = 0; k < 3; ++k) {
            const Complex v0 = im0[std::size_t(i)].dot(im0[std::size_t(k)]);
            const Complex v1 = im1[std::size_t(i)].dot(im1[std::size_t(k)]);
            if (std::abs(v0 - v1) > 1e-10)
                throw contract_error("j_matrix: u-dependence beyond 1e-10 at (" +
                                     std::to_string(i) + "," + std::to_string(k) + ")");
            if (std::abs(v0.imag()) > 1e-12)
                throw contract_error("j_matrix: complex entry; codewords not real");
            j(i, k) = v0.real();
        }
    }
    if ((j - j.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw contract_error("j_matrix: not symmetric within 1e-12");
    return (j + j.transpose()) / 2.0;
}

enum class ParityTag { Preserve, Flip };

struct TransformedKraus {
    std::vector<Matrix> a_ops;       // raw {A1, A2, A3}
    Eigen::Matrix3d j;               // J_ij
    Eigen::Matrix3d v;               // columns = eigenvectors, ordered as f_ops
    Eigen::Vector3d lambdas;         // matching eigenvalues
    std::vector<Matrix> f_ops;       // {F1 (fluctuation), F2 (identity-like), F3 = flip}
    std::array<ParityTag, 3> labels; // {Preserve, Preserve, Flip}
    double kl_residual = 0.0;        // max_ij ||P F_i^+ F_j P - L_i d_ij P||
    bool short_time_ok = true;       // kappa tau and kappa_phi tau <n^2> below 0.1
};

// Diagonalize J = V Lambda V^T and form F_i = sum_k V_ki A_k. The
// parity-flipping eigenvector is supported on A1 alone (J's parity block
// structure) and is labeled F3; the parity-preserving pair is ordered by
// ascending eigenvalue as F1, F2. Eigenvector signs are fixed by making the
// dominant component positive, so F3 = +sqrt(kappa tau) a.
inline TransformedKraus transform_kraus(const CodePair& pair, const NoiseParams& p) {
    TransformedKraus out;
    const FockSpace space(int(pair.zero.size()), int(pair.zero.size()), 1.0);
    out.a_ops = short_time_kraus(space, p);
    out.j = j_matrix(pair, out.a_ops);

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(out.j);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("transform_kraus: eigensolver failed");
    // ascending eigenvalues; ties broken by parity label then index below
    std::array<Eigen::Vector3d, 3> cols;
    std::array<double, 3> lams{};
    for (int c = 0; c < 3; ++c) {
        Eigen::Vector3d v = es.eigenvectors().col(c);
        int dominant = 0;
        v.cwiseAbs().maxCoeff(&dominant);
        if (v(dominant) < 0) v = -v;
        cols[std::size_t(c)] = v;
        lams[std::size_t(c)] = es.eigenvalues()(c);
    }
    int flip = -1;
    std::vector<int> preserve;
    for (int c = 0; c < 3; ++c) {
        if (std::abs(cols[std::size_t(c)](0)) > 0.999)
            flip = c;
        else
            preserve.push_back(c);
    }
    if (flip < 0 || preserve.size() != 2)
        throw contract_error("transform_kraus: parity block structure not found; "
                             "J couples the loss row beyond tolerance");
    const std::array<int, 3> order = {preserve[0], preserve[1], flip};
    for (int idx = 0; idx < 3; ++idx) {
        const int c = order[std::size_t(idx)];
        out.v.col(idx) = cols[std::size_t(c)];
        out.lambdas(idx) = lams[std::size_t(c)];
        Matrix f = Matrix::Zero(pair.zero.size(), pair.zero.size());
        for (int k = 0; k < 3; ++k) f += cols[std::size_t(c)](k) * out.a_ops[std::size_t(k)];
        out.f_ops.push_back(std::move(f));
    }
    out.labels = {ParityTag::Preserve, ParityTag::Preserve, ParityTag::Flip};

    const Matrix pl = code_projector(pair);
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) {
        for (int k = 0; k < 3; ++k) {
            Matrix resid = pl * out.f_ops[std::size_t(i)].adjoint() *
                           out.f_ops[std::size_t(k)] * pl;
            if (i == k) resid -= out.lambdas(i) * pl;
            worst = std::max(worst, resid.norm());
        }
    }
    out.kl_residual = worst;

    const Vector nz = number_op(int(pair.zero.size())) * pair.zero;
    const double n2 = nz.squaredNorm();
    out.short_time_ok =
        (p.kappa * p.tau < 0.1) && (p.kappa_phi * p.tau * n2 < 0.1);
    return out;
}

// rho -> sum_i K_i rho K_i^+. Hermitian inputs stay exactly Hermitian (the
// sum is symmetrized); non-Hermitian inputs pass through linearly so that
// superoperator basis elements |u><v| can be propagated.
inline Matrix apply_channel(const std::vector<Matrix>& kraus, const Matrix& rho) {
    detail::require_square(rho, "apply_channel");
    Matrix out = Matrix::Zero(rho.rows(), rho.cols());
    for (const auto& k : kraus) {
        if (k.rows() != rho.rows() || k.cols() != rho.cols())
            throw std::invalid_argument("apply_channel: dimension mismatch");
        out += k * rho * k.adjoint();
    }
    if (hermiticity_defect(rho) < 1e-12) {
        const Matrix sym = (out + out.adjoint()) / 2.0;
        out = sym;
    }
    return out;
}

} // namespace sqfock
