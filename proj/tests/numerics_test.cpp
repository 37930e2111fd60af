#include "sqfock/numerics.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace sqfock;

namespace {

Matrix random_matrix(int n, double scale, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto u = [&rng] { return double(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = scale * Complex(u(), u());
    return m;
}

Matrix random_hermitian(int n, double scale, std::uint64_t seed) {
    const Matrix a = random_matrix(n, scale, seed);
    return (a + a.adjoint()) / 2.0;
}

Matrix random_density(int n, std::uint64_t seed) {
    const Matrix a = random_matrix(n, 1.0, seed);
    Matrix rho = a * a.adjoint();
    rho /= rho.trace();
    return rho;
}

} // namespace

TEST(MatExp, ZeroMatrixGivesIdentity) {
    const Matrix e = mat_exp(Matrix::Zero(3, 3));
    EXPECT_LT((e - Matrix::Identity(3, 3)).norm(), 1e-14);
}

TEST(MatExp, DiagonalIPi) {
    Matrix a = Matrix::Zero(2, 2);
    a(0, 0) = Complex(0, M_PI);
    a(1, 1) = Complex(0, M_PI);
    const Matrix e = mat_exp(a);
    EXPECT_LT((e + Matrix::Identity(2, 2)).norm(), 1e-13);
}

TEST(MatExp, NilpotentClosedForm) {
    Matrix a = Matrix::Zero(2, 2);
    a(0, 1) = 1.0;
    const Matrix e = mat_exp(a);
    Matrix expect = Matrix::Identity(2, 2);
    expect(0, 1) = 1.0;
    EXPECT_LT((e - expect).norm(), 1e-15);
}

TEST(MatExp, InverseProperty) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const Matrix a = random_matrix(12, 1.2, seed); // ||a|| up to ~5
        const Matrix prod = mat_exp(a) * mat_exp(Matrix(-a));
        EXPECT_LT((prod - Matrix::Identity(12, 12)).norm(), 1e-10) << "seed " << seed;
    }
}

TEST(MatExp, LargeNormAgainstEigendecomposition) {
    // Hermitian generator: exp(-iH) has an independent spectral evaluation
    const Matrix h = random_hermitian(16, 12.0, 42);
    const Eigensystem es = eig_hermitian(h, 1e-9);
    Matrix spectral = Matrix::Zero(16, 16);
    for (int k = 0; k < 16; ++k)
        spectral += std::exp(Complex(0, -es.values(k))) * es.vectors.col(k) *
                    es.vectors.col(k).adjoint();
    const Matrix pade = mat_exp(Matrix(Complex(0, -1) * h));
    EXPECT_LT((pade - spectral).norm() / spectral.norm(), 1e-12);
}

TEST(MatExp, RejectsNonSquare) {
    EXPECT_THROW(mat_exp(Matrix(Matrix::Zero(2, 3))), std::invalid_argument);
}

TEST(EigHermitian, PauliZ) {
    Matrix h = Matrix::Zero(2, 2);
    h(0, 0) = 1.0;
    h(1, 1) = -1.0;
    const Eigensystem es = eig_hermitian(h);
    EXPECT_NEAR(es.values(0), -1.0, 1e-14);
    EXPECT_NEAR(es.values(1), 1.0, 1e-14);
}

TEST(EigHermitian, Identity4) {
    const Eigensystem es = eig_hermitian(Matrix::Identity(4, 4));
    for (int k = 0; k < 4; ++k) EXPECT_NEAR(es.values(k), 1.0, 1e-14);
}

TEST(EigHermitian, PauliXClosedForm) {
    Matrix h = Matrix::Zero(2, 2);
    h(0, 1) = 1.0;
    h(1, 0) = 1.0;
    const Eigensystem es = eig_hermitian(h);
    EXPECT_NEAR(es.values(0), -1.0, 1e-14);
    EXPECT_NEAR(es.values(1), 1.0, 1e-14);
    // vectors (1, -/+1)/sqrt(2) up to phase
    for (int k = 0; k < 2; ++k) {
        const Vector v = es.vectors.col(k);
        EXPECT_NEAR(std::abs(v(0)), 1.0 / std::sqrt(2.0), 1e-12);
        EXPECT_NEAR(std::abs(v(1)), 1.0 / std::sqrt(2.0), 1e-12);
    }
}

TEST(EigHermitian, ReconstructionAndOrthonormality) {
    const Matrix h = random_hermitian(24, 2.0, 7);
    const Eigensystem es = eig_hermitian(h);
    const Matrix rebuilt =
        es.vectors * es.values.asDiagonal().toDenseMatrix().cast<Complex>() *
        es.vectors.adjoint();
    EXPECT_LT((rebuilt - h).norm(), 1e-10 * h.norm());
    EXPECT_LT((es.vectors.adjoint() * es.vectors - Matrix::Identity(24, 24)).norm(), 1e-12);
    Vector resid = h * es.vectors.col(3) - es.values(3) * es.vectors.col(3);
    EXPECT_LT(resid.norm(), 1e-10 * h.norm());
}

TEST(EigHermitian, RejectsNonHermitian) {
    Matrix h = Matrix::Zero(2, 2);
    h(0, 1) = 1.0; // no conjugate partner
    EXPECT_THROW(eig_hermitian(h), contract_error);
}

TEST(Loewdin, AlreadyOrthonormalUnchanged) {
    Vector e1 = Vector::Zero(4), e2 = Vector::Zero(4);
    e1(0) = 1.0;
    e2(1) = 1.0;
    const auto out = loewdin_orthonormalize({e1, e2});
    EXPECT_LT((out[0] - e1).norm(), 1e-12);
    EXPECT_LT((out[1] - e2).norm(), 1e-12);
}

TEST(Loewdin, DuplicateVectorRaisesDegeneracy) {
    Vector e1 = Vector::Zero(3);
    e1(0) = 1.0;
    EXPECT_THROW(loewdin_orthonormalize({e1, e1}), degeneracy_error);
}

TEST(Loewdin, MatchesExplicitGramInverseSqrt) {
    // oracle: 2x2 Gram^(-1/2) by explicit eigendecomposition of the Gram matrix
    Vector v1 = Vector::Zero(2), v2(2);
    v1(0) = 1.0;
    v2(0) = 1.0 / std::sqrt(2.0);
    v2(1) = 1.0 / std::sqrt(2.0);
    const auto out = loewdin_orthonormalize({v1, v2});

    Eigen::Matrix2cd gram;
    gram << 1.0, v1.dot(v2), v2.dot(v1), 1.0;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(gram);
    Eigen::Matrix2cd ginv = es.eigenvectors() *
                            es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                            es.eigenvectors().adjoint();
    Matrix v(2, 2);
    v.col(0) = v1;
    v.col(1) = v2;
    const Matrix expect = v * ginv;
    EXPECT_LT((out[0] - expect.col(0)).norm(), 1e-12);
    EXPECT_LT((out[1] - expect.col(1)).norm(), 1e-12);
    // orthonormal and minimally displaced
    EXPECT_NEAR(std::abs(out[0].dot(out[1])), 0.0, 1e-12);
    EXPECT_NEAR(out[0].norm(), 1.0, 1e-12);
}

namespace {

LindbladSpec loss_spec(int dim, double kappa) {
    Matrix a = Matrix::Zero(dim, dim);
    for (int k = 1; k < dim; ++k) a(k - 1, k) = std::sqrt(double(k));
    LindbladSpec spec;
    spec.jump_ops.push_back({a, kappa});
    return spec;
}

} // namespace

TEST(Lindblad, NoJumpsNoHamiltonianIsIdentity) {
    const Matrix rho = random_density(6, 3);
    LindbladSpec spec;
    spec.hamiltonian = Matrix::Zero(6, 6);
    const Matrix out = lindblad_propagate(spec, rho, 2.0);
    EXPECT_LT((out - rho).norm(), 1e-10);
}

TEST(Lindblad, SinglePhotonDecayClosedForm) {
    // oracle: d rho_11/dt = -kappa rho_11 under (kappa/2) D[a]  =>  e^{-kappa t}
    const int dim = 4;
    const double kappa = 0.8, t = 0.9;
    Matrix rho = Matrix::Zero(dim, dim);
    rho(1, 1) = 1.0;
    const Matrix out = lindblad_propagate(loss_spec(dim, kappa), rho, t);
    EXPECT_NEAR(out(1, 1).real(), std::exp(-kappa * t), 1e-9);
    EXPECT_NEAR(out(0, 0).real(), 1.0 - std::exp(-kappa * t), 1e-9);
}

TEST(Lindblad, DephasingCoherenceClosedForm) {
    // oracle: rho_01(t) = (1/2) e^{-kappa_phi t/2} for (|0>+|1>)/sqrt(2)
    const int dim = 3;
    const double kphi = 0.6, t = 1.3;
    Matrix n = Matrix::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) n(k, k) = double(k);
    LindbladSpec spec;
    spec.jump_ops.push_back({n, kphi});
    Matrix rho = Matrix::Zero(dim, dim);
    rho(0, 0) = rho(1, 1) = rho(0, 1) = rho(1, 0) = 0.5;
    const Matrix out = lindblad_propagate(spec, rho, t);
    EXPECT_NEAR(out(0, 1).real(), 0.5 * std::exp(-kphi * t / 2.0), 1e-9);
}

TEST(Lindblad, RK4MatchesVectorizedExp) {
    const Matrix rho = random_density(8, 11);
    LindbladSpec spec = loss_spec(8, 0.7);
    spec.hamiltonian = random_hermitian(8, 0.5, 12);
    const Matrix a = lindblad_propagate(spec, rho, 0.8, PropagationMode::VectorizedExp);
    const Matrix b = lindblad_propagate(spec, rho, 0.8, PropagationMode::RK4);
    EXPECT_LT((a - b).norm(), 1e-7);
}

TEST(Lindblad, PreservesHermiticityTraceAndPositivity) {
    const Matrix rho = random_density(6, 21);
    LindbladSpec spec = loss_spec(6, 1.1);
    const Matrix out = lindblad_propagate(spec, rho, 0.5);
    EXPECT_LT(hermiticity_defect(out), 1e-8);
    EXPECT_NEAR(out.trace().real(), 1.0, 1e-8);
    Eigen::SelfAdjointEigenSolver<Matrix> es(out);
    EXPECT_GT(es.eigenvalues().minCoeff(), -1e-8);
}

TEST(Lindblad, SemigroupProperty) {
    const Matrix rho = random_density(6, 31);
    LindbladSpec spec = loss_spec(6, 0.9);
    const Matrix once = lindblad_propagate(spec, rho, 1.1);
    const Matrix twice =
        lindblad_propagate(spec, lindblad_propagate(spec, rho, 0.4), 0.7);
    EXPECT_LT((once - twice).norm(), 1e-7);
}

TEST(Lindblad, DimensionMismatchThrows) {
    LindbladSpec spec = loss_spec(5, 1.0);
    EXPECT_THROW(lindblad_propagate(spec, random_density(6, 5), 0.1),
                 std::invalid_argument);
}

TEST(LossDephasingPropagator, MatchesVectorizedLiouvillian) {
    const int dim = 10;
    const double kappa = 1.0, kphi = 0.3, t = 0.7;
    const Matrix rho = random_density(dim, 9);
    LindbladSpec spec = loss_spec(dim, kappa);
    Matrix n = Matrix::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) n(k, k) = double(k);
    spec.jump_ops.push_back({n, kphi});
    const Matrix dense = lindblad_propagate(spec, rho, t, PropagationMode::VectorizedExp);
    const LossDephasingPropagator prop(dim, kappa, kphi, t);
    EXPECT_LT((prop.apply(rho) - dense).norm(), 1e-11);
}

TEST(LossDephasingPropagator, LinearOnNonHermitianInputs) {
    const int dim = 8;
    const LossDephasingPropagator prop(dim, 0.8, 0.2, 0.5);
    const Matrix x = random_matrix(dim, 1.0, 17);
    const Matrix herm = (x + x.adjoint()) / 2.0;
    const Matrix anti = (x - x.adjoint()) / 2.0;
    const Matrix total = prop.apply(Matrix(herm + anti));
    EXPECT_LT((total - prop.apply(herm) - prop.apply(anti)).norm(), 1e-12);
}
