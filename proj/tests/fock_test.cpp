#include "sqfock/fock.hpp"

#include <gtest/gtest.h>

using namespace sqfock;

TEST(Ladder, MatrixElements) {
    const FockSpace space(8);
    const LadderOps ops = ladder_ops(space);
    EXPECT_NEAR(ops.a(0, 1).real(), 1.0, 1e-15);
    EXPECT_NEAR(ops.a(1, 2).real(), std::sqrt(2.0), 1e-15);
    Vector vac = Vector::Zero(8);
    vac(0) = 1.0;
    EXPECT_NEAR((ops.a * vac).norm(), 0.0, 1e-15);
    EXPECT_LT((ops.a_dag - ops.a.adjoint()).norm(), 1e-15);
    EXPECT_LT((ops.n - ops.a_dag * ops.a).norm(), 1e-15);
}

TEST(SqueezeOperator, ZeroSqueezingIsIdentity) {
    const FockSpace space(16);
    const RealMatrix s = squeeze_operator(space, SqueezeParams{0.0});
    EXPECT_LT((s - RealMatrix::Identity(16, 16)).norm(), 1e-14);
}

TEST(SqueezeOperator, OrthogonalInPaddedRegime) {
    // the untruncated exponential of the real antisymmetric generator is
    // orthogonal at machine precision for any r
    const RealMatrix s = squeeze_exp_raw(96, 0.75);
    EXPECT_LT((s.transpose() * s - RealMatrix::Identity(96, 96)).norm(), 1e-10);
}

TEST(SqueezeOperator, InverseComposition) {
    const RealMatrix sp = squeeze_exp_raw(96, 0.75);
    const RealMatrix sm = squeeze_exp_raw(96, -0.75);
    EXPECT_LT((sp * sm - RealMatrix::Identity(96, 96)).norm(), 1e-9);
}

TEST(SqueezeOperator, ParityConservationExact) {
    const int dim = auto_dim(0.7, 3, 1e-18);
    const FockSpace space(dim, 3 * dim);
    const RealMatrix s = squeeze_operator(space, SqueezeParams{0.7}, 4);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            if ((i + j) % 2 == 1) EXPECT_EQ(s(i, j), 0.0);
}

TEST(SqueezeOperator, InsufficientPaddingThrows) {
    const FockSpace space(32, 32); // no padding at all
    EXPECT_THROW(squeeze_operator(space, SqueezeParams{1.0}), truncation_error);
}

TEST(SqueezeOperator, ColumnZeroMatchesAnalyticOverlaps) {
    const int dim = auto_dim(0.7, 0, 1e-18);
    const FockSpace space(dim, 3 * dim);
    const SqueezeParams p{0.7};
    const RealMatrix s = squeeze_operator(space, p, 1);
    for (int n = 0; n < dim; n += 2)
        EXPECT_NEAR(s(n, 0), overlap_analytic(n, 0, p), 1e-8) << "n=" << n;
    for (int n = 1; n < dim; n += 2) EXPECT_EQ(s(n, 0), 0.0);
}

TEST(SqueezedFockState, ZeroSqueezingIsFockState) {
    const FockSpace space(12);
    const Vector v = squeezed_fock_state(space, 0, SqueezeParams{0.0});
    EXPECT_NEAR(v(0).real(), 1.0, 1e-14);
    EXPECT_NEAR(v.norm(), 1.0, 1e-14);
}

TEST(SqueezedFockState, ParitySelectionRule) {
    const int dim = auto_dim(1.0, 0);
    const FockSpace space(dim, 2 * dim);
    const Vector v = squeezed_fock_state(space, 0, SqueezeParams{1.0});
    for (int k = 1; k < dim; k += 2) EXPECT_EQ(std::abs(v(k)), 0.0);
}

TEST(SqueezedFockState, MeanPhotonClosedForm) {
    // <n,r| N |n,r> = n cosh(2r) + sinh^2(r); checked against the direct
    // expectation from the state vector
    const double r = 0.921;
    const int dim = auto_dim(r, 1);
    const FockSpace space(dim, 2 * dim);
    const Vector v = squeezed_fock_state(space, 1, SqueezeParams{r});
    double mean = 0.0;
    for (int k = 0; k < dim; ++k) mean += k * std::norm(v(k));
    EXPECT_NEAR(mean, std::cosh(2 * r) + std::sinh(r) * std::sinh(r), 1e-9);
}

TEST(SqueezedFockState, TailViolationThrows) {
    const FockSpace tight(16, 64, 1e-12);
    EXPECT_THROW(squeezed_fock_state(tight, 1, SqueezeParams{1.2}), truncation_error);
}

TEST(OverlapAnalytic, ZeroSqueezingIsKronecker) {
    for (int n = 0; n < 6; ++n)
        for (int m = 0; m < 6; ++m)
            EXPECT_DOUBLE_EQ(overlap_analytic(n, m, SqueezeParams{0.0}), n == m ? 1.0 : 0.0);
}

TEST(OverlapAnalytic, VacuumOverlapClosedForm) {
    for (double r : {0.3, 1.0, 2.5})
        EXPECT_NEAR(overlap_analytic(0, 0, SqueezeParams{r}), 1.0 / std::sqrt(std::cosh(r)),
                    1e-14);
}

TEST(OverlapAnalytic, OddAsymptoteScalesAsCoshMinusThreeHalves) {
    for (int n : {1, 3}) {
        const double v3 = overlap_analytic(n, n, SqueezeParams{3.0});
        const double v4 = overlap_analytic(n, n, SqueezeParams{4.0});
        const double expo = std::log(std::abs(v4) / std::abs(v3)) /
                            std::log(std::cosh(4.0) / std::cosh(3.0));
        EXPECT_NEAR(expo, -1.5, 0.075) << "n=" << n; // within 5%
    }
}

TEST(OverlapAnalytic, EvenAsymptoteScalesAsCoshMinusHalf) {
    for (int n : {0, 2}) {
        const double v3 = overlap_analytic(n, n, SqueezeParams{3.0});
        const double v4 = overlap_analytic(n, n, SqueezeParams{4.0});
        const double expo = std::log(std::abs(v4) / std::abs(v3)) /
                            std::log(std::cosh(4.0) / std::cosh(3.0));
        EXPECT_NEAR(expo, -0.5, 0.05) << "n=" << n;
    }
}

TEST(OverlapAnalytic, DualOracleAgainstMatrixExponential) {
    // property over n, m <= 10 and |r| <= 1.5: closed form == padded matrix route
    for (double r : {0.25, -0.7, 1.5}) {
        const int pad = std::max(128, auto_dim(r, 10, 1e-20) * 2);
        // tail tolerance disabled: only entries n <= 10 are compared
        const FockSpace half(pad / 2, pad, 1.0);
        for (int m = 0; m <= 10; ++m) {
            const Vector v = squeezed_fock_state(half, m, SqueezeParams{r});
            for (int n = 0; n <= 10; ++n)
                EXPECT_NEAR(overlap_analytic(n, m, SqueezeParams{r}), v(n).real(), 1e-8)
                    << "r=" << r << " n=" << n << " m=" << m;
        }
    }
}

TEST(SqueezedStateAnalytic, MatchesMatrixRoute) {
    const double r = 0.9;
    const int dim = auto_dim(r, 3);
    const Vector a = squeezed_fock_state_analytic(dim, 3, SqueezeParams{r});
    const Vector b = squeezed_fock_state(FockSpace(dim, 4 * dim), 3, SqueezeParams{r});
    EXPECT_LT((a - b).norm(), 1e-10);
}

TEST(DisplacementKernel, MatchesMatrixExponential) {
    const int dim = 48;
    const DisplacementKernel kernel(dim);
    const Complex beta(0.7, -0.4);
    Matrix gen = Matrix::Zero(dim, dim);
    for (int k = 1; k < dim; ++k) {
        gen(k, k - 1) += beta * std::sqrt(double(k));
        gen(k - 1, k) -= std::conj(beta) * std::sqrt(double(k));
    }
    const Matrix d = mat_exp(gen);
    Vector v = Vector::Zero(dim);
    v(2) = 1.0;
    EXPECT_LT((kernel.apply(beta, v) - d * v).norm(), 1e-11);
}

TEST(Wigner, VacuumAtOrigin) {
    const FockSpace space(32);
    Vector vac = Vector::Zero(32);
    vac(0) = 1.0;
    const RealMatrix w = wigner_grid(vac, {0.0}, {0.0});
    EXPECT_NEAR(w(0, 0), 1.0 / M_PI, 1e-12);
}

TEST(Wigner, FockOneAtOrigin) {
    const FockSpace space(32);
    Vector one = Vector::Zero(32);
    one(1) = 1.0;
    const RealMatrix w = wigner_grid(one, {0.0}, {0.0});
    EXPECT_NEAR(w(0, 0), -1.0 / M_PI, 1e-12);
}

TEST(Wigner, VacuumGridNormalization) {
    Vector vac = Vector::Zero(24);
    vac(0) = 1.0;
    std::vector<double> xs(101), ps(101);
    for (int i = 0; i < 101; ++i) xs[std::size_t(i)] = ps[std::size_t(i)] = -5.0 + 0.1 * i;
    const RealMatrix w = wigner_grid(vac, xs, ps);
    const double integral = w.sum() * 0.1 * 0.1;
    EXPECT_NEAR(integral, 1.0, 1e-3);
}

TEST(AutoDim, TailValidatedAtEightDecibels) {
    const double r = SqueezeParams::from_db(8.0).r;
    EXPECT_NEAR(r, 0.921, 1e-3);
    const int dim = auto_dim(r, 3);
    const Vector v = squeezed_fock_state_analytic(dim, 3, SqueezeParams{r});
    EXPECT_LT(tail_population(v), 1e-12);
    EXPECT_LE(dim, 160); // stays in the regime where dense cycles are cheap
}
