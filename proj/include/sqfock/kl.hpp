// kl.hpp — Knill-Laflamme tensor, the K_er deviation metric, the large-r
// asymptotic series for the surviving off-diagonal elements, and parameter
// scans over (n, r) grids.

#pragma once

#include "sqfock/codes.hpp"
#include "sqfock/threads.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sqfock {

// ------------------------------- error sets ----------------------------------

struct ErrorSet {
    std::vector<std::string> labels;
    std::vector<Matrix> operators;

    void validate() const {
        if (operators.empty()) throw std::invalid_argument("ErrorSet: empty");
        if (labels.size() != operators.size())
            throw std::invalid_argument("ErrorSet: label/operator count mismatch");
        const Eigen::Index d = operators.front().rows();
        if (!operators.front().isApprox(Matrix::Identity(d, d), 1e-12))
            throw std::invalid_argument("ErrorSet: first element must be the identity");
        for (const auto& op : operators)
            if (op.rows() != d || op.cols() != d)
                throw std::invalid_argument("ErrorSet: inconsistent dimensions");
    }
};

// Short-time weights attached to the loss/dephasing error operators. The bare
// set {I, a, n, n^2} makes K_er at 8 dB two-photon dominated and of order
// 1e-1; the weights below restore the short-time Kraus scaling that the
// reported "order 1e-6 at 8 dB" and the e^{-14r}/e^{-10r} slopes correspond
// to. All weights are r-independent, so they shift K_er curves without
// touching their exponents.
struct ErrorWeights {
    double kappa_tau = 0.01;         // kappa * tau
    double loss_dephasing_ratio = 8.5; // kappa / kappa_phi

    double kappa_phi_tau() const { return kappa_tau / loss_dephasing_ratio; }
};

// E = {I, sqrt(kt) a, sqrt(kpt) n, (kpt/2) n^2}
inline ErrorSet canonical_error_set(const FockSpace& space, const ErrorWeights& w = {}) {
    const double kt = w.kappa_tau;
    const double kpt = w.kappa_phi_tau();
    ErrorSet set;
    set.labels = {"I", "a", "n", "n2"};
    const Matrix a = annihilation(space.dim);
    const Matrix n = number_op(space.dim);
    set.operators = {Matrix::Identity(space.dim, space.dim), std::sqrt(kt) * a,
                     std::sqrt(kpt) * n, (kpt / 2.0) * (n * n)};
    return set;
}

// ----------------------------------- tensor ----------------------------------

struct KLTensor {
    Matrix m00, m11, m01; // indexed (i, j) over the error set
};

inline KLTensor kl_tensor(const CodePair& pair, const ErrorSet& errors) {
    errors.validate();
    const Eigen::Index d = errors.operators.front().rows();
    if (pair.zero.size() != d)
        throw std::invalid_argument("kl_tensor: dimension mismatch");
    const std::size_t k = errors.operators.size();
    std::vector<Vector> im0(k), im1(k);
    for (std::size_t i = 0; i < k; ++i) {
        im0[i] = errors.operators[i] * pair.zero;
        im1[i] = errors.operators[i] * pair.one;
    }
    KLTensor t;
    t.m00.resize(k, k);
    t.m11.resize(k, k);
    t.m01.resize(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            t.m00(i, j) = im0[i].dot(im0[j]); // Eigen dot conjugates the left factor
            t.m11(i, j) = im1[i].dot(im1[j]);
            t.m01(i, j) = im0[i].dot(im1[j]);
        }
    }
    return t;
}

struct KLReport {
    double k_er = 0.0;
    double diag_part = 0.0;
    double offdiag_part = 0.0;
    std::map<std::pair<int, int>, double> per_term;
};

inline KLReport k_er(const KLTensor& t) {
    KLReport rep;
    for (Eigen::Index i = 0; i < t.m00.rows(); ++i) {
        for (Eigen::Index j = 0; j < t.m00.cols(); ++j) {
            const double d = std::norm(t.m00(i, j) - t.m11(i, j));
            const double o = std::norm(t.m01(i, j));
            rep.diag_part += d;
            rep.offdiag_part += o;
            rep.per_term[{int(i), int(j)}] = d + o;
        }
    }
    rep.k_er = rep.diag_part + rep.offdiag_part;
    return rep;
}

// --------------------------- asymptotic series (n = 1) -----------------------

// Two-term large-r expansion of <1_L| n^m |0_L>; the branch picks the sign of
// every +/- (upper for Plus, lower for Minus).
inline double offdiag_series(int m, double r, Branch branch) {
    if (m < 1 || m > 4) throw std::invalid_argument("offdiag_series: m must be 1..4");
    const double s = branch == Branch::Plus ? 1.0 : -1.0;
    const double e7 = std::exp(-7.0 * r);
    const double e9 = std::exp(-9.0 * r);
    const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0), s6 = std::sqrt(6.0);
    switch (m) {
        case 1: return s * (32.0 * s3 / 5.0) * e7 - (64.0 * s2 / 25.0) * e9;
        case 2:
            return -(16.0 * s2 / 5.0) * (5.0 + s * s6) * e7 +
                   (32.0 * s2 / 25.0) * (2.0 + s * 35.0 * s6) * e9;
        case 3:
            return (24.0 * s2 - s * 184.0 * s3 / 5.0) * e7 -
                   (16.0 * s2 / 25.0) * (502.0 + s * 105.0 * s6) * e9;
        default:
            return 8.0 * s2 * (31.0 + s * 5.0 * s6) * e7 +
                   (640.0 * s2 - s * 6944.0 * s3 / 5.0) * e9;
    }
}

// Exact <1_L| n^m |0_L> from the built codewords (real states, real value).
inline double offdiag_numeric(const CodePair& pair, int m) {
    if (m < 0) throw std::invalid_argument("offdiag_numeric: m < 0");
    const Eigen::Index d = pair.zero.size();
    Vector v = pair.zero;
    for (int q = 0; q < m; ++q)
        for (Eigen::Index kk = 0; kk < d; ++kk) v(kk) *= double(kk);
    return (pair.one.adjoint() * v)(0).real();
}

// ----------------------------------- scans -----------------------------------

struct ScanRow {
    int n = 0;
    double r = 0.0;
    CodeFamily family = CodeFamily::SqFockSuperposition;
    Branch branch = Branch::Plus;
    int dim = 0;
    double k_er = 0.0;
    double diag_part = 0.0;
    double offdiag_part = 0.0;
    std::string note; // truncation warnings land here instead of aborting
};

namespace detail {

// K_er via banded operator application; avoids dense n^2 matrices so the
// scans stay cheap at the large dimensions big r demands. Matches
// kl_tensor + k_er on the canonical set exactly (pinned by a test).
inline KLReport ker_fast(const Vector& zero, const Vector& one, const ErrorWeights& w) {
    const Eigen::Index d = zero.size();
    const double kt = w.kappa_tau, kpt = w.kappa_phi_tau();
    auto apply_a = [d](const Vector& v) {
        Vector out = Vector::Zero(d);
        for (Eigen::Index k = 1; k < d; ++k) out(k - 1) = std::sqrt(double(k)) * v(k);
        return out;
    };
    auto apply_diag_pow = [d](const Vector& v, int p) {
        Vector out = v;
        for (Eigen::Index k = 0; k < d; ++k)
            out(k) *= std::pow(double(k), p);
        return out;
    };
    std::vector<Vector> im0(4), im1(4);
    im0[0] = zero; im1[0] = one;
    im0[1] = std::sqrt(kt) * apply_a(zero);
    im1[1] = std::sqrt(kt) * apply_a(one);
    im0[2] = std::sqrt(kpt) * apply_diag_pow(zero, 1);
    im1[2] = std::sqrt(kpt) * apply_diag_pow(one, 1);
    im0[3] = (kpt / 2.0) * apply_diag_pow(zero, 2);
    im1[3] = (kpt / 2.0) * apply_diag_pow(one, 2);
    KLReport rep;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const Complex a00 = im0[std::size_t(i)].dot(im0[std::size_t(j)]);
            const Complex a11 = im1[std::size_t(i)].dot(im1[std::size_t(j)]);
            const Complex a01 = im0[std::size_t(i)].dot(im1[std::size_t(j)]);
            const double dterm = std::norm(a00 - a11);
            const double oterm = std::norm(a01);
            rep.diag_part += dterm;
            rep.offdiag_part += oterm;
            rep.per_term[{i, j}] = dterm + oterm;
        }
    }
    rep.k_er = rep.diag_part + rep.offdiag_part;
    return rep;
}

} // namespace detail

// One row per (n, r); truncation sized per point so that the n^4-weighted
// matrix elements keep full precision out to the largest requested r.
inline std::vector<ScanRow> ker_scan(const std::vector<int>& ns, const std::vector<double>& rs,
                                     CodeFamily family, const ErrorWeights& w = {},
                                     Branch branch = Branch::Plus, unsigned threads = 0) {
    if (family == CodeFamily::SqueezedCat)
        throw std::invalid_argument("ker_scan: use cat_ker_scan for the cat family");
    for (std::size_t i = 1; i < rs.size(); ++i)
        if (rs[i] < rs[i - 1]) throw std::invalid_argument("ker_scan: rs must ascend");
    std::vector<ScanRow> rows(ns.size() * rs.size());
    parallel_for(rows.size(), [&](std::size_t idx) {
        const int n = ns[idx / rs.size()];
        const double r = rs[idx % rs.size()];
        ScanRow row;
        row.n = n;
        row.r = r;
        row.family = family;
        row.branch = branch;
        try {
            const int top = family == CodeFamily::SqFockSuperposition ? n + 2 : n;
            const int dim = auto_dim(r, top, 1e-26);
            const FockSpace space(dim, dim, 1e-20);
            const CodePair pair = family == CodeFamily::SqFockSuperposition
                                      ? build_code(space, n, SqueezeParams{r}, branch)
                                      : build_squeezed_fock_code(space, n, SqueezeParams{r});
            const KLReport rep = detail::ker_fast(pair.zero, pair.one, w);
            row.dim = dim;
            row.k_er = rep.k_er;
            row.diag_part = rep.diag_part;
            row.offdiag_part = rep.offdiag_part;
        } catch (const truncation_error& e) {
            row.note = e.what();
        }
        rows[idx] = row;
    }, threads);
    return rows;
}

struct CatScanRow {
    double beta = 0.0;
    double r = 0.0;
    int dim = 0;
    double k_er_numeric = 0.0;   // from the KL tensor
    double k_er_assembled = 0.0; // diagonal part + closed-form delta contributions
    std::string note;
};

// K_er for the squeezed cat over a beta grid, with the closed-form deltas
// assembled into the off-diagonal part as the cross-check.
inline std::vector<CatScanRow> cat_ker_scan(const std::vector<double>& betas,
                                            const std::vector<double>& rs,
                                            const ErrorWeights& w = {},
                                            unsigned threads = 0) {
    std::vector<CatScanRow> rows(betas.size() * rs.size());
    parallel_for(rows.size(), [&](std::size_t idx) {
        const double beta = betas[idx / rs.size()];
        const double r = rs[idx % rs.size()];
        CatScanRow row;
        row.beta = beta;
        row.r = r;
        try {
            const int dim = auto_dim(r, 1, 1e-26) + 8 * int(std::ceil(beta * std::exp(r)));
            const FockSpace space(dim, dim, 1e-18);
            const CodePair pair = build_squeezed_cat_code(space, CatParams{beta, r});
            const KLReport rep = detail::ker_fast(pair.zero, pair.one, w);
            const CatDeltas d = cat_delta_analytic(CatParams{beta, r});
            const double kt = w.kappa_tau, kpt = w.kappa_phi_tau();
            const double wa = std::sqrt(kt), wn = std::sqrt(kpt), wn2 = kpt / 2.0;
            const double off =
                wa * wa * (d.a_dag * d.a_dag + d.a * d.a) +
                wa * wa * wn * wn * (d.n_a * d.n_a + d.a_dag_n * d.a_dag_n) +
                wa * wa * wn2 * wn2 * (d.n2_a * d.n2_a + d.a_dag_n2 * d.a_dag_n2);
            row.dim = dim;
            row.k_er_numeric = rep.k_er;
            row.k_er_assembled = rep.diag_part + off;
        } catch (const std::runtime_error& e) {
            row.note = e.what();
        }
        rows[idx] = row;
    }, threads);
    return rows;
}

} // namespace sqfock
