// numerics.hpp — dense complex linear algebra kernel: matrix exponential,
// Hermitian eigendecomposition, symmetric (Loewdin) orthonormalization, and
// Lindblad propagation. Everything here is pure; matrices are safe to share
// read-only across threads.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace sqfock {

using Complex = std::complex<double>;
using Matrix  = Eigen::MatrixXcd;
using Vector  = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;

// Thrown when a truncated Fock space is too small for the requested state.
struct truncation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when a vector set is too close to linearly dependent.
struct degeneracy_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when a numerical contract (Hermiticity, trace, unitarity) is violated.
struct contract_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

template <typename Mat>
inline void require_square(const Mat& a, const char* who) {
    if (a.rows() != a.cols()) {
        throw std::invalid_argument(std::string(who) + ": matrix must be square, got " +
                                    std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
    }
}

template <typename Mat>
inline void require_finite(const Mat& a, const char* who) {
    if (!a.allFinite()) {
        throw std::invalid_argument(std::string(who) + ": matrix has non-finite entries");
    }
}

} // namespace detail

// --------------------------- matrix exponential ------------------------------

namespace detail {

// Pade approximant of order m evaluated at A (Higham's algorithm).
// Works for real and complex square matrices.
template <typename Mat>
Mat pade_exp(const Mat& a) {
    using Scalar = typename Mat::Scalar;
    const Eigen::Index n = a.rows();
    const Mat id = Mat::Identity(n, n);

    const double norm = a.cwiseAbs().colwise().sum().maxCoeff(); // 1-norm

    // order thresholds for double precision backward error
    constexpr double theta3  = 1.495585217958292e-2;
    constexpr double theta5  = 2.539398330063230e-1;
    constexpr double theta7  = 9.504178996162932e-1;
    constexpr double theta9  = 2.097847961257068e0;
    constexpr double theta13 = 5.371920351148152e0;

    auto pade_uv = [&](const std::vector<double>& b, const Mat& m) {
        // split even/odd powers: p = U + V, q = -U + V with U odd, V even
        const Mat m2 = m * m;
        std::vector<Mat> pows; // m^0, m^2, m^4, ...
        pows.push_back(id);
        pows.push_back(m2);
        for (std::size_t k = 2; 2 * k < b.size(); ++k) pows.push_back(pows.back() * m2);
        Mat u = Mat::Zero(n, n), v = Mat::Zero(n, n);
        for (std::size_t k = 0; 2 * k + 1 < b.size(); ++k) u += Scalar(b[2 * k + 1]) * pows[k];
        u = m * u;
        for (std::size_t k = 0; 2 * k < b.size(); ++k) v += Scalar(b[2 * k]) * pows[k];
        Mat num = v + u, den = v - u;
        return Mat(den.partialPivLu().solve(num));
    };

    if (norm <= theta3)
        return pade_uv({120, 60, 12, 1}, a);
    if (norm <= theta5)
        return pade_uv({30240, 15120, 3360, 420, 30, 1}, a);
    if (norm <= theta7)
        return pade_uv({17297280, 8648640, 1995840, 277200, 25200, 1512, 56, 1}, a);
    if (norm <= theta9)
        return pade_uv({17643225600, 8821612800, 2075673600, 302702400, 30270240,
                        2162160, 110880, 3960, 90, 1}, a);

    // order 13 with scaling and squaring
    int s = 0;
    double scaled = norm;
    while (scaled > theta13) { scaled /= 2.0; ++s; }
    const Mat m = a / std::pow(2.0, s);
    const std::vector<double> b13 = {
        64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
        1187353796428800.0,  129060195264000.0,   10559470521600.0,
        670442572800.0,      33522128640.0,       1323241920.0,
        40840800.0,          960960.0,            16380.0, 182.0, 1.0};
    // p13 needs powers up to m^13; use m2, m4, m6 blocks
    const Mat m2 = m * m;
    const Mat m4 = m2 * m2;
    const Mat m6 = m4 * m2;
    Mat u = m * (m6 * (Scalar(b13[13]) * m6 + Scalar(b13[11]) * m4 + Scalar(b13[9]) * m2) +
                 Scalar(b13[7]) * m6 + Scalar(b13[5]) * m4 + Scalar(b13[3]) * m2 +
                 Scalar(b13[1]) * id);
    Mat v = m6 * (Scalar(b13[12]) * m6 + Scalar(b13[10]) * m4 + Scalar(b13[8]) * m2) +
            Scalar(b13[6]) * m6 + Scalar(b13[4]) * m4 + Scalar(b13[2]) * m2 +
            Scalar(b13[0]) * id;
    Mat num = v + u, den = v - u;
    Mat r = den.partialPivLu().solve(num);
    for (int k = 0; k < s; ++k) r = r * r;
    return r;
}

} // namespace detail

// exp(a) by Pade approximant with scaling and squaring. Accepts real or
// complex matrices (the real path, used for squeezing/displacement
// generators, keeps the arithmetic 4x cheaper).
template <typename Derived>
auto mat_exp(const Eigen::MatrixBase<Derived>& a)
    -> Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> {
    const Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> m = a;
    detail::require_square(m, "mat_exp");
    detail::require_finite(m, "mat_exp");
    return detail::pade_exp(m);
}

// --------------------------- Hermitian eigensolver ---------------------------

struct Eigensystem {
    Eigen::VectorXd values; // ascending
    Matrix vectors;         // columns
};

inline double hermiticity_defect(const Matrix& h) {
    const double nrm = h.norm();
    if (nrm == 0.0) return 0.0;
    return (h - h.adjoint()).norm() / nrm;
}

inline Eigensystem eig_hermitian(const Matrix& h, double tol = 1e-10) {
    detail::require_square(h, "eig_hermitian");
    detail::require_finite(h, "eig_hermitian");
    if (hermiticity_defect(h) > tol) {
        throw contract_error("eig_hermitian: matrix is not Hermitian within " +
                             std::to_string(tol));
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eig_hermitian: eigensolver failed");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

// ------------------------ Loewdin orthonormalization -------------------------

// Symmetric orthonormalization: multiply the set by Gram^(-1/2). Minimizes the
// total squared displacement from the input among all orthonormalizations.
inline std::vector<Vector> loewdin_orthonormalize(const std::vector<Vector>& vectors,
                                                  double min_gram_eig = 1e-10) {
    if (vectors.empty()) return {};
    const Eigen::Index n = vectors.front().size();
    const Eigen::Index k = static_cast<Eigen::Index>(vectors.size());
    Matrix v(n, k);
    for (Eigen::Index j = 0; j < k; ++j) {
        if (vectors[j].size() != n)
            throw std::invalid_argument("loewdin_orthonormalize: inconsistent dimensions");
        v.col(j) = vectors[j];
    }
    const Matrix gram = v.adjoint() * v;
    Eigen::SelfAdjointEigenSolver<Matrix> es(gram);
    const Eigen::VectorXd w = es.eigenvalues();
    if (w.minCoeff() <= min_gram_eig) {
        throw degeneracy_error("loewdin_orthonormalize: Gram matrix near-degenerate, "
                               "smallest eigenvalue " + std::to_string(w.minCoeff()));
    }
    const Matrix gram_inv_sqrt =
        es.eigenvectors() * w.cwiseSqrt().cwiseInverse().asDiagonal() *
        es.eigenvectors().adjoint();
    const Matrix out = v * gram_inv_sqrt;
    std::vector<Vector> result(vectors.size());
    for (Eigen::Index j = 0; j < k; ++j) result[static_cast<std::size_t>(j)] = out.col(j);
    return result;
}

// ----------------------------- Lindblad propagation --------------------------

// Master equation convention (rates in the same units as 1/t):
//   drho/dt = sum_k (rate_k/2) D[x_k] rho,   D[x] rho = 2 x rho x^+ - x^+x rho - rho x^+x
// plus the coherent part -i[H, rho].
struct JumpOp {
    Matrix op;
    double rate = 0.0;
};

struct LindbladSpec {
    Matrix hamiltonian;          // rad/time; may be 0x0 for "no Hamiltonian"
    std::vector<JumpOp> jump_ops;

    Eigen::Index dim() const {
        if (hamiltonian.rows() > 0) return hamiltonian.rows();
        if (!jump_ops.empty()) return jump_ops.front().op.rows();
        return 0;
    }
};

enum class PropagationMode { Auto, VectorizedExp, RK4 };

namespace detail {

inline void validate_lindblad(const LindbladSpec& spec, const Matrix& rho0) {
    const Eigen::Index d = rho0.rows();
    require_square(rho0, "lindblad_propagate");
    if (spec.hamiltonian.rows() > 0) {
        require_square(spec.hamiltonian, "lindblad_propagate");
        if (spec.hamiltonian.rows() != d)
            throw std::invalid_argument("lindblad_propagate: Hamiltonian dimension mismatch");
        if (hermiticity_defect(spec.hamiltonian) > 1e-12)
            throw contract_error("lindblad_propagate: Hamiltonian not Hermitian within 1e-12");
    }
    for (const auto& j : spec.jump_ops) {
        if (j.op.rows() != d || j.op.cols() != d)
            throw std::invalid_argument("lindblad_propagate: jump operator dimension mismatch");
        if (j.rate < 0.0)
            throw std::invalid_argument("lindblad_propagate: negative rate");
    }
    if (std::abs(rho0.trace().real() - 1.0) > 1e-10 || std::abs(rho0.trace().imag()) > 1e-10)
        throw contract_error("lindblad_propagate: rho0 trace must be 1 within 1e-10");
    if (hermiticity_defect(rho0) > 1e-10)
        throw contract_error("lindblad_propagate: rho0 not Hermitian within 1e-10");
}

inline Matrix lindblad_rhs(const LindbladSpec& spec, const Matrix& rho) {
    const Eigen::Index d = rho.rows();
    Matrix out = Matrix::Zero(d, d);
    if (spec.hamiltonian.rows() > 0) {
        out += Complex(0, -1) * (spec.hamiltonian * rho - rho * spec.hamiltonian);
    }
    for (const auto& j : spec.jump_ops) {
        if (j.rate == 0.0) continue;
        const Matrix xr = j.op * rho;
        const Matrix xx = j.op.adjoint() * j.op;
        out += (j.rate / 2.0) * (2.0 * (xr * j.op.adjoint()) - xx * rho - rho * xx);
    }
    return out;
}

// column-stacking vectorized Liouvillian: vec(A rho B) = (B^T kron A) vec(rho)
inline Matrix liouvillian(const LindbladSpec& spec) {
    const Eigen::Index d = spec.dim();
    const Matrix id = Matrix::Identity(d, d);
    Matrix lv = Matrix::Zero(d * d, d * d);
    auto kron = [d](const Matrix& a, const Matrix& b) {
        Matrix out(d * d, d * d);
        for (Eigen::Index i = 0; i < d; ++i)
            for (Eigen::Index j = 0; j < d; ++j)
                out.block(i * d, j * d, d, d) = a(i, j) * b;
        return out;
    };
    if (spec.hamiltonian.rows() > 0) {
        lv += Complex(0, -1) * (kron(id, spec.hamiltonian) -
                                kron(spec.hamiltonian.transpose(), id));
    }
    for (const auto& j : spec.jump_ops) {
        if (j.rate == 0.0) continue;
        const Matrix xx = j.op.adjoint() * j.op;
        lv += (j.rate / 2.0) * (2.0 * kron(j.op.conjugate(), j.op) -
                                kron(id, xx) - kron(xx.transpose(), id));
    }
    return lv;
}

inline Matrix propagate_vectorized(const LindbladSpec& spec, const Matrix& rho0, double t) {
    const Eigen::Index d = rho0.rows();
    const Matrix prop = mat_exp(liouvillian(spec) * t);
    Vector v(d * d);
    for (Eigen::Index j = 0; j < d; ++j) v.segment(j * d, d) = rho0.col(j);
    const Vector w = prop * v;
    Matrix out(d, d);
    for (Eigen::Index j = 0; j < d; ++j) out.col(j) = w.segment(j * d, d);
    return out;
}

// classic RK4 with step-doubling error control
inline Matrix propagate_rk4(const LindbladSpec& spec, const Matrix& rho0, double t,
                            double tol = 1e-9) {
    auto step = [&spec](const Matrix& rho, double h) {
        const Matrix k1 = lindblad_rhs(spec, rho);
        const Matrix k2 = lindblad_rhs(spec, rho + 0.5 * h * k1);
        const Matrix k3 = lindblad_rhs(spec, rho + 0.5 * h * k2);
        const Matrix k4 = lindblad_rhs(spec, rho + h * k3);
        return Matrix(rho + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
    };
    Matrix rho = rho0;
    double remaining = t;
    // initial step from the RHS magnitude
    double h = t;
    {
        const double r0 = lindblad_rhs(spec, rho0).norm();
        if (r0 > 0) h = std::min(t, 0.1 / r0);
    }
    while (remaining > 0) {
        h = std::min(h, remaining);
        const Matrix full = step(rho, h);
        const Matrix half = step(step(rho, 0.5 * h), 0.5 * h);
        const double err = (full - half).norm() / 15.0;
        const double allowed = tol * std::max(1.0, h / t);
        if (err > allowed && h > 1e-14 * t) {
            h *= 0.5;
            continue;
        }
        rho = half + (half - full) / 15.0; // local extrapolation
        remaining -= h;
        if (err < allowed / 32.0) h *= 2.0;
    }
    return (rho + rho.adjoint()) / 2.0;
}

} // namespace detail

inline Matrix lindblad_propagate(const LindbladSpec& spec, const Matrix& rho0, double t,
                                 PropagationMode mode = PropagationMode::Auto) {
    detail::validate_lindblad(spec, rho0);
    if (t == 0.0) return rho0;
    if (mode == PropagationMode::Auto)
        mode = rho0.rows() <= 64 ? PropagationMode::VectorizedExp : PropagationMode::RK4;
    Matrix out = (mode == PropagationMode::VectorizedExp)
                     ? detail::propagate_vectorized(spec, rho0, t)
                     : detail::propagate_rk4(spec, rho0, t);
    const double drift = std::abs(out.trace().real() - 1.0) + std::abs(out.trace().imag());
    if (drift > 1e-8) {
        throw contract_error("lindblad_propagate: trace drift " + std::to_string(drift));
    }
    return out;
}

// ---------------------- loss + dephasing exact propagator --------------------

// For H = 0 with jumps {a at rate kappa, n at rate kappa_phi} the Liouvillian
// preserves each diagonal band rho_{m+d, m}:
//   d/dt rho_{m+d,m} = kappa sqrt((m+1)(m+d+1)) rho_{m+d+1,m+1}
//                      - [kappa (2m+d)/2 + kappa_phi d^2/2] rho_{m+d,m}
// so the full propagator factors into per-band real matrix exponentials. This
// is exact, reusable across many states, and fast at the dimensions the QEC
// cycles need; it is cross-checked against lindblad_propagate in the tests.
class LossDephasingPropagator {
public:
    LossDephasingPropagator(int dim, double kappa, double kappa_phi, double t)
        : dim_(dim) {
        if (dim < 1) throw std::invalid_argument("LossDephasingPropagator: dim < 1");
        if (kappa < 0 || kappa_phi < 0)
            throw std::invalid_argument("LossDephasingPropagator: negative rate");
        band_.reserve(static_cast<std::size_t>(dim));
        for (int d = 0; d < dim; ++d) {
            const int m = dim - d;
            RealMatrix gen = RealMatrix::Zero(m, m);
            for (int i = 0; i < m; ++i) {
                gen(i, i) = -(kappa * (2.0 * i + d) / 2.0 + kappa_phi * d * double(d) / 2.0);
                if (i + 1 < m)
                    gen(i, i + 1) = kappa * std::sqrt(double(i + 1) * double(i + 1 + d));
            }
            band_.push_back(mat_exp(RealMatrix(gen * t)));
        }
    }

    int dim() const { return dim_; }

    // Applies the channel to an arbitrary (not necessarily Hermitian) matrix.
    Matrix apply(const Matrix& rho) const {
        if (rho.rows() != dim_ || rho.cols() != dim_)
            throw std::invalid_argument("LossDephasingPropagator: dimension mismatch");
        Matrix out = Matrix::Zero(dim_, dim_);
        for (int d = 0; d < dim_; ++d) {
            const int m = dim_ - d;
            Vector upper(m), lower(m);
            for (int i = 0; i < m; ++i) {
                upper(i) = rho(i + d, i);
                if (d > 0) lower(i) = rho(i, i + d);
            }
            const Vector ru = band_[static_cast<std::size_t>(d)] * upper;
            for (int i = 0; i < m; ++i) out(i + d, i) = ru(i);
            if (d > 0) {
                const Vector rl = band_[static_cast<std::size_t>(d)] * lower;
                for (int i = 0; i < m; ++i) out(i, i + d) = rl(i);
            }
        }
        return out;
    }

private:
    int dim_;
    std::vector<RealMatrix> band_;
};

} // namespace sqfock
