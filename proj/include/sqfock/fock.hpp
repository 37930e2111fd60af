// fock.hpp — truncated bosonic Hilbert space: ladder operators, squeezing,
// squeezed Fock states (matrix-exponential and closed-form routes), and the
// displaced-parity Wigner function.

#pragma once

#include "sqfock/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace sqfock {

// ------------------------------- spaces & params -----------------------------

struct FockSpace {
    int dim;                 // truncation dimension N
    int pad;                 // padding dimension used when exponentiating generators
    double tail_tol = 1e-12; // max allowed population in the top 10% of levels

    explicit FockSpace(int dim_, int pad_ = -1, double tail_tol_ = 1e-12)
        : dim(dim_), pad(pad_ < 0 ? 2 * dim_ : pad_), tail_tol(tail_tol_) {
        if (dim < 4) throw std::invalid_argument("FockSpace: dim must be >= 4");
        if (pad < dim) throw std::invalid_argument("FockSpace: pad must be >= dim");
    }
};

struct SqueezeParams {
    double r = 0.0; // dimensionless amplitude; dB value = 20 r / ln 10

    static SqueezeParams from_db(double db) { return {db * std::log(10.0) / 20.0}; }
    double db() const { return 20.0 * r / std::log(10.0); }
};

// population in the top 10% of levels
inline double tail_population(const Vector& state) {
    const Eigen::Index n = state.size();
    const Eigen::Index start = n - std::max<Eigen::Index>(1, n / 10);
    return state.tail(n - start).squaredNorm();
}

// Truncation sizing: mean + spread of the highest squeezed Fock state used,
// plus the geometric tail margin set by the tanh^2(r) decay per level pair.
inline int auto_dim(double r, int n_max, double tail_tol = 1e-12) {
    const double ar = std::abs(r);
    const double mu = n_max * std::cosh(2 * ar) + std::sinh(ar) * std::sinh(ar);
    const double sigma =
        std::sinh(2 * ar) * std::sqrt((double(n_max) * n_max + n_max + 1) / 2.0);
    double margin = 0.0;
    const double th = std::tanh(ar);
    if (th > 1e-12) {
        // populations fall off by tanh^2(r) per level pair; 12 extra e-folds
        // cover the envelope normalization and the top-10% sum
        const double amp_log = -0.5 * std::log(tail_tol) + 12.0;
        margin = amp_log / std::abs(std::log(th));
    }
    // the tail check integrates from 0.9 dim, so the margin must be met there
    const int n = static_cast<int>(std::ceil((mu + 4.0 * sigma + margin + 8.0) / 0.9));
    return std::max(32, (n + 7) / 8 * 8);
}

// --------------------------------- operators ---------------------------------

struct LadderOps {
    Matrix a, a_dag, n;
};

inline Matrix annihilation(int dim) {
    Matrix m = Matrix::Zero(dim, dim);
    for (int k = 1; k < dim; ++k) m(k - 1, k) = std::sqrt(double(k));
    return m;
}

inline LadderOps ladder_ops(const FockSpace& space) {
    LadderOps out;
    out.a = annihilation(space.dim);
    out.a_dag = out.a.adjoint();
    out.n = out.a_dag * out.a;
    return out;
}

inline Matrix number_op(int dim) {
    Matrix m = Matrix::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) m(k, k) = double(k);
    return m;
}

// exp[(r/2)(a^2 - a_dag^2)] in dimension `dim`, computed on the two parity
// blocks separately (the generator couples k <-> k+2 only), which keeps the
// arithmetic real and makes parity conservation exact. This is the raw
// padded-space exponential: orthogonal to machine precision at any r, with
// truncation handled by the callers that cut it down.
inline RealMatrix squeeze_exp_raw(int dim, double r) {
    RealMatrix out = RealMatrix::Zero(dim, dim);
    for (int parity = 0; parity < 2; ++parity) {
        const int m = (dim - parity + 1) / 2; // levels parity, parity+2, ...
        if (m == 0) continue;
        RealMatrix gen = RealMatrix::Zero(m, m);
        for (int i = 0; i + 1 < m; ++i) {
            const int k = parity + 2 * i; // couples k+2 -> k with sqrt((k+1)(k+2))
            const double c = 0.5 * r * std::sqrt(double(k + 1) * double(k + 2));
            gen(i, i + 1) = c;
            gen(i + 1, i) = -c;
        }
        const RealMatrix blk = mat_exp(gen);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) out(parity + 2 * i, parity + 2 * j) = blk(i, j);
    }
    return out;
}

// S(r) = exp[r(a^2 - a_dag^2)/2], exponentiated in the padded dimension and
// truncated to dim. The matrix is real and conserves parity exactly. A
// truncated column keeps unit norm only while its squeezed state fits below
// dim, which no high column does at finite squeezing, so the norm contract is
// enforced on the leading `checked_cols` columns (the ones the code
// constructors consume).
inline RealMatrix squeeze_operator(const FockSpace& space, SqueezeParams p,
                                   int checked_cols = 8) {
    if (!std::isfinite(p.r)) throw std::invalid_argument("squeeze_operator: r not finite");
    const RealMatrix full = squeeze_exp_raw(space.pad, p.r);
    RealMatrix out = full.topLeftCorner(space.dim, space.dim);
    for (int j = 0; j < std::min(space.dim, checked_cols); ++j) {
        const double dev = std::abs(out.col(j).norm() - 1.0);
        if (dev > 1e-8) {
            throw truncation_error("squeeze_operator: column " + std::to_string(j) +
                                   " norm deviates by " + std::to_string(dev) +
                                   "; increase pad or dim");
        }
    }
    return out;
}

// |n, r> = S(r)|n> via the padded matrix exponential (single parity block).
inline Vector squeezed_fock_state(const FockSpace& space, int n, SqueezeParams p) {
    if (n < 0 || n >= space.dim / 2)
        throw std::invalid_argument("squeezed_fock_state: require 0 <= n < dim/2");
    const int parity = n % 2;
    const int m = (space.pad - parity + 1) / 2;
    RealMatrix gen = RealMatrix::Zero(m, m);
    for (int i = 0; i + 1 < m; ++i) {
        const int k = parity + 2 * i;
        const double c = 0.5 * p.r * std::sqrt(double(k + 1) * double(k + 2));
        gen(i, i + 1) = c;
        gen(i + 1, i) = -c;
    }
    const RealMatrix blk = mat_exp(gen);
    Vector out = Vector::Zero(space.dim);
    const int col = (n - parity) / 2;
    for (int i = 0; i < m; ++i) {
        const int k = parity + 2 * i;
        if (k < space.dim) out(k) = blk(i, col);
    }
    const double tail = tail_population(out);
    if (tail > space.tail_tol) {
        throw truncation_error("squeezed_fock_state: tail population " +
                               std::to_string(tail) + " exceeds tolerance");
    }
    out /= out.norm();
    return out;
}

// ------------------------------ analytic overlap -----------------------------

// <n|m,r> evaluated from the closed-form sum over k == n == m (mod 2),
// k <= min(m,n). Factorials are handled in log space. Zero when n+m is odd.
inline double overlap_analytic(int n, int m, SqueezeParams p) {
    if (n < 0 || m < 0) throw std::invalid_argument("overlap_analytic: negative index");
    if ((n + m) % 2 == 1) return 0.0;
    const double r = p.r;
    if (r == 0.0) return n == m ? 1.0 : 0.0;
    const double s = std::sinh(r);
    const double c = std::cosh(r);
    const double log_s2 = std::log(std::abs(s) / 2.0);
    const double log_c = std::log(c);
    double total = 0.0;
    for (int k = n % 2; k <= std::min(m, n); k += 2) {
        const int pw = (n + m - 2 * k) / 2; // power of sinh(r)/2
        double lg = 0.5 * (std::lgamma(m + 1.0) + std::lgamma(n + 1.0)) -
                    0.5 * (n + m + 1.0) * log_c + pw * log_s2 -
                    std::lgamma(k + 1.0) - std::lgamma((m - k) / 2 + 1.0) -
                    std::lgamma((n - k) / 2 + 1.0);
        double sign = ((n - k) / 2) % 2 == 0 ? 1.0 : -1.0;
        if (s < 0.0 && pw % 2 == 1) sign = -sign;
        total += sign * std::exp(lg);
    }
    return total;
}

// |m, r> assembled entrywise from the closed-form overlaps. Exact at any r as
// long as dim captures the tail; this is the route the code constructors use
// at large squeezing, cross-checked against the matrix-exponential route.
inline Vector squeezed_fock_state_analytic(int dim, int m, SqueezeParams p) {
    Vector out = Vector::Zero(dim);
    for (int k = m % 2; k < dim; k += 2) out(k) = overlap_analytic(k, m, p);
    const double nrm = out.norm();
    if (nrm < 0.999) {
        throw truncation_error("squeezed_fock_state_analytic: captured norm " +
                               std::to_string(nrm) + "; dim too small");
    }
    return out / nrm;
}

// ------------------------------- displacement --------------------------------

// Reusable D(beta) applier: one eigendecomposition of the fixed generator
// i(a_dag - a), then each displacement is two dense matvecs plus phases.
class DisplacementKernel {
public:
    explicit DisplacementKernel(int dim) : dim_(dim) {
        Matrix g = Matrix::Zero(dim, dim);
        for (int k = 1; k < dim; ++k) {
            const double c = std::sqrt(double(k));
            g(k, k - 1) = Complex(0, c);  // i * a_dag
            g(k - 1, k) = Complex(0, -c); // -i * a
        }
        const Eigensystem es = eig_hermitian(g, 1e-9);
        lambda_ = es.values;
        w_ = es.vectors;
    }

    int dim() const { return dim_; }

    // D(beta) v with D(beta) = exp(beta a_dag - conj(beta) a)
    Vector apply(Complex beta, const Vector& v) const {
        const double mag = std::abs(beta);
        if (mag == 0.0) return v;
        const double theta = std::arg(beta);
        Vector x = v;
        if (theta != 0.0)
            for (int k = 0; k < dim_; ++k) x(k) *= std::exp(Complex(0, -theta * k));
        x = w_.adjoint() * x;
        for (int k = 0; k < dim_; ++k) x(k) *= std::exp(Complex(0, -mag * lambda_(k)));
        x = w_ * x;
        if (theta != 0.0)
            for (int k = 0; k < dim_; ++k) x(k) *= std::exp(Complex(0, theta * k));
        return x;
    }

private:
    int dim_;
    Eigen::VectorXd lambda_;
    Matrix w_;
};

// --------------------------------- Wigner ------------------------------------

// W(x,p) = (1/pi) <psi| D(beta) Pi D(-beta) |psi>, beta = (x + i p)/sqrt(2),
// with Pi the photon-number parity operator. Row i, column j is W(xs[i], ps[j]).
inline RealMatrix wigner_grid(const Vector& state, const std::vector<double>& xs,
                              const std::vector<double>& ps) {
    for (double v : xs)
        if (!std::isfinite(v)) throw std::invalid_argument("wigner_grid: non-finite x");
    for (double v : ps)
        if (!std::isfinite(v)) throw std::invalid_argument("wigner_grid: non-finite p");
    const int dim = static_cast<int>(state.size());
    const DisplacementKernel kernel(dim);
    RealMatrix w(xs.size(), ps.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t j = 0; j < ps.size(); ++j) {
            const Complex beta(xs[i] / std::sqrt(2.0), ps[j] / std::sqrt(2.0));
            const Vector phi = kernel.apply(-beta, state); // D(-beta)|psi>
            double val = 0.0;
            for (int k = 0; k < dim; ++k) {
                const double pop = std::norm(phi(k));
                val += (k % 2 == 0) ? pop : -pop;
            }
            w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = val / M_PI;
        }
    }
    return w;
}

} // namespace sqfock
