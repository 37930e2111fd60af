// optim.hpp — variational synthesis of the logical Pauli-Z generator with an
// Adam optimizer, and GRAPE pulse optimization for the dispersive
// cavity-qutrit model.

#pragma once

#include "sqfock/codes.hpp"
#include "sqfock/threads.hpp"

#include <cstdint>
#include <random>

namespace sqfock {

// ------------------------------ seeded gaussians ------------------------------

namespace detail {

// Box-Muller over explicit 53-bit uniforms; avoids the implementation-defined
// std::normal_distribution so runs are reproducible across toolchains.
class GaussianSource {
public:
    explicit GaussianSource(std::uint64_t seed) : rng_(seed) {}

    double operator()() {
        if (have_) {
            have_ = false;
            return spare_;
        }
        double u1 = 0.0;
        while (u1 == 0.0) u1 = uniform();
        const double u2 = uniform();
        const double mag = std::sqrt(-2.0 * std::log(u1));
        spare_ = mag * std::sin(2.0 * M_PI * u2);
        have_ = true;
        return mag * std::cos(2.0 * M_PI * u2);
    }

private:
    double uniform() { return double(rng_() >> 11) * 0x1.0p-53; }
    std::mt19937_64 rng_;
    double spare_ = 0.0;
    bool have_ = false;
};

} // namespace detail

// ------------------------------ Z_L ansatz -----------------------------------

enum class AnsatzKind { NonHermitian5, HermitianSym };

struct VariationalAnsatz {
    AnsatzKind kind = AnsatzKind::NonHermitian5;
    int grid_n = 6; // HermitianSym: k,l run over 0..grid_n-1
    std::vector<std::string> basis_labels;
    std::vector<Complex> coeffs;
    int norm_dim = 0; // truncation at which the 2-norm normalizers were computed
};

struct AdamConfig {
    double learning_rate = 5e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    int max_iters = 20000;
    double target_loss = 1e-4;

    void validate() const {
        if (!(beta1 > 0 && beta1 < 1 && beta2 > 0 && beta2 < 1))
            throw std::invalid_argument("AdamConfig: betas must lie in (0,1)");
        if (max_iters < 1) throw std::invalid_argument("AdamConfig: max_iters < 1");
    }
};

namespace detail {

inline double two_norm(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m.adjoint() * m);
    return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

inline Matrix monomial(int dim, int dag_pow, int low_pow) {
    const Matrix a = annihilation(dim);
    Matrix m = Matrix::Identity(dim, dim);
    for (int k = 0; k < low_pow; ++k) m = a * m;
    for (int k = 0; k < dag_pow; ++k) m = a.adjoint() * m;
    return m;
}

struct ZlBasis {
    std::vector<Matrix> ops;        // normalized monomials
    std::vector<std::string> labels;
    AnsatzKind kind;
    int grid_n;
    int dim;
};

inline ZlBasis zl_basis(AnsatzKind kind, int grid_n, int dim) {
    ZlBasis basis;
    basis.kind = kind;
    basis.grid_n = grid_n;
    basis.dim = dim;
    if (kind == AnsatzKind::NonHermitian5) {
        const std::vector<std::pair<int, int>> idx = {{0, 0}, {2, 0}, {0, 2}, {1, 1}, {2, 2}};
        const std::vector<std::string> names = {"I", "ad2", "a2", "adn", "ad2a2"};
        for (std::size_t k = 0; k < idx.size(); ++k) {
            Matrix m = monomial(dim, idx[k].first, idx[k].second);
            basis.ops.push_back(m / two_norm(m));
            basis.labels.push_back(names[k]);
        }
    } else {
        for (int k = 0; k < grid_n; ++k) {
            for (int l = 0; l < grid_n; ++l) {
                Matrix m = monomial(dim, k, l);
                basis.ops.push_back(m / two_norm(m));
                basis.labels.push_back("ad^" + std::to_string(k) + " a^" + std::to_string(l));
            }
        }
    }
    return basis;
}

inline Matrix assemble_hz(const ZlBasis& basis, const std::vector<Complex>& coeffs) {
    if (coeffs.size() != basis.ops.size())
        throw std::invalid_argument("build_hz: coefficient count mismatch");
    Matrix h = Matrix::Zero(basis.dim, basis.dim);
    if (basis.kind == AnsatzKind::NonHermitian5) {
        for (std::size_t k = 0; k < coeffs.size(); ++k) h += coeffs[k] * basis.ops[k];
    } else {
        // alpha_kl M_kl + conj(alpha_kl) M_kl^+ ; the adjoint partner shares the
        // normalizer since ||M||_2 = ||M^+||_2
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
            h += coeffs[k] * basis.ops[k];
            h += std::conj(coeffs[k]) * basis.ops[k].adjoint();
        }
    }
    return h;
}

} // namespace detail

// H_z from the ansatz coefficients; the HermitianSym form is Hermitian by
// construction.
inline Matrix build_hz(const VariationalAnsatz& ansatz, const FockSpace& space) {
    if (ansatz.norm_dim != space.dim)
        throw std::invalid_argument("build_hz: norm_dim does not match the space (the "
                                    "2-norm normalizers are dimension-dependent)");
    const detail::ZlBasis basis =
        detail::zl_basis(ansatz.kind, ansatz.grid_n, space.dim);
    return detail::assemble_hz(basis, ansatz.coeffs);
}

// E = sum_u |<u|Z|u> - (-1)^u|^2 + |<u|Z^+|u> - (-1)^u|^2 + |<u|Z^+Z|u> - 1|^2
inline double zl_loss(const CodePair& pair, const Matrix& z) {
    double loss = 0.0;
    const std::array<const Vector*, 2> basis = {&pair.zero, &pair.one};
    for (int u = 0; u < 2; ++u) {
        const double target = u == 0 ? 1.0 : -1.0;
        const Vector& psi = *basis[std::size_t(u)];
        const Vector w = z * psi;
        const Complex t = psi.dot(w);
        const Complex tdag = psi.dot(z.adjoint() * psi);
        loss += std::norm(t - target) + std::norm(tdag - target) +
                std::pow(w.squaredNorm() - 1.0, 2);
    }
    return loss;
}

struct ZlOptimResult {
    VariationalAnsatz ansatz;
    std::vector<double> loss_history;
    bool converged = false;
};

// Adam with central finite differences on the real/imaginary coefficient
// parts. Deterministic for a fixed seed; finite-difference evaluations within
// one iteration run in parallel.
inline ZlOptimResult optimize_zl(const CodePair& pair, AnsatzKind kind, const AdamConfig& adam,
                                 std::uint64_t seed, int grid_n = 6, unsigned threads = 0) {
    adam.validate();
    const int dim = int(pair.zero.size());
    const detail::ZlBasis basis = detail::zl_basis(kind, grid_n, dim);
    const std::size_t ncoef = basis.ops.size();
    const std::size_t nreal = 2 * ncoef;

    // loss evaluated from the action of Z on the two codewords only
    auto loss_eval = [&](const std::vector<double>& theta) {
        std::vector<Complex> coeffs(ncoef);
        for (std::size_t k = 0; k < ncoef; ++k)
            coeffs[k] = Complex(theta[2 * k], theta[2 * k + 1]);
        const Matrix h = detail::assemble_hz(basis, coeffs);
        Vector w0, w1;
        if (kind == AnsatzKind::HermitianSym) {
            const Eigensystem es = eig_hermitian(h, 1e-9);
            auto act = [&](const Vector& v) {
                Vector y = es.vectors.adjoint() * v;
                for (int k = 0; k < dim; ++k)
                    y(k) *= std::exp(Complex(0, -es.values(k)));
                return Vector(es.vectors * y);
            };
            w0 = act(pair.zero);
            w1 = act(pair.one);
        } else {
            const Matrix z = mat_exp(Matrix(Complex(0, -1) * h));
            w0 = z * pair.zero;
            w1 = z * pair.one;
        }
        const Complex t0 = pair.zero.dot(w0);
        const Complex t1 = pair.one.dot(w1);
        return 2.0 * std::norm(t0 - 1.0) + 2.0 * std::norm(t1 + 1.0) +
               std::pow(w0.squaredNorm() - 1.0, 2) + std::pow(w1.squaredNorm() - 1.0, 2);
    };

    detail::GaussianSource gauss(seed);
    std::vector<double> theta(nreal);
    for (auto& t : theta) t = 0.1 * gauss();

    std::vector<double> m(nreal, 0.0), v(nreal, 0.0);
    ZlOptimResult result;
    result.loss_history.reserve(std::size_t(adam.max_iters));
    double loss = loss_eval(theta);

    for (int iter = 1; iter <= adam.max_iters; ++iter) {
        std::vector<double> grad(nreal);
        parallel_for(nreal, [&](std::size_t j) {
            const double h = 1e-6 * std::max(1.0, std::abs(theta[j]));
            std::vector<double> tp = theta, tm = theta;
            tp[j] += h;
            tm[j] -= h;
            grad[j] = (loss_eval(tp) - loss_eval(tm)) / (2.0 * h);
        }, threads);
        const double c1 = 1.0 - std::pow(adam.beta1, iter);
        const double c2 = 1.0 - std::pow(adam.beta2, iter);
        for (std::size_t j = 0; j < nreal; ++j) {
            m[j] = adam.beta1 * m[j] + (1.0 - adam.beta1) * grad[j];
            v[j] = adam.beta2 * v[j] + (1.0 - adam.beta2) * grad[j] * grad[j];
            theta[j] -= adam.learning_rate * (m[j] / c1) / (std::sqrt(v[j] / c2) + adam.epsilon);
        }
        loss = loss_eval(theta);
        result.loss_history.push_back(loss);
        if (loss < adam.target_loss) {
            result.converged = true;
            break;
        }
    }

    result.ansatz.kind = kind;
    result.ansatz.grid_n = grid_n;
    result.ansatz.basis_labels = basis.labels;
    result.ansatz.norm_dim = dim;
    result.ansatz.coeffs.resize(ncoef);
    for (std::size_t k = 0; k < ncoef; ++k)
        result.ansatz.coeffs[k] = Complex(theta[2 * k], theta[2 * k + 1]);
    return result;
}

// ----------------------------------- GRAPE -----------------------------------

struct PulseGrid {
    std::vector<double> omega_q, omega_p;
};

// Rotating-frame model H = -chi_e |e><e| n - chi_f |f><f| n + W_q(t) q + W_p(t) p
// on the qutrit (x) oscillator space (ancilla index major). The lab-frame
// frequencies eliminated by the frame choice are not part of the model.
struct GrapeProblem {
    double chi_e = 1.0;
    double chi_f = 1.0;
    int segments = 10;
    double total_time = 1e-4; // units of 1/chi
    int osc_dim = 40;
    Matrix target;            // joint unitary, dimension 3*osc_dim
    PulseGrid controls;       // initial pulses; empty -> seeded random
    double init_sigma = 2e3;  // scale of the random initial amplitudes
    double amplitude_bound = 0.0; // 0 = unbounded

    void validate() const {
        if (segments < 1) throw std::invalid_argument("GrapeProblem: segments must be >= 1");
        if (total_time <= 0) throw std::invalid_argument("GrapeProblem: total_time <= 0");
        if (target.rows() != 3 * osc_dim || target.cols() != 3 * osc_dim)
            throw std::invalid_argument("GrapeProblem: target must act on qutrit (x) oscillator");
    }
};

enum class GrapeGradient { FiniteDifference, Eigendecomposition };

namespace detail {

struct GrapeKernel {
    Matrix h0, hq, hp;
    int dim;

    explicit GrapeKernel(const GrapeProblem& p) : dim(3 * p.osc_dim) {
        const Matrix n = number_op(p.osc_dim);
        const Matrix a = annihilation(p.osc_dim);
        const Matrix q = (a + a.adjoint()) / std::sqrt(2.0);
        const Matrix pq = Complex(0, 1) * (a.adjoint() - a) / std::sqrt(2.0);
        Matrix de = Matrix::Zero(3, 3), df = Matrix::Zero(3, 3), id3 = Matrix::Identity(3, 3);
        de(1, 1) = 1.0;
        df(2, 2) = 1.0;
        auto kron = [&](const Matrix& x, const Matrix& y) {
            Matrix out = Matrix::Zero(x.rows() * y.rows(), x.cols() * y.cols());
            for (Eigen::Index i = 0; i < x.rows(); ++i)
                for (Eigen::Index j = 0; j < x.cols(); ++j)
                    if (x(i, j) != Complex(0, 0))
                        out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) =
                            x(i, j) * y;
            return out;
        };
        h0 = -p.chi_e * kron(de, n) - p.chi_f * kron(df, n);
        hq = kron(id3, q);
        hp = kron(id3, pq);
    }

    Matrix segment_h(const GrapeProblem& p, const PulseGrid& g, int s) const {
        return h0 + g.omega_q[std::size_t(s)] * hq + g.omega_p[std::size_t(s)] * hp;
    }
};

} // namespace detail

inline Matrix grape_propagate(const GrapeProblem& p, const PulseGrid& g) {
    p.validate();
    if (int(g.omega_q.size()) != p.segments || int(g.omega_p.size()) != p.segments)
        throw std::invalid_argument("grape_propagate: pulse grid size mismatch");
    const detail::GrapeKernel kernel(p);
    const double dt = p.total_time / p.segments;
    Matrix u = Matrix::Identity(kernel.dim, kernel.dim);
    for (int s = 0; s < p.segments; ++s) {
        const Eigensystem es = eig_hermitian(kernel.segment_h(p, g, s), 1e-9);
        Matrix ph = es.vectors;
        for (int k = 0; k < kernel.dim; ++k)
            ph.col(k) *= std::exp(Complex(0, -es.values(k) * dt));
        u = (ph * es.vectors.adjoint()) * u;
    }
    return u;
}

// Phi = |Tr(target^+ U(T))| / D on the full joint truncated space.
inline double grape_fidelity(const GrapeProblem& p, const PulseGrid& g) {
    const Matrix u = grape_propagate(p, g);
    return std::abs((p.target.adjoint() * u).trace()) / double(u.rows());
}

// dPhi/d(theta) for theta = [omega_q | omega_p].
inline std::vector<double> grape_gradient(const GrapeProblem& p, const PulseGrid& g,
                                          GrapeGradient mode) {
    p.validate();
    const int ns = p.segments;
    std::vector<double> grad(2 * std::size_t(ns), 0.0);
    if (mode == GrapeGradient::FiniteDifference) {
        for (int block = 0; block < 2; ++block) {
            for (int s = 0; s < ns; ++s) {
                PulseGrid gp = g, gm = g;
                auto& vp = block == 0 ? gp.omega_q : gp.omega_p;
                auto& vm = block == 0 ? gm.omega_q : gm.omega_p;
                const double h =
                    1e-6 * std::max(1.0, std::abs(vp[std::size_t(s)]));
                vp[std::size_t(s)] += h;
                vm[std::size_t(s)] -= h;
                grad[std::size_t(block * ns + s)] =
                    (grape_fidelity(p, gp) - grape_fidelity(p, gm)) / (2.0 * h);
            }
        }
        return grad;
    }

    // exact gradient from the per-segment eigendecompositions
    const detail::GrapeKernel kernel(p);
    const int d = kernel.dim;
    const double dt = p.total_time / ns;
    std::vector<Matrix> us(std::size_t(ns));
    std::vector<Eigensystem> eigs;
    eigs.reserve(std::size_t(ns));
    for (int s = 0; s < ns; ++s) {
        eigs.push_back(eig_hermitian(kernel.segment_h(p, g, s), 1e-9));
        Matrix ph = eigs.back().vectors;
        for (int k = 0; k < d; ++k)
            ph.col(k) *= std::exp(Complex(0, -eigs.back().values(k) * dt));
        us[std::size_t(s)] = ph * eigs.back().vectors.adjoint();
    }
    std::vector<Matrix> pre(std::size_t(ns) + 1), post(std::size_t(ns) + 1);
    pre[0] = Matrix::Identity(d, d);
    for (int s = 0; s < ns; ++s) pre[std::size_t(s) + 1] = us[std::size_t(s)] * pre[std::size_t(s)];
    post[std::size_t(ns)] = Matrix::Identity(d, d);
    for (int s = ns - 1; s >= 0; --s)
        post[std::size_t(s)] = post[std::size_t(s) + 1] * us[std::size_t(s)];
    const Complex tr = (p.target.adjoint() * pre[std::size_t(ns)]).trace();
    if (std::abs(tr) == 0.0) return grad;
    const Complex phase = std::conj(tr) / std::abs(tr);

    for (int s = 0; s < ns; ++s) {
        const auto& es = eigs[std::size_t(s)];
        Matrix gamma(d, d);
        for (int i = 0; i < d; ++i) {
            const Complex ei = std::exp(Complex(0, -es.values(i) * dt));
            for (int j = 0; j < d; ++j) {
                const double dw = es.values(i) - es.values(j);
                if (std::abs(dw) > 1e-12) {
                    gamma(i, j) = (ei - std::exp(Complex(0, -es.values(j) * dt))) / dw;
                } else {
                    gamma(i, j) = Complex(0, -dt) * ei;
                }
            }
        }
        // sandwich M = pre[s]^... Tr(T^+ post[s+1] dU_s pre[s]) = Tr((pre[s] T^+ post[s+1]) dU_s)
        const Matrix sandwich = pre[std::size_t(s)] * p.target.adjoint() * post[std::size_t(s) + 1];
        for (int block = 0; block < 2; ++block) {
            const Matrix& hc = block == 0 ? kernel.hq : kernel.hp;
            const Matrix hcb = es.vectors.adjoint() * hc * es.vectors;
            const Matrix dus = es.vectors * hcb.cwiseProduct(gamma) * es.vectors.adjoint();
            const Complex term = (sandwich * dus).trace();
            grad[std::size_t(block * ns + s)] = (phase * term).real() / double(d);
        }
    }
    return grad;
}

struct GrapeResult {
    PulseGrid pulses;
    std::vector<double> fidelity_history;
    bool stalled = false;
    double best_fidelity = 0.0;
};

// Adam ascent on Phi. Stops at max iterations, at `target`, or when the best
// fidelity improves by less than 1e-10 over 50 consecutive iterations.
inline GrapeResult grape_optimize(const GrapeProblem& problem, int iters, std::uint64_t seed,
                                  GrapeGradient mode = GrapeGradient::FiniteDifference,
                                  double learning_rate = 500.0, double target = 1.0) {
    GrapeProblem p = problem;
    p.validate();
    const std::size_t np = 2 * std::size_t(p.segments);
    if (p.controls.omega_q.empty()) {
        detail::GaussianSource gauss(seed);
        p.controls.omega_q.resize(std::size_t(p.segments));
        p.controls.omega_p.resize(std::size_t(p.segments));
        for (auto& x : p.controls.omega_q) x = p.init_sigma * gauss();
        for (auto& x : p.controls.omega_p) x = p.init_sigma * gauss();
    }
    auto clamp_pulses = [&](PulseGrid& g) {
        if (p.amplitude_bound <= 0) return;
        for (auto* vec : {&g.omega_q, &g.omega_p})
            for (auto& x : *vec)
                x = std::clamp(x, -p.amplitude_bound, p.amplitude_bound);
    };
    clamp_pulses(p.controls);

    GrapeResult result;
    result.pulses = p.controls;
    std::vector<double> m(np, 0.0), v(np, 0.0);
    PulseGrid g = p.controls;
    double best = grape_fidelity(p, g);
    result.best_fidelity = best;
    result.pulses = g;
    int since_improvement = 0;

    for (int iter = 1; iter <= iters; ++iter) {
        const std::vector<double> grad = grape_gradient(p, g, mode);
        const double c1 = 1.0 - std::pow(0.9, iter);
        const double c2 = 1.0 - std::pow(0.999, iter);
        for (std::size_t j = 0; j < np; ++j) {
            m[j] = 0.9 * m[j] + 0.1 * grad[j];
            v[j] = 0.999 * v[j] + 0.001 * grad[j] * grad[j];
            const double step = learning_rate * (m[j] / c1) / (std::sqrt(v[j] / c2) + 1e-8);
            (j < std::size_t(p.segments) ? g.omega_q[j] : g.omega_p[j - std::size_t(p.segments)]) += step;
        }
        clamp_pulses(g);
        const double phi = grape_fidelity(p, g);
        result.fidelity_history.push_back(phi);
        if (phi > best + 1e-10) {
            best = phi;
            result.best_fidelity = best;
            result.pulses = g;
            since_improvement = 0;
        } else if (++since_improvement >= 50) {
            result.stalled = true;
            break;
        }
        if (best >= target) break;
    }
    return result;
}

} // namespace sqfock
