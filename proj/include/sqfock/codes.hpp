// codes.hpp — logical codeword construction: the squeezed-Fock-superposition
// pair, the squeezed Fock comparison code, the squeezed cat code with its
// closed-form off-diagonal matrix elements, the logical Pauli-X rotation, and
// code-space projectors.

#pragma once

#include "sqfock/fock.hpp"

namespace sqfock {

enum class Branch { Plus, Minus };
enum class CodeFamily { SqFockSuperposition, SqueezedFock, SqueezedCat };

struct CodePair {
    Vector zero, one;
    int n = 0;          // base Fock index (unused for the cat family)
    double r = 0.0;     // squeezing amplitude
    double alpha = 0.0; // superposition weight in (0,1); 0 where not applicable
    Branch branch = Branch::Plus;
    CodeFamily family = CodeFamily::SqFockSuperposition;
    double overlap = 0.0; // <0_L|1_L> as built (stored, not forced, for SqueezedFock)
    double beta = 0.0;    // cat amplitude for the SqueezedCat family
};

// --------------------------- orthogonality condition -------------------------

namespace detail {

// Signed root t = alpha/beta of g1 t^2 + (g2 - g3) t - g4 = 0 with
// g_k the relevant <.|S(-2r)|.> elements. Plus = larger root.
inline double solve_alpha_root(int n, double r, Branch branch) {
    if (r < 0) throw std::invalid_argument("solve_alpha: r must be >= 0");
    const SqueezeParams m2r{-2.0 * r};
    const double g1 = overlap_analytic(n + 2, n + 2, m2r);
    const double g2 = overlap_analytic(n + 2, n, m2r);
    const double g3 = overlap_analytic(n, n + 2, m2r);
    const double g4 = overlap_analytic(n, n, m2r);
    const double a = g1, b = g2 - g3, c = -g4;
    const double disc = b * b - 4 * a * c;
    if (disc < 0)
        throw std::runtime_error("solve_alpha: no real root (discriminant < 0)");
    const double sq = std::sqrt(disc);
    const double tp = (-b + sq) / (2 * a);
    const double tm = (-b - sq) / (2 * a);
    const double t = branch == Branch::Plus ? std::max(tp, tm) : std::min(tp, tm);
    const double alpha = std::abs(t) / std::sqrt(1 + t * t);
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::runtime_error("solve_alpha: root maps outside (0,1)");
    return t;
}

} // namespace detail

inline double solve_alpha(int n, double r, Branch branch) {
    const double t = detail::solve_alpha_root(n, r, branch);
    return std::abs(t) / std::sqrt(1 + t * t);
}

// |0_L> = S(r)(alpha |n+2> - sigma beta |n>), |1_L> = S(-r)(alpha |n+2> + sigma beta |n>)
// with sigma the sign of the branch root (the paper's two alpha solutions).
// Codewords are assembled from the closed-form squeezed-Fock columns, which
// stay accurate at any squeezing level; the matrix-exponential route is the
// cross-check in the test suite.
inline CodePair build_code(const FockSpace& space, int n, SqueezeParams p, Branch branch) {
    const double t = detail::solve_alpha_root(n, p.r, branch);
    const double alpha = std::abs(t) / std::sqrt(1 + t * t);
    const double beta = 1.0 / std::sqrt(1 + t * t);
    const double sigma = t >= 0 ? 1.0 : -1.0;
    const Vector hi_p = squeezed_fock_state_analytic(space.dim, n + 2, p);
    const Vector lo_p = squeezed_fock_state_analytic(space.dim, n, p);
    const SqueezeParams mp{-p.r};
    const Vector hi_m = squeezed_fock_state_analytic(space.dim, n + 2, mp);
    const Vector lo_m = squeezed_fock_state_analytic(space.dim, n, mp);

    CodePair pair;
    pair.zero = alpha * hi_p - sigma * beta * lo_p;
    pair.one = alpha * hi_m + sigma * beta * lo_m;
    pair.zero /= pair.zero.norm();
    pair.one /= pair.one.norm();
    pair.n = n;
    pair.r = p.r;
    pair.alpha = alpha;
    pair.branch = branch;
    pair.family = CodeFamily::SqFockSuperposition;
    pair.overlap = (pair.zero.adjoint() * pair.one)(0).real();
    if (std::max(tail_population(pair.zero), tail_population(pair.one)) > space.tail_tol)
        throw truncation_error("build_code: codeword tail exceeds tolerance");
    if (std::abs(pair.overlap) > 1e-10)
        throw truncation_error("build_code: orthogonality lost to truncation, overlap " +
                               std::to_string(pair.overlap));
    return pair;
}

// Squeezed Fock code |0_L> = S(r)|n>, |1_L> = S(-r)|n>; non-orthogonal by
// construction, the overlap is recorded rather than forced.
inline CodePair build_squeezed_fock_code(const FockSpace& space, int n, SqueezeParams p) {
    CodePair pair;
    pair.zero = squeezed_fock_state_analytic(space.dim, n, p);
    pair.one = squeezed_fock_state_analytic(space.dim, n, SqueezeParams{-p.r});
    pair.n = n;
    pair.r = p.r;
    pair.branch = Branch::Plus;
    pair.family = CodeFamily::SqueezedFock;
    pair.overlap = (pair.zero.adjoint() * pair.one)(0).real();
    if (std::max(tail_population(pair.zero), tail_population(pair.one)) > space.tail_tol)
        throw truncation_error("build_squeezed_fock_code: codeword tail exceeds tolerance");
    return pair;
}

// ------------------------------- squeezed cat --------------------------------

struct CatParams {
    double beta = 0.0; // real coherent amplitude
    double r = 0.0;    // squeezing amplitude
};

// squeezed coherent state |beta, r> = D(beta) S(r) |0>
inline Vector squeezed_coherent_state(const FockSpace& space, double beta, double r) {
    const Vector sq = squeezed_fock_state_analytic(space.dim, 0, SqueezeParams{r});
    const DisplacementKernel kernel(space.dim);
    return kernel.apply(Complex(beta, 0.0), sq);
}

inline CodePair build_squeezed_cat_code(const FockSpace& space, const CatParams& p) {
    const double closed_overlap = std::exp(-2.0 * std::exp(2 * p.r) * p.beta * p.beta);
    const double norm_minus = std::sqrt(2.0 * (1.0 - closed_overlap));
    if (norm_minus <= 1e-8)
        throw degeneracy_error("build_squeezed_cat_code: odd cat degenerate, N_- = " +
                               std::to_string(norm_minus));
    const Vector plus = squeezed_coherent_state(space, p.beta, p.r);
    const Vector minus = squeezed_coherent_state(space, -p.beta, p.r);
    const double numeric_overlap = (minus.adjoint() * plus)(0).real();
    if (std::abs(numeric_overlap - closed_overlap) > 1e-6)
        throw truncation_error("build_squeezed_cat_code: <-b,r|b,r> deviates from the "
                               "closed form by " +
                               std::to_string(std::abs(numeric_overlap - closed_overlap)));
    CodePair pair;
    pair.zero = plus + minus;
    pair.one = plus - minus;
    // enforce exact even/odd parity (the sum/difference kill the opposite parity)
    for (int k = 0; k < space.dim; ++k) {
        if (k % 2 == 1) pair.zero(k) = 0.0;
        if (k % 2 == 0) pair.one(k) = 0.0;
    }
    pair.zero /= pair.zero.norm();
    pair.one /= pair.one.norm();
    pair.r = p.r;
    pair.beta = p.beta;
    pair.family = CodeFamily::SqueezedCat;
    pair.overlap = 0.0;
    if (std::max(tail_population(pair.zero), tail_population(pair.one)) > space.tail_tol)
        throw truncation_error("build_squeezed_cat_code: codeword tail exceeds tolerance");
    return pair;
}

// Closed-form nonvanishing cat-code elements delta_A = <1_L| A |0_L>. In each
// two-sign formula the upper sign belongs to the annihilation-type operator
// (a, n a, n^2 a) and the lower sign to its creation-type partner. The
// e^{-2r} factor on the 8(5 b^2 - 3) b term corrects a sign-of-exponent typo
// in the printed source; the corrected form matches the direct matrix
// elements to full precision (see the codes test suite).
struct CatDeltas {
    double a_dag, a;       // <1|a_dag|0>, <1|a|0>
    double a_dag_n, n_a;   // <1|a_dag n|0>, <1|n a|0>
    double a_dag_n2, n2_a; // <1|a_dag n^2|0>, <1|n^2 a|0>
};

inline CatDeltas cat_delta_analytic(const CatParams& p) {
    const double b = p.beta, r = p.r;
    const double e0 = std::exp(-2.0 * std::exp(2 * r) * b * b);
    const double e2 = std::exp(-2.0 * std::exp(2 * r) * b * b + 2 * r);
    const double e4 = std::exp(-4.0 * std::exp(2 * r) * b * b);
    const double den = std::sqrt(1.0 - e4);
    if (std::sqrt(2.0 * (1.0 - e0)) <= 1e-8)
        throw degeneracy_error("cat_delta_analytic: odd cat degenerate");

    auto first = [&](double sign) { return b * (1.0 - sign * e2) / den; };
    auto second = [&](double sign) {
        return (3 * b * std::exp(-2 * r) + b * std::exp(2 * r) + 4 * b * (b * b - 1) +
                sign * b * e0 *
                    (4 * std::exp(6 * r) * b * b - 1 + 4 * std::exp(2 * r) -
                     3 * std::exp(4 * r))) /
               (4 * den);
    };
    auto third = [&](double sign) {
        return (15 * b * std::exp(-4 * r) + 3 * b * std::exp(4 * r) +
                8 * (b * b - 1) * b * std::exp(2 * r) +
                8 * (5 * b * b - 3) * b * std::exp(-2 * r) +
                2 * (8 * b * b * b * b - 16 * b * b + 7) * b +
                sign * b * e0 *
                    (-16 * std::exp(10 * r) * b * b * b * b +
                     40 * std::exp(8 * r) * b * b + 8 * std::exp(4 * r) * (b * b + 3) -
                     std::exp(6 * r) * (32 * b * b + 15) - 3 * std::exp(-2 * r) + 8 -
                     14 * std::exp(2 * r))) /
               (16 * den);
    };
    CatDeltas d;
    d.a = first(+1.0);
    d.a_dag = first(-1.0);
    d.n_a = second(+1.0);
    d.a_dag_n = second(-1.0);
    d.n2_a = third(+1.0);
    d.a_dag_n2 = third(-1.0);
    return d;
}

// ------------------------------ logical operators ----------------------------

// X_L = exp(-i pi/2 n): diagonal entries (-i)^k. Maps the codewords onto each
// other up to phase and conjugates a -> i a.
inline Matrix logical_x(const FockSpace& space) {
    Matrix m = Matrix::Zero(space.dim, space.dim);
    const Complex mi(0, -1);
    Complex v(1, 0);
    for (int k = 0; k < space.dim; ++k) {
        m(k, k) = v;
        v *= mi;
    }
    return m;
}

// P_L = |0_L><0_L| + |1_L><1_L| for an orthogonal code family.
inline Matrix code_projector(const CodePair& pair) {
    if (pair.family == CodeFamily::SqueezedFock && std::abs(pair.overlap) > 1e-10)
        throw contract_error("code_projector: non-orthogonal pair; "
                             "Loewdin-orthonormalize first");
    return pair.zero * pair.zero.adjoint() + pair.one * pair.one.adjoint();
}

} // namespace sqfock
