#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "homega/blaschke.hpp"
#include "homega/errors.hpp"
#include "homega/grid.hpp"
#include "homega/projector.hpp"
#include "homega/series.hpp"

namespace homega {

/// Moment matrix of the b-weighted space: entries <z^i b, z^j b> for
/// 0 <= i, j <= m_poly. This is the Gram matrix of the monomials in the
/// space whose norm is ||f b||.
struct MomentMatrix {
    Eigen::MatrixXcd M;
    SeriesFn b;
    long m_poly = 0;
    double condition = 1.0;
    double min_eigenvalue = 0.0;
};

inline MomentMatrix moment_matrix(const SeriesFn& b, long m_poly, const Budget& budget = {}) {
    budget.validate();
    if (m_poly < 0) throw InvalidSpec("m_poly must be nonnegative");
    if (norm(b) == 0.0) throw ZeroVector("moment matrix needs a nonzero b");
    const long deg = b.degree();
    const std::vector<double> w = b.weight().table(deg + m_poly);
    MomentMatrix out{Eigen::MatrixXcd(m_poly + 1, m_poly + 1), b, m_poly, 1.0, 0.0};
    for (long i = 0; i <= m_poly; ++i) {
        for (long j = 0; j <= i; ++j) {
            // <z^i b, z^j b> = sum_k w_k b_{k-i} conj(b_{k-j})
            Complex acc(0.0);
            for (long k = i; k <= deg + j; ++k)
                acc += w[static_cast<std::size_t>(k)] * b.coeff(k - i) *
                       std::conj(b.coeff(k - j));
            out.M(i, j) = acc;
            out.M(j, i) = std::conj(acc);
        }
    }
    out.M = 0.5 * (out.M + out.M.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(out.M, Eigen::EigenvaluesOnly);
    const double lmax = eig.eigenvalues().maxCoeff();
    const double lmin = eig.eigenvalues().minCoeff();
    out.min_eigenvalue = lmin;
    out.condition = lmin > 0.0 ? lmax / lmin : 1e300;
    return out;
}

/// Reproducing kernel at the origin of the b-weighted space, as a
/// polynomial R0 of degree <= m_poly solving <z^i, R0>_b = delta_{i0}.
struct KernelAtZero {
    SeriesFn R0;
    std::vector<double> residuals; // |<z^i, R0>_b - delta_{i0}| per i
    double max_residual = 0.0;
    long used_m_poly = 0;          // after any conditioning-driven reduction
    double condition = 1.0;
};

/// Solves M conj(r) = e_0 for the coefficient vector of R0. When the full
/// moment matrix is too ill-conditioned the polynomial degree is reduced
/// until the solve is trustworthy; the reduction is reported.
inline KernelAtZero kernel_at_zero(const MomentMatrix& mm) {
    long k = mm.m_poly;
    Eigen::MatrixXcd M = mm.M;
    double condition = mm.condition;
    while (condition >= kGramConditionLimit && k > 4) {
        k = (3 * k) / 4;
        M = mm.M.topLeftCorner(k + 1, k + 1);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(M, Eigen::EigenvaluesOnly);
        const double lmin = eig.eigenvalues().minCoeff();
        condition = lmin > 0.0 ? eig.eigenvalues().maxCoeff() / lmin : 1e300;
    }
    if (condition >= kGramConditionLimit)
        throw IllConditionedGram("moment matrix is numerically singular", condition, 0.0);

    Eigen::VectorXcd e0 = Eigen::VectorXcd::Zero(k + 1);
    e0(0) = 1.0;
    const Eigen::VectorXcd r = M.ldlt().solve(e0).conjugate();

    std::vector<Complex> coeffs(static_cast<std::size_t>(k) + 1);
    for (long i = 0; i <= k; ++i) coeffs[static_cast<std::size_t>(i)] = r(i);

    KernelAtZero out{SeriesFn(mm.b.weight(), std::move(coeffs)), {}, 0.0, k, condition};
    const Eigen::VectorXcd check = M * r.conjugate();
    for (long i = 0; i <= k; ++i) {
        const double res = std::abs(check(i) - (i == 0 ? Complex(1.0) : Complex(0.0)));
        out.residuals.push_back(res);
        out.max_residual = std::max(out.max_residual, res);
    }
    return out;
}

/// Recovers the inner part of b: u = b R0 / ||b R0||, phase-canonicalized.
/// The output is inner for any nonzero b; when b factors as inner * outer
/// the inner factor is recovered up to a unimodular constant.
inline InnerFunctionResult inner_from_kernel(const SeriesFn& b, long m_poly = 64,
                                             const Budget& budget = {}) {
    const MomentMatrix mm = moment_matrix(b, m_poly, budget);
    const KernelAtZero kz = kernel_at_zero(mm);
    const SeriesFn u = detail::canonical_phase(normalize(mul(b, kz.R0)));
    InnerFunctionResult out{u, std::nullopt, kz.condition, std::nullopt, {}};
    return out;
}

/// Power-series quotient num / den by coefficient recursion; den(0) != 0.
inline SeriesFn series_divide(const SeriesFn& num, const SeriesFn& den, long terms) {
    require_same_space(num, den);
    if (terms < 1) throw InvalidSpec("quotient needs at least one term");
    const Complex d0 = den.coeff(0);
    if (std::abs(d0) < 1e-14)
        throw ZeroVector("series division requires a nonvanishing constant term");
    std::vector<Complex> q(static_cast<std::size_t>(terms));
    for (long n = 0; n < terms; ++n) {
        Complex acc = num.coeff(n);
        for (long k = 1; k <= n; ++k)
            acc -= den.coeff(k) * q[static_cast<std::size_t>(n - k)];
        q[static_cast<std::size_t>(n)] = acc / d0;
    }
    return SeriesFn(num.weight(), std::move(q));
}

struct HoAnalogueCheck {
    double proportionality_dev = 0.0;
    Complex fitted_constant{0.0, 0.0};
    SeriesFn R0;
    std::vector<Complex> grid;
};

/// Checks that the constructed analogue B, divided by the classical product
/// b with the same zeros, is a constant multiple of the origin kernel R0 of
/// the b-weighted space. The quotient is formed by series division after
/// factoring z^{d0}; the comparison grid stays inside the smallest zero
/// modulus so the division recursion keeps full accuracy, and points within
/// 0.05 of a prescribed zero are excluded.
inline HoAnalogueCheck check_ho_analogue(const WeightSequence& w, const BlaschkeSpec& spec,
                                         const Budget& budget = {}, long m_poly = 64) {
    spec.validate();
    if (spec.total_degree() > 5)
        throw InvalidSpec("proportionality check is limited to total degree <= 5");

    const SeriesFn B = construct_blaschke_analogue(w, spec, budget).B;
    const SeriesFn b = classical_blaschke(spec, budget, w);

    const MomentMatrix mm = moment_matrix(b, m_poly, budget);
    const KernelAtZero kz = kernel_at_zero(mm);

    const SeriesFn quotient =
        series_divide(shift_down(B, spec.d0), shift_down(b, spec.d0), 48);

    double rmin = 1.0;
    for (const auto& pz : spec.zeros) rmin = std::min(rmin, std::abs(pz.z));
    const double r_grid = std::min(0.6, 0.9 * rmin);

    HoAnalogueCheck out{0.0, Complex(0.0), kz.R0, {}};
    std::vector<Complex> qv, rv;
    Complex num(0.0);
    double den = 0.0;
    for (const Complex& z : disk_grid(r_grid, 4, 16)) {
        bool excluded = false;
        for (const auto& pz : spec.zeros)
            if (std::abs(z - pz.z) < 0.05) excluded = true;
        if (excluded) continue;
        out.grid.push_back(z);
        const Complex q = eval(quotient, z);
        const Complex r = eval(kz.R0, z);
        qv.push_back(q);
        rv.push_back(r);
        num += std::conj(r) * q;
        den += std::norm(r);
    }
    if (den == 0.0) throw ZeroVector("origin kernel vanished on the whole grid");
    out.fitted_constant = num / den;
    for (std::size_t i = 0; i < qv.size(); ++i)
        out.proportionality_dev =
            std::max(out.proportionality_dev, std::abs(qv[i] - out.fitted_constant * rv[i]));
    return out;
}

} // namespace homega
