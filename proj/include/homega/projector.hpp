#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "homega/errors.hpp"
#include "homega/series.hpp"

namespace homega {

/// Condition ceiling for Gram solves; beyond it the normal equations lose
/// all significant digits in double precision.
inline constexpr double kGramConditionLimit = 1e12;

/// A Gram system G_{ij} = <v_i, v_j> with optional target v and right-hand
/// side rhs_i = <v, v_i>. Carries the spectral diagnostics used by the
/// projection routines.
struct GramSystem {
    Eigen::MatrixXcd G;
    Eigen::VectorXcd rhs;
    std::vector<SeriesFn> basis;
    std::optional<SeriesFn> target;

    double det = 0.0;       // product of LDLT pivots; >= 0 for PSD systems
    double log_det = -std::numeric_limits<double>::infinity();
    double condition = 1.0; // eigenvalue ratio estimate
    double min_eigenvalue = 0.0;
    long rank = 0;

    long size() const { return static_cast<long>(basis.size()); }
};

namespace detail {

inline void fill_diagnostics(GramSystem& sys) {
    const long s = sys.size();
    if (s == 0) {
        sys.det = 1.0;
        sys.log_det = 0.0;
        sys.condition = 1.0;
        sys.rank = 0;
        return;
    }
    // Hermitize to wash out roundoff asymmetry before factorizing.
    sys.G = 0.5 * (sys.G + sys.G.adjoint()).eval();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(sys.G,
                                                        Eigen::EigenvaluesOnly);
    const Eigen::VectorXd ev = eig.eigenvalues();
    const double lmax = std::max(ev.maxCoeff(), 0.0);
    const double lmin = ev.minCoeff();
    sys.min_eigenvalue = lmin;
    if (lmax == 0.0) {
        sys.det = 0.0;
        sys.condition = 1.0;
        sys.rank = 0;
        return;
    }
    sys.condition = lmin > 0.0 ? lmax / lmin : std::numeric_limits<double>::infinity();
    sys.condition = std::min(sys.condition, 1e300);

    double det = 1.0;
    double log_det = 0.0;
    long rank = 0;
    for (long i = 0; i < s; ++i) {
        const double d = ev(i);
        det *= std::max(d, 0.0);
        if (d > lmax * 1e-14) {
            log_det += std::log(d);
            ++rank;
        }
    }
    sys.det = det;
    sys.log_det = rank == s ? log_det : -std::numeric_limits<double>::infinity();
    sys.rank = rank;
}

} // namespace detail

/// Gram matrix of a family of series, with determinant, rank and condition
/// estimates attached.
inline GramSystem gram_matrix(const std::vector<SeriesFn>& vs) {
    GramSystem sys;
    sys.basis = vs;
    const long s = static_cast<long>(vs.size());
    sys.G.resize(s, s);
    for (long i = 0; i < s; ++i) {
        for (long j = 0; j <= i; ++j) {
            if (i != j) require_same_space(vs[static_cast<std::size_t>(i)],
                                           vs[static_cast<std::size_t>(j)]);
            const Complex g = inner_product(vs[static_cast<std::size_t>(i)],
                                            vs[static_cast<std::size_t>(j)]);
            sys.G(i, j) = g;
            sys.G(j, i) = std::conj(g);
        }
    }
    detail::fill_diagnostics(sys);
    return sys;
}

inline GramSystem gram_system(const SeriesFn& v, const std::vector<SeriesFn>& vs) {
    GramSystem sys = gram_matrix(vs);
    sys.target = v;
    sys.rhs.resize(sys.size());
    for (long i = 0; i < sys.size(); ++i) {
        require_same_space(v, vs[static_cast<std::size_t>(i)]);
        sys.rhs(i) = inner_product(v, vs[static_cast<std::size_t>(i)]);
    }
    return sys;
}

namespace detail {

inline void require_solvable(const GramSystem& sys) {
    if (sys.size() == 0) return;
    if (!(sys.condition < kGramConditionLimit))
        throw IllConditionedGram(
            "Gram system too ill-conditioned; move points inward or lower the "
            "derivative orders",
            sys.condition, sys.det);
    // Degeneracy gate: refuse numerically dependent families instead of
    // regularizing, which would break the exactness identities downstream.
    // Compared in log space so large systems cannot underflow the gate.
    double log_diag = 0.0;
    for (long i = 0; i < sys.size(); ++i)
        log_diag += std::log(std::max(std::real(sys.G(i, i)),
                                      std::numeric_limits<double>::min()));
    if (sys.log_det < std::log(1e-14) + log_diag)
        throw IllConditionedGram("Gram family is numerically dependent",
                                 sys.condition, sys.det);
}

} // namespace detail

/// Coefficients c of the best approximation P v = sum_i c_i v_i, obtained
/// from the normal equations G conj(c) = conj(rhs).
inline Eigen::VectorXcd projection_coefficients(const GramSystem& sys) {
    if (!sys.target) throw InvalidSpec("Gram system has no target vector");
    detail::require_solvable(sys);
    if (sys.size() == 0) return Eigen::VectorXcd();
    const Eigen::VectorXcd x = sys.G.ldlt().solve(sys.rhs.conjugate());
    return x.conjugate();
}

inline Eigen::VectorXcd projection_coefficients(const SeriesFn& v,
                                                const std::vector<SeriesFn>& vs) {
    return projection_coefficients(gram_system(v, vs));
}

/// Orthogonal projection of v onto the orthogonal complement of span(vs):
/// u = v - sum_i c_i v_i with <u, v_i> = 0 for all i.
inline SeriesFn project_complement(const GramSystem& sys) {
    if (!sys.target) throw InvalidSpec("Gram system has no target vector");
    const Eigen::VectorXcd c = projection_coefficients(sys);
    SeriesFn u = *sys.target;
    for (long i = 0; i < sys.size(); ++i)
        u = sub(u, scale(sys.basis[static_cast<std::size_t>(i)], c(i)));
    return u;
}

inline SeriesFn project_complement(const SeriesFn& v, const std::vector<SeriesFn>& vs) {
    if (vs.empty()) return v;
    return project_complement(gram_system(v, vs));
}

/// The formal determinant whose first column holds the vectors v, v_1..v_s
/// and whose remaining columns hold the inner products <.,v_j>, expanded
/// along the first column. It is orthogonal to every v_j and proportional
/// to project_complement(v, vs) with factor det G(v_1..v_s). Capped at
/// s <= 6; larger systems must use the projection path.
inline SeriesFn shapiro_shields_vector(const SeriesFn& v, const std::vector<SeriesFn>& vs) {
    const long s = static_cast<long>(vs.size());
    if (s == 0) return v;
    if (s > 6)
        throw UseProjectionPath("cofactor expansion capped at 6 vectors; use "
                                "project_complement instead");
    // Numeric block: row 0 holds <v, v_j>, row i holds <v_i, v_j>.
    Eigen::MatrixXcd a(s + 1, s);
    for (long j = 0; j < s; ++j) {
        require_same_space(v, vs[static_cast<std::size_t>(j)]);
        a(0, j) = inner_product(v, vs[static_cast<std::size_t>(j)]);
        for (long i = 0; i < s; ++i)
            a(i + 1, j) = inner_product(vs[static_cast<std::size_t>(i)],
                                        vs[static_cast<std::size_t>(j)]);
    }
    SeriesFn acc = SeriesFn::zero(v.weight());
    double sign = 1.0;
    for (long i = 0; i <= s; ++i) {
        Eigen::MatrixXcd minor(s, s);
        long r = 0;
        for (long k = 0; k <= s; ++k) {
            if (k == i) continue;
            minor.row(r++) = a.row(k);
        }
        const Complex cofactor = sign * minor.determinant();
        const SeriesFn& w = i == 0 ? v : vs[static_cast<std::size_t>(i - 1)];
        acc = add(acc, scale(w, cofactor));
        sign = -sign;
    }
    return acc;
}

} // namespace homega
