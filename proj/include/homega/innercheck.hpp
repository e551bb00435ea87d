#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "homega/errors.hpp"
#include "homega/projector.hpp"
#include "homega/random.hpp"
#include "homega/series.hpp"

namespace homega {

/// <z^m f, f> = sum_n w_{n+m} a_n conj(a_{n+m}), the orthogonality
/// coefficient whose vanishing for every m >= 1 defines inner functions.
inline Complex ortho_coefficient(const SeriesFn& f, long m) {
    if (m < 0) throw InvalidSpec("power must be nonnegative");
    const long deg = f.degree();
    const std::vector<double> w = f.weight().table(deg + m);
    Complex acc(0.0);
    for (long n = 0; n + m <= deg; ++n)
        acc += w[static_cast<std::size_t>(n + m)] * f.coeff(n) * std::conj(f.coeff(n + m));
    return acc;
}

/// ||z^k f||^2 under the weighted norm.
inline double shifted_norm_squared(const SeriesFn& f, long k) {
    const long deg = f.degree();
    const std::vector<double> w = f.weight().table(deg + k);
    double acc = 0.0;
    for (long n = 0; n <= deg; ++n)
        acc += w[static_cast<std::size_t>(n + k)] * std::norm(f.coeff(n));
    return acc;
}

enum class InnerVerdict { Inner, NotInner, Inconclusive };

inline const char* to_string(InnerVerdict v) {
    switch (v) {
        case InnerVerdict::Inner: return "Inner";
        case InnerVerdict::NotInner: return "NotInner";
        case InnerVerdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

struct DefinitionCheck {
    double norm_dev = 0.0;     // | ||f|| - 1 |
    double ortho_defect = 0.0; // max_{1<=m<=M} |<z^m f, f>|
    long worst_m = 0;
    InnerVerdict verdict = InnerVerdict::Inconclusive;
};

namespace detail {
inline InnerVerdict verdict_from_residual(double r, double tol) {
    if (r < tol) return InnerVerdict::Inner;
    if (r > 100.0 * tol) return InnerVerdict::NotInner;
    // Truncation noise cannot distinguish residuals in [tol, 100 tol].
    return InnerVerdict::Inconclusive;
}
} // namespace detail

/// The definition test: unit norm plus orthogonality to z^m f for
/// 1 <= m <= M. The defect is non-decreasing in M.
inline DefinitionCheck check_definition(const SeriesFn& f, long M, double tol = 1e-8) {
    if (norm(f) == 0.0) throw ZeroVector("definition check needs a nonzero function");
    DefinitionCheck out;
    out.norm_dev = std::abs(norm(f) - 1.0);
    for (long m = 1; m <= M; ++m) {
        const double a = std::abs(ortho_coefficient(f, m));
        if (a > out.ortho_defect) {
            out.ortho_defect = a;
            out.worst_m = m;
        }
    }
    out.verdict = detail::verdict_from_residual(std::max(out.norm_dev, out.ortho_defect), tol);
    return out;
}

/// phi_k(lambda) = ||z^k f||^2 + 2 Re(conj(lambda) <z^k f, f>), the reduced
/// form of ||f (z^k + lambda)||^2 - |lambda|^2 for unit-norm f. Bounded in
/// lambda exactly when <z^k f, f> = 0.
inline double phi_k(const SeriesFn& f, long k, Complex lambda) {
    if (k < 1) throw InvalidSpec("phi_k requires k >= 1");
    return shifted_norm_squared(f, k) +
           2.0 * std::real(std::conj(lambda) * ortho_coefficient(f, k));
}

/// The raw form ||f (z^k + lambda)||^2 - |lambda|^2, evaluated through the
/// product series. Cross-validates phi_k; the two agree when ||f|| = 1.
inline double phi_k_raw(const SeriesFn& f, long k, Complex lambda) {
    if (k < 1) throw InvalidSpec("phi_k requires k >= 1");
    const long deg = f.degree();
    std::vector<Complex> g(static_cast<std::size_t>(deg + k) + 1);
    for (long n = 0; n <= deg; ++n) {
        g[static_cast<std::size_t>(n)] += lambda * f.coeff(n);
        g[static_cast<std::size_t>(n + k)] += f.coeff(n);
    }
    return norm_squared(SeriesFn(f.weight(), std::move(g))) - std::norm(lambda);
}

struct PhiSlopeFit {
    double slope = 0.0;     // linear coefficient of t -> phi_k(f, k, t <z^k f, f>)
    double intercept = 0.0;
    Complex gamma{0.0, 0.0}; // <z^k f, f>
};

/// Least-squares line through samples of t -> phi_k along the ray
/// lambda = t <z^k f, f>. For inner f the slope vanishes; in general it
/// equals 2 |<z^k f, f>|^2.
inline PhiSlopeFit fit_phi_slope(const SeriesFn& f, long k, long samples = 9) {
    PhiSlopeFit out;
    out.gamma = ortho_coefficient(f, k);
    out.intercept = shifted_norm_squared(f, k);
    if (std::abs(out.gamma) == 0.0 || samples < 2) return out;
    double stt = 0.0, sty = 0.0, sy = 0.0;
    for (long i = 0; i < samples; ++i) {
        const double t = -1.0 + 2.0 * static_cast<double>(i) /
                                    static_cast<double>(samples - 1);
        const double y = phi_k_raw(f, k, t * out.gamma);
        stt += t * t;
        sty += t * y;
        sy += y;
    }
    out.slope = sty / stt; // symmetric grid, sum t = 0
    out.intercept = sy / static_cast<double>(samples);
    return out;
}

struct ExpansiveCheck {
    long violations = 0;
    long trials = 0;
    std::optional<std::vector<Complex>> example; // coefficients of a violating p
};

/// Samples random polynomials p and counts violations of |p(0)| <= ||p f||.
/// In addition to blind sampling, the search probes the directions
/// p = z^k + lambda with lambda chosen along -<z^k f, f>, where a violation
/// must exist whenever that pairing is significantly nonzero.
inline ExpansiveCheck check_expansive_inequality(const SeriesFn& f, long trials,
                                                 long degree, double tol = 1e-8,
                                                 std::uint64_t seed = 0) {
    ExpansiveCheck out;
    RandomStream rng(seed);
    auto test = [&](const std::vector<Complex>& p) {
        ++out.trials;
        const SeriesFn pf = mul(SeriesFn(f.weight(), p), f);
        if (std::abs(p[0]) > norm(pf) + tol) {
            ++out.violations;
            if (!out.example) out.example = p;
        }
    };
    for (long i = 0; i < trials; ++i) test(rng.poly_coeffs(degree));
    for (long k = 1; k <= std::min<long>(degree, 8); ++k) {
        const Complex gamma = ortho_coefficient(f, k);
        if (std::abs(gamma) <= tol) continue;
        const double t_star = shifted_norm_squared(f, k) / (2.0 * std::norm(gamma));
        for (double factor : {1.5, 4.0, 16.0}) {
            std::vector<Complex> p(static_cast<std::size_t>(k) + 1);
            p[0] = -factor * t_star * gamma;
            p[static_cast<std::size_t>(k)] = 1.0;
            test(p);
        }
    }
    return out;
}

/// The series sum_{m<=M} <f, z^m f> z^m / w_m. For a multiplier f this is
/// the action of M_f^* M_f on the constant 1, truncated at M; its distance
/// to 1 certifies inner-ness.
inline SeriesFn mstar_mf_one(const SeriesFn& f, long M) {
    const std::vector<double> w = f.weight().table(M);
    std::vector<Complex> c(static_cast<std::size_t>(M) + 1);
    for (long m = 0; m <= M; ++m)
        c[static_cast<std::size_t>(m)] =
            std::conj(ortho_coefficient(f, m)) / w[static_cast<std::size_t>(m)];
    return SeriesFn(f.weight(), std::move(c));
}

inline double mstar_residual(const SeriesFn& f, long M) {
    const SeriesFn r = mstar_mf_one(f, M);
    return norm(sub(r, SeriesFn::constant(f.weight(), 1.0)));
}

/// Value of the extremal problem: the norm of the projection of z^d onto
/// the orthogonal complement of the constraint family. Non-increasing as
/// constraints are added.
inline double extremal_value(const WeightSequence& w, const std::vector<SeriesFn>& constraints,
                             long d) {
    if (d < 0) throw InvalidSpec("extremal degree must be nonnegative");
    return norm(project_complement(SeriesFn::monomial(w, d), constraints));
}

// Caps are finite by necessity: powers above m_ortho and slopes above k_max
// go unchecked, which is what the Inconclusive verdict band accounts for.
struct InnerCheckOptions {
    long m_ortho = 64;  // orthogonality powers tested
    long k_max = 8;     // phi_k slopes fitted for k <= k_max
    long trials = 1000; // random polynomials in the expansive test
    long poly_degree = 8;
    double tol = 1e-8;
    std::uint64_t seed = 0;
};

/// Aggregated diagnostics of all the inner-ness tests.
struct InnerReport {
    double norm_dev = 0.0;
    double ortho_defect = 0.0;
    std::vector<double> phi_k_drift; // fitted slope per k = 1..k_max
    double mstar_residual = 0.0;
    long expansive_violations = 0;
    InnerVerdict verdict = InnerVerdict::Inconclusive;
    double tol = 1e-8;
};

inline InnerReport evaluate_inner(const SeriesFn& f, const InnerCheckOptions& opt = {}) {
    InnerReport rep;
    rep.tol = opt.tol;
    const DefinitionCheck def = check_definition(f, opt.m_ortho, opt.tol);
    rep.norm_dev = def.norm_dev;
    rep.ortho_defect = def.ortho_defect;
    rep.verdict = def.verdict;
    for (long k = 1; k <= opt.k_max; ++k)
        rep.phi_k_drift.push_back(fit_phi_slope(f, k).slope);
    rep.mstar_residual = mstar_residual(f, opt.m_ortho);
    rep.expansive_violations =
        check_expansive_inequality(f, opt.trials, opt.poly_degree, opt.tol, opt.seed)
            .violations;
    return rep;
}

} // namespace homega
