#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "homega/errors.hpp"
#include "homega/series.hpp"
#include "homega/weights.hpp"

namespace homega {

/// Names the kernel K^(l)_lambda: the l-th conjugate derivative of the
/// reproducing kernel, which reproduces the l-th derivative:
/// <h, K^(l)_lambda> = h^(l)(lambda).
struct KernelSpec {
    Complex lambda;
    long deriv_order = 0;
};

/// Default cap on derivative orders. Higher orders still converge but the
/// downstream Gram systems condition badly; callers may raise the cap.
inline constexpr long kDefaultMaxDerivOrder = 8;

inline void validate_kernel_spec(const KernelSpec& spec,
                                 long max_order = kDefaultMaxDerivOrder) {
    if (std::abs(spec.lambda) >= 1.0)
        throw OutsideDomain("kernel point must lie strictly inside the unit disk");
    if (spec.deriv_order < 0)
        throw InvalidSpec("derivative order must be nonnegative");
    if (spec.deriv_order > max_order)
        throw InvalidSpec("derivative order exceeds the configured cap of " +
                          std::to_string(max_order));
}

namespace detail {
// Falling factorial n (n-1) ... (n-l+1) as a double.
inline double falling(long n, long l) {
    double p = 1.0;
    for (long j = 0; j < l; ++j) p *= static_cast<double>(n - j);
    return p;
}

inline double binom(long n, long k) {
    double p = 1.0;
    for (long j = 1; j <= k; ++j)
        p *= static_cast<double>(n - k + j) / static_cast<double>(j);
    return p;
}

inline Complex ipow(Complex z, long n) {
    Complex p(1.0);
    for (long j = 0; j < n; ++j) p *= z;
    return p;
}
} // namespace detail

/// Coefficients of K^(l)_lambda: the z^n coefficient is
/// (n)_l conj(lambda)^{n-l} / w_n for n >= l and zero below. The series is
/// generated coefficient-wise, never by numerical differentiation.
inline SeriesFn kernel_coeffs(const WeightSequence& w, const KernelSpec& spec,
                              const Budget& budget = {}) {
    validate_kernel_spec(spec);
    budget.validate();
    const long l = spec.deriv_order;
    const Complex lbar = std::conj(spec.lambda);
    const std::vector<double> wt = w.table(budget.N);
    std::vector<Complex> c(static_cast<std::size_t>(budget.N) + 1);
    Complex pow_lbar(1.0); // conj(lambda)^{n-l}
    for (long n = l; n <= budget.N; ++n) {
        c[static_cast<std::size_t>(n)] =
            detail::falling(n, l) * pow_lbar / wt[static_cast<std::size_t>(n)];
        pow_lbar *= lbar;
    }
    return SeriesFn(w, std::move(c));
}

/// Geometric estimate of the coefficient mass dropped past the budget,
/// sum_{n>N} (n)_l |lambda|^{n-l} / w_n, using the measured ratio of the
/// last terms. Reported for diagnostics; the estimate is conservative for
/// the builtin kinds.
inline double kernel_tail_bound(const WeightSequence& w, const KernelSpec& spec,
                                long N) {
    validate_kernel_spec(spec);
    const long l = spec.deriv_order;
    const double r = std::abs(spec.lambda);
    if (r == 0.0) return 0.0;
    const double wN = w.eval(N);
    const double wN1 = w.eval(N + 1);
    const double term_N1 = detail::falling(N + 1, l) * std::pow(r, N + 1 - l) / wN1;
    // Ratio of consecutive terms at the window edge, padded for slow decay.
    double q = r * (static_cast<double>(N + 2) / static_cast<double>(N + 2 - l)) *
               (wN / wN1);
    q = std::min(q * 1.05, 0.999999);
    return term_N1 / (1.0 - q);
}

/// <K^(l1)_{lambda1}, K^(l2)_{lambda2}> by direct series summation:
/// sum_n (n)_{l1} (n)_{l2} conj(lambda1)^{n-l1} lambda2^{n-l2} / w_n.
inline Complex kernel_gram_entry(const WeightSequence& w, const KernelSpec& s1,
                                 const KernelSpec& s2, const Budget& budget = {}) {
    validate_kernel_spec(s1);
    validate_kernel_spec(s2);
    budget.validate();
    const long l1 = s1.deriv_order, l2 = s2.deriv_order;
    const long n0 = std::max(l1, l2);
    const Complex a = std::conj(s1.lambda);
    const Complex b = s2.lambda;
    const std::vector<double> wt = w.table(budget.N);
    Complex acc(0.0);
    Complex pa = detail::ipow(a, n0 - l1);
    Complex pb = detail::ipow(b, n0 - l2);
    for (long n = n0; n <= budget.N; ++n) {
        acc += detail::falling(n, l1) * detail::falling(n, l2) * pa * pb /
               wt[static_cast<std::size_t>(n)];
        pa *= a;
        pb *= b;
    }
    return acc;
}

/// Adjoint action of multiplication by f on a derivative kernel:
///   M_f^* K^(l)_lambda = sum_j binom(l, j) conj(f^(j)(lambda)) K^(l-j)_lambda.
inline SeriesFn adjoint_on_kernel(const SeriesFn& f, const KernelSpec& spec,
                                  const Budget& budget = {}) {
    validate_kernel_spec(spec);
    budget.validate();
    const long l = spec.deriv_order;
    SeriesFn acc = SeriesFn::zero(f.weight(), budget.N);
    for (long j = 0; j <= l; ++j) {
        const Complex cj =
            detail::binom(l, j) * std::conj(eval_deriv(f, spec.lambda, j));
        if (cj == Complex(0.0)) continue;
        acc = add(acc, scale(kernel_coeffs(f.weight(), {spec.lambda, l - j}, budget), cj));
    }
    return acc;
}

} // namespace homega
