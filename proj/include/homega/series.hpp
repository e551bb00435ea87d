#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "homega/errors.hpp"
#include "homega/weights.hpp"

namespace homega {

using Complex = std::complex<double>;

/// Truncation budget shared by the series-producing operations.
struct Budget {
    long N = 2048;          // series are carried as coefficients a_0..a_N
    double tail_tol = 1e-9; // declared bound on the discarded tail mass

    void validate() const {
        if (N < 16) throw InvalidSpec("budget N must be >= 16");
        if (!(tail_tol > 0.0)) throw InvalidSpec("budget tail_tol must be positive");
    }
};

/// A truncated power series a_0 + a_1 z + ... + a_N z^N together with the
/// weight sequence of the space it lives in. Values are immutable; all
/// operations below are pure functions.
class SeriesFn {
public:
    SeriesFn(WeightSequence weight, std::vector<Complex> coeffs)
        : weight_(std::move(weight)), coeffs_(std::move(coeffs)) {
        if (coeffs_.empty())
            throw InvalidSpec("a series needs at least one coefficient");
    }

    static SeriesFn zero(const WeightSequence& w, long degree = 0) {
        return SeriesFn(w, std::vector<Complex>(static_cast<std::size_t>(degree) + 1));
    }

    static SeriesFn constant(const WeightSequence& w, Complex c) {
        return SeriesFn(w, {c});
    }

    /// z^k, truncated at degree max(k, degree).
    static SeriesFn monomial(const WeightSequence& w, long k, long degree = -1) {
        if (k < 0) throw InvalidSpec("monomial power must be nonnegative");
        const long n = std::max(k, degree);
        std::vector<Complex> c(static_cast<std::size_t>(n) + 1);
        c[static_cast<std::size_t>(k)] = 1.0;
        return SeriesFn(w, std::move(c));
    }

    /// The orthonormal basis element e_k = z^k / sqrt(w_k).
    static SeriesFn basis(const WeightSequence& w, long k, long degree = -1) {
        SeriesFn f = monomial(w, k, degree);
        f.coeffs_[static_cast<std::size_t>(k)] = 1.0 / std::sqrt(w.eval(k));
        return f;
    }

    static SeriesFn polynomial(const WeightSequence& w, std::vector<Complex> coeffs,
                               long degree = -1) {
        if (degree >= 0)
            coeffs.resize(static_cast<std::size_t>(degree) + 1, Complex(0.0));
        return SeriesFn(w, std::move(coeffs));
    }

    const WeightSequence& weight() const noexcept { return weight_; }
    const std::vector<Complex>& coeffs() const noexcept { return coeffs_; }
    long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }

    Complex coeff(long n) const {
        if (n < 0 || n > degree()) return Complex(0.0);
        return coeffs_[static_cast<std::size_t>(n)];
    }

private:
    WeightSequence weight_;
    std::vector<Complex> coeffs_;
};

inline void require_same_space(const SeriesFn& f, const SeriesFn& g) {
    if (f.weight() != g.weight())
        throw SpaceMismatch("series live in different spaces: " + f.weight().label() +
                            " vs " + g.weight().label());
}

/// <f, g> = sum_n w_n a_n conj(b_n). The shorter series is zero-padded.
inline Complex inner_product(const SeriesFn& f, const SeriesFn& g) {
    require_same_space(f, g);
    const long n = std::min(f.degree(), g.degree());
    const std::vector<double> w = f.weight().table(n);
    Complex acc(0.0);
    for (long k = 0; k <= n; ++k)
        acc += w[static_cast<std::size_t>(k)] * f.coeff(k) * std::conj(g.coeff(k));
    return acc;
}

inline double norm_squared(const SeriesFn& f) {
    const long n = f.degree();
    const std::vector<double> w = f.weight().table(n);
    double acc = 0.0;
    for (long k = 0; k <= n; ++k)
        acc += w[static_cast<std::size_t>(k)] * std::norm(f.coeff(k));
    return acc;
}

inline double norm(const SeriesFn& f) { return std::sqrt(norm_squared(f)); }

inline SeriesFn scale(const SeriesFn& f, Complex c) {
    std::vector<Complex> out = f.coeffs();
    for (Complex& x : out) x *= c;
    return SeriesFn(f.weight(), std::move(out));
}

inline SeriesFn normalize(const SeriesFn& f) {
    const double n = norm(f);
    if (n == 0.0) throw ZeroVector("cannot normalize the zero function");
    return scale(f, 1.0 / n);
}

inline SeriesFn add(const SeriesFn& f, const SeriesFn& g) {
    require_same_space(f, g);
    std::vector<Complex> out(static_cast<std::size_t>(std::max(f.degree(), g.degree())) + 1);
    for (long k = 0; k < static_cast<long>(out.size()); ++k)
        out[static_cast<std::size_t>(k)] = f.coeff(k) + g.coeff(k);
    return SeriesFn(f.weight(), std::move(out));
}

inline SeriesFn sub(const SeriesFn& f, const SeriesFn& g) {
    return add(f, scale(g, -1.0));
}

/// Cauchy product truncated to the larger of the two budgets; exact when
/// deg f + deg g fits inside it.
inline SeriesFn mul(const SeriesFn& f, const SeriesFn& g) {
    require_same_space(f, g);
    const long n = std::max(f.degree(), g.degree());
    std::vector<Complex> out(static_cast<std::size_t>(n) + 1);
    for (long i = 0; i <= f.degree(); ++i) {
        const Complex fi = f.coeff(i);
        if (fi == Complex(0.0)) continue;
        const long jmax = std::min(g.degree(), n - i);
        for (long j = 0; j <= jmax; ++j)
            out[static_cast<std::size_t>(i + j)] += fi * g.coeff(j);
    }
    return SeriesFn(f.weight(), std::move(out));
}

/// z^m f, extending the budget by m.
inline SeriesFn shift_up(const SeriesFn& f, long m) {
    if (m < 0) throw InvalidSpec("shift power must be nonnegative");
    std::vector<Complex> out(static_cast<std::size_t>(f.degree() + m) + 1);
    for (long k = 0; k <= f.degree(); ++k)
        out[static_cast<std::size_t>(k + m)] = f.coeff(k);
    return SeriesFn(f.weight(), std::move(out));
}

/// f with the first m coefficients removed (division by z^m, assuming the
/// dropped coefficients vanish).
inline SeriesFn shift_down(const SeriesFn& f, long m) {
    if (m < 0) throw InvalidSpec("shift power must be nonnegative");
    if (m == 0) return f;
    std::vector<Complex> out;
    for (long k = m; k <= f.degree(); ++k) out.push_back(f.coeff(k));
    if (out.empty()) out.push_back(Complex(0.0));
    return SeriesFn(f.weight(), std::move(out));
}

inline SeriesFn truncate(const SeriesFn& f, long degree) {
    if (degree < 0) throw InvalidSpec("truncation degree must be nonnegative");
    std::vector<Complex> out(f.coeffs().begin(),
                             f.coeffs().begin() + std::min<long>(degree + 1, f.degree() + 1));
    out.resize(static_cast<std::size_t>(degree) + 1, Complex(0.0));
    return SeriesFn(f.weight(), std::move(out));
}

namespace detail {
inline void require_in_closed_disk(Complex z) {
    // Boundary evaluation is allowed but truncation-approximate.
    if (std::abs(z) > 1.0 + 1e-12)
        throw OutsideDomain("evaluation point lies outside the closed unit disk");
}
} // namespace detail

/// Horner evaluation of the truncated series at |z| <= 1.
inline Complex eval(const SeriesFn& f, Complex z) {
    detail::require_in_closed_disk(z);
    Complex acc(0.0);
    for (long k = f.degree(); k >= 0; --k) acc = acc * z + f.coeff(k);
    return acc;
}

/// l-th derivative of the truncated series at |z| <= 1.
inline Complex eval_deriv(const SeriesFn& f, Complex z, long l) {
    if (l < 0) throw InvalidSpec("derivative order must be nonnegative");
    if (l == 0) return eval(f, z);
    detail::require_in_closed_disk(z);
    if (l > f.degree()) return Complex(0.0);
    // Horner on the coefficients of f^(l): a_n * n!/(n-l)!.
    Complex acc(0.0);
    for (long n = f.degree(); n >= l; --n) {
        double fall = 1.0;
        for (long j = 0; j < l; ++j) fall *= static_cast<double>(n - j);
        acc = acc * z + fall * f.coeff(n);
    }
    return acc;
}

} // namespace homega
