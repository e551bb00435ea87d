#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "homega/errors.hpp"

namespace homega {

enum class WeightKind { Hardy, Bergman, Dirichlet, PowerKernel, Explicit, Perturbed };

/// A positive weight sequence w_0, w_1, ... with w_0 = 1. The sequence fixes
/// the inner product on the space of power series: ||f||^2 = sum w_n |a_n|^2.
///
/// Builtin kinds:
///   Hardy       w_n = 1
///   Bergman     w_n = 1/(n+1)
///   Dirichlet   w_n = n+1
///   PowerKernel w_n = 1/binom(n+gamma-1, n), the weight whose reproducing
///               kernel is (1 - conj(lambda) z)^{-gamma}
///
/// Explicit sequences are given as a finite list (extended by their last
/// value past the end) and Perturbed sequences override a base kind at
/// finitely many indices. Both are gated by a consecutive-ratio sanity
/// check on a tail window; the gate rejects wildly irregular inputs but is
/// not a proof of regularity.
class WeightSequence {
public:
    static constexpr long kRatioWindow = 1024;
    static constexpr double kRatioTol = 0.5;

    static WeightSequence hardy() { return WeightSequence(WeightKind::Hardy); }
    static WeightSequence bergman() { return WeightSequence(WeightKind::Bergman); }
    static WeightSequence dirichlet() { return WeightSequence(WeightKind::Dirichlet); }

    static WeightSequence power_kernel(double gamma) {
        if (!(gamma > 0.0))
            throw InvalidWeight("power kernel weight requires gamma > 0");
        WeightSequence w(WeightKind::PowerKernel);
        w.gamma_ = gamma;
        return w;
    }

    /// Builds an explicit sequence. Lists not starting at 1 are rescaled by
    /// 1/w_0 and the rescaling is reported through was_rescaled().
    static WeightSequence explicit_list(std::vector<double> omega) {
        if (omega.empty())
            throw InvalidWeight("explicit weight list must be nonempty");
        for (std::size_t n = 0; n < omega.size(); ++n)
            if (!(omega[n] > 0.0) || !std::isfinite(omega[n]))
                throw InvalidWeight("explicit weight entry w_" + std::to_string(n) +
                                    " must be positive and finite");
        WeightSequence w(WeightKind::Explicit);
        bool rescaled = omega[0] != 1.0;
        if (rescaled) {
            const double w0 = omega[0];
            for (double& x : omega) x /= w0;
        }
        w.omega_ = std::make_shared<const std::vector<double>>(std::move(omega));
        w.rescaled_ = rescaled;
        w.check_ratio_condition();
        return w;
    }

    static WeightSequence perturbed(const WeightSequence& base, std::map<long, double> overrides) {
        for (const auto& [n, v] : overrides) {
            if (n < 0)
                throw InvalidWeight("override index must be nonnegative");
            if (n == 0 && v != 1.0)
                throw InvalidWeight("w_0 is normalized to 1 and cannot be overridden");
            if (!(v > 0.0) || !std::isfinite(v))
                throw InvalidWeight("override w_" + std::to_string(n) +
                                    " must be positive and finite");
        }
        WeightSequence w(WeightKind::Perturbed);
        w.base_ = std::make_shared<const WeightSequence>(base);
        w.overrides_ = std::make_shared<const std::map<long, double>>(std::move(overrides));
        w.check_ratio_condition();
        return w;
    }

    WeightKind kind() const noexcept { return kind_; }
    double gamma() const noexcept { return gamma_; }
    bool was_rescaled() const noexcept { return rescaled_; }
    const WeightSequence* base() const noexcept { return base_ ? base_.get() : nullptr; }
    const std::map<long, double>& overrides() const {
        static const std::map<long, double> empty;
        return overrides_ ? *overrides_ : empty;
    }
    const std::vector<double>& explicit_values() const {
        static const std::vector<double> empty;
        return omega_ ? *omega_ : empty;
    }

    /// w_n. Always positive; w_0 == 1.
    double eval(long n) const {
        if (n < 0)
            throw InvalidWeight("weight index must be nonnegative");
        switch (kind_) {
            case WeightKind::Hardy: return 1.0;
            case WeightKind::Bergman: return 1.0 / static_cast<double>(n + 1);
            case WeightKind::Dirichlet: return static_cast<double>(n + 1);
            case WeightKind::PowerKernel: {
                // w_n = w_{n-1} * n / (n + gamma - 1), w_0 = 1.
                double w = 1.0;
                for (long k = 1; k <= n; ++k)
                    w *= static_cast<double>(k) / (static_cast<double>(k) + gamma_ - 1.0);
                return w;
            }
            case WeightKind::Explicit: {
                const auto& v = *omega_;
                const auto idx = static_cast<std::size_t>(n);
                return idx < v.size() ? v[idx] : v.back();
            }
            case WeightKind::Perturbed: {
                auto it = overrides_->find(n);
                return it != overrides_->end() ? it->second : base_->eval(n);
            }
        }
        throw InvalidWeight("unknown weight kind");
    }

    /// w_0 .. w_nmax as a dense table; the preferred access path in loops.
    std::vector<double> table(long nmax) const {
        std::vector<double> t(static_cast<std::size_t>(nmax) + 1);
        if (kind_ == WeightKind::PowerKernel) {
            t[0] = 1.0;
            for (long k = 1; k <= nmax; ++k)
                t[static_cast<std::size_t>(k)] =
                    t[static_cast<std::size_t>(k - 1)] * static_cast<double>(k) /
                    (static_cast<double>(k) + gamma_ - 1.0);
            return t;
        }
        if (kind_ == WeightKind::Perturbed) {
            t = base_->table(nmax);
            for (const auto& [n, v] : *overrides_)
                if (n <= nmax) t[static_cast<std::size_t>(n)] = v;
            return t;
        }
        for (long n = 0; n <= nmax; ++n) t[static_cast<std::size_t>(n)] = eval(n);
        return t;
    }

    bool operator==(const WeightSequence& other) const {
        if (kind_ != other.kind_) return false;
        switch (kind_) {
            case WeightKind::PowerKernel: return gamma_ == other.gamma_;
            case WeightKind::Explicit: return *omega_ == *other.omega_;
            case WeightKind::Perturbed:
                return *base_ == *other.base_ && *overrides_ == *other.overrides_;
            default: return true;
        }
    }
    bool operator!=(const WeightSequence& other) const { return !(*this == other); }

    std::string label() const {
        switch (kind_) {
            case WeightKind::Hardy: return "hardy";
            case WeightKind::Bergman: return "bergman";
            case WeightKind::Dirichlet: return "dirichlet";
            case WeightKind::PowerKernel: {
                std::ostringstream os;
                os << "power(" << gamma_ << ")";
                return os.str();
            }
            case WeightKind::Explicit:
                return "explicit[" + std::to_string(omega_->size()) + "]";
            case WeightKind::Perturbed: {
                std::ostringstream os;
                os << "perturbed(" << base_->label();
                for (const auto& [n, v] : *overrides_) os << ";" << n << ":" << v;
                os << ")";
                return os.str();
            }
        }
        return "?";
    }

private:
    explicit WeightSequence(WeightKind kind) : kind_(kind) {}

    // Ratio gate for Explicit/Perturbed sequences: consecutive ratios must
    // stay within [1 - kRatioTol, 1 + kRatioTol] on the tail half of the
    // window. Finite data cannot certify the asymptotic condition; this is
    // a sanity gate only.
    void check_ratio_condition() const {
        long hi = kRatioWindow;
        if (kind_ == WeightKind::Explicit)
            hi = std::min<long>(hi, static_cast<long>(omega_->size()) - 1);
        if (hi < 2) return;
        const std::vector<double> t = table(hi);
        for (long n = hi / 2; n < hi; ++n) {
            const double ratio = t[static_cast<std::size_t>(n + 1)] / t[static_cast<std::size_t>(n)];
            if (ratio < 1.0 - kRatioTol || ratio > 1.0 + kRatioTol)
                throw WeightConditionViolation("weight ratio w_{n+1}/w_n out of tolerance", n);
        }
    }

    WeightKind kind_;
    double gamma_ = 0.0;
    bool rescaled_ = false;
    std::shared_ptr<const std::vector<double>> omega_;
    std::shared_ptr<const WeightSequence> base_;
    std::shared_ptr<const std::map<long, double>> overrides_;
};

/// Result of the windowed monomial multiplier norm
///   ||M_{z^m}|| = sup_n sqrt(w_{n+m} / w_n).
/// When the supremum lands on the window edge the true value may lie
/// beyond it, and the result is flagged possibly_truncated.
struct MultiplierNorm {
    double value = 0.0;
    long attained_at = 0;
    bool possibly_truncated = false;
};

inline MultiplierNorm monomial_multiplier_norm(const WeightSequence& w, long m, long window) {
    if (m < 1) throw InvalidSpec("multiplier power m must be >= 1");
    if (window < 1) throw InvalidSpec("window must be >= 1");
    const std::vector<double> t = w.table(window + m);
    MultiplierNorm out;
    double best = -1.0;
    for (long n = 0; n <= window; ++n) {
        const double r = t[static_cast<std::size_t>(n + m)] / t[static_cast<std::size_t>(n)];
        if (r > best) {
            best = r;
            out.attained_at = n;
        }
    }
    out.value = std::sqrt(best);
    out.possibly_truncated = (out.attained_at == window);
    return out;
}

enum class MonomialClass { Contractive, Expansive, Both, Neither };

/// Window-verified classification of the monomial inner function
/// e_k = z^k / sqrt(w_k) as a multiplier:
///   contractive  iff  w_{n+k} <= w_n w_k  for all n in the window,
///   expansive    iff  w_{n+k} >= w_n w_k  for all n in the window.
/// Witnesses record the first index violating each failed direction.
struct MonomialClassification {
    MonomialClass verdict = MonomialClass::Neither;
    std::optional<long> contractive_witness;
    std::optional<long> expansive_witness;
};

inline MonomialClassification classify_monomial_inner(const WeightSequence& w, long k,
                                                      long window = 1024) {
    if (k < 1) throw InvalidSpec("monomial power k must be >= 1");
    if (window < 1) throw InvalidSpec("window must be >= 1");
    const std::vector<double> t = w.table(window + k);
    const double wk = t[static_cast<std::size_t>(k)];
    constexpr double rel = 1e-12; // equality margin so exact ties count both ways
    MonomialClassification out;
    for (long n = 0; n <= window; ++n) {
        const double lhs = t[static_cast<std::size_t>(n + k)];
        const double rhs = t[static_cast<std::size_t>(n)] * wk;
        const double slack = rel * std::max(lhs, rhs);
        if (lhs > rhs + slack && !out.contractive_witness) out.contractive_witness = n;
        if (lhs < rhs - slack && !out.expansive_witness) out.expansive_witness = n;
    }
    const bool contractive = !out.contractive_witness;
    const bool expansive = !out.expansive_witness;
    if (contractive && expansive) out.verdict = MonomialClass::Both;
    else if (contractive) out.verdict = MonomialClass::Contractive;
    else if (expansive) out.verdict = MonomialClass::Expansive;
    else out.verdict = MonomialClass::Neither;
    return out;
}

} // namespace homega
