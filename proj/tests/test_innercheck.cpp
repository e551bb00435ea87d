#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "homega/blaschke.hpp"
#include "homega/innercheck.hpp"
#include "homega/kernels.hpp"
#include "homega/random.hpp"

using namespace homega;
using namespace std::complex_literals;

namespace {
const Budget kBudget{1024, 1e-9};

SeriesFn normalized_one_plus_z(const WeightSequence& w) {
    return normalize(SeriesFn::polynomial(w, {1.0, 1.0}, 64));
}
} // namespace

TEST_CASE("definition check") {
    const WeightSequence h = WeightSequence::hardy();

    const DefinitionCheck basis = check_definition(SeriesFn::basis(h, 3), 64);
    CHECK(basis.norm_dev == 0.0);
    CHECK(basis.ortho_defect == 0.0);
    CHECK(basis.verdict == InnerVerdict::Inner);

    const DefinitionCheck factor =
        check_definition(classical_blaschke({0, {{0.5, 1}}}, kBudget), 64);
    CHECK(factor.norm_dev < 1e-9);
    CHECK(factor.ortho_defect < 1e-9);

    // Unnormalized 1+z: <z f, f> = 1.
    const DefinitionCheck bad =
        check_definition(SeriesFn::polynomial(h, {1.0, 1.0}, 8), 16);
    CHECK(bad.ortho_defect == Catch::Approx(1.0));
    CHECK(bad.worst_m == 1);
    CHECK(bad.verdict == InnerVerdict::NotInner);

    CHECK_THROWS_AS(check_definition(SeriesFn::zero(h, 4), 8), ZeroVector);
}

TEST_CASE("defect is non-decreasing in the power cap") {
    RandomStream rng(3);
    const WeightSequence w = WeightSequence::bergman();
    const SeriesFn f(w, rng.poly_coeffs(24));
    double prev = 0.0;
    for (long M : {1L, 2L, 4L, 8L, 16L, 32L}) {
        const double cur = check_definition(f, M).ortho_defect;
        CHECK(cur >= prev);
        prev = cur;
    }
}

TEST_CASE("phi_k along rays") {
    const WeightSequence h = WeightSequence::hardy();

    // For an inner function phi_k is flat in lambda.
    const SeriesFn inner = classical_blaschke({0, {{0.5, 1}}}, kBudget);
    const double base = phi_k(inner, 1, 0.0);
    for (const Complex& l : {Complex(1.0), Complex(0.0, 2.0), Complex(-3.0, 1.0)})
        CHECK(phi_k(inner, 1, l) == Catch::Approx(base).margin(1e-10));
    CHECK(base == Catch::Approx(shifted_norm_squared(inner, 1)));

    // Raw and reduced forms agree on unit vectors.
    const SeriesFn f = normalized_one_plus_z(h);
    for (const Complex& l : {Complex(0.7), Complex(0.0, -1.3), Complex(2.0, 2.0)})
        CHECK(std::abs(phi_k_raw(f, 1, l) - phi_k(f, 1, l)) < 1e-10);

    // The fitted slope recovers 2 |<z^k f, f>|^2; here <zf, f> = 1/2.
    const PhiSlopeFit fit = fit_phi_slope(f, 1);
    CHECK(std::abs(fit.gamma - Complex(0.5)) < 1e-12);
    CHECK(fit.slope == Catch::Approx(0.5).margin(1e-9));

    // Degree-1 function: pairings vanish for k >= 2, so the ray degenerates.
    CHECK(fit_phi_slope(f, 2).slope == 0.0);
}

TEST_CASE("slope recovery on random functions") {
    RandomStream rng(9);
    for (const WeightSequence& w :
         {WeightSequence::hardy(), WeightSequence::dirichlet()}) {
        for (int trial = 0; trial < 10; ++trial) {
            const SeriesFn f = normalize(SeriesFn(w, rng.poly_coeffs(12)));
            for (long k : {1L, 2L, 3L}) {
                const PhiSlopeFit fit = fit_phi_slope(f, k);
                const double expect = 2.0 * std::norm(ortho_coefficient(f, k));
                CHECK(fit.slope == Catch::Approx(expect).margin(1e-9));
            }
        }
    }
}

TEST_CASE("expansive inequality sampling") {
    const WeightSequence h = WeightSequence::hardy();

    const ExpansiveCheck one = check_expansive_inequality(SeriesFn::constant(h, 1.0),
                                                          500, 6);
    CHECK(one.violations == 0);

    const InnerFunctionResult berg =
        construct_blaschke_analogue(WeightSequence::bergman(), {0, {{0.5, 1}}}, kBudget);
    const ExpansiveCheck inner_check = check_expansive_inequality(berg.B, 1000, 8);
    CHECK(inner_check.violations == 0);

    // Normalized 1+z: |p(0)| > ||p f|| for p = 1 - z/2.
    const SeriesFn f = normalized_one_plus_z(h);
    const SeriesFn pf = mul(SeriesFn::polynomial(h, {1.0, -0.5}, 64), f);
    CHECK(norm(pf) == Catch::Approx(std::sqrt(0.75)).epsilon(1e-12));
    CHECK(1.0 > norm(pf) + 1e-8);

    // p = 1 - z sits exactly on the boundary of the inequality.
    const SeriesFn qf = mul(SeriesFn::polynomial(h, {1.0, -1.0}, 64), f);
    CHECK(norm(qf) == Catch::Approx(1.0).epsilon(1e-12));

    const ExpansiveCheck bad = check_expansive_inequality(f, 1000, 8);
    CHECK(bad.violations > 0);
    REQUIRE(bad.example.has_value());
}

TEST_CASE("action of the multiplier square on constants") {
    const WeightSequence w = WeightSequence::dirichlet();

    // Basis elements give back the constant 1 on the nose.
    const SeriesFn r = mstar_mf_one(SeriesFn::basis(w, 3), 32);
    CHECK(std::abs(r.coeff(0) - Complex(1.0)) < 1e-15);
    for (long m = 1; m <= 32; ++m) CHECK(std::abs(r.coeff(m)) == 0.0);
    CHECK(mstar_residual(SeriesFn::basis(w, 3), 32) < 1e-15);

    const WeightSequence h = WeightSequence::hardy();
    CHECK(mstar_residual(classical_blaschke({0, {{0.5, 1}}}, kBudget), 64) < 1e-8);

    // Normalized 1+z: the z coefficient is <f, z f> / w_1 = 1/2.
    const SeriesFn bad = mstar_mf_one(normalized_one_plus_z(h), 16);
    CHECK(std::abs(bad.coeff(1) - Complex(0.5)) < 1e-12);
    CHECK(mstar_residual(normalized_one_plus_z(h), 16) ==
          Catch::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("extremal problem values") {
    const WeightSequence h = WeightSequence::hardy();
    CHECK(extremal_value(h, {}, 0) == Catch::Approx(1.0));

    // One kernel constraint at 0.5: sqrt(1 - 3/4) = 1/2.
    CHECK(extremal_value(h, {kernel_coeffs(h, {0.5, 0}, kBudget)}, 0) ==
          Catch::Approx(0.5).epsilon(1e-12));

    // Adding constraints can only lower the value.
    RandomStream rng(13);
    const WeightSequence w = WeightSequence::bergman();
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<SeriesFn> family;
        double prev = extremal_value(w, family, 1);
        for (int i = 0; i < 4; ++i) {
            family.push_back(
                kernel_coeffs(w, {rng.complex_annulus(0.15, 0.7), i % 2}, {256, 1e-9}));
            const double cur = extremal_value(w, family, 1);
            CHECK(cur <= prev + 1e-10);
            prev = cur;
        }
    }
}

TEST_CASE("norm recovery from the quadratic growth of phi") {
    RandomStream rng(17);
    const WeightSequence w = WeightSequence::dirichlet();
    for (int trial = 0; trial < 5; ++trial) {
        const SeriesFn f(w, rng.poly_coeffs(10));
        for (long k : {1L, 3L}) {
            const double big = 1e6;
            const double ratio = (phi_k_raw(f, k, big) + big * big) / (big * big);
            CHECK(ratio == Catch::Approx(norm_squared(f)).margin(1e-4));
        }
    }
}

TEST_CASE("verdict bands") {
    const WeightSequence h = WeightSequence::hardy();
    const InnerCheckOptions opt;

    const InnerFunctionResult res = construct_blaschke_analogue(h, {0, {{0.5, 1}}}, kBudget);
    CHECK(evaluate_inner(res.B, opt).verdict == InnerVerdict::Inner);

    CHECK(evaluate_inner(normalized_one_plus_z(h), opt).verdict == InnerVerdict::NotInner);

    // A defect inside [tol, 100 tol] cannot be distinguished from truncation.
    const double eps = 5e-8;
    const SeriesFn fuzzy = normalize(
        add(SeriesFn::monomial(h, 3, 8), scale(SeriesFn::monomial(h, 1, 8), eps)));
    const InnerReport rep = evaluate_inner(fuzzy, opt);
    CHECK(rep.ortho_defect > opt.tol);
    CHECK(rep.ortho_defect < 100.0 * opt.tol);
    CHECK(rep.verdict == InnerVerdict::Inconclusive);
}

TEST_CASE("the four tests agree on a mixed corpus") {
    InnerCheckOptions opt;
    opt.trials = 400;

    std::vector<SeriesFn> inner, not_inner;
    const std::vector<WeightSequence> weights = {
        WeightSequence::hardy(), WeightSequence::bergman(), WeightSequence::dirichlet(),
        WeightSequence::power_kernel(3.0),
        WeightSequence::perturbed(WeightSequence::dirichlet(), {{1, std::sqrt(2.0)}})};
    const std::vector<BlaschkeSpec> specs = {
        {0, {{0.5, 1}}},
        {1, {{-0.35 + 0.25i, 1}}},
        {0, {{0.45, 2}}},
        {3, {}},
        {0, {{0.6i, 1}, {-0.5, 1}}}};

    for (const WeightSequence& w : weights) {
        for (const BlaschkeSpec& spec : specs)
            inner.push_back(construct_blaschke_analogue(w, spec, kBudget).B);
        for (long k : {1L, 4L}) inner.push_back(SeriesFn::basis(w, k, 32));
    }
    inner.push_back(classical_blaschke({0, {{0.3, 1}, {-0.6, 2}}}, kBudget));

    for (std::size_t i = 0; i < inner.size(); i += 3) {
        // Perturb along e_7, which never coincides with a corpus monomial.
        not_inner.push_back(normalize(
            add(inner[i], scale(SeriesFn::basis(inner[i].weight(), 7, 32), 0.05))));
    }
    for (const WeightSequence& w : weights)
        not_inner.push_back(normalized_one_plus_z(w));

    CHECK(inner.size() + not_inner.size() >= 50);

    for (const SeriesFn& f : inner) {
        const InnerReport rep = evaluate_inner(f, opt);
        CHECK(rep.verdict == InnerVerdict::Inner);
        for (double s : rep.phi_k_drift) CHECK(std::abs(s) < 1e-9);
        CHECK(rep.expansive_violations == 0);
        CHECK(rep.mstar_residual < 1e-8);
    }
    for (const SeriesFn& f : not_inner) {
        const InnerReport rep = evaluate_inner(f, opt);
        CHECK(rep.verdict == InnerVerdict::NotInner);
        double worst = 0.0;
        for (double s : rep.phi_k_drift) worst = std::max(worst, std::abs(s));
        CHECK(worst > 1e-9);
        CHECK(rep.expansive_violations > 0);
        CHECK(rep.mstar_residual > 1e-8);
    }
}
