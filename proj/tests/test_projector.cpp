#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "homega/kernels.hpp"
#include "homega/projector.hpp"
#include "homega/random.hpp"

using namespace homega;
using namespace std::complex_literals;

namespace {

// Random unit vector mixing a low-degree polynomial with a kernel.
SeriesFn random_vector(const WeightSequence& w, RandomStream& rng) {
    SeriesFn f = SeriesFn::polynomial(w, rng.poly_coeffs(6), 256);
    if (rng.uniform() < 0.5) {
        const Complex pt = rng.complex_annulus(0.1, 0.7);
        f = add(f, scale(kernel_coeffs(w, {pt, 0}, {256, 1e-9}), rng.complex_box(1.0)));
    }
    return normalize(f);
}

} // namespace

TEST_CASE("gram matrix basics") {
    const WeightSequence w = WeightSequence::dirichlet();
    const GramSystem id = gram_matrix({SeriesFn::basis(w, 0), SeriesFn::basis(w, 1)});
    CHECK(std::abs(id.G(0, 0) - Complex(1.0)) < 1e-15);
    CHECK(std::abs(id.G(1, 1) - Complex(1.0)) < 1e-15);
    CHECK(std::abs(id.G(0, 1)) < 1e-15);
    CHECK(id.det == Catch::Approx(1.0).epsilon(1e-12));
    CHECK(id.rank == 2);

    const WeightSequence h = WeightSequence::hardy();
    const GramSystem k = gram_matrix({kernel_coeffs(h, {0.5, 0})});
    CHECK(k.det == Catch::Approx(4.0 / 3.0).epsilon(1e-12));

    const SeriesFn one = SeriesFn::constant(h, 1.0);
    const GramSystem dep = gram_matrix({one, one});
    CHECK(dep.det <= 1e-12);
    CHECK(dep.rank == 1);
}

TEST_CASE("projection onto the complement") {
    const WeightSequence h = WeightSequence::hardy();

    // Already orthogonal: z stays fixed.
    const SeriesFn z = SeriesFn::monomial(h, 1, 8);
    const SeriesFn pz = project_complement(z, {SeriesFn::constant(h, 1.0)});
    for (long n = 0; n <= 8; ++n)
        CHECK(std::abs(pz.coeff(n) - z.coeff(n)) < 1e-15);

    // Empty span: identity.
    const SeriesFn same = project_complement(z, {});
    CHECK(std::abs(same.coeff(1) - Complex(1.0)) == 0.0);

    // One kernel constraint: 1 - (3/4) K_{0.5}.
    const SeriesFn u =
        project_complement(SeriesFn::constant(h, 1.0), {kernel_coeffs(h, {0.5, 0})});
    CHECK(std::abs(u.coeff(0) - Complex(0.25)) < 1e-12);
    for (long n = 1; n <= 10; ++n)
        CHECK(std::abs(u.coeff(n) + 0.75 * std::pow(0.5, n)) < 1e-12);
}

TEST_CASE("projection postconditions on random systems") {
    RandomStream rng(41);
    for (const WeightSequence& w :
         {WeightSequence::hardy(), WeightSequence::bergman(), WeightSequence::dirichlet()}) {
        for (int trial = 0; trial < 6; ++trial) {
            std::vector<SeriesFn> vs;
            for (int i = 0; i < 3; ++i) vs.push_back(random_vector(w, rng));
            const SeriesFn v = random_vector(w, rng);
            const SeriesFn u = project_complement(v, vs);

            for (const SeriesFn& x : vs)
                CHECK(std::abs(inner_product(u, x)) < 1e-10);

            // v - u lies in the span: projecting it onto the complement kills it.
            const SeriesFn w_res = project_complement(sub(v, u), vs);
            CHECK(norm(w_res) < 1e-9);

            // Pythagoras and idempotence.
            CHECK(norm_squared(v) ==
                  Catch::Approx(norm_squared(u) + norm_squared(sub(v, u))).margin(1e-10));
            const SeriesFn uu = project_complement(u, vs);
            CHECK(norm(sub(uu, u)) < 1e-10);
        }
    }
}

TEST_CASE("shapiro-shields vector") {
    const WeightSequence h = WeightSequence::hardy();
    const SeriesFn one = SeriesFn::constant(h, 1.0);

    // Empty family: the vector itself.
    const SeriesFn d0 = shapiro_shields_vector(one, {});
    CHECK(std::abs(d0.coeff(0) - Complex(1.0)) == 0.0);

    // One constraint: <K,K> 1 - <1,K> K = (4/3) - K_{0.5}.
    const SeriesFn d1 = shapiro_shields_vector(one, {kernel_coeffs(h, {0.5, 0})});
    CHECK(std::abs(d1.coeff(0) - Complex(4.0 / 3.0 - 1.0)) < 1e-12);
    for (long n = 1; n <= 10; ++n)
        CHECK(std::abs(d1.coeff(n) + std::pow(0.5, n)) < 1e-12);

    CHECK_THROWS_AS(
        shapiro_shields_vector(one, std::vector<SeriesFn>(7, SeriesFn::basis(h, 1))),
        UseProjectionPath);
}

TEST_CASE("norm identity and proportionality to the projection") {
    RandomStream rng(43);
    for (int trial = 0; trial < 30; ++trial) {
        const WeightSequence w = trial % 2 == 0 ? WeightSequence::bergman()
                                                : WeightSequence::dirichlet();
        const long s = 1 + trial % 4;
        std::vector<SeriesFn> vs;
        for (long i = 0; i < s; ++i) vs.push_back(random_vector(w, rng));
        const SeriesFn v = random_vector(w, rng);

        const GramSystem sys = gram_matrix(vs);
        CHECK(sys.min_eigenvalue > -1e-10); // numerically PSD
        if (sys.condition > 1e8) continue; // resampling would be overkill
        const SeriesFn d = shapiro_shields_vector(v, vs);

        // ||D||^2 = det(G) <D, v>
        const Complex pairing = inner_product(d, v);
        CHECK(std::abs(Complex(norm_squared(d)) - sys.det * pairing) <
              1e-9 * std::max(1.0, norm_squared(d)));

        // D = det(G) * projection onto the complement
        const SeriesFn u = project_complement(v, vs);
        CHECK(norm(sub(d, scale(u, sys.det))) < 1e-8 * std::max(1.0, norm(d)));
    }
}

TEST_CASE("kernel families at distinct points are independent") {
    RandomStream rng(47);
    for (const WeightSequence& w :
         {WeightSequence::hardy(), WeightSequence::bergman(), WeightSequence::dirichlet()}) {
        for (int trial = 0; trial < 4; ++trial) {
            // Up to 5 separated points, derivative orders up to 2.
            std::vector<Complex> pts;
            while (pts.size() < 5) {
                const Complex cand = rng.complex_annulus(0.05, 0.8);
                bool ok = true;
                for (const Complex& p : pts)
                    if (std::abs(p - cand) < 0.25) ok = false;
                if (ok) pts.push_back(cand);
            }
            std::vector<SeriesFn> vs;
            for (std::size_t j = 0; j < pts.size(); ++j)
                for (long l = 0; l <= static_cast<long>(j % 3); ++l)
                    vs.push_back(normalize(kernel_coeffs(w, {pts[j], l}, {512, 1e-9})));
            const GramSystem sys = gram_matrix(vs);
            CHECK(sys.det > 0.0);
            CHECK(sys.rank == static_cast<long>(vs.size()));
            CHECK(sys.min_eigenvalue > 0.0);
        }
    }
}

TEST_CASE("ill-conditioned systems are refused with diagnostics") {
    const WeightSequence h = WeightSequence::hardy();
    // Two kernels nearly on top of each other.
    const std::vector<SeriesFn> vs = {kernel_coeffs(h, {0.5, 0}),
                                      kernel_coeffs(h, {0.5 + 1e-9, 0})};
    try {
        project_complement(SeriesFn::constant(h, 1.0), vs);
        FAIL("expected an ill-conditioned failure");
    } catch (const IllConditionedGram& e) {
        CHECK(e.condition() > 1e12);
    }
}
