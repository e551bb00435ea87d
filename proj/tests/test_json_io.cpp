#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "homega/json_io.hpp"

using namespace homega;
using namespace std::complex_literals;
using nlohmann::json;

TEST_CASE("weight descriptors round-trip") {
    const std::vector<WeightSequence> all = {
        WeightSequence::hardy(),
        WeightSequence::bergman(),
        WeightSequence::dirichlet(),
        WeightSequence::power_kernel(3.5),
        WeightSequence::explicit_list({1.0, 2.0, 2.5}),
        WeightSequence::perturbed(WeightSequence::dirichlet(), {{1, std::sqrt(2.0)}}),
    };
    for (const WeightSequence& w : all) {
        const WeightSequence back = weight_from_json(weight_to_json(w));
        CHECK(back == w);
        for (long n = 0; n <= 20; ++n) CHECK(back.eval(n) == w.eval(n));
    }
}

TEST_CASE("weight descriptors from literal JSON") {
    const WeightSequence w = weight_from_json(json::parse(
        R"({"kind":"perturbed","base":{"kind":"dirichlet"},"overrides":{"1":1.4142135623730951}})"));
    CHECK(w.eval(1) == Catch::Approx(std::sqrt(2.0)));
    CHECK(w.eval(2) == 3.0);

    CHECK_THROWS_AS(weight_from_json(json::parse(R"({"kind":"lebesgue"})")), InvalidSpec);
    CHECK_THROWS_AS(weight_from_json(json::parse(R"({"kind":"power"})")), InvalidSpec);
    CHECK_THROWS_AS(weight_from_json(json::parse(R"({"gamma":2})")), InvalidSpec);
    CHECK_THROWS_AS(weight_from_json(json::parse(R"({"kind":"explicit","omega":[1,"x"]})")),
                    InvalidSpec);

    // Field names surface in the error message.
    try {
        weight_from_json(json::parse(R"({"kind":"explicit"})"));
        FAIL("expected an error");
    } catch (const InvalidSpec& e) {
        CHECK(std::string(e.what()).find("omega") != std::string::npos);
    }
}

TEST_CASE("series round-trip") {
    const WeightSequence w = WeightSequence::bergman();
    const SeriesFn f = SeriesFn::polynomial(w, {1.0 + 2.0i, -0.25, 0.0, 3.0i}, 6);
    const SeriesFn back = series_from_json(series_to_json(f));
    CHECK(back.weight() == w);
    CHECK(back.degree() == f.degree());
    for (long n = 0; n <= f.degree(); ++n) CHECK(back.coeff(n) == f.coeff(n));

    CHECK_THROWS_AS(series_from_json(json::parse(R"({"coeffs":[[1,0]]})")), InvalidSpec);
    CHECK_THROWS_AS(
        series_from_json(json::parse(R"({"weight":{"kind":"hardy"},"coeffs":[]})")),
        InvalidSpec);
    CHECK_THROWS_AS(
        series_from_json(json::parse(R"({"weight":{"kind":"hardy"},"coeffs":[[1]]})")),
        InvalidSpec);
}

TEST_CASE("zero prescriptions round-trip") {
    const BlaschkeSpec spec{2, {{0.5, 2}, {-0.3 + 0.25i, 1}}};
    const BlaschkeSpec back = blaschke_spec_from_json(blaschke_spec_to_json(spec));
    CHECK(back.d0 == 2);
    REQUIRE(back.zeros.size() == 2);
    CHECK(back.zeros[0].z == spec.zeros[0].z);
    CHECK(back.zeros[0].multiplicity == 2);

    const BlaschkeSpec lit = blaschke_spec_from_json(
        json::parse(R"({"d0":1,"zeros":[{"z":[0.5,0.0],"mult":2}]})"));
    CHECK(lit.d0 == 1);
    CHECK(lit.zeros[0].multiplicity == 2);

    CHECK_THROWS_AS(blaschke_spec_from_json(json::parse(R"({"d0":0,"zeros":[]})")),
                    InvalidSpec);
    CHECK_THROWS_AS(
        blaschke_spec_from_json(json::parse(R"({"d0":1,"zeros":[{"mult":2}]})")),
        InvalidSpec);
}

TEST_CASE("inner report serialization") {
    InnerReport rep;
    rep.norm_dev = 1e-12;
    rep.ortho_defect = 2e-10;
    rep.phi_k_drift = {0.0, 1e-13};
    rep.mstar_residual = 3e-11;
    rep.expansive_violations = 0;
    rep.verdict = InnerVerdict::Inner;
    const json j = inner_report_to_json(rep);
    CHECK(j["verdict"] == "Inner");
    CHECK(j["phi_k_drift"].size() == 2);
    CHECK(j["expansive_violations"] == 0);
}
