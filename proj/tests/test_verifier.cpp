#include <doctest.h>

#include <numbers>

#include "semidyn/errors.hpp"
#include "semidyn/verifier.hpp"

using namespace semidyn;

namespace {

GridRegion square(double half, int res) { return {{-half, -half}, {half, half}, res, res}; }

bool within(const Report& r) {
    for (const auto& t : r.thresholds) {
        const double v = r.metrics.at(t.metric);
        if (t.bound == Bound::AtMost ? v > t.value : v < t.value) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("Report::passed is a pure function of metrics and thresholds") {
    Report r;
    r.metrics["x"] = 0.5;
    r.thresholds.push_back({"x", Bound::AtMost, 1.0});
    CHECK(r.passed());
    CHECK(r.status() == "PASS");
    r.thresholds.push_back({"y", Bound::AtLeast, 0.0});
    CHECK_FALSE(r.passed());  // missing metric
    r.metrics["y"] = std::numeric_limits<double>::quiet_NaN();
    CHECK_FALSE(r.passed());
    r.metrics["y"] = 1.0;
    CHECK(r.passed());
    r.metrics["x"] = 1.5;
    CHECK(r.status() == "FAIL");
    r.skipped = true;
    CHECK(r.status() == "SKIP");
}

TEST_CASE("registry and errors") {
    const auto& ex = known_examples();
    CHECK(ex.size() == 12);
    CHECK(ex.front().id == "annulus");
    CHECK_FALSE(ex.back().implemented);
    CHECK_THROWS_AS(verify_known_example("no-such-example"), UnknownExample);
    CHECK_THROWS_AS(verify_known_example("exp-dichotomy", {{"lambda", 0.3}}), InvalidArgument);
    CHECK_THROWS_AS(verify_known_example("annulus", {{"resolution", 10.5}}), InvalidArgument);
    const auto skip = verify_known_example("multiply-connected");
    CHECK(skip.skipped);
    CHECK(skip.passed());
    CHECK_FALSE(skip.notes.empty());
}

TEST_CASE("hypothesis violations name the constraint") {
    auto message = [](const std::string& id, const Overrides& o) -> std::string {
        try {
            verify_known_example(id, o);
        } catch (const HypothesisViolated& e) {
            return e.what();
        }
        return "";
    };
    CHECK(message("annulus", {{"a", 0.5}}).find("|a| > 1") != std::string::npos);
    CHECK(message("power-components", {{"n", 2}}).find("n > 2") != std::string::npos);
    CHECK(message("circle-radii", {{"n", 1}}).find("n >= 2") != std::string::npos);
    CHECK(message("empty-escaping", {{"gamma", 0.5}}).find("Re(gamma) < 0") != std::string::npos);
    CHECK(message("empty-escaping", {{"c", 0.5}}).find("Re(c) >= 1") != std::string::npos);
    CHECK(message("empty-escaping", {{"mu", 0.0}}).find("Re(mu) < 0") != std::string::npos);
    CHECK(message("empty-escaping", {{"d", -0.5}}).find("Re(d) <= -1") != std::string::npos);
    CHECK(message("exp-dichotomy", {{"lambda_below", 0.5}}).find("1/e") != std::string::npos);
    CHECK(message("exp-dichotomy", {{"lambda_above", 0.3}}).find("1/e") != std::string::npos);
}

TEST_CASE("annulus example at reduced resolution") {
    const auto r = verify_known_example("annulus", {{"resolution", 128}});
    CHECK(r.passed());
    CHECK(r.metrics.at("mismatch_rate") <= 0.02);
    CHECK(r.settings.at("resolution") == 128);
    // a wider annulus still matches its closed form
    CHECK(verify_known_example("annulus", {{"a", 3.0}, {"resolution", 96}}).passed());
}

TEST_CASE("power-components: closed-form annuli") {
    const auto r = verify_known_example("power-components");
    CHECK(r.passed());
    // n = 3, a = 2: U = (2^{-1/3}, 2^{-1/6}), f(U) = (1, sqrt 2)
    CHECK(r.metrics.at("U_inner_radius") == doctest::Approx(std::pow(2.0, -1.0 / 3.0)));
    CHECK(r.metrics.at("U_outer_radius") == doctest::Approx(std::pow(2.0, -1.0 / 6.0)));
    CHECK(r.metrics.at("image_outer_radius") == doctest::Approx(std::numbers::sqrt2));
    CHECK(r.metrics.at("image_min_modulus") > 1.0);
    CHECK(r.metrics.at("image_max_modulus") < std::numbers::sqrt2);
    CHECK(verify_known_example("power-components", {{"n", 5}, {"a", 3.0}}).passed());
}

TEST_CASE("circle-radii: 2^{-m} for m = 1..5") {
    const auto r = verify_known_example("circle-radii");
    CHECK(r.passed());
    for (int m = 1; m <= 5; ++m)
        CHECK(std::abs(r.metrics.at("radius_m" + std::to_string(m)) - std::pow(2.0, -m)) <= 1e-3 * std::pow(2.0, -m));
    const auto cubic = verify_known_example("circle-radii", {{"n", 3}, {"a", 4.0}, {"m_max", 3}});
    CHECK(cubic.passed());
    CHECK(cubic.metrics.at("radius_m2") == doctest::Approx(std::pow(4.0, -1.0)).epsilon(1e-3));
}

TEST_CASE("exp-dichotomy brackets 1/e") {
    const auto r = verify_known_example("exp-dichotomy");
    CHECK(r.passed());
    CHECK(r.metrics.at("below_bounded") == 1.0);
    CHECK(r.metrics.at("above_divergent") == 1.0);
    CHECK(r.metrics.at("above_escape_step") <= 200);
    const double crit = 1.0 / std::numbers::e;
    CHECK(verify_known_example("exp-dichotomy", {{"lambda_below", crit - 0.001}, {"lambda_above", crit + 0.05}})
              .passed());
}

TEST_CASE("empty-escaping at reduced sample count") {
    const auto r = verify_known_example("empty-escaping", {{"resolution", 30}, {"strip_samples", 20000}});
    CHECK(r.passed());
    CHECK(r.metrics.at("escaping_points") == 0);
    CHECK(r.metrics.at("strip_samples_in_both") == 0);
}

TEST_CASE("containments") {
    const Semigroup sq({HolomorphicMap::monomial(1.0, 2)});
    const auto cyc = verify_containments(sq, square(2.0, 64), ClassifyParams{});
    CHECK(cyc.metrics.at("max_violation_rate") == 0.0);  // S and f coincide
    CHECK(cyc.passed());

    ClassifyParams light;
    light.max_word_len = 3;
    light.n_sequences = 8;
    const Semigroup pair({HolomorphicMap::exp_affine(1, 1.0), HolomorphicMap::exp_affine(-1, 1.0)});
    const auto ex = verify_containments(pair, square(4.0, 32), light);
    CHECK(ex.metrics.at("escaping_pixels") == 0);
    CHECK(ex.metrics.at("escaping_violation_rate_f0") == 0);
    CHECK(ex.passed());

    const auto ann = verify_known_example("containments-annulus", {{"resolution", 64}});
    CHECK(ann.passed());
    CHECK(ann.passed() == within(ann));  // self-consistency
}

TEST_CASE("union identity: passes and Hausdorff does not grow with word length") {
    const auto r = verify_union_identity(annulus_semigroup(2.0), square(3.0, 96), ClassifyParams{});
    CHECK(r.passed());
    ClassifyParams p;
    double prev = std::numeric_limits<double>::infinity();
    for (int len : {1, 3, 6}) {
        p.max_word_len = len;
        const double h =
            verify_union_identity(annulus_semigroup(2.0), square(3.0, 64), p).metrics.at("hausdorff_px");
        CHECK(h <= prev);
        prev = h;
    }
    CHECK_THROWS_AS(verify_union_identity(exponential_pair_semigroup(0.3), square(3.0, 8), p), WrongClass);
}

TEST_CASE("boundary identity") {
    ClassifyParams light;
    light.max_word_len = 3;
    light.n_sequences = 8;
    const auto vac = verify_boundary_identity(empty_escaping_semigroup(-1.0, 1.0, -1.0, -1.0), square(10.0, 24), light);
    CHECK(vac.passed());
    CHECK(vac.notes.find("vacuous") != std::string::npos);

    GridClassification all;
    all.region = square(1.0, 4);
    all.source = GridSource::Escaping;
    all.verdicts.assign(16, Verdict::Escaping);
    GridClassification none = all;
    none.source = GridSource::FatouJulia;
    none.verdicts.assign(16, Verdict::FatouLike);
    CHECK(compare_boundary_to_julia(julia_from_escaping_boundary(all), none).passed());

    const auto r = verify_known_example("boundary-identity", {{"resolution", 64}, {"max_word_len", 4}});
    CHECK(r.metrics.at("escaping_pixels") > 0);
    CHECK(r.passed());
    CHECK_THROWS_AS(verify_boundary_identity(annulus_semigroup(2.0), square(3.0, 8), light), WrongClass);
}

TEST_CASE("reports are reproducible") {
    const auto a = verify_known_example("cyclic-circle", {{"resolution", 96}});
    const auto b = verify_known_example("cyclic-circle", {{"resolution", 96}});
    CHECK(a.metrics == b.metrics);
    CHECK(a.passed());
    const auto c = verify_known_example("perfectness-proxy", {{"resolution", 96}});
    CHECK(c.passed());
}
