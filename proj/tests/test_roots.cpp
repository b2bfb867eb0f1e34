#include <doctest.h>

#include <algorithm>

#include "semidyn/errors.hpp"
#include "semidyn/roots.hpp"
#include "test_util.hpp"

using namespace semidyn;
using namespace testutil;

namespace {

// Coefficients (ascending) of prod (z - r_i); the oracle for the root finder.
std::vector<Complex> from_roots(const std::vector<Complex>& roots, Complex lead = 1.0) {
    std::vector<Complex> c{lead};
    for (Complex r : roots) {
        std::vector<Complex> next(c.size() + 1, 0.0);
        for (std::size_t k = 0; k < c.size(); ++k) {
            next[k + 1] += c[k];
            next[k] -= r * c[k];
        }
        c = next;
    }
    return c;
}

double match_error(const std::vector<Complex>& found, const std::vector<Complex>& expected) {
    double worst = 0.0;
    for (Complex e : expected) {
        double best = 1e300;
        for (Complex f : found) best = std::min(best, std::abs(f - e));
        worst = std::max(worst, best);
    }
    return worst;
}

}  // namespace

TEST_CASE("roots of a cubic with known roots") {
    const auto roots = polynomial_roots(from_roots({1.0, 2.0, 3.0}));
    REQUIRE(roots.size() == 3);
    CHECK(match_error(roots, {1.0, 2.0, 3.0}) < 1e-12);
}

TEST_CASE("degenerate inputs") {
    CHECK(polynomial_roots(std::vector<Complex>{4.0}).empty());
    CHECK_THROWS_AS(polynomial_roots(std::vector<Complex>{}), InvalidArgument);
    CHECK_THROWS_AS(polynomial_roots(std::vector<Complex>{0.0, 0.0}), InvalidArgument);
    // exact zero roots are factored out, not iterated
    CHECK(polynomial_roots(std::vector<Complex>{0.0, 0.0, 0.0, 1.0}) == std::vector<Complex>{0.0});
    // linear
    const auto lin = polynomial_roots(std::vector<Complex>{-6.0, 2.0});
    REQUIRE(lin.size() == 1);
    CHECK(std::abs(lin[0] - 3.0) < 1e-15);
    // trailing negligible leading coefficient is trimmed
    CHECK(polynomial_roots(std::vector<Complex>{-1.0, 1.0, 1e-20}).size() == 1);
}

TEST_CASE("multiple roots collapse to one point") {
    const auto triple = polynomial_roots(from_roots({1.0, 1.0, 1.0}));
    REQUIRE(triple.size() == 1);
    CHECK(std::abs(triple[0] - 1.0) < 1e-5);
    const auto mixed = polynomial_roots(from_roots({2.0, 2.0, Complex(0.0, 1.0)}));
    CHECK(mixed.size() == 2);
    CHECK(match_error(mixed, {2.0, Complex(0.0, 1.0)}) < 1e-6);
}

TEST_CASE("property: random simple roots up to degree 12 are recovered") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 11);
        std::vector<Complex> expected;
        while (static_cast<int>(expected.size()) < n) {
            const Complex r = rand_complex(rng, 2.0);
            if (std::all_of(expected.begin(), expected.end(), [&](Complex e) { return std::abs(e - r) > 0.05; }))
                expected.push_back(r);
        }
        const auto found = polynomial_roots(from_roots(expected, rand_nonzero(rng, 0.5, 2.0)));
        CHECK(found.size() == static_cast<std::size_t>(n));
        CHECK(match_error(found, expected) < 1e-7);
    }
}

TEST_CASE("degree 16: scaled roots of unity") {
    std::vector<Complex> c(17, 0.0);
    c[0] = -std::pow(3.0, 16);
    c[16] = 1.0;
    const auto roots = polynomial_roots(c);
    REQUIRE(roots.size() == 16);
    for (Complex r : roots) CHECK(std::abs(std::abs(r) - 3.0) < 1e-10);
}

TEST_CASE("sweep budget is enforced") {
    RootOptions tight;
    tight.max_sweeps = 1;
    CHECK_THROWS_AS(polynomial_roots(from_roots({1.0, 2.0, 3.0, 4.0, 5.0, 6.0}), tight), RootFindFailure);
}

TEST_CASE("dedup_points keeps first occurrences") {
    const auto out = dedup_points({1.0, 1.0 + 1e-12, 2.0, Complex(2.0, 5e-10), 3.0}, 1e-9);
    CHECK(out == std::vector<Complex>{1.0, 2.0, 3.0});
}
