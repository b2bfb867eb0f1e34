#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "semidyn/grid_metrics.hpp"

using namespace semidyn;

namespace {

PixelMask random_mask(std::mt19937_64& rng, int w, int h, double density) {
    std::bernoulli_distribution on(density);
    PixelMask m{w, h, std::vector<std::uint8_t>(static_cast<std::size_t>(w * h), 0)};
    for (auto& b : m.bits) b = on(rng) ? 1 : 0;
    return m;
}

// Brute force over all pairs: the oracle for the distance transform.
std::vector<double> brute_distance(const PixelMask& t) {
    std::vector<double> out(t.bits.size(), std::numeric_limits<double>::infinity());
    for (int y = 0; y < t.height; ++y)
        for (int x = 0; x < t.width; ++x)
            for (int v = 0; v < t.height; ++v)
                for (int u = 0; u < t.width; ++u)
                    if (t.bits[static_cast<std::size_t>(v * t.width + u)]) {
                        auto& d = out[static_cast<std::size_t>(y * t.width + x)];
                        d = std::min(d, std::hypot(x - u, y - v));
                    }
    return out;
}

}  // namespace

TEST_CASE("property: distance transform equals brute force") {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 40; ++trial) {
        const int w = 1 + static_cast<int>(rng() % 23), h = 1 + static_cast<int>(rng() % 19);
        const PixelMask m = random_mask(rng, w, h, trial % 4 == 0 ? 0.01 : 0.15);
        const auto fast = distance_to(m);
        const auto slow = brute_distance(m);
        for (std::size_t i = 0; i < fast.size(); ++i) {
            if (std::isinf(slow[i]))
                CHECK(std::isinf(fast[i]));
            else
                CHECK(fast[i] == doctest::Approx(slow[i]).epsilon(1e-12));
        }
    }
}

TEST_CASE("directed distance and Hausdorff") {
    PixelMask a{5, 1, {1, 0, 0, 0, 0}};
    PixelMask b{5, 1, {0, 0, 0, 1, 0}};
    const auto ab = directed_distance(a, b, 2.0);
    CHECK(ab.max == 3.0);
    CHECK(ab.fraction_within == 0.0);
    CHECK(ab.from_count == 1);
    CHECK(hausdorff(a, b) == 3.0);
    PixelMask empty{5, 1, std::vector<std::uint8_t>(5, 0)};
    CHECK(hausdorff(empty, empty) == 0.0);
    CHECK(std::isinf(hausdorff(a, empty)));
    const auto from_empty = directed_distance(empty, a, 2.0);
    CHECK(from_empty.max == 0.0);
    CHECK(from_empty.fraction_within == 1.0);

    std::mt19937_64 rng(2);
    for (int i = 0; i < 20; ++i) {
        const auto x = random_mask(rng, 16, 16, 0.1), y = random_mask(rng, 16, 16, 0.1);
        CHECK(hausdorff(x, y) == hausdorff(y, x));
        CHECK(hausdorff(x, x) == 0.0);
    }
}

TEST_CASE("isolated pixels use the 8-neighbourhood") {
    PixelMask m{4, 4, std::vector<std::uint8_t>(16, 0)};
    m.bits[0] = 1;
    CHECK(isolated_pixels(m) == 1);
    m.bits[5] = 1;  // diagonal neighbour
    CHECK(isolated_pixels(m) == 0);
    m.bits[15] = 1;
    CHECK(isolated_pixels(m) == 1);
}

TEST_CASE("mask_of picks one verdict") {
    GridClassification g;
    g.region = {{0.0, 0.0}, {1.0, 1.0}, 2, 2};
    g.verdicts = {Verdict::JuliaLike, Verdict::FatouLike, Verdict::JuliaLike, Verdict::Undetermined};
    const auto m = mask_of(g, Verdict::JuliaLike);
    CHECK(m.count() == 2);
    CHECK(m.bits == std::vector<std::uint8_t>{1, 0, 1, 0});
}
