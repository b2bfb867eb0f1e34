#include <doctest.h>

#include <algorithm>
#include <functional>

#include "semidyn/errors.hpp"
#include "semidyn/semigroup.hpp"
#include "test_util.hpp"

using namespace semidyn;
using namespace testutil;

namespace {

Semigroup annulus(double a = 2.0) {
    return Semigroup({HolomorphicMap::monomial(1.0, 2), HolomorphicMap::monomial(1.0 / a, 2)});
}

Semigroup k_generators(std::size_t k) {
    std::vector<HolomorphicMap> g;
    for (std::size_t i = 0; i < k; ++i) g.push_back(HolomorphicMap::affine(1.0, static_cast<double>(i)));
    return Semigroup(g);
}

// Independent enumeration: recursive generation per length, then the expected order.
std::vector<Word> brute_words(std::size_t k, int max_len) {
    std::vector<Word> out;
    std::function<void(Word)> grow = [&](Word w) {
        if (!w.indices.empty()) out.push_back(w);
        if (static_cast<int>(w.indices.size()) == max_len) return;
        for (std::size_t i = 0; i < k; ++i) {
            Word n = w;
            n.indices.push_back(i);
            grow(n);
        }
    };
    grow({});
    std::stable_sort(out.begin(), out.end(), [](const Word& a, const Word& b) {
        if (a.indices.size() != b.indices.size()) return a.indices.size() < b.indices.size();
        return a.indices < b.indices;
    });
    return out;
}

}  // namespace

TEST_CASE("semigroup construction") {
    CHECK_THROWS_AS(Semigroup({}), InvalidArgument);
    CHECK_THROWS_AS(Semigroup({HolomorphicMap::monomial(1.0, 2), HolomorphicMap::exp_affine(1, 1.0)}), InvalidArgument);
    const auto s = annulus();
    CHECK(s.size() == 2);
    CHECK(s.map_class() == MapClass::Rational);
    CHECK_THROWS_AS(s.check(Word{{2}}), InvalidArgument);
    CHECK_THROWS_AS(s.check(Word{}), InvalidArgument);
    CHECK(s.cyclic(1).size() == 1);
}

TEST_CASE("enumerate_words: documented values") {
    CHECK(enumerate_words(k_generators(2), 2).size() == 6);
    const auto one = enumerate_words(k_generators(1), 3);
    CHECK(one == std::vector<Word>{Word{{0}}, Word{{0, 0}}, Word{{0, 0, 0}}});
    CHECK(enumerate_words(k_generators(3), 1) == std::vector<Word>{Word{{0}}, Word{{1}}, Word{{2}}});
}

TEST_CASE("property: word count and order match brute force for k in 1..3, L in 1..6") {
    for (std::size_t k = 1; k <= 3; ++k)
        for (int len = 1; len <= 6; ++len) {
            std::uint64_t expected = 0, layer = 1;
            for (int l = 1; l <= len; ++l) expected += (layer *= k);
            const auto words = enumerate_words(k_generators(k), len);
            CHECK(words.size() == expected);
            CHECK(word_count(k, len) == expected);
            CHECK(words == brute_words(k, len));
        }
}

TEST_CASE("enumerate_words: budget") {
    CHECK_THROWS_AS(enumerate_words(k_generators(2), 25), BudgetExceeded);
    CHECK_THROWS_AS(enumerate_words(k_generators(2), 4, 10), BudgetExceeded);
    CHECK_THROWS_AS(enumerate_words(k_generators(2), 0), InvalidArgument);
    CHECK(word_count(10, 100) == std::numeric_limits<std::uint64_t>::max());
}

TEST_CASE("evaluate_word: documented values") {
    const auto s = annulus();
    CHECK(evaluate_word(s, Word{{1, 0}}, 1.0) == Complex(0.5, 0.0));
    CHECK(evaluate_word(s, Word{{1}}, Complex(0.3, 0.1)) == evaluate(s.generators()[1], Complex(0.3, 0.1)));
    CHECK(evaluate_word(Semigroup({HolomorphicMap::monomial(1.0, 2)}), Word{{0, 0}}, 2.0) == Complex(16.0, 0.0));
    // equals the composite of the same chain
    const auto chain = HolomorphicMap::composite({s.generators()[1], s.generators()[0], s.generators()[0]});
    CHECK(evaluate_word(s, Word{{1, 0, 0}}, Complex(0.4, 0.9)) == evaluate(chain, Complex(0.4, 0.9)));
}

TEST_CASE("property: concatenation on 1000 random cases") {
    std::mt19937_64 rng(2);
    const Semigroup s({HolomorphicMap::composite({HolomorphicMap::polynomial({0.1, 0.0, 0.8}),
                                                  HolomorphicMap::sin_scaled(0.7)}),
                       HolomorphicMap::sin_scaled(1.1, 0.2), HolomorphicMap::exp_affine(-1, Complex(0.6, 0.3), 0.1)});
    std::uniform_int_distribution<int> len(1, 4);
    std::uniform_int_distribution<std::size_t> idx(0, 2);
    for (int i = 0; i < 1000; ++i) {
        Word a, b;
        for (int k = len(rng); k > 0; --k) a.indices.push_back(idx(rng));
        for (int k = len(rng); k > 0; --k) b.indices.push_back(idx(rng));
        const Complex z = rand_complex(rng, 1.0);
        const Complex lhs = evaluate_word(s, concat(a, b), z);
        const Complex rhs = evaluate_word(s, a, evaluate_word(s, b, z));
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("cyclic_orbit: documented fates") {
    const Semigroup sq({HolomorphicMap::monomial(1.0, 2)});
    const auto out = cyclic_orbit(sq, Word{{0}}, 2.0, 8, 1e10);
    CHECK(out.fate == Fate::DivergedAtStep);
    CHECK(out.step <= 6);
    CHECK(out.points[0] == Complex(2.0));
    CHECK(out.points[1] == Complex(4.0));
    CHECK(out.points[2] == Complex(16.0));
    CHECK(out.points[3] == Complex(256.0));
    CHECK(std::abs(out.points[out.step]) > 1e10);

    const auto in = cyclic_orbit(sq, Word{{0}}, 0.5, 8, 1e10);
    CHECK(in.fate == Fate::BoundedAtDepth);
    CHECK(in.points.size() == 9);

    // real orbit of e^z from 1: oracle = direct iteration
    const Semigroup ez({HolomorphicMap::exp_affine(1, 1.0)});
    const auto e = cyclic_orbit(ez, Word{{0}}, 1.0, 8, 1e10);
    CHECK(e.divergent());
    double x = 1.0;
    int steps = 0;
    while (x <= 1e10 && steps < 8) {
        x = std::exp(x);
        ++steps;
    }
    if (e.fate == Fate::DivergedAtStep) CHECK(static_cast<int>(e.step) == steps);
}

TEST_CASE("cyclic_orbit: pole and overflow fates") {
    const Semigroup inv({HolomorphicMap::rational({1.0}, {0.0, 1.0})});
    CHECK(cyclic_orbit(inv, Word{{0}}, 0.0, 4).fate == Fate::PoleHit);
    const Semigroup ez({HolomorphicMap::exp_affine(1, 1.0)});
    const auto big = cyclic_orbit(ez, Word{{0, 0}}, 10.0, 4, 1e300);
    CHECK(big.fate == Fate::Overflowed);
    CHECK(big.divergent());
    CHECK_THROWS_AS(cyclic_orbit(ez, Word{{0}}, 0.0, 0), InvalidArgument);
    // a start outside the escape radius diverges at step 0
    CHECK(cyclic_orbit(ez, Word{{0}}, 1e11, 4).step == 0);
}

TEST_CASE("random orbit of a single generator equals the cyclic orbit") {
    const Semigroup s({HolomorphicMap::polynomial({Complex(-0.1, 0.65), 0.0, 1.0})});
    for (std::uint64_t seed : {0ULL, 1ULL, 99ULL, 0xFFFFFFFFULL}) {
        const auto r = random_sequence_orbit(s, Complex(0.2, 0.1), 64, seed);
        const auto c = cyclic_orbit(s, Word{{0}}, Complex(0.2, 0.1), 64);
        CHECK(r.points == c.points);
        CHECK(r.fate == c.fate);
        CHECK(r.step == c.step);
    }
}

TEST_CASE("annulus interior point: opposite fates across seeds") {
    const auto s = annulus();
    // Oracle over all 2^10 prefixes: once |z| < 1 every continuation stays in
    // the disc, once |z| > 2 every continuation escapes; both kinds exist.
    bool some_in = false, some_out = false;
    for (unsigned mask = 0; mask < 1024; ++mask) {
        double r = 1.5;
        for (int b = 0; b < 10; ++b) r = (mask >> b & 1U) ? r * r / 2.0 : r * r;
        some_in = some_in || r < 1.0;
        some_out = some_out || r > 2.0;
    }
    REQUIRE(some_in);
    REQUIRE(some_out);

    bool bounded = false, divergent = false;
    for (std::uint64_t seed = 0; seed < 64 && !(bounded && divergent); ++seed) {
        const auto o = random_sequence_orbit(s, 1.5, 64, seed);
        bounded = bounded || o.fate == Fate::BoundedAtDepth;
        divergent = divergent || o.divergent();
    }
    CHECK(bounded);
    CHECK(divergent);
}

TEST_CASE("exponential pair: a word mixing both generators is bounded at z = 5") {
    const Semigroup s({HolomorphicMap::exp_affine(1, 1.0), HolomorphicMap::exp_affine(-1, 1.0)});
    // h = g o f: f pushes 5 far right, g pulls it back near 0
    const auto h = cyclic_orbit(s, Word{{1, 0}}, 5.0, 64);
    CHECK(h.fate == Fate::BoundedAtDepth);
    CHECK(cyclic_orbit(s, Word{{0}}, 5.0, 64).divergent());

    bool found = false;
    for (std::uint64_t seed = 0; seed < 5000 && !found; ++seed) {
        const auto o = random_sequence_orbit(s, 5.0, 64, seed);
        if (o.fate != Fate::BoundedAtDepth) continue;
        for (std::size_t i = 0; i + 1 < o.choices.size(); ++i)
            if (o.choices[i] == 0 && o.choices[i + 1] == 1) found = true;
    }
    CHECK(found);
}

TEST_CASE("property: orbits are bit-identical across reruns") {
    const Semigroup s({HolomorphicMap::exp_affine(1, 0.3), HolomorphicMap::sin_scaled(1.2)});
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto a = random_sequence_orbit(s, Complex(0.5, 0.5), 40, seed);
        const auto b = random_sequence_orbit(s, Complex(0.5, 0.5), 40, seed);
        CHECK(a.points == b.points);
        CHECK(a.choices == b.choices);
        CHECK(a.fate == b.fate);
        CHECK(std::get<std::uint64_t>(a.provenance) == seed);
    }
}

TEST_CASE("summaries agree with full orbit records") {
    const auto s = annulus();
    std::mt19937_64 rng(4);
    for (int i = 0; i < 200; ++i) {
        const Complex z = rand_complex(rng, 2.5);
        const Word w{{static_cast<std::size_t>(rng() % 2), static_cast<std::size_t>(rng() % 2)}};
        const auto rec = cyclic_orbit(s, w, z, 20, 1e10);
        const auto sum = cyclic_summary(s, w, z, 20, 1e10, true);
        CHECK(sum.fate == rec.fate);
        CHECK(sum.step == rec.step);
        if (rec.fate == Fate::BoundedAtDepth) CHECK(sum.last == rec.points.back());
        const auto rr = random_sequence_orbit(s, z, 20, static_cast<std::uint64_t>(i));
        const auto rs = random_summary(s, z, 20, static_cast<std::uint64_t>(i), 1e10);
        CHECK(rs.fate == rr.fate);
        CHECK(rs.last == rr.points.back());
    }
}

TEST_CASE("derivative accumulation matches the chain rule") {
    // |(f^D)'(z)| for f = z^2 is 2^D |z|^{2^D - 1}; on |z| = 1 that is 2^D.
    const Semigroup sq({HolomorphicMap::monomial(1.0, 2)});
    const Complex z(0.0, 1.0);  // exactly on the circle; powers stay exact
    const auto sum = cyclic_summary(sq, Word{{0}}, z, 40, 1e10, true);
    CHECK(sum.fate == Fate::BoundedAtDepth);
    CHECK(sum.log10_derivative == doctest::Approx(40 * std::log10(2.0)).epsilon(1e-9));

    // general word, against direct accumulation of generator derivatives
    const Semigroup s({HolomorphicMap::composite({HolomorphicMap::polynomial({0.2, 0.0, 0.5}),
                                                  HolomorphicMap::sin_scaled(1.0)}),
                       HolomorphicMap::sin_scaled(0.9)});
    const Word w{{0, 1, 1}};
    Complex x(0.3, 0.2);
    double log_d = 0.0;
    for (int t = 0; t < 10; ++t)
        for (auto it = w.indices.rbegin(); it != w.indices.rend(); ++it) {
            log_d += std::log10(std::abs(derivative(s.generators()[*it], x)));
            x = evaluate(s.generators()[*it], x);
        }
    const auto got = cyclic_summary(s, w, Complex(0.3, 0.2), 10, 1e10, true);
    CHECK(got.log10_derivative == doctest::Approx(log_d).epsilon(1e-9));
}
