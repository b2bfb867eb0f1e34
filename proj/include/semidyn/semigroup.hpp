#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "semidyn/map.hpp"

namespace semidyn {

inline constexpr double kDefaultEscapeRadius = 1e10;
inline constexpr std::uint64_t kDefaultWordCap = 1'000'000;

/// [i1, i2, ..., ik] denotes f_{i1} o f_{i2} o ... o f_{ik}; f_{ik} acts first.
struct Word {
    std::vector<std::size_t> indices;

    std::string to_string() const;
    friend bool operator==(const Word&, const Word&) = default;
};

/// Concatenation: (a ++ b)(z) = a(b(z)).
Word concat(const Word& a, const Word& b);

/// Finitely generated semigroup <f_1, ..., f_n>. All generators share one MapClass.
class Semigroup {
  public:
    explicit Semigroup(std::vector<HolomorphicMap> generators, std::string label = {});

    const std::vector<HolomorphicMap>& generators() const noexcept { return generators_; }
    std::size_t size() const noexcept { return generators_.size(); }
    MapClass map_class() const noexcept { return class_; }
    const std::string& label() const noexcept { return label_; }

    /// Throws InvalidArgument when the word is empty or indexes past the generators.
    void check(const Word& w) const;
    /// The cyclic semigroup <f_i>.
    Semigroup cyclic(std::size_t i) const;

  private:
    std::vector<HolomorphicMap> generators_;
    MapClass class_;
    std::string label_;
};

enum class Fate { DivergedAtStep, BoundedAtDepth, Overflowed, PoleHit };

std::string to_string(Fate f);

/// Overflowed and PoleHit count as divergence for every consumer.
constexpr bool is_divergent(Fate f) noexcept { return f != Fate::BoundedAtDepth; }

struct OrbitRecord {
    /// z_0 ... z_T; every stored value is finite.
    std::vector<Complex> points;
    Fate fate = Fate::BoundedAtDepth;
    /// Step t of divergence, overflow or pole; the depth for bounded orbits.
    std::size_t step = 0;
    /// The word iterated, or the seed of the random sequence.
    std::variant<Word, std::uint64_t> provenance;
    /// Generator applied at each step (random sequences only).
    std::vector<std::size_t> choices;

    bool divergent() const noexcept { return is_divergent(fate); }
};

/// Sum_{l=1}^{max_len} k^l, saturating at UINT64_MAX.
std::uint64_t word_count(std::size_t generators, int max_len) noexcept;

/// All words of length 1..max_len, length first then lexicographic.
/// Throws BudgetExceeded when the count would exceed `cap`.
std::vector<Word> enumerate_words(const Semigroup& s, int max_len, std::uint64_t cap = kDefaultWordCap);

/// Applies the generators of `w` rightmost first. Throws PoleHit / Overflow.
Complex evaluate_word(const Semigroup& s, const Word& w, Complex z);

/// Iterates the word as a single map g: z_{j+1} = g(z_j).
OrbitRecord cyclic_orbit(const Semigroup& s, const Word& w, Complex z, int depth,
                         double escape_radius = kDefaultEscapeRadius);

/// One uniformly chosen generator per step, driven by SplitMix64(seed).
OrbitRecord random_sequence_orbit(const Semigroup& s, Complex z, int depth, std::uint64_t seed,
                                  double escape_radius = kDefaultEscapeRadius);

/// Fate of an orbit without the trajectory. Used by the classifiers.
struct OrbitSummary {
    Fate fate = Fate::BoundedAtDepth;
    std::size_t step = 0;
    Complex last{};
    /// log10 |(g^t)'(z_0)| accumulated along the orbit (cyclic orbits only).
    double log10_derivative = 0.0;
};

/// Same fate semantics as cyclic_orbit. When `with_derivative` is set the
/// chain-rule derivative of the iterate is accumulated in log10 form.
OrbitSummary cyclic_summary(const Semigroup& s, const Word& w, Complex z, int depth, double escape_radius,
                            bool with_derivative);

OrbitSummary random_summary(const Semigroup& s, Complex z, int depth, std::uint64_t seed, double escape_radius);

}  // namespace semidyn
