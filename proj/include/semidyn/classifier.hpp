#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "semidyn/map.hpp"
#include "semidyn/semigroup.hpp"

namespace semidyn {

/// Fidelity knobs for set definitions that quantify over all of S.
struct ClassifyParams {
    int max_word_len = 6;
    int n_sequences = 32;
    int depth = 64;
    double escape_radius = 1e10;
    double bound_radius = 1e4;
    double deriv_threshold = 1e8;
    int branch_window = 3;
    std::uint64_t seed = 0;

    /// Throws InvalidArgument unless max_word_len, M, D >= 1, R > B > 0, T > 1, K >= 0.
    void validate() const;
    friend bool operator==(const ClassifyParams&, const ClassifyParams&) = default;
};

enum class Verdict : std::uint8_t { Escaping, NonEscaping, FatouLike, JuliaLike, Undetermined };

std::string to_string(Verdict v);

struct Evidence {
    std::size_t divergent = 0;
    std::size_t bounded = 0;
    /// Bounded at depth but with final modulus above the bound radius.
    std::size_t slow = 0;
    /// Largest log10 |(g^D)'| over bounded cyclic word orbits; -inf when none.
    double max_log10_derivative = -std::numeric_limits<double>::infinity();
};

struct PointVerdict {
    Verdict label = Verdict::Undetermined;
    Evidence evidence;
};

/// Rectangle of pixels; pixel (col, row) sits at its cell center, row 0 on top.
struct GridRegion {
    Complex min{};
    Complex max{};
    int width = 1;
    int height = 1;

    void validate() const;
    std::size_t pixel_count() const noexcept {
        return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    }
    double pixel_width() const noexcept { return (max.real() - min.real()) / width; }
    double pixel_height() const noexcept { return (max.imag() - min.imag()) / height; }
    Complex pixel_center(int col, int row) const noexcept {
        return {min.real() + (col + 0.5) * pixel_width(), max.imag() - (row + 0.5) * pixel_height()};
    }
    /// Pixel containing z, or false when z is outside the region.
    bool locate(Complex z, int& col, int& row) const noexcept;
    friend bool operator==(const GridRegion&, const GridRegion&) = default;
};

/// Which producer filled a grid.
enum class GridSource : std::uint8_t { Escaping, FatouJulia, JuliaUnion, EscapingBoundary, BackwardOrbit, Synthetic };

std::string to_string(GridSource s);

struct GridClassification {
    GridRegion region;
    std::vector<Verdict> verdicts;  // row-major
    ClassifyParams params;
    GridSource source = GridSource::Synthetic;

    Verdict at(int col, int row) const {
        return verdicts[static_cast<std::size_t>(row) * static_cast<std::size_t>(region.width) +
                        static_cast<std::size_t>(col)];
    }
    std::size_t count(Verdict v) const;
    friend bool operator==(const GridClassification&, const GridClassification&) = default;
};

/// Parallelism for grid operations; 0 = std::thread::hardware_concurrency().
/// Results never depend on this value.
struct GridOptions {
    unsigned workers = 0;
};

// Point classifiers. Random sequence j for a point uses
// sequence_seed(p.seed, j); grid pixel i substitutes pixel_seed(p.seed, i).

/// Escaping iff every cyclic word orbit (length <= max_word_len) and every one
/// of the M random sequences diverges. NonEscaping as soon as one tested orbit
/// is bounded at depth with final modulus <= B; evaluation stops there, so the
/// evidence counts only what was run. Undetermined otherwise.
/// Throws WrongClass for rational semigroups.
PointVerdict classify_escaping(const Semigroup& s, Complex z, const ClassifyParams& p);

/// Heuristic normality proxy. JuliaLike when the tested fates are mixed
/// (some divergent, some bounded), or when a bounded cyclic word orbit has an
/// accumulated derivative above T. FatouLike when the fates agree with no
/// derivative blow-up and no slow orbit. Undetermined otherwise.
PointVerdict classify_fatou_julia(const Semigroup& s, Complex z, const ClassifyParams& p);

/// classify_escaping at every pixel center. Throws WrongClass.
GridClassification escaping_grid(const Semigroup& s, const GridRegion& region, const ClassifyParams& p,
                                  GridOptions opts = {});

/// classify_fatou_julia at every pixel center, plus the neighbourhood half of
/// normality: a pixel whose per-orbit fate signature differs from a
/// 4-neighbour's cannot lie in a region where S is normal, so both are JuliaLike.
GridClassification fatou_julia_grid(const Semigroup& s, const GridRegion& region, const ClassifyParams& p,
                                    GridOptions opts = {});

/// Union over words w (length <= max_word_len) of the escape-time edge set of
/// <w>: pixels whose cyclic fate differs from a 4-neighbour's. Union pixels are
/// JuliaLike, the rest FatouLike. Rational semigroups only (WrongClass).
GridClassification julia_grid_union(const Semigroup& s, const GridRegion& region, const ClassifyParams& p,
                                    GridOptions opts = {});

/// Discrete boundary of the Escaping pixels (4-connectivity) as JuliaLike.
/// Throws WrongSource unless `g` came from escaping_grid.
GridClassification julia_from_escaping_boundary(const GridClassification& g);

struct BackwardOrbitSample {
    std::vector<Complex> points;
    /// Walks restarted from z0 because a preimage set was empty.
    std::size_t restarts = 0;
    /// Largest |g(p) - parent| / max(1, |parent|) over emitted points.
    double max_relative_residual = 0.0;
};

/// Random inverse iteration: uniform generator, uniform preimage branch.
/// The first burn_in points of every walk (including restarts) are discarded.
/// Throws DeadEnd if z0 itself has no preimages under any generator.
BackwardOrbitSample backward_orbit_sample(const Semigroup& s, Complex z0, std::size_t n_points,
                                          std::size_t burn_in, const ClassifyParams& p);

struct ExceptionalProbe {
    /// Closure stabilised within max_depth levels and cap points.
    bool finite = false;
    /// The closure when finite; the points reached so far otherwise.
    std::vector<Complex> points;
    std::size_t count = 0;
    int levels = 0;
    /// The point at infinity is implicitly exceptional for polynomial
    /// semigroups and never enumerated.
    bool infinity_implicit = false;
};

/// Breadth-first closure of z under all generator preimages.
ExceptionalProbe exceptional_probe(const Semigroup& s, Complex z, int max_depth, std::size_t cap,
                                   int branch_window = 3);

enum class StripFamily { First, Second };

/// First:  Re z < 0 and (4k-3)pi/2 < Im z < (4k-1)pi/2,
/// Second: Re z > 0 and (4k-1)pi/2 < Im z < (4k+1)pi/2, for some |k| <= k_range.
bool strip_membership(Complex z, StripFamily family, int k_range);

}  // namespace semidyn
