#pragma once

#include <cstdint>
#include <vector>

#include "semidyn/classifier.hpp"

namespace semidyn {

/// Row-major pixel set over a width x height raster.
struct PixelMask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> bits;

    std::size_t count() const noexcept;
    bool empty() const noexcept { return count() == 0; }
};

PixelMask mask_of(const GridClassification& g, Verdict v);

/// Exact Euclidean distance transform: distance in pixels from every pixel to
/// the nearest pixel of `target`; +inf everywhere when target is empty.
std::vector<double> distance_to(const PixelMask& target);

struct DirectedDistance {
    /// max over `from` of the distance to `to` (0 when `from` is empty).
    double max = 0.0;
    /// Fraction of `from` pixels within `within` pixels of `to` (1 when `from` is empty).
    double fraction_within = 1.0;
    std::size_t from_count = 0;
};

DirectedDistance directed_distance(const PixelMask& from, const PixelMask& to, double within);

/// Symmetric pixel Hausdorff distance; 0 when both are empty, +inf when exactly one is.
double hausdorff(const PixelMask& a, const PixelMask& b);

/// Pixels of the set with no other set pixel among their 8 neighbours.
std::size_t isolated_pixels(const PixelMask& m);

}  // namespace semidyn
