#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "semidyn/classifier.hpp"

namespace semidyn {

struct Rgb {
    std::uint8_t r = 0, g = 0, b = 0;
    friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// One color per Verdict, indexed by the enum value.
struct Palette {
    std::string name;
    std::array<Rgb, 5> colors;

    Rgb color(Verdict v) const { return colors[static_cast<std::size_t>(v)]; }
};

/// "default", "grayscale" or "contrast"; throws InvalidArgument otherwise.
const Palette& palette_by_name(const std::string& name);
std::vector<std::string> palette_names();

/// Binary PPM (P6, maxval 255), pixel (0,0) = top-left of the region.
std::string encode_ppm(const GridClassification& g, const Palette& palette);

/// Writes encode_ppm to `path`; throws IoFailure.
void emit_image(const GridClassification& g, const Palette& palette, const std::string& path);

}  // namespace semidyn
