#include "semidyn/image.hpp"

#include <fstream>

#include "semidyn/errors.hpp"

namespace semidyn {

namespace {

// Order: Escaping, NonEscaping, FatouLike, JuliaLike, Undetermined.
const std::vector<Palette>& palettes() {
    static const std::vector<Palette> all = {
        {"default", {{{230, 90, 30}, {40, 60, 120}, {20, 30, 70}, {250, 230, 120}, {128, 128, 128}}}},
        {"grayscale", {{{255, 255, 255}, {64, 64, 64}, {0, 0, 0}, {192, 192, 192}, {128, 128, 128}}}},
        {"contrast", {{{255, 0, 0}, {0, 0, 255}, {0, 0, 0}, {255, 255, 255}, {0, 255, 0}}}},
    };
    return all;
}

}  // namespace

const Palette& palette_by_name(const std::string& name) {
    for (const auto& p : palettes())
        if (p.name == name) return p;
    throw InvalidArgument("unknown palette '" + name + "'");
}

std::vector<std::string> palette_names() {
    std::vector<std::string> out;
    for (const auto& p : palettes()) out.push_back(p.name);
    return out;
}

std::string encode_ppm(const GridClassification& g, const Palette& palette) {
    const auto& r = g.region;
    if (g.verdicts.size() != r.pixel_count()) throw InvalidArgument("verdict count does not match the region");
    std::string out = "P6\n" + std::to_string(r.width) + " " + std::to_string(r.height) + "\n255\n";
    out.reserve(out.size() + 3 * g.verdicts.size());
    for (const Verdict v : g.verdicts) {
        const Rgb c = palette.color(v);
        out.push_back(static_cast<char>(c.r));
        out.push_back(static_cast<char>(c.g));
        out.push_back(static_cast<char>(c.b));
    }
    return out;
}

void emit_image(const GridClassification& g, const Palette& palette, const std::string& path) {
    const std::string bytes = encode_ppm(g, palette);
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoFailure("cannot open '" + path + "' for writing");
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!f) throw IoFailure("write to '" + path + "' failed");
}

}  // namespace semidyn
