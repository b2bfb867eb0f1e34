#pragma once

#include <optional>
#include <string>
#include <vector>

#include "semidyn/classifier.hpp"

namespace semidyn {

enum class SceneMode { Escaping, FatouJulia, JuliaUnion, JuliaBoundary, BackwardOrbit };

std::string to_string(SceneMode m);
/// Throws InvalidArgument for unknown names.
SceneMode scene_mode_from_string(const std::string& s);

struct SampleSpec {
    Complex z0{};
    std::size_t n_points = 10000;
    std::size_t burn_in = 30;
    friend bool operator==(const SampleSpec&, const SampleSpec&) = default;
};

/// A complete, validated job description: what to iterate, where, how hard,
/// and how to draw it.
struct Scene {
    std::string label;
    std::vector<HolomorphicMap> generators;
    GridRegion region;
    ClassifyParams params;
    SceneMode mode = SceneMode::FatouJulia;
    std::string palette = "default";
    std::optional<SampleSpec> sample;

    Semigroup semigroup() const { return Semigroup(generators, label); }
};

/// Parses and fully validates a scene document. Unknown keys, wrong types,
/// malformed maps, invalid params, a bad region, an unknown palette, or a mode
/// that does not fit the semigroup's class all throw InvalidArgument naming the
/// offending key path. Nothing is computed here.
Scene parse_scene(const std::string& json_text);

/// Reads and parses a file; IoFailure when unreadable.
Scene load_scene(const std::string& path);

/// Canonical form: sorted keys, every params field spelled out, complex
/// numbers as [re, im]. parse_scene(serialize_scene(s)) reproduces s.
std::string serialize_scene(const Scene& s);

/// Rasterizes points: pixels containing a point are JuliaLike, others FatouLike.
GridClassification points_to_grid(const std::vector<Complex>& points, const GridRegion& region,
                                  const ClassifyParams& p);

/// The grid for the scene's mode. Backward-orbit scenes need a sample spec.
GridClassification compute_scene_grid(const Scene& s, GridOptions opts = {});

}  // namespace semidyn
