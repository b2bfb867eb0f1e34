#include "semidyn/scene.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "semidyn/errors.hpp"
#include "semidyn/image.hpp"

namespace semidyn {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw InvalidArgument("scene: " + path + ": " + what);
}

void only_keys(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) fail(path, "expected an object");
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [k, _] : j.items())
        if (!ok.count(k)) fail(path, "unknown key '" + k + "'");
}

const json& need(const json& j, const std::string& path, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) fail(path, std::string("missing key '") + key + "'");
    return *it;
}

double real_of(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail(path, "must be finite");
    return v;
}

Complex complex_of(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) fail(path, "expected [re, im]");
    return {real_of(j[0], path + "[0]"), real_of(j[1], path + "[1]")};
}

std::vector<Complex> coeffs_of(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) fail(path, "expected a nonempty array of [re, im]");
    std::vector<Complex> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(complex_of(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

std::int64_t integer_of(const json& j, const std::string& path, std::int64_t lo, std::int64_t hi) {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    if (j.is_number_unsigned() && j.get<std::uint64_t>() > static_cast<std::uint64_t>(hi)) fail(path, "out of range");
    const auto v = j.get<std::int64_t>();
    if (v < lo || v > hi) fail(path, "out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return v;
}

HolomorphicMap map_of(const json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    const json& type = need(j, path, "type");
    if (!type.is_string()) fail(path + ".type", "expected a string");
    const std::string t = type.get<std::string>();
    try {
        if (t == "Polynomial") {
            only_keys(j, path, {"type", "coeffs"});
            return HolomorphicMap::polynomial(coeffs_of(need(j, path, "coeffs"), path + ".coeffs"));
        }
        if (t == "Rational") {
            only_keys(j, path, {"type", "num", "den"});
            return HolomorphicMap::rational(coeffs_of(need(j, path, "num"), path + ".num"),
                                            coeffs_of(need(j, path, "den"), path + ".den"));
        }
        if (t == "ExpAffine") {
            only_keys(j, path, {"type", "sign", "lambda", "gamma", "c"});
            const auto sign = integer_of(need(j, path, "sign"), path + ".sign", -1, 1);
            return HolomorphicMap::exp_affine(static_cast<int>(sign), complex_of(need(j, path, "lambda"), path + ".lambda"),
                                              complex_of(need(j, path, "gamma"), path + ".gamma"),
                                              complex_of(need(j, path, "c"), path + ".c"));
        }
        if (t == "SinScaled") {
            only_keys(j, path, {"type", "lambda", "tau"});
            return HolomorphicMap::sin_scaled(complex_of(need(j, path, "lambda"), path + ".lambda"),
                                              complex_of(need(j, path, "tau"), path + ".tau"));
        }
        if (t == "Affine") {
            only_keys(j, path, {"type", "a", "b"});
            return HolomorphicMap::affine(complex_of(need(j, path, "a"), path + ".a"),
                                          complex_of(need(j, path, "b"), path + ".b"));
        }
        if (t == "Composite") {
            only_keys(j, path, {"type", "chain"});
            const json& chain = need(j, path, "chain");
            if (!chain.is_array() || chain.empty()) fail(path + ".chain", "expected a nonempty array of maps");
            std::vector<HolomorphicMap> maps;
            for (std::size_t i = 0; i < chain.size(); ++i)
                maps.push_back(map_of(chain[i], path + ".chain[" + std::to_string(i) + "]"));
            return HolomorphicMap::composite(std::move(maps));
        }
    } catch (const InvalidArgument& e) {
        const std::string msg = e.what();
        if (msg.rfind("scene:", 0) == 0) throw;
        fail(path, msg);
    }
    fail(path + ".type", "unknown map type '" + t + "'");
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json coeffs_json(const std::vector<Complex>& c) {
    json out = json::array();
    for (const auto& z : c) out.push_back(complex_json(z));
    return out;
}

json map_json(const HolomorphicMap& m) {
    return std::visit(
        [](const auto& v) -> json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Polynomial>) {
                return {{"type", "Polynomial"}, {"coeffs", coeffs_json(v.coeffs)}};
            } else if constexpr (std::is_same_v<T, RationalFunction>) {
                return {{"type", "Rational"}, {"num", coeffs_json(v.num.coeffs)}, {"den", coeffs_json(v.den.coeffs)}};
            } else if constexpr (std::is_same_v<T, ExpAffine>) {
                return {{"type", "ExpAffine"},
                        {"sign", v.sign},
                        {"lambda", complex_json(v.lambda)},
                        {"gamma", complex_json(v.gamma)},
                        {"c", complex_json(v.c)}};
            } else if constexpr (std::is_same_v<T, SinScaled>) {
                return {{"type", "SinScaled"}, {"lambda", complex_json(v.lambda)}, {"tau", complex_json(v.tau)}};
            } else if constexpr (std::is_same_v<T, Affine>) {
                return {{"type", "Affine"}, {"a", complex_json(v.a)}, {"b", complex_json(v.b)}};
            } else {
                json chain = json::array();
                for (const auto& c : v.chain) chain.push_back(map_json(c));
                return {{"type", "Composite"}, {"chain", chain}};
            }
        },
        m.variant());
}

ClassifyParams params_of(const json& j, const std::string& path) {
    only_keys(j, path,
              {"max_word_len", "n_sequences", "depth", "escape_radius", "bound_radius", "deriv_threshold",
               "branch_window", "seed"});
    ClassifyParams p;
    constexpr std::int64_t kBig = 1'000'000'000;
    if (j.contains("max_word_len"))
        p.max_word_len = static_cast<int>(integer_of(j["max_word_len"], path + ".max_word_len", 1, 64));
    if (j.contains("n_sequences"))
        p.n_sequences = static_cast<int>(integer_of(j["n_sequences"], path + ".n_sequences", 1, kBig));
    if (j.contains("depth")) p.depth = static_cast<int>(integer_of(j["depth"], path + ".depth", 1, kBig));
    if (j.contains("escape_radius")) p.escape_radius = real_of(j["escape_radius"], path + ".escape_radius");
    if (j.contains("bound_radius")) p.bound_radius = real_of(j["bound_radius"], path + ".bound_radius");
    if (j.contains("deriv_threshold")) p.deriv_threshold = real_of(j["deriv_threshold"], path + ".deriv_threshold");
    if (j.contains("branch_window"))
        p.branch_window = static_cast<int>(integer_of(j["branch_window"], path + ".branch_window", 0, 1000));
    if (j.contains("seed")) {
        if (!j["seed"].is_number_integer() || (!j["seed"].is_number_unsigned() && j["seed"].get<std::int64_t>() < 0))
            fail(path + ".seed", "expected a nonnegative integer");
        p.seed = j["seed"].get<std::uint64_t>();
    }
    try {
        p.validate();
    } catch (const InvalidArgument& e) {
        fail(path, e.what());
    }
    return p;
}

}  // namespace

std::string to_string(SceneMode m) {
    switch (m) {
        case SceneMode::Escaping: return "escaping";
        case SceneMode::FatouJulia: return "fatou-julia";
        case SceneMode::JuliaUnion: return "julia-union";
        case SceneMode::JuliaBoundary: return "julia-boundary";
        case SceneMode::BackwardOrbit: return "backward-orbit";
    }
    return "?";
}

SceneMode scene_mode_from_string(const std::string& s) {
    for (auto m : {SceneMode::Escaping, SceneMode::FatouJulia, SceneMode::JuliaUnion, SceneMode::JuliaBoundary,
                   SceneMode::BackwardOrbit})
        if (to_string(m) == s) return m;
    throw InvalidArgument("unknown mode '" + s + "'");
}

Scene parse_scene(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidArgument(std::string("scene: not valid JSON: ") + e.what());
    }
    only_keys(doc, "$", {"semigroup", "region", "params", "mode", "palette", "sample"});

    Scene s;
    const json& sg = need(doc, "$", "semigroup");
    only_keys(sg, "$.semigroup", {"label", "generators"});
    if (sg.contains("label")) {
        if (!sg["label"].is_string()) fail("$.semigroup.label", "expected a string");
        s.label = sg["label"].get<std::string>();
    }
    const json& gens = need(sg, "$.semigroup", "generators");
    if (!gens.is_array() || gens.empty()) fail("$.semigroup.generators", "expected a nonempty array");
    for (std::size_t i = 0; i < gens.size(); ++i)
        s.generators.push_back(map_of(gens[i], "$.semigroup.generators[" + std::to_string(i) + "]"));
    try {
        (void)s.semigroup();
    } catch (const InvalidArgument& e) {
        fail("$.semigroup", e.what());
    }

    const json& reg = need(doc, "$", "region");
    only_keys(reg, "$.region", {"min", "max", "width", "height"});
    s.region.min = complex_of(need(reg, "$.region", "min"), "$.region.min");
    s.region.max = complex_of(need(reg, "$.region", "max"), "$.region.max");
    s.region.width = static_cast<int>(integer_of(need(reg, "$.region", "width"), "$.region.width", 1, 16384));
    s.region.height = static_cast<int>(integer_of(need(reg, "$.region", "height"), "$.region.height", 1, 16384));
    try {
        s.region.validate();
    } catch (const InvalidArgument& e) {
        fail("$.region", e.what());
    }

    if (doc.contains("params")) s.params = params_of(doc["params"], "$.params");

    const json& mode = need(doc, "$", "mode");
    if (!mode.is_string()) fail("$.mode", "expected a string");
    try {
        s.mode = scene_mode_from_string(mode.get<std::string>());
    } catch (const InvalidArgument& e) {
        fail("$.mode", e.what());
    }
    const bool rational = s.semigroup().map_class() == MapClass::Rational;
    if (rational && (s.mode == SceneMode::Escaping || s.mode == SceneMode::JuliaBoundary))
        fail("$.mode", to_string(s.mode) + " needs a transcendental entire semigroup");
    if (!rational && s.mode == SceneMode::JuliaUnion) fail("$.mode", "julia-union needs a rational semigroup");

    if (doc.contains("palette")) {
        if (!doc["palette"].is_string()) fail("$.palette", "expected a string");
        s.palette = doc["palette"].get<std::string>();
        try {
            (void)palette_by_name(s.palette);
        } catch (const InvalidArgument& e) {
            fail("$.palette", e.what());
        }
    }

    if (doc.contains("sample")) {
        const json& sm = doc["sample"];
        only_keys(sm, "$.sample", {"z0", "n_points", "burn_in"});
        SampleSpec spec;
        spec.z0 = complex_of(need(sm, "$.sample", "z0"), "$.sample.z0");
        spec.n_points = static_cast<std::size_t>(integer_of(need(sm, "$.sample", "n_points"), "$.sample.n_points", 1,
                                                            100'000'000));
        if (sm.contains("burn_in"))
            spec.burn_in = static_cast<std::size_t>(integer_of(sm["burn_in"], "$.sample.burn_in", 0, 1'000'000));
        s.sample = spec;
    }
    if (s.mode == SceneMode::BackwardOrbit && !s.sample) fail("$.sample", "backward-orbit mode needs a sample block");
    return s;
}

Scene load_scene(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoFailure("cannot read scene file '" + path + "'");
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse_scene(buf.str());
}

std::string serialize_scene(const Scene& s) {
    json gens = json::array();
    for (const auto& g : s.generators) gens.push_back(map_json(g));
    const auto& p = s.params;
    json doc = {
        {"semigroup", {{"label", s.label}, {"generators", gens}}},
        {"region",
         {{"min", complex_json(s.region.min)},
          {"max", complex_json(s.region.max)},
          {"width", s.region.width},
          {"height", s.region.height}}},
        {"params",
         {{"max_word_len", p.max_word_len},
          {"n_sequences", p.n_sequences},
          {"depth", p.depth},
          {"escape_radius", p.escape_radius},
          {"bound_radius", p.bound_radius},
          {"deriv_threshold", p.deriv_threshold},
          {"branch_window", p.branch_window},
          {"seed", p.seed}}},
        {"mode", to_string(s.mode)},
        {"palette", s.palette},
    };
    if (s.sample)
        doc["sample"] = {{"z0", complex_json(s.sample->z0)},
                         {"n_points", s.sample->n_points},
                         {"burn_in", s.sample->burn_in}};
    return doc.dump(2) + "\n";
}

GridClassification points_to_grid(const std::vector<Complex>& points, const GridRegion& region,
                                  const ClassifyParams& p) {
    region.validate();
    GridClassification g;
    g.region = region;
    g.params = p;
    g.source = GridSource::BackwardOrbit;
    g.verdicts.assign(region.pixel_count(), Verdict::FatouLike);
    for (const auto& z : points) {
        int col = 0, row = 0;
        if (region.locate(z, col, row))
            g.verdicts[static_cast<std::size_t>(row) * static_cast<std::size_t>(region.width) +
                       static_cast<std::size_t>(col)] = Verdict::JuliaLike;
    }
    return g;
}

GridClassification compute_scene_grid(const Scene& s, GridOptions opts) {
    const Semigroup sg = s.semigroup();
    switch (s.mode) {
        case SceneMode::Escaping: return escaping_grid(sg, s.region, s.params, opts);
        case SceneMode::FatouJulia: return fatou_julia_grid(sg, s.region, s.params, opts);
        case SceneMode::JuliaUnion: return julia_grid_union(sg, s.region, s.params, opts);
        case SceneMode::JuliaBoundary:
            return julia_from_escaping_boundary(escaping_grid(sg, s.region, s.params, opts));
        case SceneMode::BackwardOrbit: {
            if (!s.sample) throw InvalidArgument("backward-orbit scene needs a sample block");
            const auto cloud = backward_orbit_sample(sg, s.sample->z0, s.sample->n_points, s.sample->burn_in, s.params);
            return points_to_grid(cloud.points, s.region, s.params);
        }
    }
    throw InvalidArgument("unknown scene mode");
}

}  // namespace semidyn
