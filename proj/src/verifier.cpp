#include "semidyn/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "semidyn/errors.hpp"
#include "semidyn/random.hpp"

namespace semidyn {

namespace {

constexpr double kContainmentSlack = 0.005;
constexpr double kMismatchSlack = 0.02;
constexpr double kUnionSymDiff = 0.02;
constexpr double kHausdorffPixels = 2.0;
constexpr double kBoundaryFraction = 0.95;
constexpr double kRadiusRelError = 1e-3;

Report make_report(std::string name, const ClassifyParams& p) {
    Report r;
    r.name = std::move(name);
    r.params = p;
    return r;
}

void at_most(Report& r, const std::string& metric, double v) { r.thresholds.push_back({metric, Bound::AtMost, v}); }
void at_least(Report& r, const std::string& metric, double v) { r.thresholds.push_back({metric, Bound::AtLeast, v}); }

// Override table for one example: declared keys with defaults. Unknown keys
// are rejected so a typo can never silently run the default scenario.
class Settings {
  public:
    Settings(std::map<std::string, double> defaults, const Overrides& o) : values_(std::move(defaults)) {
        for (const auto& [k, v] : o) {
            auto it = values_.find(k);
            if (it == values_.end()) {
                std::string known;
                for (const auto& [name, _] : values_) known += (known.empty() ? "" : ", ") + name;
                throw InvalidArgument("unknown setting '" + k + "' (known: " + known + ")");
            }
            if (!std::isfinite(v)) throw InvalidArgument("setting '" + k + "' must be finite");
            it->second = v;
        }
    }

    double get(const std::string& k) const { return values_.at(k); }

    int integer(const std::string& k, int lo) const {
        const double v = get(k);
        if (v != std::floor(v) || v < lo || v > 1e6)
            throw InvalidArgument("setting '" + k + "' must be an integer >= " + std::to_string(lo));
        return static_cast<int>(v);
    }

    const std::map<std::string, double>& all() const { return values_; }

  private:
    std::map<std::string, double> values_;
};

void require(bool ok, const std::string& constraint) {
    if (!ok) throw HypothesisViolated("hypothesis violated: " + constraint);
}

ClassifyParams params_from(const Settings& s) {
    ClassifyParams p;
    p.max_word_len = s.integer("max_word_len", 1);
    p.n_sequences = s.integer("n_sequences", 1);
    p.depth = s.integer("depth", 1);
    p.seed = static_cast<std::uint64_t>(s.integer("seed", 0));
    p.validate();
    return p;
}

std::map<std::string, double> with_params(std::map<std::string, double> m) {
    const ClassifyParams d;
    m.emplace("max_word_len", d.max_word_len);
    m.emplace("n_sequences", d.n_sequences);
    m.emplace("depth", d.depth);
    m.emplace("seed", 0);
    return m;
}

GridRegion square(double half, int res) { return GridRegion{{-half, -half}, {half, half}, res, res}; }

// Both exponential scenes: wide enough in Re z to contain the escaping
// half-strips of e^{0.3 z}, tall enough for three periods 2 pi / 0.3.
GridRegion exponential_region(int res) { return GridRegion{{-5.0, -15.0}, {25.0, 15.0}, res, res}; }

double fraction(std::size_t num, std::size_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

// --- registered examples -----------------------------------------------------

Report run_annulus(const Overrides& o, GridOptions opts) {
    const Settings s(with_params({{"a", 2.0}, {"resolution", 512}, {"band_pixels", 2}}), o);
    const double a = s.get("a");
    require(std::abs(a) > 1.0, "|a| > 1");
    const int res = s.integer("resolution", 8);
    const ClassifyParams p = params_from(s);
    const double extent = std::max(3.0, 1.5 * std::abs(a));
    const GridRegion region = square(extent, res);

    const GridClassification g = fatou_julia_grid(annulus_semigroup(a), region, p, opts);
    const double band = s.get("band_pixels") * region.pixel_width();
    const double outer = std::abs(a);
    std::size_t counted = 0, mismatched = 0, julia_wrong = 0, fatou_wrong = 0;
    for (int row = 0; row < res; ++row)
        for (int col = 0; col < res; ++col) {
            const double m = std::abs(region.pixel_center(col, row));
            if (std::abs(m - 1.0) <= band || std::abs(m - outer) <= band) continue;
            ++counted;
            const bool in_j = m > 1.0 && m < outer;
            const Verdict v = g.at(col, row);
            if (in_j && v != Verdict::JuliaLike) ++julia_wrong;
            if (!in_j && v != Verdict::FatouLike) ++fatou_wrong;
        }
    mismatched = julia_wrong + fatou_wrong;

    Report r = make_report("annulus", p);
    r.settings = s.all();
    r.metrics["pixels_compared"] = static_cast<double>(counted);
    r.metrics["mismatch_rate"] = fraction(mismatched, counted);
    r.metrics["julia_side_mismatches"] = static_cast<double>(julia_wrong);
    r.metrics["fatou_side_mismatches"] = static_cast<double>(fatou_wrong);
    r.metrics["undetermined_pixels"] = static_cast<double>(g.count(Verdict::Undetermined));
    at_most(r, "mismatch_rate", kMismatchSlack);
    r.notes = "closed form: J(S) = {1 <= |z| <= |a|}; pixels within the band of either circle are excluded";
    return r;
}

Report run_power_components(const Overrides& o, GridOptions) {
    const Settings s({{"n", 3}, {"a", 2.0}, {"samples", 1000}, {"seed", 0}}, o);
    const int n = s.integer("n", 1);
    const double a = s.get("a");
    require(n > 2, "n > 2");
    require(std::abs(a) > 1.0, "|a| > 1");
    const int samples = s.integer("samples", 1);
    const double abs_a = std::abs(a);
    const double u_in = std::pow(abs_a, -1.0 / n);
    const double u_out = std::pow(abs_a, -1.0 / (n * (n - 1.0)));
    const double image_out = std::pow(abs_a, (n - 2.0) / (n - 1.0));  // |a| u_out^n
    const HolomorphicMap f = HolomorphicMap::monomial(a, n);

    // Forward-map samples of the closed-form U and check the image against V
    // and against the closed-form image annulus (1, |a|^{(n-2)/(n-1)}).
    SplitMix64 rng(static_cast<std::uint64_t>(s.integer("seed", 0)));
    std::size_t outside_v = 0, outside_image = 0;
    double image_min = std::numeric_limits<double>::infinity(), image_max = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double rad = u_in + (u_out - u_in) * (0.001 + 0.998 * rng.uniform());
        const double theta = 2.0 * std::numbers::pi * rng.uniform();
        const double m = std::abs(evaluate(f, std::polar(rad, theta)));
        image_min = std::min(image_min, m);
        image_max = std::max(image_max, m);
        if (!(m > 1.0)) ++outside_v;
        if (!(m > 1.0 - 1e-12 && m < image_out + 1e-12)) ++outside_image;
    }

    // A ray in V beyond the image annulus: no point of it has a preimage in U,
    // certified by solving f(z) = w, and the ray reaches arbitrarily large modulus.
    std::size_t ray_hits = 0;
    double ray_max = 0.0;
    const int ray_points = 40;
    for (int j = 1; j <= ray_points; ++j) {
        const Complex w = std::polar(image_out * std::pow(2.0, 0.5 * j), 0.37);
        ray_max = std::max(ray_max, std::abs(w));
        for (const Complex z : preimages(f, w, 0)) {
            const double m = std::abs(z);
            if (m > u_in && m < u_out) ++ray_hits;
        }
    }

    Report r = make_report("power-components", ClassifyParams{});
    r.settings = s.all();
    r.metrics["U_inner_radius"] = u_in;
    r.metrics["U_outer_radius"] = u_out;
    r.metrics["image_outer_radius"] = image_out;
    r.metrics["image_min_modulus"] = image_min;
    r.metrics["image_max_modulus"] = image_max;
    r.metrics["samples_outside_V"] = static_cast<double>(outside_v);
    r.metrics["samples_outside_image_annulus"] = static_cast<double>(outside_image);
    r.metrics["ray_points_with_preimage_in_U"] = static_cast<double>(ray_hits);
    r.metrics["ray_max_modulus"] = ray_max;
    at_most(r, "samples_outside_V", 0);
    at_most(r, "samples_outside_image_annulus", 0);
    at_most(r, "ray_points_with_preimage_in_U", 0);
    at_least(r, "ray_max_modulus", 1e5);
    r.notes = "f(z) = a z^n maps U into V = {|z| > 1}; a ray of V beyond the image annulus has no preimage in U";
    return r;
}

Report run_circle_radii(const Overrides& o, GridOptions) {
    const Settings s({{"a", 2.0}, {"n", 2}, {"m_max", 5}, {"points", 2000}, {"burn_in", 30}, {"seed", 0}}, o);
    const double a = s.get("a");
    const int n = s.integer("n", 1);
    require(std::abs(a) > 1.0, "|a| > 1");
    require(n >= 2, "n >= 2");
    const int m_max = s.integer("m_max", 1);
    ClassifyParams p;
    p.seed = static_cast<std::uint64_t>(s.integer("seed", 0));

    Report r = make_report("circle-radii", p);
    r.settings = s.all();
    double worst = 0.0, worst_residual = 0.0, prev = std::numeric_limits<double>::infinity();
    bool decreasing = true;
    std::vector<HolomorphicMap> gens;
    for (int m = 1; m <= m_max; ++m) {
        const HolomorphicMap fm = HolomorphicMap::monomial(std::pow(a, m), n);
        gens.push_back(fm);
        const Semigroup cyc({fm}, "f_" + std::to_string(m));
        const auto sample = backward_orbit_sample(cyc, Complex(1.5, 0.5), static_cast<std::size_t>(s.integer("points", 1)),
                                                  static_cast<std::size_t>(s.integer("burn_in", 0)), p);
        double sum = 0.0;
        for (const Complex z : sample.points) sum += std::abs(z);
        const double estimate = sum / static_cast<double>(sample.points.size());
        const double target = std::pow(std::abs(a), -static_cast<double>(m) / (n - 1.0));
        const double err = std::abs(estimate - target) / target;
        r.metrics["radius_m" + std::to_string(m)] = estimate;
        worst = std::max(worst, err);
        worst_residual = std::max(worst_residual, sample.max_relative_residual);
        decreasing = decreasing && estimate < prev;
        prev = estimate;
    }
    // The finite truncation of the generating family keeps 0 exceptional:
    // its backward orbit is {0} itself.
    const auto probe = exceptional_probe(Semigroup(gens, "truncation"), Complex(0.0, 0.0), 6, 1000);
    r.metrics["max_relative_error"] = worst;
    r.metrics["max_backward_residual"] = worst_residual;
    r.metrics["radii_decreasing"] = decreasing ? 1.0 : 0.0;
    r.metrics["smallest_radius"] = prev;
    r.metrics["zero_orbit_finite"] = probe.finite ? 1.0 : 0.0;
    r.metrics["zero_orbit_size"] = static_cast<double>(probe.count);
    at_most(r, "max_relative_error", kRadiusRelError);
    at_most(r, "max_backward_residual", 1e-8);
    at_least(r, "radii_decreasing", 1.0);
    at_least(r, "zero_orbit_finite", 1.0);
    at_most(r, "zero_orbit_size", 1.0);
    r.notes = "mean |z| of inverse iteration under a^m z^n vs |a|^{-m/(n-1)}; radii shrink geometrically toward 0";
    return r;
}

Report run_empty_escaping(const Overrides& o, GridOptions opts) {
    const Settings s(with_params({{"gamma", -1.0},
                                  {"c", 1.0},
                                  {"mu", -1.0},
                                  {"d", -1.0},
                                  {"resolution", 100},
                                  {"strip_samples", 100000}}),
                     o);
    const double gamma = s.get("gamma"), c = s.get("c"), mu = s.get("mu"), d = s.get("d");
    require(gamma < 0.0, "Re(gamma) < 0");
    require(c >= 1.0, "Re(c) >= 1");
    require(mu < 0.0, "Re(mu) < 0");
    require(d <= -1.0, "Re(d) <= -1");
    const ClassifyParams p = params_from(s);
    const int res = s.integer("resolution", 1);

    const GridClassification g = escaping_grid(empty_escaping_semigroup(gamma, c, mu, d), square(10.0, res), p, opts);

    SplitMix64 rng(p.seed);
    const int strip_samples = s.integer("strip_samples", 1);
    std::size_t in_both = 0, in_first = 0, in_second = 0;
    for (int i = 0; i < strip_samples; ++i) {
        const Complex z(-20.0 + 40.0 * rng.uniform(), -60.0 + 120.0 * rng.uniform());
        const bool a = strip_membership(z, StripFamily::First, 20);
        const bool b = strip_membership(z, StripFamily::Second, 20);
        in_first += a;
        in_second += b;
        in_both += a && b;
    }

    Report r = make_report("empty-escaping", p);
    r.settings = s.all();
    r.metrics["sampled_points"] = static_cast<double>(g.verdicts.size());
    r.metrics["escaping_points"] = static_cast<double>(g.count(Verdict::Escaping));
    r.metrics["non_escaping_points"] = static_cast<double>(g.count(Verdict::NonEscaping));
    r.metrics["undetermined_points"] = static_cast<double>(g.count(Verdict::Undetermined));
    r.metrics["strip_samples_first"] = static_cast<double>(in_first);
    r.metrics["strip_samples_second"] = static_cast<double>(in_second);
    r.metrics["strip_samples_in_both"] = static_cast<double>(in_both);
    at_most(r, "escaping_points", 0);
    at_most(r, "strip_samples_in_both", 0);
    r.notes = "pixel centers of [-10,10]^2 as samples; strips sampled over [-20,20]x[-60,60]";
    return r;
}

Report run_exp_dichotomy(const Overrides& o, GridOptions) {
    const double crit = 1.0 / std::numbers::e;
    const Settings s({{"lambda_below", crit - 0.01}, {"lambda_above", crit + 0.01}, {"depth", 200}}, o);
    const double lo = s.get("lambda_below"), hi = s.get("lambda_above");
    require(lo > 0.0 && lo < crit, "0 < lambda_below < 1/e");
    require(hi > crit, "lambda_above > 1/e");
    ClassifyParams p;
    p.depth = s.integer("depth", 1);

    auto orbit_of_zero = [&](double lambda) {
        const Semigroup sg({HolomorphicMap::exp_affine(1, lambda)}, "exp");
        return cyclic_orbit(sg, Word{{0}}, Complex(0.0, 0.0), p.depth, p.escape_radius);
    };
    const OrbitRecord below = orbit_of_zero(lo);
    const OrbitRecord above = orbit_of_zero(hi);
    const bool below_bounded = below.fate == Fate::BoundedAtDepth && std::abs(below.points.back()) <= p.bound_radius;

    Report r = make_report("exp-dichotomy", p);
    r.settings = s.all();
    r.metrics["below_bounded"] = below_bounded ? 1.0 : 0.0;
    r.metrics["below_final_modulus"] = std::abs(below.points.back());
    r.metrics["above_divergent"] = is_divergent(above.fate) ? 1.0 : 0.0;
    r.metrics["above_escape_step"] = static_cast<double>(above.step);
    at_least(r, "below_bounded", 1.0);
    at_least(r, "above_divergent", 1.0);
    r.notes = "orbit of 0 under e^{lambda z} on either side of 1/e";
    return r;
}

Report run_perfectness(const Overrides& o, GridOptions opts) {
    const Settings s(with_params({{"a", 2.0}, {"resolution", 256}}), o);
    const double a = s.get("a");
    require(std::abs(a) > 1.0, "|a| > 1");
    const ClassifyParams p = params_from(s);
    const int res = s.integer("resolution", 8);
    const GridClassification g =
        fatou_julia_grid(annulus_semigroup(a), square(std::max(3.0, 1.5 * std::abs(a)), res), p, opts);
    const PixelMask m = mask_of(g, Verdict::JuliaLike);
    Report r = make_report("perfectness-proxy", p);
    r.settings = s.all();
    r.metrics["julia_pixels"] = static_cast<double>(m.count());
    r.metrics["isolated_julia_pixels"] = static_cast<double>(isolated_pixels(m));
    at_least(r, "julia_pixels", 1);
    at_most(r, "isolated_julia_pixels", 0);
    r.notes = "8-neighbourhood isolation on the annulus scene";
    return r;
}

Report run_cyclic_circle(const Overrides& o, GridOptions opts) {
    const Settings s(with_params({{"resolution", 512}, {"circle_samples", 4096}}), o);
    const ClassifyParams p = params_from(s);
    const int res = s.integer("resolution", 8);
    const GridRegion region = square(2.0, res);
    const Semigroup sq({HolomorphicMap::monomial(1.0, 2)}, "<z^2>");
    const GridClassification g = fatou_julia_grid(sq, region, p, opts);
    const PixelMask julia = mask_of(g, Verdict::JuliaLike);

    // Pixels of the closed-form circle: every pixel hit by a dense angular sample.
    PixelMask circle{res, res, std::vector<std::uint8_t>(region.pixel_count(), 0)};
    const int samples = s.integer("circle_samples", 8);
    for (int k = 0; k < samples; ++k) {
        int col = 0, row = 0;
        if (region.locate(std::polar(1.0, 2.0 * std::numbers::pi * k / samples), col, row))
            circle.bits[static_cast<std::size_t>(row) * static_cast<std::size_t>(res) + static_cast<std::size_t>(col)] = 1;
    }
    const DirectedDistance precision = directed_distance(julia, circle, kHausdorffPixels);
    const DirectedDistance coverage = directed_distance(circle, julia, kHausdorffPixels);

    Report r = make_report("cyclic-circle", p);
    r.settings = s.all();
    r.metrics["julia_pixels"] = static_cast<double>(julia.count());
    r.metrics["circle_pixels"] = static_cast<double>(circle.count());
    r.metrics["julia_within_2px_fraction"] = precision.fraction_within;
    r.metrics["julia_max_distance_px"] = precision.max;
    r.metrics["circle_coverage_fraction"] = coverage.fraction_within;
    at_least(r, "julia_within_2px_fraction", 1.0);
    at_least(r, "circle_coverage_fraction", 0.99);
    r.notes = "<z^2> on [-2,2]^2: JuliaLike pixels vs the unit circle";
    return r;
}

Report run_containments_annulus(const Overrides& o, GridOptions opts) {
    const Settings s(with_params({{"a", 2.0}, {"resolution", 256}}), o);
    const double a = s.get("a");
    require(std::abs(a) > 1.0, "|a| > 1");
    Report r = verify_containments(annulus_semigroup(a), square(std::max(3.0, 1.5 * std::abs(a)), s.integer("resolution", 1)),
                                   params_from(s), opts);
    r.name = "containments-annulus";
    r.settings = s.all();
    return r;
}

Report run_containments_exponential(const Overrides& o, GridOptions opts) {
    const Settings s(with_params({{"lambda", 0.3}, {"resolution", 96}}), o);
    const double lambda = s.get("lambda");
    require(lambda > 0.0, "lambda > 0");
    Report r = verify_containments(exponential_pair_semigroup(lambda), exponential_region(s.integer("resolution", 1)),
                                   params_from(s), opts);
    r.name = "containments-exponential";
    r.settings = s.all();
    return r;
}

Report run_union_identity(const Overrides& o, GridOptions opts) {
    const Settings s(with_params({{"a", 2.0}, {"resolution", 512}}), o);
    const double a = s.get("a");
    require(std::abs(a) > 1.0, "|a| > 1");
    Report r = verify_union_identity(annulus_semigroup(a), square(std::max(3.0, 1.5 * std::abs(a)), s.integer("resolution", 1)),
                                     params_from(s), opts);
    r.name = "union-identity";
    r.settings = s.all();
    return r;
}

Report run_boundary_identity(const Overrides& o, GridOptions opts) {
    const Settings s(with_params({{"lambda", 0.3}, {"resolution", 128}}), o);
    const double lambda = s.get("lambda");
    require(lambda > 0.0, "lambda > 0");
    Report r = verify_boundary_identity(exponential_pair_semigroup(lambda), exponential_region(s.integer("resolution", 1)),
                                        params_from(s), opts);
    r.name = "boundary-identity";
    r.settings = s.all();
    return r;
}

Report run_multiply_connected(const Overrides& o, GridOptions) {
    const Settings s({}, o);
    Report r = make_report("multiply-connected", ClassifyParams{});
    r.skipped = true;
    r.notes = "no constructible semigroup with a multiply connected Fatou component is available; "
              "the claim I(S) meets J(S) in that case is registered but not checked";
    return r;
}

struct Entry {
    ExampleInfo info;
    std::function<Report(const Overrides&, GridOptions)> run;
};

const std::vector<Entry>& registry() {
    static const std::vector<Entry> entries = {
        {{"annulus", "<z^2, z^2/a>: grid vs J(S) = {1 <= |z| <= |a|}", true}, run_annulus},
        {{"power-components", "<z^n, a z^n>: f(U) inside V and V minus f(U) unbounded", true}, run_power_components},
        {{"circle-radii", "backward-orbit radii of a^m z^n vs |a|^{-m/(n-1)}", true}, run_circle_radii},
        {{"empty-escaping", "exponential pair with empty escaping set; strip disjointness", true}, run_empty_escaping},
        {{"exp-dichotomy", "orbit of 0 under e^{lambda z} around lambda = 1/e", true}, run_exp_dichotomy},
        {{"perfectness-proxy", "no isolated JuliaLike pixel on the annulus scene", true}, run_perfectness},
        {{"cyclic-circle", "<z^2>: JuliaLike pixels hug the unit circle", true}, run_cyclic_circle},
        {{"containments-annulus", "grid containments F(S) in F(f), J(f) in J(S) for the annulus", true},
         run_containments_annulus},
        {{"containments-exponential", "grid containments incl. I(S) in I(f) for the exponential pair", true},
         run_containments_exponential},
        {{"union-identity", "pointwise Julia grid vs union of word Julia sets (annulus)", true}, run_union_identity},
        {{"boundary-identity", "boundary of the escaping grid vs JuliaLike pixels (exponential pair)", true},
         run_boundary_identity},
        {{"multiply-connected", "I(S) meets J(S) under a multiply connected Fatou component", false},
         run_multiply_connected},
    };
    return entries;
}

}  // namespace

bool Report::passed() const {
    if (skipped) return true;
    for (const auto& t : thresholds) {
        auto it = metrics.find(t.metric);
        if (it == metrics.end()) return false;
        const double v = it->second;
        if (std::isnan(v)) return false;
        if (t.bound == Bound::AtMost ? !(v <= t.value) : !(v >= t.value)) return false;
    }
    return true;
}

std::string Report::status() const {
    if (skipped) return "SKIP";
    return passed() ? "PASS" : "FAIL";
}

Report verify_containments(const Semigroup& s, const GridRegion& region, const ClassifyParams& p, GridOptions opts) {
    const bool transcendental = s.map_class() == MapClass::TranscendentalEntire;
    const GridClassification gs = fatou_julia_grid(s, region, p, opts);
    GridClassification es;
    if (transcendental) es = escaping_grid(s, region, p, opts);

    Report r = make_report("containments", p);
    const std::size_t n = region.pixel_count();
    double worst = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const Semigroup cyc = s.cyclic(i);
        const GridClassification gf = fatou_julia_grid(cyc, region, p, opts);
        std::size_t fatou_viol = 0, julia_viol = 0;
        for (std::size_t k = 0; k < n; ++k) {
            if (gs.verdicts[k] == Verdict::FatouLike && gf.verdicts[k] != Verdict::FatouLike) ++fatou_viol;
            if (gf.verdicts[k] == Verdict::JuliaLike && gs.verdicts[k] != Verdict::JuliaLike) ++julia_viol;
        }
        const std::string tag = "_f" + std::to_string(i);
        r.metrics["fatou_violation_rate" + tag] = fraction(fatou_viol, n);
        r.metrics["julia_violation_rate" + tag] = fraction(julia_viol, n);
        at_most(r, "fatou_violation_rate" + tag, kContainmentSlack);
        at_most(r, "julia_violation_rate" + tag, kContainmentSlack);
        worst = std::max({worst, fraction(fatou_viol, n), fraction(julia_viol, n)});
        if (transcendental) {
            const GridClassification ef = escaping_grid(cyc, region, p, opts);
            std::size_t esc_viol = 0;
            for (std::size_t k = 0; k < n; ++k)
                if (es.verdicts[k] == Verdict::Escaping && ef.verdicts[k] != Verdict::Escaping) ++esc_viol;
            r.metrics["escaping_violation_rate" + tag] = fraction(esc_viol, n);
            at_most(r, "escaping_violation_rate" + tag, kContainmentSlack);
            worst = std::max(worst, fraction(esc_viol, n));
        }
    }
    if (transcendental) r.metrics["escaping_pixels"] = static_cast<double>(es.count(Verdict::Escaping));
    r.metrics["max_violation_rate"] = worst;
    r.settings["width"] = region.width;
    r.settings["height"] = region.height;
    r.notes = transcendental ? "F(S) in F(f), J(f) in J(S), I(S) in I(f) for every generator f"
                             : "F(S) in F(f), J(f) in J(S) for every generator f";
    return r;
}

Report verify_union_identity(const Semigroup& s, const GridRegion& region, const ClassifyParams& p, GridOptions opts) {
    if (s.map_class() != MapClass::Rational) throw WrongClass("verify_union_identity requires a rational semigroup");
    const GridClassification pointwise = fatou_julia_grid(s, region, p, opts);
    const GridClassification uni = julia_grid_union(s, region, p, opts);
    const PixelMask a = mask_of(pointwise, Verdict::JuliaLike);
    const PixelMask b = mask_of(uni, Verdict::JuliaLike);
    std::size_t diff = 0;
    for (std::size_t i = 0; i < a.bits.size(); ++i) diff += a.bits[i] != b.bits[i];
    const DirectedDistance ab = directed_distance(a, b, kHausdorffPixels);
    const DirectedDistance ba = directed_distance(b, a, kHausdorffPixels);

    Report r = make_report("union-identity", p);
    r.metrics["pointwise_julia_pixels"] = static_cast<double>(a.count());
    r.metrics["union_julia_pixels"] = static_cast<double>(b.count());
    r.metrics["symmetric_difference_rate"] = fraction(diff, a.bits.size());
    r.metrics["hausdorff_pointwise_to_union_px"] = ab.max;
    r.metrics["hausdorff_union_to_pointwise_px"] = ba.max;
    r.metrics["hausdorff_px"] = std::max(ab.max, ba.max);
    at_most(r, "symmetric_difference_rate", kUnionSymDiff);
    at_most(r, "hausdorff_px", kHausdorffPixels);
    r.settings["width"] = region.width;
    r.settings["height"] = region.height;
    r.notes = "J(S) as the closure of the union of J(f) over words";
    return r;
}

Report compare_boundary_to_julia(const GridClassification& boundary, const GridClassification& julia) {
    if (boundary.region.width != julia.region.width || boundary.region.height != julia.region.height)
        throw InvalidArgument("grids differ in size");
    const PixelMask b = mask_of(boundary, Verdict::JuliaLike);
    const PixelMask j = mask_of(julia, Verdict::JuliaLike);
    const DirectedDistance bj = directed_distance(b, j, kHausdorffPixels);
    const DirectedDistance jb = directed_distance(j, b, kHausdorffPixels);

    Report r = make_report("boundary-identity", julia.params);
    r.metrics["boundary_pixels"] = static_cast<double>(b.count());
    r.metrics["julia_pixels"] = static_cast<double>(j.count());
    r.metrics["boundary_within_2px_fraction"] = bj.fraction_within;
    r.metrics["boundary_to_julia_max_px"] = bj.max;
    r.metrics["julia_within_2px_of_boundary_fraction"] = jb.fraction_within;
    at_least(r, "boundary_within_2px_fraction", kBoundaryFraction);
    if (b.empty()) r.notes = "vacuous: the escaping grid has no boundary pixels";
    return r;
}

Report verify_boundary_identity(const Semigroup& s, const GridRegion& region, const ClassifyParams& p,
                                GridOptions opts) {
    const GridClassification esc = escaping_grid(s, region, p, opts);  // throws WrongClass
    const std::size_t escaping = esc.count(Verdict::Escaping);
    Report r;
    if (escaping == 0) {
        r = make_report("boundary-identity", p);
        r.metrics["boundary_pixels"] = 0;
        r.metrics["boundary_within_2px_fraction"] = 1.0;
        at_least(r, "boundary_within_2px_fraction", kBoundaryFraction);
        r.notes = "vacuous pass: no pixel of the region is Escaping";
    } else {
        r = compare_boundary_to_julia(julia_from_escaping_boundary(esc), fatou_julia_grid(s, region, p, opts));
        if (r.notes.empty()) r.notes = "discrete boundary of I(S) vs JuliaLike pixels";
    }
    r.metrics["escaping_pixels"] = static_cast<double>(escaping);
    r.settings["width"] = region.width;
    r.settings["height"] = region.height;
    return r;
}

const std::vector<ExampleInfo>& known_examples() {
    static const std::vector<ExampleInfo> infos = [] {
        std::vector<ExampleInfo> out;
        for (const auto& e : registry()) out.push_back(e.info);
        return out;
    }();
    return infos;
}

Report verify_known_example(const std::string& id, const Overrides& overrides, GridOptions opts) {
    for (const auto& e : registry())
        if (e.info.id == id) return e.run(overrides, opts);
    std::string known;
    for (const auto& e : registry()) known += (known.empty() ? "" : ", ") + e.info.id;
    throw UnknownExample("unknown example '" + id + "' (known: " + known + ")");
}

std::vector<Report> verify_suite(GridOptions opts) {
    std::vector<Report> out;
    for (const auto& e : registry()) out.push_back(e.run({}, opts));
    return out;
}

Semigroup annulus_semigroup(Complex a) {
    if (!(std::abs(a) > 0.0)) throw InvalidArgument("a must be nonzero");
    return Semigroup({HolomorphicMap::monomial(1.0, 2), HolomorphicMap::monomial(1.0 / a, 2)}, "<z^2, z^2/a>");
}

Semigroup exponential_pair_semigroup(double lambda) {
    if (!(lambda > 0.0)) throw InvalidArgument("lambda must be positive");
    return Semigroup({HolomorphicMap::exp_affine(1, lambda),
                      HolomorphicMap::exp_affine(1, lambda, 0.0, Complex(0.0, 2.0 * std::numbers::pi / lambda))},
                     "<e^{lambda z}, e^{lambda z} + 2 pi i/lambda>");
}

Semigroup empty_escaping_semigroup(Complex gamma, Complex c, Complex mu, Complex d) {
    return Semigroup({HolomorphicMap::exp_affine(-1, 1.0, gamma, c), HolomorphicMap::exp_affine(1, 1.0, mu, d)},
                     "<e^{-z+gamma}+c, e^{z+mu}+d>");
}

}  // namespace semidyn
