#include "semidyn/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_map>

#include "semidyn/errors.hpp"
#include "semidyn/parallel.hpp"
#include "semidyn/random.hpp"

namespace semidyn {

namespace {

enum FateClass : std::uint8_t { kDivergent = 0, kBounded = 1, kSlow = 2 };

FateClass classify_fate(const OrbitSummary& o, double bound_radius) {
    if (is_divergent(o.fate)) return kDivergent;
    return std::abs(o.last) <= bound_radius ? kBounded : kSlow;
}

void require_transcendental(const Semigroup& s, const char* op) {
    if (s.map_class() != MapClass::TranscendentalEntire)
        throw WrongClass(std::string(op) + " requires a transcendental entire semigroup");
}

PointVerdict escaping_core(const Semigroup& s, const std::vector<Word>& words, Complex z, const ClassifyParams& p,
                           std::uint64_t stream) {
    PointVerdict v;
    auto& ev = v.evidence;
    auto tally = [&](const OrbitSummary& o) {
        switch (classify_fate(o, p.bound_radius)) {
            case kDivergent: ++ev.divergent; return false;
            case kBounded: ++ev.bounded; return true;
            case kSlow: ++ev.slow; return false;
        }
        return false;
    };
    for (const auto& w : words) {
        if (tally(cyclic_summary(s, w, z, p.depth, p.escape_radius, false))) {
            v.label = Verdict::NonEscaping;
            return v;
        }
    }
    for (int j = 0; j < p.n_sequences; ++j) {
        const auto seq = sequence_seed(stream, static_cast<std::uint64_t>(j));
        if (tally(random_summary(s, z, p.depth, seq, p.escape_radius))) {
            v.label = Verdict::NonEscaping;
            return v;
        }
    }
    v.label = ev.slow == 0 ? Verdict::Escaping : Verdict::Undetermined;
    return v;
}

struct FatouJuliaPoint {
    PointVerdict verdict;
    bool mixed = false;
};

// When `signature` is non-null it receives one fate class per word followed by
// three flags (divergent / bounded / slow seen among random sequences). It is
// only complete when the result is not mixed.
FatouJuliaPoint fatou_julia_core(const Semigroup& s, const std::vector<Word>& words, Complex z,
                                 const ClassifyParams& p, std::uint64_t stream, std::uint8_t* signature) {
    FatouJuliaPoint out;
    auto& ev = out.verdict.evidence;
    const double log_threshold = std::log10(p.deriv_threshold);
    bool blowup = false;

    for (std::size_t i = 0; i < words.size(); ++i) {
        const OrbitSummary o = cyclic_summary(s, words[i], z, p.depth, p.escape_radius, true);
        const FateClass c = classify_fate(o, p.bound_radius);
        if (signature) signature[i] = c;
        if (c == kDivergent) ++ev.divergent;
        if (c == kSlow) ++ev.slow;
        if (c == kBounded) {
            ++ev.bounded;
            ev.max_log10_derivative = std::max(ev.max_log10_derivative, o.log10_derivative);
            if (o.log10_derivative > log_threshold) blowup = true;
        }
        if (ev.divergent > 0 && ev.bounded > 0) {
            out.mixed = true;
            out.verdict.label = Verdict::JuliaLike;
            return out;
        }
    }
    std::uint8_t flags[3] = {0, 0, 0};
    for (int j = 0; j < p.n_sequences; ++j) {
        const auto seq = sequence_seed(stream, static_cast<std::uint64_t>(j));
        const FateClass c = classify_fate(random_summary(s, z, p.depth, seq, p.escape_radius), p.bound_radius);
        flags[c] = 1;
        if (c == kDivergent) ++ev.divergent;
        if (c == kBounded) ++ev.bounded;
        if (c == kSlow) ++ev.slow;
        if (ev.divergent > 0 && ev.bounded > 0) {
            out.mixed = true;
            out.verdict.label = Verdict::JuliaLike;
            return out;
        }
    }
    if (signature) std::copy(flags, flags + 3, signature + words.size());

    if (blowup) {
        out.verdict.label = Verdict::JuliaLike;
    } else if (ev.slow == 0) {
        out.verdict.label = Verdict::FatouLike;
    } else {
        out.verdict.label = Verdict::Undetermined;
    }
    return out;
}

// Calls f(neighbour index) for each 4-neighbour of pixel i inside the grid.
template <class F>
void for_each_neighbour(const GridRegion& r, std::size_t i, F&& f) {
    const auto w = static_cast<std::size_t>(r.width);
    const auto h = static_cast<std::size_t>(r.height);
    const std::size_t col = i % w;
    const std::size_t row = i / w;
    if (col > 0) f(i - 1);
    if (col + 1 < w) f(i + 1);
    if (row > 0) f(i - w);
    if (row + 1 < h) f(i + w);
}

GridClassification make_grid(const GridRegion& region, const ClassifyParams& p, GridSource src) {
    GridClassification g;
    g.region = region;
    g.params = p;
    g.source = src;
    g.verdicts.assign(region.pixel_count(), Verdict::FatouLike);
    return g;
}

// Points deduplicated at an absolute tolerance via a hash grid.
class PointSet {
  public:
    explicit PointSet(double tol) : tol_(tol) {}

    bool contains(Complex z) const {
        const auto [cx, cy] = cell(z);
        for (std::int64_t dx = -1; dx <= 1; ++dx)
            for (std::int64_t dy = -1; dy <= 1; ++dy) {
                auto it = cells_.find(key(cx + dx, cy + dy));
                if (it == cells_.end()) continue;
                for (auto idx : it->second)
                    if (std::abs(points_[idx] - z) <= tol_) return true;
            }
        return false;
    }

    bool insert(Complex z) {
        if (contains(z)) return false;
        const auto [cx, cy] = cell(z);
        cells_[key(cx, cy)].push_back(points_.size());
        points_.push_back(z);
        return true;
    }

    const std::vector<Complex>& points() const { return points_; }

  private:
    std::pair<std::int64_t, std::int64_t> cell(Complex z) const {
        auto q = [&](double v) {
            return static_cast<std::int64_t>(std::clamp(std::floor(v / tol_), -1e15, 1e15));
        };
        return {q(z.real()), q(z.imag())};
    }
    static std::uint64_t key(std::int64_t x, std::int64_t y) {
        return static_cast<std::uint64_t>(x) * 0x9E3779B97F4A7C15ULL ^ static_cast<std::uint64_t>(y);
    }

    double tol_;
    std::vector<Complex> points_;
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> cells_;
};

}  // namespace

void ClassifyParams::validate() const {
    if (max_word_len < 1) throw InvalidArgument("max_word_len must be >= 1");
    if (n_sequences < 1) throw InvalidArgument("n_sequences must be >= 1");
    if (depth < 1) throw InvalidArgument("depth must be >= 1");
    if (!(bound_radius > 0.0) || !std::isfinite(bound_radius)) throw InvalidArgument("bound_radius must be > 0");
    if (!(escape_radius > bound_radius) || !std::isfinite(escape_radius))
        throw InvalidArgument("escape_radius must exceed bound_radius");
    if (!(deriv_threshold > 1.0) || !std::isfinite(deriv_threshold))
        throw InvalidArgument("deriv_threshold must be > 1");
    if (branch_window < 0) throw InvalidArgument("branch_window must be >= 0");
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Escaping: return "Escaping";
        case Verdict::NonEscaping: return "NonEscaping";
        case Verdict::FatouLike: return "FatouLike";
        case Verdict::JuliaLike: return "JuliaLike";
        case Verdict::Undetermined: return "Undetermined";
    }
    return "?";
}

std::string to_string(GridSource s) {
    switch (s) {
        case GridSource::Escaping: return "escaping";
        case GridSource::FatouJulia: return "fatou-julia";
        case GridSource::JuliaUnion: return "julia-union";
        case GridSource::EscapingBoundary: return "julia-boundary";
        case GridSource::BackwardOrbit: return "backward-orbit";
        case GridSource::Synthetic: return "synthetic";
    }
    return "?";
}

void GridRegion::validate() const {
    auto finite = [](Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); };
    if (!finite(min) || !finite(max)) throw InvalidArgument("region corners must be finite");
    if (!(min.real() < max.real()) || !(min.imag() < max.imag()))
        throw InvalidArgument("region min corner must be below max corner in both coordinates");
    if (width < 1 || height < 1) throw InvalidArgument("region width and height must be >= 1");
}

bool GridRegion::locate(Complex z, int& col, int& row) const noexcept {
    const double fx = (z.real() - min.real()) / pixel_width();
    const double fy = (max.imag() - z.imag()) / pixel_height();
    if (!(fx >= 0.0 && fx < width && fy >= 0.0 && fy < height)) return false;
    col = static_cast<int>(fx);
    row = static_cast<int>(fy);
    return true;
}

std::size_t GridClassification::count(Verdict v) const {
    return static_cast<std::size_t>(std::count(verdicts.begin(), verdicts.end(), v));
}

PointVerdict classify_escaping(const Semigroup& s, Complex z, const ClassifyParams& p) {
    require_transcendental(s, "classify_escaping");
    p.validate();
    return escaping_core(s, enumerate_words(s, p.max_word_len), z, p, p.seed);
}

PointVerdict classify_fatou_julia(const Semigroup& s, Complex z, const ClassifyParams& p) {
    p.validate();
    return fatou_julia_core(s, enumerate_words(s, p.max_word_len), z, p, p.seed, nullptr).verdict;
}

GridClassification escaping_grid(const Semigroup& s, const GridRegion& region, const ClassifyParams& p,
                                 GridOptions opts) {
    require_transcendental(s, "escaping_grid");
    p.validate();
    region.validate();
    const auto words = enumerate_words(s, p.max_word_len);
    GridClassification g = make_grid(region, p, GridSource::Escaping);
    const auto w = static_cast<std::size_t>(region.width);
    parallel_for(g.verdicts.size(), opts.workers, [&](std::size_t i) {
        const Complex z = region.pixel_center(static_cast<int>(i % w), static_cast<int>(i / w));
        g.verdicts[i] = escaping_core(s, words, z, p, pixel_seed(p.seed, i)).label;
    });
    return g;
}

GridClassification fatou_julia_grid(const Semigroup& s, const GridRegion& region, const ClassifyParams& p,
                                    GridOptions opts) {
    p.validate();
    region.validate();
    const auto words = enumerate_words(s, p.max_word_len);
    const std::size_t sig_len = words.size() + 3;
    const std::size_t n = region.pixel_count();
    const auto w = static_cast<std::size_t>(region.width);

    std::vector<std::uint8_t> signatures(n * sig_len, 0);
    std::vector<std::uint8_t> mixed(n, 0);
    GridClassification g = make_grid(region, p, GridSource::FatouJulia);
    parallel_for(n, opts.workers, [&](std::size_t i) {
        const Complex z = region.pixel_center(static_cast<int>(i % w), static_cast<int>(i / w));
        const auto r = fatou_julia_core(s, words, z, p, pixel_seed(p.seed, i), &signatures[i * sig_len]);
        g.verdicts[i] = r.verdict.label;
        mixed[i] = r.mixed ? 1 : 0;
    });

    std::vector<Verdict> out = g.verdicts;
    for (std::size_t i = 0; i < n; ++i) {
        if (out[i] == Verdict::JuliaLike) continue;
        bool differs = false;
        for_each_neighbour(region, i, [&](std::size_t j) {
            if (differs) return;
            if (mixed[j]) {
                differs = true;
                return;
            }
            differs = !std::equal(&signatures[i * sig_len], &signatures[i * sig_len] + sig_len,
                                  &signatures[j * sig_len]);
        });
        if (differs) out[i] = Verdict::JuliaLike;
    }
    g.verdicts = std::move(out);
    return g;
}

GridClassification julia_grid_union(const Semigroup& s, const GridRegion& region, const ClassifyParams& p,
                                    GridOptions opts) {
    if (s.map_class() != MapClass::Rational) throw WrongClass("julia_grid_union requires a rational semigroup");
    p.validate();
    region.validate();
    const auto words = enumerate_words(s, p.max_word_len);
    const std::size_t n = region.pixel_count();
    const auto w = static_cast<std::size_t>(region.width);

    std::vector<Complex> centers(n);
    for (std::size_t i = 0; i < n; ++i)
        centers[i] = region.pixel_center(static_cast<int>(i % w), static_cast<int>(i / w));

    std::vector<std::uint8_t> in_union(n, 0);
    std::vector<std::uint8_t> fate(n);
    for (const auto& word : words) {
        parallel_for(n, opts.workers, [&](std::size_t i) {
            fate[i] = classify_fate(cyclic_summary(s, word, centers[i], p.depth, p.escape_radius, false),
                                    p.bound_radius);
        });
        for (std::size_t i = 0; i < n; ++i) {
            if (in_union[i]) continue;
            for_each_neighbour(region, i, [&](std::size_t j) {
                if (fate[j] != fate[i]) in_union[i] = 1;
            });
        }
    }
    GridClassification g = make_grid(region, p, GridSource::JuliaUnion);
    for (std::size_t i = 0; i < n; ++i)
        if (in_union[i]) g.verdicts[i] = Verdict::JuliaLike;
    return g;
}

GridClassification julia_from_escaping_boundary(const GridClassification& g) {
    if (g.source != GridSource::Escaping)
        throw WrongSource("expected a grid from escaping_grid, got " + to_string(g.source));
    GridClassification out = make_grid(g.region, g.params, GridSource::EscapingBoundary);
    for (std::size_t i = 0; i < g.verdicts.size(); ++i) {
        const bool esc = g.verdicts[i] == Verdict::Escaping;
        for_each_neighbour(g.region, i, [&](std::size_t j) {
            if ((g.verdicts[j] == Verdict::Escaping) != esc) out.verdicts[i] = Verdict::JuliaLike;
        });
    }
    return out;
}

BackwardOrbitSample backward_orbit_sample(const Semigroup& s, Complex z0, std::size_t n_points,
                                          std::size_t burn_in, const ClassifyParams& p) {
    p.validate();
    if (n_points < 1) throw InvalidArgument("n_points must be >= 1");
    const auto& gens = s.generators();
    const int k = p.branch_window;

    bool any = false;
    for (const auto& g : gens) any = any || !preimages(g, z0, k).empty();
    if (!any) throw DeadEnd("start point has no preimage under any generator");

    BackwardOrbitSample out;
    out.points.reserve(n_points);
    SplitMix64 rng(p.seed);
    const std::size_t restart_limit = 100 * (n_points + burn_in) + 1000;
    Complex cur = z0;
    std::size_t walk = 0;
    while (out.points.size() < n_points) {
        const std::size_t gi = static_cast<std::size_t>(rng.below(gens.size()));
        const auto pre = preimages(gens[gi], cur, k);
        if (pre.empty()) {
            if (++out.restarts > restart_limit) throw DeadEnd("backward walk keeps dying; restart limit reached");
            cur = z0;
            walk = 0;
            continue;
        }
        const Complex next = pre[static_cast<std::size_t>(rng.below(pre.size()))];
        const double res = std::abs(evaluate(gens[gi], next) - cur) / std::max(1.0, std::abs(cur));
        out.max_relative_residual = std::max(out.max_relative_residual, res);
        cur = next;
        if (++walk > burn_in) out.points.push_back(cur);
    }
    return out;
}

ExceptionalProbe exceptional_probe(const Semigroup& s, Complex z, int max_depth, std::size_t cap,
                                   int branch_window) {
    if (cap < 1) throw InvalidArgument("cap must be >= 1");
    if (max_depth < 1) throw InvalidArgument("max_depth must be >= 1");
    ExceptionalProbe out;
    out.infinity_implicit = s.map_class() == MapClass::Rational &&
                            std::all_of(s.generators().begin(), s.generators().end(), [](const HolomorphicMap& m) {
                                return !std::holds_alternative<RationalFunction>(m.variant()) ||
                                       degree(std::get<RationalFunction>(m.variant()).den) == 0;
                            });
    PointSet seen(1e-9);
    seen.insert(z);
    std::vector<Complex> frontier{z};
    for (int level = 1; level <= max_depth; ++level) {
        out.levels = level;
        std::vector<Complex> next;
        for (auto w : frontier)
            for (const auto& g : s.generators())
                for (auto q : preimages(g, w, branch_window))
                    if (seen.insert(q)) next.push_back(q);
        if (next.empty()) {
            out.finite = true;
            break;
        }
        if (seen.points().size() > cap) break;
        frontier = std::move(next);
    }
    out.points = seen.points();
    out.count = out.points.size();
    return out;
}

bool strip_membership(Complex z, StripFamily family, int k_range) {
    if (k_range < 1) throw InvalidArgument("k_range must be >= 1");
    const double half_pi = std::numbers::pi / 2.0;
    const double y = z.imag();
    if (family == StripFamily::First) {
        if (!(z.real() < 0.0)) return false;
        for (int k = -k_range; k <= k_range; ++k)
            if ((4 * k - 3) * half_pi < y && y < (4 * k - 1) * half_pi) return true;
        return false;
    }
    if (!(z.real() > 0.0)) return false;
    for (int k = -k_range; k <= k_range; ++k)
        if ((4 * k - 1) * half_pi < y && y < (4 * k + 1) * half_pi) return true;
    return false;
}

}  // namespace semidyn
