#include "semidyn/grid_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "semidyn/errors.hpp"

namespace semidyn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// 1-D squared distance transform of a sampled function (Felzenszwalb & Huttenlocher).
void edt_1d(const std::vector<double>& f, std::vector<double>& d) {
    const std::size_t n = f.size();
    std::vector<std::size_t> v(n);
    std::vector<double> z(n + 1);
    std::size_t k = 0;
    // Skip leading +inf samples; they never own a parabola.
    std::size_t first = 0;
    while (first < n && !std::isfinite(f[first])) ++first;
    if (first == n) {
        std::fill(d.begin(), d.end(), kInf);
        return;
    }
    v[0] = first;
    z[0] = -kInf;
    z[1] = kInf;
    for (std::size_t q = first + 1; q < n; ++q) {
        if (!std::isfinite(f[q])) continue;
        const auto qd = static_cast<double>(q);
        for (;;) {
            const auto vk = static_cast<double>(v[k]);
            const double s = ((f[q] + qd * qd) - (f[v[k]] + vk * vk)) / (2.0 * qd - 2.0 * vk);
            if (s <= z[k]) {
                if (k == 0) {
                    v[0] = q;
                    z[1] = kInf;
                    break;
                }
                --k;
                continue;
            }
            ++k;
            v[k] = q;
            z[k] = s;
            z[k + 1] = kInf;
            break;
        }
    }
    k = 0;
    for (std::size_t q = 0; q < n; ++q) {
        const auto qd = static_cast<double>(q);
        while (z[k + 1] < qd) ++k;
        const double diff = qd - static_cast<double>(v[k]);
        d[q] = diff * diff + f[v[k]];
    }
}

void require_same_shape(const PixelMask& a, const PixelMask& b) {
    if (a.width != b.width || a.height != b.height) throw InvalidArgument("pixel masks differ in shape");
}

}  // namespace

std::size_t PixelMask::count() const noexcept {
    return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
}

PixelMask mask_of(const GridClassification& g, Verdict v) {
    PixelMask m{g.region.width, g.region.height, std::vector<std::uint8_t>(g.verdicts.size())};
    for (std::size_t i = 0; i < g.verdicts.size(); ++i) m.bits[i] = g.verdicts[i] == v ? 1 : 0;
    return m;
}

std::vector<double> distance_to(const PixelMask& target) {
    const auto w = static_cast<std::size_t>(target.width);
    const auto h = static_cast<std::size_t>(target.height);
    std::vector<double> grid(w * h);
    for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = target.bits[i] ? 0.0 : kInf;

    std::vector<double> f(std::max(w, h)), d(std::max(w, h));
    for (std::size_t c = 0; c < w; ++c) {
        f.resize(h);
        d.resize(h);
        for (std::size_t r = 0; r < h; ++r) f[r] = grid[r * w + c];
        edt_1d(f, d);
        for (std::size_t r = 0; r < h; ++r) grid[r * w + c] = d[r];
    }
    for (std::size_t r = 0; r < h; ++r) {
        f.assign(grid.begin() + static_cast<std::ptrdiff_t>(r * w), grid.begin() + static_cast<std::ptrdiff_t>((r + 1) * w));
        d.resize(w);
        edt_1d(f, d);
        for (std::size_t c = 0; c < w; ++c) grid[r * w + c] = std::sqrt(d[c]);
    }
    return grid;
}

DirectedDistance directed_distance(const PixelMask& from, const PixelMask& to, double within) {
    require_same_shape(from, to);
    DirectedDistance out;
    out.from_count = from.count();
    if (out.from_count == 0) return out;
    const auto dist = distance_to(to);
    std::size_t ok = 0;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        if (!from.bits[i]) continue;
        out.max = std::max(out.max, dist[i]);
        if (dist[i] <= within) ++ok;
    }
    out.fraction_within = static_cast<double>(ok) / static_cast<double>(out.from_count);
    return out;
}

double hausdorff(const PixelMask& a, const PixelMask& b) {
    return std::max(directed_distance(a, b, 0.0).max, directed_distance(b, a, 0.0).max);
}

std::size_t isolated_pixels(const PixelMask& m) {
    std::size_t n = 0;
    for (int r = 0; r < m.height; ++r)
        for (int c = 0; c < m.width; ++c) {
            if (!m.bits[static_cast<std::size_t>(r * m.width + c)]) continue;
            bool alone = true;
            for (int dr = -1; dr <= 1 && alone; ++dr)
                for (int dc = -1; dc <= 1; ++dc) {
                    if (dr == 0 && dc == 0) continue;
                    const int rr = r + dr, cc = c + dc;
                    if (rr < 0 || cc < 0 || rr >= m.height || cc >= m.width) continue;
                    if (m.bits[static_cast<std::size_t>(rr * m.width + cc)]) {
                        alone = false;
                        break;
                    }
                }
            if (alone) ++n;
        }
    return n;
}

}  // namespace semidyn
