#include "semidyn/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "semidyn/errors.hpp"

namespace semidyn {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Running-error bound for Horner evaluation at modulus r.
double rounding_bound(const std::vector<Complex>& a, double r) {
    double acc = 0.0;
    for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * r + std::abs(*it);
    return 8.0 * kEps * acc;
}

Complex horner_derivative(const std::vector<Complex>& a, Complex z) {
    Complex acc{};
    for (std::size_t k = a.size() - 1; k >= 1; --k) acc = acc * z + static_cast<double>(k) * a[k];
    return acc;
}

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
}

// Replace clusters that approximate one multiple root by their centroid.
std::vector<Complex> merge_clusters(const std::vector<Complex>& a, std::vector<Complex> z) {
    const std::size_t n = z.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(z[i] - z[j]) <= 1e-5 * std::max(1.0, std::abs(z[i])))
                parent[find_root(parent, i)] = find_root(parent, j);

    std::vector<Complex> out;
    std::vector<bool> emitted(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = find_root(parent, i);
        if (emitted[r]) continue;
        emitted[r] = true;
        std::vector<Complex> members;
        for (std::size_t j = 0; j < n; ++j)
            if (find_root(parent, j) == r) members.push_back(z[j]);
        if (members.size() == 1) {
            out.push_back(members.front());
            continue;
        }
        Complex centroid = std::accumulate(members.begin(), members.end(), Complex{}) /
                           static_cast<double>(members.size());
        double worst = 0.0;
        for (auto m : members) worst = std::max(worst, std::abs(horner(a, m)));
        const double at_centroid = std::abs(horner(a, centroid));
        if (at_centroid <= std::max(worst, rounding_bound(a, std::abs(centroid)))) {
            out.push_back(centroid);
        } else {
            out.insert(out.end(), members.begin(), members.end());
        }
    }
    return out;
}

}  // namespace

std::vector<Complex> dedup_points(std::vector<Complex> pts, double tol) {
    std::vector<Complex> out;
    out.reserve(pts.size());
    for (auto p : pts) {
        const bool seen = std::any_of(out.begin(), out.end(),
                                      [&](Complex q) { return std::abs(p - q) <= tol; });
        if (!seen) out.push_back(p);
    }
    return out;
}

std::vector<Complex> polynomial_roots(std::span<const Complex> coeffs, RootOptions opts) {
    std::vector<Complex> c(coeffs.begin(), coeffs.end());
    double scale = 0.0;
    for (auto v : c) scale = std::max(scale, std::abs(v));
    if (c.empty() || scale == 0.0) throw InvalidArgument("root finding on the zero polynomial");
    while (c.size() > 1 && std::abs(c.back()) <= 1e-14 * scale) c.pop_back();

    std::vector<Complex> roots;
    std::size_t zeros = 0;
    while (zeros + 1 < c.size() && c[zeros] == Complex{}) ++zeros;
    if (zeros > 0) {
        roots.emplace_back();
        c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(zeros));
    }
    const std::size_t n = c.size() - 1;
    if (n == 0) return roots;

    std::vector<Complex> a(c.size());
    for (std::size_t k = 0; k <= n; ++k) a[k] = c[k] / c[n];

    if (n == 1) {
        roots.push_back(-a[0]);
        return dedup_points(std::move(roots), opts.dedup_tolerance);
    }

    double rho = 0.0;
    for (std::size_t k = 0; k < n; ++k)
        rho = std::max(rho, std::pow(std::abs(a[k]), 1.0 / static_cast<double>(n - k)));
    if (rho == 0.0) rho = 1.0;

    std::vector<Complex> z(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n) + 0.4;
        z[j] = std::polar(rho, angle);
    }

    std::vector<bool> done(n, false);
    bool all_done = false;
    for (int sweep = 0; sweep < opts.max_sweeps && !all_done; ++sweep) {
        all_done = true;
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i]) continue;
            const Complex q = horner(a, z[i]);
            if (std::abs(q) <= rounding_bound(a, std::abs(z[i]))) {
                done[i] = true;
                continue;
            }
            Complex denom{1.0, 0.0};
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) denom *= z[i] - z[j];
            if (denom == Complex{}) {
                z[i] += Complex{1e-7, 1e-7} * std::max(1.0, std::abs(z[i]));
                all_done = false;
                continue;
            }
            const Complex delta = q / denom;
            z[i] -= delta;
            if (!finite(z[i])) throw RootFindFailure("Durand-Kerner iterate became non-finite");
            if (std::abs(delta) <= 4.0 * kEps * std::abs(z[i])) {
                done[i] = true;
            } else {
                all_done = false;
            }
        }
    }
    if (!all_done) {
        throw RootFindFailure("Durand-Kerner did not converge in " + std::to_string(opts.max_sweeps) +
                              " sweeps (degree " + std::to_string(n) + ")");
    }

    // A few Newton steps; kept only while they lower the residual.
    for (auto& r : z) {
        double res = std::abs(horner(a, r));
        for (int it = 0; it < 3 && res > 0.0; ++it) {
            const Complex d = horner_derivative(a, r);
            if (d == Complex{}) break;
            const Complex cand = r - horner(a, r) / d;
            const double cres = std::abs(horner(a, cand));
            if (!(cres < res)) break;
            r = cand;
            res = cres;
        }
    }

    auto merged = merge_clusters(a, std::move(z));
    roots.insert(roots.end(), merged.begin(), merged.end());
    return dedup_points(std::move(roots), opts.dedup_tolerance);
}

}  // namespace semidyn
