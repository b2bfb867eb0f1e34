#pragma once

#include <span>
#include <vector>

#include "semidyn/map.hpp"

namespace semidyn {

struct RootOptions {
    int max_sweeps = 500;
    double dedup_tolerance = 1e-9;
};

/// Roots of sum_k coeffs[k] z^k by simultaneous (Durand-Kerner) iteration
/// started from perturbed roots of unity.
///
/// Exact zero roots are factored out first. Clusters of approximations to a
/// multiple root are replaced by their centroid when that lowers the residual,
/// and the result is deduplicated at `dedup_tolerance`. Coefficient vectors
/// that are constant after trimming have no roots and yield an empty result.
///
/// Throws RootFindFailure if the iteration has not settled after max_sweeps.
std::vector<Complex> polynomial_roots(std::span<const Complex> coeffs, RootOptions opts = {});

/// Drops points closer than `tol` to an earlier point; keeps first occurrence.
std::vector<Complex> dedup_points(std::vector<Complex> pts, double tol);

}  // namespace semidyn
