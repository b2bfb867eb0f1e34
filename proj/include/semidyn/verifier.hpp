#pragma once

#include <map>
#include <string>
#include <vector>

#include "semidyn/classifier.hpp"
#include "semidyn/grid_metrics.hpp"

namespace semidyn {

enum class Bound { AtMost, AtLeast };

struct Threshold {
    std::string metric;
    Bound bound = Bound::AtMost;
    double value = 0.0;
};

/// Outcome of one theorem or example check. Thresholds travel with the report
/// and `passed()` is computed from them, never stored.
struct Report {
    std::string name;
    std::map<std::string, double> metrics;
    std::vector<Threshold> thresholds;
    ClassifyParams params;
    /// Scenario settings (example parameters, resolution, sample counts).
    std::map<std::string, double> settings;
    std::string notes;
    /// Registered but not runnable; never counts as a failure.
    bool skipped = false;

    /// Every threshold's metric is present and within bounds.
    bool passed() const;
    /// "PASS", "FAIL" or "SKIP".
    std::string status() const;
};

using Overrides = std::map<std::string, double>;

/// Violation rates of F(S) in F(f), J(f) in J(S) and (transcendental only)
/// I(S) in I(f) for every generator f, each against a 0.5% slack.
Report verify_containments(const Semigroup& s, const GridRegion& region, const ClassifyParams& p,
                           GridOptions opts = {});

/// fatou_julia_grid vs julia_grid_union: symmetric difference <= 2% of pixels
/// and pixel Hausdorff <= 2. Rational semigroups only.
Report verify_union_identity(const Semigroup& s, const GridRegion& region, const ClassifyParams& p,
                             GridOptions opts = {});

/// Discrete boundary of the escaping grid vs the JuliaLike pixels of
/// fatou_julia_grid. Passes when >= 95% of boundary pixels lie within 2 pixels
/// of a JuliaLike pixel; vacuous pass when no pixel escapes.
Report verify_boundary_identity(const Semigroup& s, const GridRegion& region, const ClassifyParams& p,
                                GridOptions opts = {});

/// The comparison half of verify_boundary_identity, usable on any two grids.
Report compare_boundary_to_julia(const GridClassification& boundary, const GridClassification& julia);

struct ExampleInfo {
    std::string id;
    std::string summary;
    bool implemented = true;
};

/// Registry of built-in examples, in suite order.
const std::vector<ExampleInfo>& known_examples();

/// Runs a registered example. Throws UnknownExample, HypothesisViolated (the
/// violated constraint is named), or InvalidArgument for unknown override keys.
Report verify_known_example(const std::string& id, const Overrides& overrides = {}, GridOptions opts = {});

/// Every registered example with default settings.
std::vector<Report> verify_suite(GridOptions opts = {});

// Built-in semigroups used by the registry.
Semigroup annulus_semigroup(Complex a);
Semigroup exponential_pair_semigroup(double lambda);
Semigroup empty_escaping_semigroup(Complex gamma, Complex c, Complex mu, Complex d);

}  // namespace semidyn
