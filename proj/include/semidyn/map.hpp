#pragma once

#include <complex>
#include <string>
#include <variant>
#include <vector>

namespace semidyn {

using Complex = std::complex<double>;

enum class MapClass { Rational, TranscendentalEntire };

std::string to_string(MapClass c);

// Leaf variants. Construct them through HolomorphicMap's factories so the
// well-formedness checks run.

/// Coefficients in ascending powers.
struct Polynomial {
    std::vector<Complex> coeffs;
};

struct RationalFunction {
    Polynomial num;
    Polynomial den;
};

/// z -> exp(sign * lambda * z + gamma) + c
struct ExpAffine {
    int sign = 1;
    Complex lambda{1.0, 0.0};
    Complex gamma{};
    Complex c{};
};

/// z -> lambda * sin(z) + tau
struct SinScaled {
    Complex lambda{1.0, 0.0};
    Complex tau{};
};

/// z -> a * z + b
struct Affine {
    Complex a{1.0, 0.0};
    Complex b{};
};

class HolomorphicMap;

/// chain[0] o chain[1] o ... o chain[n-1]; the last element is applied first.
struct Composite {
    std::vector<HolomorphicMap> chain;
};

/// A generator of a holomorphic semigroup. Immutable once built.
class HolomorphicMap {
  public:
    using Variant =
        std::variant<Polynomial, RationalFunction, ExpAffine, SinScaled, Affine, Composite>;

    /// Validates the variant; throws InvalidArgument when malformed or when a
    /// composite mixes a genuinely rational leaf with a transcendental one.
    explicit HolomorphicMap(Variant v);

    static HolomorphicMap polynomial(std::vector<Complex> coeffs);
    static HolomorphicMap rational(std::vector<Complex> num, std::vector<Complex> den);
    static HolomorphicMap exp_affine(int sign, Complex lambda, Complex gamma = {}, Complex c = {});
    static HolomorphicMap sin_scaled(Complex lambda, Complex tau = {});
    static HolomorphicMap affine(Complex a, Complex b = {});
    static HolomorphicMap composite(std::vector<HolomorphicMap> chain);
    /// a * z^n
    static HolomorphicMap monomial(Complex a, int n);

    const Variant& variant() const noexcept { return v_; }
    MapClass map_class() const noexcept { return class_; }
    /// Human-readable formula, stable across runs.
    std::string describe() const;

  private:
    Variant v_;
    MapClass class_;
};

enum class EvalStatus { Ok, PoleHit, Overflow };

struct EvalResult {
    Complex value{};
    EvalStatus status = EvalStatus::Ok;
};

struct EvalDerivResult {
    Complex value{};
    Complex derivative{};
    EvalStatus status = EvalStatus::Ok;
};

// Non-throwing evaluation used by the orbit engines. Values are meaningful only
// when status == Ok; a non-Ok status never carries a non-finite value.
EvalResult try_evaluate(const HolomorphicMap& map, Complex z) noexcept;
EvalDerivResult try_evaluate_with_derivative(const HolomorphicMap& map, Complex z) noexcept;

/// Throws PoleHit or Overflow.
Complex evaluate(const HolomorphicMap& map, Complex z);
/// Exact analytic derivative; chain rule across composites. Throws as evaluate.
Complex derivative(const HolomorphicMap& map, Complex z);

/// All points p with map(p) = w. Transcendental leaves return the branches
/// k in [-branch_window, branch_window]. Deduplicated at 1e-9.
/// Throws RootFindFailure when a polynomial solve does not converge.
std::vector<Complex> preimages(const HolomorphicMap& map, Complex w, int branch_window);

/// A point of the Riemann sphere.
struct SpherePoint {
    Complex z{};
    bool infinite = false;

    SpherePoint() = default;
    SpherePoint(Complex value) : z(value) {}  // NOLINT: implicit by intent
    static SpherePoint infinity() {
        SpherePoint p;
        p.infinite = true;
        return p;
    }
};

/// Chordal metric 2|z-w| / sqrt((1+|z|^2)(1+|w|^2)); lies in [0, 2].
double chordal_distance(SpherePoint a, SpherePoint b) noexcept;

// Polynomial helpers shared with the root finder.
Complex horner(const std::vector<Complex>& coeffs, Complex z) noexcept;
std::size_t degree(const Polynomial& p) noexcept;

}  // namespace semidyn
