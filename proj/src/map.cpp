#include "semidyn/map.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include "semidyn/errors.hpp"
#include "semidyn/roots.hpp"

namespace semidyn {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kPoleThreshold = 1e-300;
// exp overflows past this real part.
constexpr double kExpLimit = 709.0;

bool finite(Complex z) noexcept { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

enum class LeafKind { PolynomialLike, TrueRational, Transcendental };

void collect_leaf_kinds(const HolomorphicMap& m, bool& has_rational, bool& has_transcendental) {
    std::visit(overloaded{
                   [&](const RationalFunction& r) {
                       if (degree(r.den) > 0) has_rational = true;
                   },
                   [&](const ExpAffine&) { has_transcendental = true; },
                   [&](const SinScaled&) { has_transcendental = true; },
                   [&](const Composite& c) {
                       for (const auto& inner : c.chain) collect_leaf_kinds(inner, has_rational, has_transcendental);
                   },
                   [](const auto&) {},
               },
               m.variant());
}

void require_finite(const std::vector<Complex>& v, const char* what) {
    for (auto c : v)
        if (!finite(c)) throw InvalidArgument(std::string(what) + " has a non-finite coefficient");
}

void require_finite(Complex c, const char* what) {
    if (!finite(c)) throw InvalidArgument(std::string(what) + " is not finite");
}

void validate_poly(const Polynomial& p, const char* what, bool allow_constant) {
    if (p.coeffs.empty()) throw InvalidArgument(std::string(what) + " has no coefficients");
    require_finite(p.coeffs, what);
    if (p.coeffs.size() > 1 && p.coeffs.back() == Complex{})
        throw InvalidArgument(std::string(what) + " has a zero leading coefficient");
    if (!allow_constant && p.coeffs.size() < 2)
        throw InvalidArgument(std::string(what) + " must have degree >= 1");
}

std::string fmt_real(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string fmt_complex(Complex c) {
    if (c.imag() == 0.0) return fmt_real(c.real());
    if (c.real() == 0.0) return fmt_real(c.imag()) + "i";
    return "(" + fmt_real(c.real()) + (c.imag() < 0 ? "" : "+") + fmt_real(c.imag()) + "i)";
}

std::string describe_poly(const Polynomial& p) {
    std::string out;
    for (std::size_t k = p.coeffs.size(); k-- > 0;) {
        const Complex c = p.coeffs[k];
        if (c == Complex{} && p.coeffs.size() > 1) continue;
        if (!out.empty()) out += " + ";
        if (k == 0) {
            out += fmt_complex(c);
            continue;
        }
        if (c != Complex{1.0, 0.0}) out += fmt_complex(c) + "*";
        out += k == 1 ? "z" : "z^" + std::to_string(k);
    }
    return out;
}

// Value and derivative of a polynomial in one Horner pass.
std::pair<Complex, Complex> horner_with_derivative(const std::vector<Complex>& a, Complex z) noexcept {
    Complex p = a.back();
    Complex dp{};
    for (std::size_t k = a.size() - 1; k-- > 0;) {
        dp = dp * z + p;
        p = p * z + a[k];
    }
    return {p, dp};
}

EvalDerivResult eval_leaf_deriv(const HolomorphicMap::Variant& v, Complex z) noexcept;

EvalResult eval_variant(const HolomorphicMap::Variant& v, Complex z) noexcept {
    return std::visit(
        overloaded{
            [&](const Polynomial& p) -> EvalResult {
                const Complex r = horner(p.coeffs, z);
                if (!finite(r)) return {{}, EvalStatus::Overflow};
                return {r, EvalStatus::Ok};
            },
            [&](const RationalFunction& r) -> EvalResult {
                const Complex d = horner(r.den.coeffs, z);
                if (std::abs(d) < kPoleThreshold) return {{}, EvalStatus::PoleHit};
                const Complex value = horner(r.num.coeffs, z) / d;
                if (!finite(value)) return {{}, EvalStatus::Overflow};
                return {value, EvalStatus::Ok};
            },
            [&](const ExpAffine& e) -> EvalResult {
                const Complex arg = static_cast<double>(e.sign) * e.lambda * z + e.gamma;
                if (!finite(arg) || arg.real() > kExpLimit) return {{}, EvalStatus::Overflow};
                const Complex value = std::exp(arg) + e.c;
                if (!finite(value)) return {{}, EvalStatus::Overflow};
                return {value, EvalStatus::Ok};
            },
            [&](const SinScaled& s) -> EvalResult {
                if (std::abs(z.imag()) > kExpLimit) return {{}, EvalStatus::Overflow};
                const Complex value = s.lambda * std::sin(z) + s.tau;
                if (!finite(value)) return {{}, EvalStatus::Overflow};
                return {value, EvalStatus::Ok};
            },
            [&](const Affine& a) -> EvalResult {
                const Complex value = a.a * z + a.b;
                if (!finite(value)) return {{}, EvalStatus::Overflow};
                return {value, EvalStatus::Ok};
            },
            [&](const Composite& c) -> EvalResult {
                Complex cur = z;
                for (auto it = c.chain.rbegin(); it != c.chain.rend(); ++it) {
                    const EvalResult r = eval_variant(it->variant(), cur);
                    if (r.status != EvalStatus::Ok) return r;
                    cur = r.value;
                }
                return {cur, EvalStatus::Ok};
            },
        },
        v);
}

EvalDerivResult eval_leaf_deriv(const HolomorphicMap::Variant& v, Complex z) noexcept {
    auto checked = [](Complex value, Complex d) -> EvalDerivResult {
        if (!finite(value) || !finite(d)) return {{}, {}, EvalStatus::Overflow};
        return {value, d, EvalStatus::Ok};
    };
    return std::visit(
        overloaded{
            [&](const Polynomial& p) -> EvalDerivResult {
                auto [value, d] = horner_with_derivative(p.coeffs, z);
                return checked(value, d);
            },
            [&](const RationalFunction& r) -> EvalDerivResult {
                auto [den, dden] = horner_with_derivative(r.den.coeffs, z);
                if (std::abs(den) < kPoleThreshold) return {{}, {}, EvalStatus::PoleHit};
                auto [num, dnum] = horner_with_derivative(r.num.coeffs, z);
                return checked(num / den, (dnum * den - num * dden) / (den * den));
            },
            [&](const ExpAffine& e) -> EvalDerivResult {
                const Complex sl = static_cast<double>(e.sign) * e.lambda;
                const Complex arg = sl * z + e.gamma;
                if (!finite(arg) || arg.real() > kExpLimit) return {{}, {}, EvalStatus::Overflow};
                const Complex ex = std::exp(arg);
                return checked(ex + e.c, sl * ex);
            },
            [&](const SinScaled& s) -> EvalDerivResult {
                if (std::abs(z.imag()) > kExpLimit) return {{}, {}, EvalStatus::Overflow};
                return checked(s.lambda * std::sin(z) + s.tau, s.lambda * std::cos(z));
            },
            [&](const Affine& a) -> EvalDerivResult { return checked(a.a * z + a.b, a.a); },
            [&](const Composite& c) -> EvalDerivResult {
                Complex cur = z;
                Complex d{1.0, 0.0};
                for (auto it = c.chain.rbegin(); it != c.chain.rend(); ++it) {
                    const EvalDerivResult r = eval_leaf_deriv(it->variant(), cur);
                    if (r.status != EvalStatus::Ok) return r;
                    d *= r.derivative;
                    cur = r.value;
                }
                return checked(cur, d);
            },
        },
        v);
}

[[noreturn]] void raise(EvalStatus s) {
    if (s == EvalStatus::PoleHit) throw PoleHit();
    throw Overflow();
}

double residual_tolerance(Complex w) { return 1e-8 * std::max(1.0, std::abs(w)); }

// Roots of p(z) - w * q(z), filtered to genuine preimages.
std::vector<Complex> solve_rational(const std::vector<Complex>& num, const std::vector<Complex>& den,
                                    Complex w, const HolomorphicMap& leaf) {
    std::vector<Complex> eq(std::max(num.size(), den.size()), Complex{});
    for (std::size_t k = 0; k < num.size(); ++k) eq[k] += num[k];
    for (std::size_t k = 0; k < den.size(); ++k) eq[k] -= w * den[k];
    double scale = 0.0;
    for (auto c : eq) scale = std::max(scale, std::abs(c));
    if (scale == 0.0) throw RootFindFailure("map is constant at the requested value");

    std::vector<Complex> out;
    for (auto r : polynomial_roots(eq)) {
        const EvalResult e = try_evaluate(leaf, r);
        if (e.status == EvalStatus::PoleHit) continue;  // shared factor with the denominator
        if (e.status != EvalStatus::Ok || std::abs(e.value - w) > residual_tolerance(w))
            throw RootFindFailure("polynomial preimage failed the residual check");
        out.push_back(r);
    }
    return out;
}

std::vector<Complex> leaf_preimages(const HolomorphicMap& map, Complex w, int k_window) {
    const double two_pi = 2.0 * std::numbers::pi;
    return std::visit(
        overloaded{
            [&](const Polynomial& p) { return solve_rational(p.coeffs, {Complex{1.0, 0.0}}, w, map); },
            [&](const RationalFunction& r) { return solve_rational(r.num.coeffs, r.den.coeffs, w, map); },
            [&](const ExpAffine& e) {
                std::vector<Complex> out;
                const Complex u = w - e.c;
                if (std::abs(u) == 0.0) return out;
                const Complex log_u = std::log(u);
                const Complex sl = static_cast<double>(e.sign) * e.lambda;
                for (int k = -k_window; k <= k_window; ++k)
                    out.push_back((log_u + Complex{0.0, two_pi * k} - e.gamma) / sl);
                return out;
            },
            [&](const SinScaled& s) {
                std::vector<Complex> out;
                const Complex a = std::asin((w - s.tau) / s.lambda);
                if (!finite(a)) return out;
                for (int k = -k_window; k <= k_window; ++k) {
                    out.push_back(a + two_pi * static_cast<double>(k));
                    out.push_back(std::numbers::pi - a + two_pi * static_cast<double>(k));
                }
                return out;
            },
            [&](const Affine& a) { return std::vector<Complex>{(w - a.b) / a.a}; },
            [&](const Composite& c) {
                std::vector<Complex> current{w};
                for (const auto& leaf : c.chain) {
                    std::vector<Complex> next;
                    for (auto p : current) {
                        auto pre = leaf_preimages(leaf, p, k_window);
                        next.insert(next.end(), pre.begin(), pre.end());
                    }
                    current = dedup_points(std::move(next), 1e-9);
                    if (current.empty()) break;
                }
                return current;
            },
        },
        map.variant());
}

}  // namespace

std::string to_string(MapClass c) {
    return c == MapClass::Rational ? "Rational" : "TranscendentalEntire";
}

Complex horner(const std::vector<Complex>& coeffs, Complex z) noexcept {
    Complex acc{};
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
}

std::size_t degree(const Polynomial& p) noexcept { return p.coeffs.empty() ? 0 : p.coeffs.size() - 1; }

HolomorphicMap::HolomorphicMap(Variant v) : v_(std::move(v)), class_(MapClass::Rational) {
    std::visit(overloaded{
                   [](const Polynomial& p) { validate_poly(p, "polynomial", false); },
                   [](const RationalFunction& r) {
                       validate_poly(r.num, "numerator", true);
                       validate_poly(r.den, "denominator", true);
                       if (r.den.coeffs.size() == 1 && r.den.coeffs[0] == Complex{})
                           throw InvalidArgument("denominator is identically zero");
                       if (r.num.coeffs.size() == 1 && r.den.coeffs.size() == 1)
                           throw InvalidArgument("rational map is constant");
                   },
                   [](const ExpAffine& e) {
                       if (e.sign != 1 && e.sign != -1) throw InvalidArgument("ExpAffine sign must be +1 or -1");
                       require_finite(e.lambda, "lambda");
                       require_finite(e.gamma, "gamma");
                       require_finite(e.c, "c");
                       if (e.lambda == Complex{}) throw InvalidArgument("ExpAffine lambda must be nonzero");
                   },
                   [](const SinScaled& s) {
                       require_finite(s.lambda, "lambda");
                       require_finite(s.tau, "tau");
                       if (s.lambda == Complex{}) throw InvalidArgument("SinScaled lambda must be nonzero");
                   },
                   [](const Affine& a) {
                       require_finite(a.a, "a");
                       require_finite(a.b, "b");
                       if (a.a == Complex{}) throw InvalidArgument("Affine a must be nonzero");
                   },
                   [](const Composite& c) {
                       if (c.chain.empty()) throw InvalidArgument("composite chain is empty");
                   },
               },
               v_);
    bool has_rational = false;
    bool has_transcendental = false;
    collect_leaf_kinds(*this, has_rational, has_transcendental);
    if (has_rational && has_transcendental)
        throw InvalidArgument("composite mixes a rational leaf with a transcendental leaf");
    class_ = has_transcendental ? MapClass::TranscendentalEntire : MapClass::Rational;
}

HolomorphicMap HolomorphicMap::polynomial(std::vector<Complex> coeffs) {
    return HolomorphicMap(Polynomial{std::move(coeffs)});
}

HolomorphicMap HolomorphicMap::rational(std::vector<Complex> num, std::vector<Complex> den) {
    return HolomorphicMap(RationalFunction{Polynomial{std::move(num)}, Polynomial{std::move(den)}});
}

HolomorphicMap HolomorphicMap::exp_affine(int sign, Complex lambda, Complex gamma, Complex c) {
    return HolomorphicMap(ExpAffine{sign, lambda, gamma, c});
}

HolomorphicMap HolomorphicMap::sin_scaled(Complex lambda, Complex tau) {
    return HolomorphicMap(SinScaled{lambda, tau});
}

HolomorphicMap HolomorphicMap::affine(Complex a, Complex b) { return HolomorphicMap(Affine{a, b}); }

HolomorphicMap HolomorphicMap::composite(std::vector<HolomorphicMap> chain) {
    return HolomorphicMap(Composite{std::move(chain)});
}

HolomorphicMap HolomorphicMap::monomial(Complex a, int n) {
    if (n < 1) throw InvalidArgument("monomial degree must be >= 1");
    std::vector<Complex> coeffs(static_cast<std::size_t>(n) + 1, Complex{});
    coeffs.back() = a;
    return polynomial(std::move(coeffs));
}

std::string HolomorphicMap::describe() const {
    return std::visit(
        overloaded{
            [](const Polynomial& p) { return describe_poly(p); },
            [](const RationalFunction& r) { return "(" + describe_poly(r.num) + ")/(" + describe_poly(r.den) + ")"; },
            [](const ExpAffine& e) {
                std::string arg = (e.sign < 0 ? "-" : "") + fmt_complex(e.lambda) + "*z";
                if (e.gamma != Complex{}) arg += " + " + fmt_complex(e.gamma);
                std::string out = "exp(" + arg + ")";
                if (e.c != Complex{}) out += " + " + fmt_complex(e.c);
                return out;
            },
            [](const SinScaled& s) {
                std::string out = fmt_complex(s.lambda) + "*sin(z)";
                if (s.tau != Complex{}) out += " + " + fmt_complex(s.tau);
                return out;
            },
            [](const Affine& a) {
                std::string out = fmt_complex(a.a) + "*z";
                if (a.b != Complex{}) out += " + " + fmt_complex(a.b);
                return out;
            },
            [](const Composite& c) {
                std::string out;
                for (const auto& m : c.chain) {
                    if (!out.empty()) out += " o ";
                    out += "[" + m.describe() + "]";
                }
                return out;
            },
        },
        v_);
}

EvalResult try_evaluate(const HolomorphicMap& map, Complex z) noexcept { return eval_variant(map.variant(), z); }

EvalDerivResult try_evaluate_with_derivative(const HolomorphicMap& map, Complex z) noexcept {
    return eval_leaf_deriv(map.variant(), z);
}

Complex evaluate(const HolomorphicMap& map, Complex z) {
    const EvalResult r = try_evaluate(map, z);
    if (r.status != EvalStatus::Ok) raise(r.status);
    return r.value;
}

Complex derivative(const HolomorphicMap& map, Complex z) {
    const EvalDerivResult r = try_evaluate_with_derivative(map, z);
    if (r.status != EvalStatus::Ok) raise(r.status);
    return r.derivative;
}

std::vector<Complex> preimages(const HolomorphicMap& map, Complex w, int branch_window) {
    if (branch_window < 0) throw InvalidArgument("branch window must be >= 0");
    if (!finite(w)) throw InvalidArgument("preimage target is not finite");
    auto raw = dedup_points(leaf_preimages(map, w, branch_window), 1e-9);
    std::vector<Complex> out;
    out.reserve(raw.size());
    for (auto p : raw) {
        if (!finite(p)) continue;
        const EvalResult e = try_evaluate(map, p);
        if (e.status == EvalStatus::Ok && std::abs(e.value - w) <= residual_tolerance(w)) out.push_back(p);
    }
    return out;
}

double chordal_distance(SpherePoint a, SpherePoint b) noexcept {
    if (a.infinite && b.infinite) return 0.0;
    if (a.infinite) std::swap(a, b);
    const double sa = std::hypot(1.0, std::abs(a.z));
    if (b.infinite) return std::min(2.0, 2.0 / sa);
    const double sb = std::hypot(1.0, std::abs(b.z));
    const double d = 2.0 * (std::abs(a.z - b.z) / sa) / sb;
    return std::clamp(d, 0.0, 2.0);
}

}  // namespace semidyn
