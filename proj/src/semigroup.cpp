#include "semidyn/semigroup.hpp"

#include <cmath>
#include <limits>

#include "semidyn/errors.hpp"
#include "semidyn/random.hpp"

namespace semidyn {

namespace {

Fate fate_of(EvalStatus s) { return s == EvalStatus::PoleHit ? Fate::PoleHit : Fate::Overflowed; }

void require_depth(int depth) {
    if (depth < 1) throw InvalidArgument("orbit depth must be >= 1");
}

void require_radius(double r) {
    if (!(r > 0.0) || !std::isfinite(r)) throw InvalidArgument("escape radius must be positive and finite");
}

EvalResult apply_word(const Semigroup& s, const Word& w, Complex z) noexcept {
    const auto& gens = s.generators();
    for (auto it = w.indices.rbegin(); it != w.indices.rend(); ++it) {
        const EvalResult r = try_evaluate(gens[*it], z);
        if (r.status != EvalStatus::Ok) return r;
        z = r.value;
    }
    return {z, EvalStatus::Ok};
}

// Word value and log10 |word'(z)|.
struct WordDeriv {
    EvalResult value;
    double log10_derivative;
};

WordDeriv apply_word_deriv(const Semigroup& s, const Word& w, Complex z) noexcept {
    const auto& gens = s.generators();
    // Product of |f'|^2 per generator, folded into the log when it leaves a safe range.
    double log_d = 0.0;
    double sq = 1.0;
    for (auto it = w.indices.rbegin(); it != w.indices.rend(); ++it) {
        const EvalDerivResult r = try_evaluate_with_derivative(gens[*it], z);
        if (r.status != EvalStatus::Ok) return {{{}, r.status}, log_d};
        sq *= std::norm(r.derivative);
        if (!(sq > 1e-200 && sq < 1e200)) {
            log_d += 0.5 * std::log10(sq);
            sq = 1.0;
        }
        z = r.value;
    }
    return {{z, EvalStatus::Ok}, log_d + 0.5 * std::log10(sq)};
}

}  // namespace

std::string Word::to_string() const {
    std::string out = "[";
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(indices[i]);
    }
    return out + "]";
}

Word concat(const Word& a, const Word& b) {
    Word out = a;
    out.indices.insert(out.indices.end(), b.indices.begin(), b.indices.end());
    return out;
}

Semigroup::Semigroup(std::vector<HolomorphicMap> generators, std::string label)
    : generators_(std::move(generators)), class_(MapClass::Rational), label_(std::move(label)) {
    if (generators_.empty()) throw InvalidArgument("a semigroup needs at least one generator");
    class_ = generators_.front().map_class();
    for (const auto& g : generators_)
        if (g.map_class() != class_)
            throw InvalidArgument("generators mix rational and transcendental entire maps");
}

void Semigroup::check(const Word& w) const {
    if (w.indices.empty()) throw InvalidArgument("empty word");
    for (auto i : w.indices)
        if (i >= generators_.size())
            throw InvalidArgument("word index " + std::to_string(i) + " out of range for " +
                                  std::to_string(generators_.size()) + " generators");
}

Semigroup Semigroup::cyclic(std::size_t i) const {
    if (i >= generators_.size()) throw InvalidArgument("generator index out of range");
    return Semigroup({generators_[i]}, "<" + generators_[i].describe() + ">");
}

std::string to_string(Fate f) {
    switch (f) {
        case Fate::DivergedAtStep: return "DivergedAtStep";
        case Fate::BoundedAtDepth: return "BoundedAtDepth";
        case Fate::Overflowed: return "Overflowed";
        case Fate::PoleHit: return "PoleHit";
    }
    return "?";
}

std::uint64_t word_count(std::size_t generators, int max_len) noexcept {
    constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t total = 0;
    std::uint64_t layer = 1;
    for (int l = 1; l <= max_len; ++l) {
        if (generators != 0 && layer > kMax / generators) return kMax;
        layer *= generators;
        if (total > kMax - layer) return kMax;
        total += layer;
    }
    return total;
}

std::vector<Word> enumerate_words(const Semigroup& s, int max_len, std::uint64_t cap) {
    if (max_len < 1) throw InvalidArgument("max word length must be >= 1");
    const std::uint64_t count = word_count(s.size(), max_len);
    if (count > cap)
        throw BudgetExceeded(std::to_string(count) + " words exceed the cap of " + std::to_string(cap));

    std::vector<Word> out;
    out.reserve(count);
    const std::size_t k = s.size();
    for (int len = 1; len <= max_len; ++len) {
        std::vector<std::size_t> idx(static_cast<std::size_t>(len), 0);
        while (true) {
            out.push_back(Word{idx});
            // odometer increment, last position fastest
            int pos = len - 1;
            while (pos >= 0 && ++idx[static_cast<std::size_t>(pos)] == k) idx[static_cast<std::size_t>(pos--)] = 0;
            if (pos < 0) break;
        }
    }
    return out;
}

Complex evaluate_word(const Semigroup& s, const Word& w, Complex z) {
    s.check(w);
    const EvalResult r = apply_word(s, w, z);
    if (r.status == EvalStatus::PoleHit) throw PoleHit();
    if (r.status == EvalStatus::Overflow) throw Overflow();
    return r.value;
}

OrbitRecord cyclic_orbit(const Semigroup& s, const Word& w, Complex z, int depth, double escape_radius) {
    s.check(w);
    require_depth(depth);
    require_radius(escape_radius);
    OrbitRecord rec;
    rec.provenance = w;
    rec.points.reserve(static_cast<std::size_t>(depth) + 1);
    rec.points.push_back(z);
    if (std::abs(z) > escape_radius) {
        rec.fate = Fate::DivergedAtStep;
        return rec;
    }
    for (int t = 1; t <= depth; ++t) {
        const EvalResult r = apply_word(s, w, z);
        if (r.status != EvalStatus::Ok) {
            rec.fate = fate_of(r.status);
            rec.step = static_cast<std::size_t>(t);
            return rec;
        }
        z = r.value;
        rec.points.push_back(z);
        if (std::abs(z) > escape_radius) {
            rec.fate = Fate::DivergedAtStep;
            rec.step = static_cast<std::size_t>(t);
            return rec;
        }
    }
    rec.fate = Fate::BoundedAtDepth;
    rec.step = static_cast<std::size_t>(depth);
    return rec;
}

OrbitRecord random_sequence_orbit(const Semigroup& s, Complex z, int depth, std::uint64_t seed,
                                  double escape_radius) {
    require_depth(depth);
    require_radius(escape_radius);
    SplitMix64 rng(seed);
    const auto& gens = s.generators();
    OrbitRecord rec;
    rec.provenance = seed;
    rec.points.push_back(z);
    if (std::abs(z) > escape_radius) {
        rec.fate = Fate::DivergedAtStep;
        return rec;
    }
    for (int t = 1; t <= depth; ++t) {
        const std::size_t g = gens.size() == 1 ? 0 : static_cast<std::size_t>(rng.below(gens.size()));
        rec.choices.push_back(g);
        const EvalResult r = try_evaluate(gens[g], z);
        if (r.status != EvalStatus::Ok) {
            rec.fate = fate_of(r.status);
            rec.step = static_cast<std::size_t>(t);
            return rec;
        }
        z = r.value;
        rec.points.push_back(z);
        if (std::abs(z) > escape_radius) {
            rec.fate = Fate::DivergedAtStep;
            rec.step = static_cast<std::size_t>(t);
            return rec;
        }
    }
    rec.step = static_cast<std::size_t>(depth);
    return rec;
}

OrbitSummary cyclic_summary(const Semigroup& s, const Word& w, Complex z, int depth, double escape_radius,
                            bool with_derivative) {
    OrbitSummary out;
    out.last = z;
    if (std::abs(z) > escape_radius) {
        out.fate = Fate::DivergedAtStep;
        return out;
    }
    for (int t = 1; t <= depth; ++t) {
        EvalResult r;
        double step_log = 0.0;
        if (with_derivative) {
            const WordDeriv wd = apply_word_deriv(s, w, z);
            r = wd.value;
            step_log = wd.log10_derivative;
        } else {
            r = apply_word(s, w, z);
        }
        if (r.status != EvalStatus::Ok) {
            out.fate = fate_of(r.status);
            out.step = static_cast<std::size_t>(t);
            return out;
        }
        out.log10_derivative += step_log;
        out.last = r.value;
        if (std::abs(r.value) > escape_radius) {
            out.fate = Fate::DivergedAtStep;
            out.step = static_cast<std::size_t>(t);
            return out;
        }
        if (r.value == z) {
            // Exact fixed point: the remaining iterates repeat this step verbatim.
            out.log10_derivative += static_cast<double>(depth - t) * step_log;
            break;
        }
        z = r.value;
    }
    out.fate = Fate::BoundedAtDepth;
    out.step = static_cast<std::size_t>(depth);
    return out;
}

OrbitSummary random_summary(const Semigroup& s, Complex z, int depth, std::uint64_t seed, double escape_radius) {
    SplitMix64 rng(seed);
    const auto& gens = s.generators();
    OrbitSummary out;
    out.last = z;
    if (std::abs(z) > escape_radius) {
        out.fate = Fate::DivergedAtStep;
        return out;
    }
    for (int t = 1; t <= depth; ++t) {
        const std::size_t g = gens.size() == 1 ? 0 : static_cast<std::size_t>(rng.below(gens.size()));
        const EvalResult r = try_evaluate(gens[g], z);
        if (r.status != EvalStatus::Ok) {
            out.fate = fate_of(r.status);
            out.step = static_cast<std::size_t>(t);
            return out;
        }
        z = r.value;
        out.last = z;
        if (std::abs(z) > escape_radius) {
            out.fate = Fate::DivergedAtStep;
            out.step = static_cast<std::size_t>(t);
            return out;
        }
    }
    out.step = static_cast<std::size_t>(depth);
    return out;
}

}  // namespace semidyn
