#include "semidyn/report_io.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include <json.hpp>

namespace semidyn {

namespace {

nlohmann::json number(double v) {
    // JSON has no infinities; encode them as strings so the document stays valid.
    if (std::isfinite(v)) return v;
    return format_double(v);
}

nlohmann::json params_json(const ClassifyParams& p) {
    return {{"max_word_len", p.max_word_len},   {"n_sequences", p.n_sequences},
            {"depth", p.depth},                 {"escape_radius", p.escape_radius},
            {"bound_radius", p.bound_radius},   {"deriv_threshold", p.deriv_threshold},
            {"branch_window", p.branch_window}, {"seed", p.seed}};
}

}  // namespace

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string report_to_text(const Report& r) {
    std::ostringstream out;
    out << "report " << r.name << ' ' << r.status() << '\n';
    for (const auto& [k, v] : r.metrics) out << "metric " << k << ' ' << format_double(v) << '\n';
    for (const auto& t : r.thresholds)
        out << "threshold " << t.metric << (t.bound == Bound::AtMost ? " <= " : " >= ") << format_double(t.value)
            << '\n';
    for (const auto& [k, v] : r.settings) out << "setting " << k << ' ' << format_double(v) << '\n';
    const auto pj = params_json(r.params);
    for (const auto& [k, v] : pj.items()) out << "param " << k << ' ' << v.dump() << '\n';
    if (!r.notes.empty()) out << "note " << r.notes << '\n';
    return out.str();
}

std::string reports_to_json(const std::vector<Report>& reports) {
    nlohmann::json arr = nlohmann::json::array();
    bool all = true;
    for (const auto& r : reports) {
        nlohmann::json metrics = nlohmann::json::object();
        for (const auto& [k, v] : r.metrics) metrics[k] = number(v);
        nlohmann::json settings = nlohmann::json::object();
        for (const auto& [k, v] : r.settings) settings[k] = number(v);
        nlohmann::json thresholds = nlohmann::json::array();
        for (const auto& t : r.thresholds)
            thresholds.push_back(
                {{"metric", t.metric}, {"bound", t.bound == Bound::AtMost ? "<=" : ">="}, {"value", number(t.value)}});
        arr.push_back({{"name", r.name},
                       {"status", r.status()},
                       {"passed", r.passed()},
                       {"metrics", metrics},
                       {"thresholds", thresholds},
                       {"settings", settings},
                       {"params", params_json(r.params)},
                       {"notes", r.notes}});
        all = all && r.passed();
    }
    return nlohmann::json{{"reports", arr}, {"passed", all}}.dump(2) + "\n";
}

std::string verdict_to_text(const PointVerdict& v) {
    std::ostringstream out;
    out << "verdict " << to_string(v.label) << '\n'
        << "divergent " << v.evidence.divergent << '\n'
        << "bounded " << v.evidence.bounded << '\n'
        << "slow " << v.evidence.slow << '\n'
        << "max_log10_derivative " << format_double(v.evidence.max_log10_derivative) << '\n';
    return out.str();
}

}  // namespace semidyn
