#pragma once

#include <string>
#include <vector>

#include "semidyn/classifier.hpp"
#include "semidyn/verifier.hpp"

namespace semidyn {

/// Shortest decimal that round-trips to the same double; "inf", "-inf", "nan"
/// for the non-finite values. Locale-independent.
std::string format_double(double v);

/// Line-oriented form, one record per line:
///   report <name> <PASS|FAIL|SKIP>
///   metric <key> <value>
///   threshold <metric> <= | >= <value>
///   setting <key> <value>
///   param <key> <value>
///   note <text>
std::string report_to_text(const Report& r);

/// JSON document {"reports": [...], "passed": bool}. Keys are sorted, so equal
/// reports serialize to equal bytes.
std::string reports_to_json(const std::vector<Report>& reports);

/// Single-point verdict with its evidence, in the line-oriented style.
std::string verdict_to_text(const PointVerdict& v);

}  // namespace semidyn
