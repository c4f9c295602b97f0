#pragma once

// Machine-readable and human-readable forms of pipeline reports and
// certificates. Integers are written as decimal strings so that values
// beyond 64 bits survive any JSON reader.

#include <string>
#include <string_view>

#include "bpsw/bpsw.hpp"
#include "bpsw/types.hpp"

namespace bpsw {

/// indent < 0 gives a single line.
std::string to_json(const PipelineReport& report, int indent = -1);
std::string to_json(const CompositeCertificate& cert, int indent = -1);
std::string to_json(const LucasParams& params, int indent = -1);

/// Inverses of to_json; throw std::invalid_argument on malformed input.
PipelineReport report_from_json(std::string_view text);
CompositeCertificate certificate_from_json(std::string_view text);
LucasParams params_from_json(std::string_view text);

/// Multi-line `key: value` rendering.
std::string to_text(const PipelineReport& report);
std::string to_text(const CompositeCertificate& cert);

std::string params_summary(const LucasParams& p);

}  // namespace bpsw
