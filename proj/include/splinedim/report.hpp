#pragma once

#include <string>
#include <vector>

#include "splinedim/bounds.hpp"

namespace splinedim {

enum class OutputFormat { Table, Json, Csv };

OutputFormat parse_format(const std::string& name);  // throws std::invalid_argument

// Deterministic renderings of a report sequence; JSON output round-trips
// byte-identically through parse + re-serialize.
std::string reports_to_json(const std::vector<BoundReport>& reports);
std::string reports_to_csv(const std::vector<BoundReport>& reports);
std::string reports_to_table(const std::vector<BoundReport>& reports);

std::string render_reports(const std::vector<BoundReport>& reports, OutputFormat f);

}  // namespace splinedim
