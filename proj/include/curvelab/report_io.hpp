#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "curvelab/harmonic_field.hpp"

namespace curvelab {

/// Fixed-format double for CSV cells; round-trip exact and byte-stable.
std::string format_double(double v);

nlohmann::json growth_report_json(const GrowthReport& rep);

void write_text_file(const std::string& path, const std::string& content);

/// CSV with a header row, UTF-8, LF line endings.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

} // namespace curvelab
