#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "mixup/stats.hpp"

namespace mixup::report {

// {"degree", "clamp", "index_triples": [[b, d', d]...], "triples": [[b, d', d]...],
//  "zero_length": [...], "statistics": {...}}; +∞ is written as null.
nlohmann::json barcode_to_json(const MixupBarcode& bc);
// Inverse of barcode_to_json (statistics are recomputed, not read).
MixupBarcode barcode_from_json(const nlohmann::json& j);

// Statistics that need no clamp when every death is finite; null otherwise.
nlohmann::json statistics_json(const MixupBarcode& bc);

nlohmann::json matrix_json(const std::vector<int>& labels, const Matrix& values);
nlohmann::json profile_json(const MixupProfile& profile, int degree);

std::string matrix_csv(const std::vector<int>& labels, const Matrix& values);
std::string profile_csv(const MixupProfile& profile);

// Stable text form: two-space indentation, trailing newline.
std::string dump(const nlohmann::json& j);

}  // namespace mixup::report
