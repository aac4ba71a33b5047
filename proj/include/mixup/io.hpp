#pragma once

#include <filesystem>
#include <istream>
#include <string>

#include "mixup/complex.hpp"
#include "mixup/point_cloud.hpp"

namespace mixup::io {

std::string read_text(const std::filesystem::path& path);
// Writes atomically enough for our purposes: truncate + write + check.
void write_text(const std::filesystem::path& path, const std::string& text);

// One point per row, comma and/or whitespace separated; '#' starts a comment.
PointCloud parse_point_cloud(std::string_view text, Metric metric);
// As above, with the last column holding an integer label.
LabeledPointCloud parse_labeled_cloud(std::string_view text, Metric metric);
// Strictly lower triangle as a flat stream of n(n-1)/2 numbers.
DistanceMatrix parse_distance_matrix(std::string_view text);

PointCloud read_point_cloud(const std::filesystem::path& path, Metric metric);
LabeledPointCloud read_labeled_cloud(const std::filesystem::path& path, Metric metric);
DistanceMatrix read_distance_matrix(const std::filesystem::path& path);
FilteredPair read_explicit_pair(const std::filesystem::path& path);

}  // namespace mixup::io
