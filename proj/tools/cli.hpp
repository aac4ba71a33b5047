#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mixup/point_cloud.hpp"
#include "mixup/stats.hpp"

namespace mixup::cli {

enum class Format { json, csv, svg };

struct RunConfig {
    std::string subcommand;
    std::filesystem::path a, b, filtration, series, result;
    std::optional<std::size_t> a_count;  // precomputed metric: first N points form A
    bool labels = false;                 // subsample: last column is a label
    Metric metric = Metric::euclidean;
    std::optional<double> r_max;
    int k_max = 2;
    std::vector<int> degrees;
    std::size_t subsample_a = 500;  // 0 keeps every point
    std::size_t subsample_b = 100;
    std::optional<double> clamp;
    std::uint64_t seed = 0;
    std::size_t random = 0;  // verify: number of random instances
    std::optional<std::filesystem::path> out;
    std::optional<Format> format;  // per-subcommand default when unset
    ProfileAggregate aggregate = ProfileAggregate::total;
};

// Exit codes.
inline constexpr int exit_ok = 0;
inline constexpr int exit_mismatch = 1;
inline constexpr int exit_input = 2;

// Parses argv-style arguments (without the program name) and runs the subcommand.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cmd_mixup(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_pairwise(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_profile(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_subsample(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_plot(const RunConfig& config, std::ostream& out, std::ostream& err);

// Mixup barcodes for the configured input (explicit filtration or point clouds).
std::vector<MixupBarcode> compute_barcodes(const RunConfig& config);

}  // namespace mixup::cli
