#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mixup/point_cloud.hpp"

namespace mixup {

struct MedoidSelection {
    std::vector<std::size_t> indices;  // ascending
    double cost = 0.0;                 // sum of distances to the nearest medoid
};

// Sum over points of the distance to the nearest medoid, correctly rounded.
double medoid_cost(const DistanceMatrix& d, std::span<const std::size_t> medoids);

inline constexpr std::size_t default_pam_restarts = 8;

// PAM: greedy BUILD followed by best-improvement SWAP until no single swap lowers the cost.
// SWAP is rerun from `restarts` seeded random medoid sets and the cheapest local optimum kept
// (BUILD's on ties). Equal swap costs are broken by index priority: lowest index for seed 0,
// otherwise a permutation drawn from the seed.
MedoidSelection k_medoids(const DistanceMatrix& d, std::size_t k, std::uint64_t seed = 0,
                          std::size_t restarts = default_pam_restarts);
MedoidSelection k_medoids(const PointCloud& cloud, std::size_t k, std::uint64_t seed = 0,
                          std::size_t restarts = default_pam_restarts);

namespace serial {
MedoidSelection k_medoids(const DistanceMatrix& d, std::size_t k, std::uint64_t seed = 0,
                          std::size_t restarts = default_pam_restarts);
}  // namespace serial

// Point indices (into the full labeled cloud) used when a label is A, and for the rest as B.
struct LabelSubsample {
    int label;
    std::vector<std::size_t> a_indices;  // points with this label
    std::vector<std::size_t> b_indices;  // points with any other label
};

// Medoids are chosen once on series[reference] and reused for every cloud of the series.
// std::nullopt sizes keep all points.
std::vector<LabelSubsample> consistent_subsample(std::span<const LabeledPointCloud> series,
                                                 std::optional<std::size_t> k_a, std::optional<std::size_t> k_b,
                                                 std::uint64_t seed = 0, std::size_t reference = 0);

// Per-label medoids within the label (used by pairwise matrices, where B is a single class).
std::vector<std::size_t> label_medoids(const LabeledPointCloud& x, int label, std::optional<std::size_t> k,
                                       std::uint64_t seed = 0);

}  // namespace mixup
