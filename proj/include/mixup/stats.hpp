#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mixup/complex.hpp"
#include "mixup/reduce.hpp"

namespace mixup {

// Mixup barcode of one degree in value and index form.
struct MixupBarcode {
    int degree = 0;
    std::vector<ValueTriple> triples;
    std::vector<IndexMixupTriple> index_triples;
    // Values above t_max (in particular +∞) are truncated to t_max for statistics.
    std::optional<double> clamp;

    // Degrees above fp.max_dim() yield an empty barcode.
    static MixupBarcode compute(const FilteredPair& fp, int k, std::optional<double> clamp);
};

// Truncates every component at the clamp; throws std::domain_error if an infinity stays.
ValueTriple clamped(const ValueTriple& t, std::optional<double> clamp);

// d - d'
double mixup(const ValueTriple& t, std::optional<double> clamp = std::nullopt);
// (d - d') / (d - b); throws std::domain_error for zero persistence.
double mixup_percentage(const ValueTriple& t, std::optional<double> clamp = std::nullopt);

// Sum of mixups, exactly rounded; equals total_persistence - total_image_persistence.
double total_mixup(const MixupBarcode& bc);
double total_persistence(const MixupBarcode& bc);
double total_image_persistence(const MixupBarcode& bc);

// Sum / mean of mixup percentages over bars with positive persistence; mean of none is 0.
double total_mixup_percentage(const MixupBarcode& bc);
double mean_mixup_percentage(const MixupBarcode& bc);

enum class ProfileAggregate { total, mean };

struct AnalysisConfig {
    double r_max = 1.0;
    std::optional<std::size_t> subsample_a = 500;
    std::optional<std::size_t> subsample_b = 100;
    bool subsample_degree0 = false;  // degree 0 uses all points unless set
    std::optional<double> clamp;      // defaults to r_max
    std::uint64_t seed = 0;
    ProfileAggregate aggregate = ProfileAggregate::total;

    double effective_clamp() const { return clamp.value_or(r_max); }
};

// Mixup barcode of A ↪ A ∪ B for two index sets of one cloud, built up to dimension k+1.
MixupBarcode point_cloud_barcode(const PointCloud& cloud, std::span<const std::size_t> a,
                                 std::span<const std::size_t> b, int k, double r_max, std::optional<double> clamp);

using Matrix = std::vector<std::vector<double>>;

struct PairwiseMatrix {
    std::vector<int> labels;
    Matrix values;  // values[i][j]: mean mixup percentage of X_i ↪ X_i ∪ X_j
};

// Entries are computed concurrently.
PairwiseMatrix pairwise_matrix(const LabeledPointCloud& x, int k, const AnalysisConfig& config);

struct SeriesEntry {
    int layer;
    int step;
    LabeledPointCloud cloud;
};

struct MixupProfile {
    std::vector<int> layers;
    std::vector<int> steps;
    Matrix values;  // values[layer][step]
};

// P[k][t] = max_j aggregate-mixup-percentage(X_j ↪ X_j ∪ rest). Subsample indices are
// computed once on the first series entry and reused everywhere.
MixupProfile mixup_profile(std::span<const SeriesEntry> series, int k, const AnalysisConfig& config);

namespace serial {
PairwiseMatrix pairwise_matrix(const LabeledPointCloud& x, int k, const AnalysisConfig& config);
MixupProfile mixup_profile(std::span<const SeriesEntry> series, int k, const AnalysisConfig& config);
}  // namespace serial

}  // namespace mixup
