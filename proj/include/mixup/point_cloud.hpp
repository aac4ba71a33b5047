#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mixup {

// Malformed user input (files, flags, inconsistent clouds). The CLI maps it to exit code 2.
class input_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Metric { euclidean, squared_euclidean, precomputed };

Metric parse_metric(const std::string& name);
std::string to_string(Metric metric);

// Dense symmetric distance matrix, row-major.
class DistanceMatrix {
public:
    DistanceMatrix() = default;
    explicit DistanceMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

    // Throws input_error unless the matrix is symmetric, non-negative, zero on the diagonal.
    static DistanceMatrix from_full(std::size_t n, std::vector<double> data);
    // Strictly lower triangle, row by row: d(1,0), d(2,0), d(2,1), ...
    static DistanceMatrix from_lower_triangle(std::span<const double> lower);

    std::size_t size() const { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    std::span<const double> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }

    DistanceMatrix submatrix(std::span<const std::size_t> indices) const;

    bool operator==(const DistanceMatrix&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

// Points in R^d (row-major coordinates) or, for Metric::precomputed, a distance matrix alone.
class PointCloud {
public:
    PointCloud() = default;
    PointCloud(std::size_t dim, std::vector<double> coords, Metric metric = Metric::euclidean);
    static PointCloud from_rows(const std::vector<std::vector<double>>& rows,
                                Metric metric = Metric::euclidean);
    static PointCloud precomputed(DistanceMatrix distances);

    std::size_t size() const;
    std::size_t dim() const { return dim_; }
    Metric metric() const { return metric_; }
    bool empty() const { return size() == 0; }

    std::span<const double> point(std::size_t i) const { return {coords_.data() + i * dim_, dim_}; }
    const std::vector<double>& coords() const { return coords_; }
    const DistanceMatrix& precomputed_distances() const { return distances_; }

    double distance(std::size_t i, std::size_t j) const;
    PointCloud select(std::span<const std::size_t> indices) const;
    // Concatenation; both clouds must share dimension and metric (coordinates only).
    static PointCloud concat(const PointCloud& a, const PointCloud& b);

private:
    std::size_t dim_ = 0;
    std::vector<double> coords_;
    Metric metric_ = Metric::euclidean;
    DistanceMatrix distances_;
};

struct LabeledPointCloud {
    PointCloud cloud;
    std::vector<int> labels;

    // Distinct labels in ascending order.
    std::vector<int> label_set() const;
    std::vector<std::size_t> indices_of(int label) const;
    std::vector<std::size_t> indices_except(int label) const;
    void validate() const;
};

double point_distance(std::span<const double> x, std::span<const double> y, Metric metric);

// All pairwise distances of the cloud. Rows are filled in parallel.
DistanceMatrix distance_matrix(const PointCloud& cloud);

namespace serial {
DistanceMatrix distance_matrix(const PointCloud& cloud);
}  // namespace serial

}  // namespace mixup
