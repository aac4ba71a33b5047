#include "mixup/point_cloud.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace mixup {

Metric parse_metric(const std::string& name)
{
    if (name == "euclidean") return Metric::euclidean;
    if (name == "sqeuclidean" || name == "squared-euclidean") return Metric::squared_euclidean;
    if (name == "matrix" || name == "precomputed") return Metric::precomputed;
    throw input_error("unknown metric '" + name + "' (expected euclidean, sqeuclidean or matrix)");
}

std::string to_string(Metric metric)
{
    switch (metric) {
    case Metric::euclidean: return "euclidean";
    case Metric::squared_euclidean: return "sqeuclidean";
    case Metric::precomputed: return "matrix";
    }
    return "unknown";
}

DistanceMatrix DistanceMatrix::from_full(std::size_t n, std::vector<double> data)
{
    if (data.size() != n * n) throw input_error("distance matrix has wrong number of entries");
    DistanceMatrix m;
    m.n_ = n;
    m.data_ = std::move(data);
    for (std::size_t i = 0; i < n; ++i) {
        if (m(i, i) != 0.0) throw input_error("distance matrix diagonal must be zero");
        for (std::size_t j = 0; j < i; ++j) {
            const double d = m(i, j);
            if (!std::isfinite(d) || d < 0.0) throw input_error("distances must be finite and non-negative");
            if (d != m(j, i)) throw input_error("distance matrix is not symmetric");
        }
    }
    return m;
}

DistanceMatrix DistanceMatrix::from_lower_triangle(std::span<const double> lower)
{
    // m = n(n-1)/2; an empty triangle is read as zero points
    const auto m = lower.size();
    std::size_t n = 0;
    if (m > 0) {
        n = 2;
        while (n * (n - 1) / 2 < m) ++n;
        if (n * (n - 1) / 2 != m)
            throw input_error("lower-triangular distance matrix needs n(n-1)/2 entries, got " + std::to_string(m));
    }
    DistanceMatrix out(n);
    std::size_t k = 0;
    for (std::size_t i = 1; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j, ++k) {
            const double d = lower[k];
            if (!std::isfinite(d) || d < 0.0) throw input_error("distances must be finite and non-negative");
            out(i, j) = d;
            out(j, i) = d;
        }
    }
    return out;
}

DistanceMatrix DistanceMatrix::submatrix(std::span<const std::size_t> indices) const
{
    DistanceMatrix out(indices.size());
    for (std::size_t i = 0; i < indices.size(); ++i)
        for (std::size_t j = 0; j < indices.size(); ++j)
            out(i, j) = (*this)(indices[i], indices[j]);
    return out;
}

PointCloud::PointCloud(std::size_t dim, std::vector<double> coords, Metric metric)
    : dim_(dim), coords_(std::move(coords)), metric_(metric)
{
    if (metric == Metric::precomputed) throw input_error("use PointCloud::precomputed for distance matrices");
    if (dim_ == 0) {
        if (!coords_.empty()) throw input_error("points must have dimension >= 1");
    } else if (coords_.size() % dim_ != 0) {
        throw input_error("coordinate count is not a multiple of the dimension");
    }
    for (double x : coords_)
        if (!std::isfinite(x)) throw input_error("non-finite coordinate");
}

PointCloud PointCloud::from_rows(const std::vector<std::vector<double>>& rows, Metric metric)
{
    if (rows.empty()) return PointCloud(0, {}, metric);
    const std::size_t dim = rows.front().size();
    std::vector<double> coords;
    coords.reserve(dim * rows.size());
    for (const auto& r : rows) {
        if (r.size() != dim) throw input_error("points have inconsistent dimensions");
        coords.insert(coords.end(), r.begin(), r.end());
    }
    return PointCloud(dim, std::move(coords), metric);
}

PointCloud PointCloud::precomputed(DistanceMatrix distances)
{
    PointCloud pc;
    pc.metric_ = Metric::precomputed;
    pc.distances_ = std::move(distances);
    return pc;
}

std::size_t PointCloud::size() const
{
    if (metric_ == Metric::precomputed) return distances_.size();
    return dim_ == 0 ? 0 : coords_.size() / dim_;
}

double PointCloud::distance(std::size_t i, std::size_t j) const
{
    if (metric_ == Metric::precomputed) return distances_(i, j);
    return point_distance(point(i), point(j), metric_);
}

PointCloud PointCloud::select(std::span<const std::size_t> indices) const
{
    if (metric_ == Metric::precomputed) return precomputed(distances_.submatrix(indices));
    std::vector<double> coords;
    coords.reserve(indices.size() * dim_);
    for (auto i : indices) {
        auto p = point(i);
        coords.insert(coords.end(), p.begin(), p.end());
    }
    PointCloud out;
    out.dim_ = dim_;
    out.coords_ = std::move(coords);
    out.metric_ = metric_;
    return out;
}

PointCloud PointCloud::concat(const PointCloud& a, const PointCloud& b)
{
    if (a.metric_ == Metric::precomputed || b.metric_ == Metric::precomputed)
        throw input_error("cannot concatenate precomputed distance matrices");
    if (b.empty()) return a;
    if (a.empty()) return b;
    if (a.dim_ != b.dim_) throw input_error("point clouds have different dimensions");
    if (a.metric_ != b.metric_) throw input_error("point clouds use different metrics");
    PointCloud out = a;
    out.coords_.insert(out.coords_.end(), b.coords_.begin(), b.coords_.end());
    return out;
}

std::vector<int> LabeledPointCloud::label_set() const
{
    std::set<int> s(labels.begin(), labels.end());
    return {s.begin(), s.end()};
}

std::vector<std::size_t> LabeledPointCloud::indices_of(int label) const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == label) out.push_back(i);
    return out;
}

std::vector<std::size_t> LabeledPointCloud::indices_except(int label) const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] != label) out.push_back(i);
    return out;
}

void LabeledPointCloud::validate() const
{
    if (labels.size() != cloud.size())
        throw input_error("label count " + std::to_string(labels.size()) + " does not match point count " +
                          std::to_string(cloud.size()));
}

double point_distance(std::span<const double> x, std::span<const double> y, Metric metric)
{
    double s = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double t = x[k] - y[k];
        s += t * t;
    }
    return metric == Metric::squared_euclidean ? s : std::sqrt(s);
}

namespace serial {

DistanceMatrix distance_matrix(const PointCloud& cloud)
{
    if (cloud.metric() == Metric::precomputed) return cloud.precomputed_distances();
    const std::size_t n = cloud.size();
    DistanceMatrix out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) {
            const double d = point_distance(cloud.point(i), cloud.point(j), cloud.metric());
            out(i, j) = d;
            out(j, i) = d;
        }
    return out;
}

}  // namespace serial

DistanceMatrix distance_matrix(const PointCloud& cloud)
{
    if (cloud.metric() == Metric::precomputed) return cloud.precomputed_distances();
    const auto n = static_cast<std::ptrdiff_t>(cloud.size());
    DistanceMatrix out(cloud.size());
    // each (i, j) is written by exactly one iteration i = max(i, j)
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        for (std::size_t j = 0; j < ui; ++j) {
            const double d = point_distance(cloud.point(ui), cloud.point(j), cloud.metric());
            out(ui, j) = d;
            out(j, ui) = d;
        }
    }
    return out;
}

}  // namespace mixup
