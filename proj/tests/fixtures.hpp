#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "mixup/complex.hpp"
#include "mixup/point_cloud.hpp"

namespace fixtures {

// Two circles a, b in L; disks 3, 4 in K∖L; 5 (cylinder) and 6 in L.
inline const std::string two_circles_text =
    "# id dim value member faces\n"
    "1 1 1 L\n"
    "2 1 2 L\n"
    "3 2 3 K 2\n"
    "4 2 4 K 1\n"
    "5 2 5 L 1 2\n"
    "6 2 6 L 1\n";

inline mixup::FilteredPair two_circles() { return mixup::parse_explicit_pair(two_circles_text); }

inline mixup::PointCloud square() { return mixup::PointCloud::from_rows({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }
inline mixup::PointCloud center() { return mixup::PointCloud::from_rows({{0.5, 0.5}}); }

inline mixup::FilteredPair square_center(int k_max = 2) { return mixup::build_rips_pair(square(), center(), 2.0, k_max); }

inline mixup::PointCloud uniform_cloud(std::mt19937_64& rng, std::size_t n, std::size_t d, double lo = 0.0,
                                       double hi = 1.0)
{
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> xs(n * d);
    for (auto& x : xs) x = u(rng);
    return mixup::PointCloud(d, std::move(xs));
}

inline mixup::PointCloud circle(std::size_t n, double radius = 1.0, double phase = 0.0, double cx = 0.0,
                                double cy = 0.0)
{
    std::vector<double> xs;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = phase + 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
        xs.push_back(cx + radius * std::cos(t));
        xs.push_back(cy + radius * std::sin(t));
    }
    return mixup::PointCloud(2, std::move(xs));
}

// Fibonacci lattice on the unit sphere.
inline mixup::PointCloud sphere(std::size_t n)
{
    std::vector<double> xs;
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (std::size_t i = 0; i < n; ++i) {
        const double y = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
        const double r = std::sqrt(1.0 - y * y);
        const double t = golden * static_cast<double>(i);
        xs.insert(xs.end(), {r * std::cos(t), y, r * std::sin(t)});
    }
    return mixup::PointCloud(3, std::move(xs));
}

// Uniform points in the d-ball of the given radius (rejection sampling).
inline mixup::PointCloud ball(std::mt19937_64& rng, std::size_t n, std::size_t d, double radius)
{
    std::uniform_real_distribution<double> u(-radius, radius);
    std::vector<double> xs;
    std::vector<double> p(d);
    while (xs.size() < n * d) {
        double r2 = 0.0;
        for (auto& x : p) {
            x = u(rng);
            r2 += x * x;
        }
        if (r2 <= radius * radius) xs.insert(xs.end(), p.begin(), p.end());
    }
    return mixup::PointCloud(d, std::move(xs));
}

inline mixup::PointCloud translate(const mixup::PointCloud& c, const std::vector<double>& offset)
{
    std::vector<double> xs = c.coords();
    for (std::size_t i = 0; i < xs.size(); ++i) xs[i] += offset[i % c.dim()];
    return mixup::PointCloud(c.dim(), std::move(xs), c.metric());
}

inline mixup::LabeledPointCloud labeled(const std::vector<mixup::PointCloud>& classes, const std::vector<int>& labels)
{
    mixup::LabeledPointCloud out;
    out.cloud = classes.front();
    out.labels.assign(classes.front().size(), labels.front());
    for (std::size_t i = 1; i < classes.size(); ++i) {
        out.cloud = mixup::PointCloud::concat(out.cloud, classes[i]);
        out.labels.insert(out.labels.end(), classes[i].size(), labels[i]);
    }
    return out;
}

}  // namespace fixtures
