#include "doctest.h"

#include <random>

#include "fixtures.hpp"
#include "mixup/point_cloud.hpp"

using namespace mixup;

TEST_CASE("metric names")
{
    CHECK(parse_metric("euclidean") == Metric::euclidean);
    CHECK(parse_metric("sqeuclidean") == Metric::squared_euclidean);
    CHECK(parse_metric("matrix") == Metric::precomputed);
    CHECK_THROWS_AS(parse_metric("manhattan"), input_error);
    for (auto m : {Metric::euclidean, Metric::squared_euclidean, Metric::precomputed})
        CHECK(parse_metric(to_string(m)) == m);
}

TEST_CASE("point distances")
{
    const std::vector<double> x{0, 0}, y{3, 4};
    CHECK(point_distance(x, y, Metric::euclidean) == 5.0);
    CHECK(point_distance(x, y, Metric::squared_euclidean) == 25.0);
}

TEST_CASE("clouds reject mixed dimensions and non-finite coordinates")
{
    CHECK_THROWS_AS(PointCloud::from_rows({{0, 0}, {1}}), input_error);
    CHECK_THROWS_AS(PointCloud(2, {1, 2, 3}), input_error);
    CHECK_THROWS_AS(PointCloud(1, {std::numeric_limits<double>::quiet_NaN()}), input_error);
    CHECK_NOTHROW(PointCloud(3, {}));
}

TEST_CASE("precomputed matrices must be symmetric with zero diagonal")
{
    CHECK_THROWS_AS(DistanceMatrix::from_full(2, {0, 1, 2, 0}), input_error);
    CHECK_THROWS_AS(DistanceMatrix::from_full(2, {1, 1, 1, 0}), input_error);
    CHECK_THROWS_AS(DistanceMatrix::from_full(2, {0, -1, -1, 0}), input_error);
    const auto m = DistanceMatrix::from_full(2, {0, 1.5, 1.5, 0});
    CHECK(m(0, 1) == 1.5);

    const std::vector<double> lower{1, 2, 3};
    const auto t = DistanceMatrix::from_lower_triangle(lower);
    REQUIRE(t.size() == 3);
    CHECK(t(1, 0) == 1);
    CHECK(t(2, 0) == 2);
    CHECK(t(2, 1) == 3);
    CHECK(t(0, 2) == 2);
    const std::vector<double> bad{1, 2};
    CHECK_THROWS_AS(DistanceMatrix::from_lower_triangle(bad), input_error);
    CHECK(DistanceMatrix::from_lower_triangle(std::vector<double>{}).size() == 0);
}

TEST_CASE("select and concat")
{
    const auto sq = fixtures::square();
    const std::vector<std::size_t> idx{2, 0};
    const auto s = sq.select(idx);
    REQUIRE(s.size() == 2);
    CHECK(s.point(0)[0] == 1.0);
    CHECK(s.point(1)[1] == 0.0);
    const auto both = PointCloud::concat(sq, fixtures::center());
    CHECK(both.size() == 5);
    CHECK(both.point(4)[0] == 0.5);
    CHECK_THROWS_AS(PointCloud::concat(sq, PointCloud(3, {0, 0, 0})), input_error);

    const auto pm = PointCloud::precomputed(DistanceMatrix::from_full(3, {0, 1, 2, 1, 0, 3, 2, 3, 0}));
    const auto sub = pm.select(idx);
    CHECK(sub.distance(0, 1) == 2.0);
}

TEST_CASE("labeled clouds")
{
    auto x = fixtures::labeled({fixtures::square(), fixtures::center()}, {7, 3});
    CHECK(x.label_set() == std::vector<int>{3, 7});
    CHECK(x.indices_of(3) == std::vector<std::size_t>{4});
    CHECK(x.indices_except(3) == std::vector<std::size_t>{0, 1, 2, 3});
    CHECK_NOTHROW(x.validate());
    x.labels.pop_back();
    CHECK_THROWS_AS(x.validate(), input_error);
}

TEST_CASE("parallel distance matrix equals the serial reference")
{
    std::mt19937_64 rng(11);
    for (std::size_t d : {1, 3, 10}) {
        const auto c = fixtures::uniform_cloud(rng, 57, d);
        CHECK(distance_matrix(c) == serial::distance_matrix(c));
    }
    const auto sq = fixtures::square();
    const auto m = distance_matrix(sq);
    CHECK(m(0, 2) == std::sqrt(2.0));
    CHECK(m(2, 0) == m(0, 2));
}
