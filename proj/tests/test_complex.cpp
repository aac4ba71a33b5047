#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "mixup/complex.hpp"

using namespace mixup;

namespace {

// Structural invariants every FilteredPair must satisfy.
void check_invariants(const FilteredPair& fp)
{
    for (CellId id = 1; id <= fp.size(); ++id) {
        if (id > 1) CHECK(fp.value(id - 1) <= fp.value(id));
        for (CellId f : fp.boundary(id)) {
            CHECK(f < id);
            CHECK(fp.dim(f) == fp.dim(id) - 1);
            CHECK(fp.value(f) <= fp.value(id));
            if (fp.in_L(id)) CHECK(fp.in_L(f));
        }
    }
}

}  // namespace

TEST_CASE("rips: single point and two points")
{
    const auto one = build_rips_pair(PointCloud::from_rows({{0.0}}), PointCloud{}, 1.0, 1);
    REQUIRE(one.size() == 1);
    CHECK(one.dim(1) == 0);
    CHECK(one.value(1) == 0.0);
    CHECK(one.in_L(1));

    const auto two = build_rips_pair(PointCloud::from_rows({{0.0}, {1.0}}), PointCloud{}, 2.0, 1);
    REQUIRE(two.size() == 3);
    CHECK(two.dim(1) == 0);
    CHECK(two.dim(2) == 0);
    CHECK(two.dim(3) == 1);
    CHECK(two.value(3) == 1.0);
    CHECK(two.in_L(3));
    CHECK(two.count(Member::K_minus_L) == 0);
}

TEST_CASE("rips: square plus center ordering")
{
    const auto fp = fixtures::square_center();
    check_invariants(fp);
    // 5 vertices, C(5,2) = 10 edges, 10 triangles, 5 tetrahedra (dimension capped at k_max + 1 = 3).
    CHECK(fp.size() == 5 + 10 + 10 + 5);
    for (CellId id = 1; id <= 5; ++id) {
        CHECK(fp.dim(id) == 0);
        CHECK(fp.value(id) == 0.0);
    }
    const double half_diag = std::sqrt(0.5);
    for (CellId id = 6; id <= 9; ++id) {
        CHECK(fp.dim(id) == 1);
        CHECK(fp.value(id) == doctest::Approx(half_diag));
        CHECK_FALSE(fp.in_L(id));
    }
    for (CellId id = 10; id <= 13; ++id) {
        CHECK(fp.dim(id) == 1);
        CHECK(fp.value(id) == 1.0);
        CHECK(fp.in_L(id));
    }
    // at value 1 the corner-corner-center triangles follow the side edges
    CHECK(fp.dim(14) == 2);
    CHECK(fp.value(14) == 1.0);
    CHECK_FALSE(fp.in_L(14));
    CHECK(fp.count(Member::L) == 4 + 6 + 4 + 1);
    // L membership iff every vertex lies in A (indices 0..3)
    for (CellId id = 1; id <= fp.size(); ++id) {
        const auto vs = fp.vertices(id);
        const bool all_a = std::all_of(vs.begin(), vs.end(), [](auto v) { return v < 4; });
        CHECK(fp.in_L(id) == all_a);
    }
}

TEST_CASE("rips: radius and dimension truncation")
{
    const auto fp = build_rips_pair(fixtures::square(), fixtures::center(), 0.9, 1);
    CHECK(fp.size() == 5 + 4);
    CHECK(fp.max_dim() == 1);
    const auto full = fixtures::square_center(0);
    CHECK(full.max_dim() == 1);
    CHECK(full.size() == 15);
}

TEST_CASE("rips: ties broken by dimension, membership, then vertices")
{
    // equilateral triangle with side 1 and a far B point: edges tie at value 1
    const double h = std::sqrt(3.0) / 2.0;
    const auto a = PointCloud::from_rows({{0, 0}, {1, 0}, {0.5, h}});
    const auto fp = build_rips_pair(a, PointCloud::from_rows({{0.5, h / 3.0}}), 2.0, 1);
    check_invariants(fp);
    for (CellId id = 2; id <= fp.size(); ++id) {
        const bool same = fp.value(id - 1) == fp.value(id);
        if (!same) continue;
        if (fp.dim(id - 1) != fp.dim(id)) CHECK(fp.dim(id - 1) < fp.dim(id));
        else if (fp.member(id - 1) != fp.member(id)) CHECK(fp.in_L(id - 1));
        else {
            const auto x = fp.vertices(id - 1), y = fp.vertices(id);
            CHECK(std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end()));
        }
    }
}

TEST_CASE("rips: parallel construction equals the serial reference")
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 8; ++trial) {
        const auto a = fixtures::uniform_cloud(rng, 15 + trial, 3);
        const auto b = fixtures::uniform_cloud(rng, 6, 3);
        const auto all = PointCloud::concat(a, b);
        const auto d = distance_matrix(all);
        for (int k : {0, 1, 2}) {
            const auto fast = build_rips_pair(d, a.size(), 0.6, k);
            CHECK(fast == serial::build_rips_pair(d, a.size(), 0.6, k));
            check_invariants(fast);
        }
    }
}

TEST_CASE("rips: input validation")
{
    CHECK_THROWS_AS(build_rips_pair(PointCloud{}, fixtures::center(), 1.0, 1), input_error);
    CHECK_THROWS_AS(build_rips_pair(fixtures::square(), PointCloud(3, {0, 0, 0}), 1.0, 1), input_error);
    CHECK_THROWS_AS(build_rips_pair(fixtures::square(), fixtures::center(), -1.0, 1), input_error);
    CHECK_THROWS_AS(build_rips_pair(fixtures::square(), fixtures::center(), 1.0, -1), input_error);
}

TEST_CASE("explicit: two-circle complex")
{
    const auto fp = fixtures::two_circles();
    REQUIRE(fp.size() == 6);
    const std::vector<Member> members{Member::L,         Member::L, Member::K_minus_L,
                                      Member::K_minus_L, Member::L, Member::L};
    for (CellId id = 1; id <= 6; ++id) {
        CHECK(fp.member(id) == members[id - 1]);
        CHECK(fp.value(id) == static_cast<double>(id));
    }
    CHECK(std::vector<CellId>(fp.boundary(5).begin(), fp.boundary(5).end()) == std::vector<CellId>{1, 2});
    CHECK(fp.boundary(1).empty());
    CHECK_NOTHROW(fp.validate_subcomplex());
}

TEST_CASE("explicit: empty text and errors")
{
    CHECK(parse_explicit_pair("").size() == 0);
    CHECK(parse_explicit_pair("# nothing\n\n").size() == 0);
    CHECK_THROWS_AS(parse_explicit_pair("1 0 0 L 2\n2 0 0 L\n"), input_error);  // face after coface
    CHECK_THROWS_AS(parse_explicit_pair("1 0 0 L\n2 1 1 L 1\n2 1 1 L 1\n"), input_error);
    CHECK_THROWS_AS(parse_explicit_pair("1 0 0 L\n3 0 0 L\n"), input_error);  // gap
    CHECK_THROWS_AS(parse_explicit_pair("1 0 1 L\n2 0 0 L\n"), input_error);  // decreasing values
    CHECK_THROWS_AS(parse_explicit_pair("1 0 0 X\n"), input_error);
    CHECK_THROWS_AS(parse_explicit_pair("1 0 0 L\n2 2 1 L 1\n"), input_error);  // face dimension
    CHECK_THROWS_AS(parse_explicit_pair("1 0 zero L\n"), input_error);
    // L-cell with a K∖L face parses but is not a subcomplex
    const auto bad = parse_explicit_pair("1 0 0 K\n2 0 0 L\n3 1 1 L 1 2\n");
    CHECK_THROWS_AS(bad.validate_subcomplex(), input_error);
    CHECK_THROWS_AS(restrict_to_L(bad), input_error);
}

TEST_CASE("explicit: lines in any order, commas allowed, format round trip")
{
    const auto shuffled = parse_explicit_pair("6,2,6,L,1\n1 1 1 L\n3 2 3 K 2\n2 1 2 L\n5 2 5 L 1 2\n4 2 4 K 1\n");
    CHECK(shuffled == fixtures::two_circles());
    const auto sc = fixtures::square_center();
    const auto again = parse_explicit_pair(format_explicit_pair(sc));
    REQUIRE(again.size() == sc.size());
    for (CellId id = 1; id <= sc.size(); ++id) {
        CHECK(again.value(id) == sc.value(id));
        CHECK(again.member(id) == sc.member(id));
        CHECK(std::equal(again.boundary(id).begin(), again.boundary(id).end(), sc.boundary(id).begin(),
                         sc.boundary(id).end()));
    }
}

TEST_CASE("restrict_to_L")
{
    const auto l = restrict_to_L(fixtures::two_circles());
    REQUIRE(l.size() == 4);
    const std::vector<CellId> labels{1, 2, 5, 6};
    for (CellId id = 1; id <= 4; ++id) CHECK(l.label(id) == labels[id - 1]);
    CHECK(l.count(Member::K_minus_L) == 0);
    // the cylinder 5 keeps both circles as faces under the new numbering
    CHECK(std::vector<CellId>(l.boundary(3).begin(), l.boundary(3).end()) == std::vector<CellId>{1, 2});

    const auto only_a = build_rips_pair(fixtures::square(), PointCloud{}, 2.0, 2);
    const auto same = restrict_to_L(only_a);
    REQUIRE(same.size() == only_a.size());
    for (CellId id = 1; id <= same.size(); ++id) {
        CHECK(same.label(id) == id);
        CHECK(same.value(id) == only_a.value(id));
    }

    // square+center: exactly the simplices on the corners, same values and vertex sets as VR(A)
    const auto sc = restrict_to_L(fixtures::square_center());
    REQUIRE(sc.size() == only_a.size());
    for (CellId id = 1; id <= sc.size(); ++id) {
        CHECK(sc.value(id) == only_a.value(id));
        CHECK(std::equal(sc.vertices(id).begin(), sc.vertices(id).end(), only_a.vertices(id).begin(),
                         only_a.vertices(id).end()));
    }
}

TEST_CASE("add_cell rejects invalid cells")
{
    FilteredPair fp;
    const std::vector<CellId> none;
    fp.add_cell(0, 0.0, Member::L, none);
    const std::vector<CellId> self{2};
    CHECK_THROWS_AS(fp.add_cell(1, 1.0, Member::L, self), input_error);
    CHECK_THROWS_AS(fp.add_cell(0, -1.0, Member::L, none), input_error);
    CHECK_THROWS_AS(fp.add_cell(0, std::numeric_limits<double>::infinity(), Member::L, none), input_error);
    CHECK(fp.size() == 1);
    CHECK(fp.max_dim() == 0);
    CHECK(FilteredPair{}.max_dim() == -1);
}
