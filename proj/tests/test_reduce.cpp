#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "mixup/reduce.hpp"
#include "mixup/verify.hpp"

using namespace mixup;

namespace {

using Triple = std::tuple<CellId, std::optional<CellId>, std::optional<CellId>>;

std::multiset<Triple> as_set(const std::vector<IndexMixupTriple>& ts)
{
    std::multiset<Triple> out;
    for (const auto& t : ts) out.insert({t.birth, t.image_death, t.death});
    return out;
}

SparseBoundaryMatrix filled_triangle_degree0()
{
    SparseBoundaryMatrix m(RowOrder::identity(7));
    const std::vector<std::vector<CellId>> cols{{}, {}, {}, {1, 2}, {1, 3}, {2, 3}};
    for (CellId id = 1; id <= 6; ++id) m.add_column(id, cols[id - 1]);
    return m;
}

std::set<RowKey> pivots(const SparseBoundaryMatrix& m)
{
    std::set<RowKey> out;
    for (std::size_t j = 0; j < m.num_columns(); ++j)
        if (auto p = m.pivot_key(j)) CHECK(out.insert(*p).second);
    return out;
}

}  // namespace

TEST_CASE("row orders")
{
    const RowOrder order({3, 1, 2});
    CHECK(order.key(3) == 0);
    CHECK(order.key(1) == 1);
    CHECK(order.cell(2) == 2);
    CHECK_THROWS(RowOrder({1, 1, 2}));

    CHECK(image_row_order(fixtures::two_circles()).sequence() == std::vector<CellId>{1, 2, 5, 6, 3, 4});
    const auto only_l = build_rips_pair(fixtures::square(), PointCloud{}, 2.0, 1);
    CHECK(image_row_order(only_l).sequence() == RowOrder::identity(only_l.size()).sequence());

    const auto sc = fixtures::square_center();
    const auto seq = image_row_order(sc).sequence();
    const auto first_mixed = std::find_if(seq.begin(), seq.end(), [&](CellId c) { return !sc.in_L(c); });
    CHECK(std::all_of(seq.begin(), first_mixed, [&](CellId c) { return sc.in_L(c); }));
    CHECK(std::none_of(first_mixed, seq.end(), [&](CellId c) { return sc.in_L(c); }));
    CHECK(std::is_sorted(seq.begin(), first_mixed));
    CHECK(std::is_sorted(first_mixed, seq.end()));
}

TEST_CASE("column addition is symmetric difference")
{
    SparseBoundaryMatrix m(RowOrder::identity(5));
    const std::vector<CellId> x{1, 3, 4}, y{4, 3, 2};
    m.add_column(5, x);
    m.add_column(5, y);
    m.add_into(1, 0);
    CHECK(std::vector<RowKey>(m.column(1).begin(), m.column(1).end()) == std::vector<RowKey>{0, 1});
    CHECK(m.pivot(1) == CellId{2});
    m.add_into(1, 1);
    CHECK(m.is_zero(1));
    CHECK_FALSE(m.pivot(1));
}

TEST_CASE("reduce: empty and filled triangle")
{
    SparseBoundaryMatrix empty(RowOrder::identity(0));
    CHECK(reduce(empty) == empty);

    const auto r = reduce(filled_triangle_degree0());
    CHECK(r.pivot(3) == CellId{2});
    CHECK(r.pivot(4) == CellId{3});
    CHECK(r.is_zero(5));
    CHECK(pivot_pairs(r) == std::vector<std::pair<CellId, CellId>>{{2, 4}, {3, 5}});
}

TEST_CASE("reduce: two-circle degree-1 matrix under the image order")
{
    const auto fp = fixtures::two_circles();
    SparseBoundaryMatrix m(image_row_order(fp));
    for (CellId id = 3; id <= 6; ++id) m.add_column(id, fp.boundary(id));
    const auto r = reduce(m);
    CHECK(r.pivot(0) == CellId{2});  // column 3 -> b
    CHECK(r.pivot(1) == CellId{1});  // column 4 -> a
    CHECK(r.is_zero(2));
    CHECK(r.is_zero(3));
    pivots(r);
}

TEST_CASE("mixup triples: two-circle golden test")
{
    const auto ts = mixup_barcode_indices(fixtures::two_circles(), 1);
    CHECK(as_set(ts) == std::multiset<Triple>{{1, 4, 6}, {2, 3, 5}});
    for (const auto& t : ts) CHECK(t.degree == 1);
    CHECK(mixup_barcode_indices(fixtures::two_circles(), 2).empty());
    CHECK(mixup_barcode_indices(fixtures::two_circles(), 0).empty());
    CHECK_THROWS_AS(mixup_barcode_indices(fixtures::two_circles(), 3), std::out_of_range);
    CHECK_THROWS_AS(mixup_barcode_indices(fixtures::two_circles(), -1), std::out_of_range);
}

TEST_CASE("mixup triples: square plus center")
{
    const auto fp = fixtures::square_center();
    const auto t1 = mixup_barcode_indices(fp, 1);
    const auto v1 = to_value_barcode(t1, fp);
    std::vector<ValueTriple> positive;
    for (const auto& v : v1)
        if (!v.zero_length) positive.push_back(v);
    REQUIRE(positive.size() == 1);
    CHECK(positive[0].birth == 1.0);
    CHECK(positive[0].image_death == 1.0);
    CHECK(positive[0].death == std::sqrt(2.0));

    const auto v0 = to_value_barcode(mixup_barcode_indices(fp, 0), fp);
    REQUIRE(v0.size() == 4);
    int finite = 0;
    for (const auto& v : v0) {
        CHECK(v.birth == 0.0);
        if (std::isinf(v.death)) {
            CHECK(std::isinf(v.image_death));
            continue;
        }
        ++finite;
        CHECK(v.image_death == doctest::Approx(0.70711).epsilon(1e-5));
        CHECK(v.death == 1.0);
    }
    CHECK(finite == 3);
}

TEST_CASE("to_value_barcode")
{
    const auto fp = fixtures::two_circles();
    const std::vector<IndexMixupTriple> ts{{1, 4, 6, 1}, {2, std::nullopt, std::nullopt, 1}, {1, 5, 5, 1}};
    const auto vs = to_value_barcode(ts, fp);
    CHECK(vs[0] == ValueTriple{1, 4, 6, false});
    CHECK(std::isinf(vs[1].image_death));
    CHECK(std::isinf(vs[1].death));
    CHECK_FALSE(vs[1].zero_length);
    CHECK(vs[2].death - vs[2].image_death == 0.0);
}

TEST_CASE("no K∖L cells: image death equals death")
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = fixtures::uniform_cloud(rng, 9, 2);
        const auto fp = build_rips_pair(a, PointCloud{}, 0.7, 2);
        for (int k = 0; k <= 2; ++k)
            for (const auto& t : mixup_barcode_indices(fp, k)) CHECK(t.image_death == t.death);
    }
}

TEST_CASE("properties on random Rips pairs")
{
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 60; ++trial) {
        const auto inst = verify::random_instance(rng);
        const auto& fp = inst.pair;
        const auto l = restrict_to_L(fp);
        for (int k = 0; k <= std::min(2, fp.max_dim()); ++k) {
            const auto red = reduce_mixup_matrices(fp, k);
            pivots(red.bl);
            pivots(red.bk);
            const auto ts = extract_triples(fp, k, red);
            CHECK(ts == mixup_barcode_indices(fp, k));

            std::set<CellId> births;
            for (const auto& t : ts) {
                CHECK(fp.in_L(t.birth));
                CHECK(fp.dim(t.birth) == k);
                // d' = b never happens at index level; finite d' and d are (k+1)-cells
                if (t.image_death) {
                    CHECK(*t.image_death > t.birth);
                    CHECK(fp.dim(*t.image_death) == k + 1);
                }
                if (t.death) {
                    REQUIRE(t.image_death);
                    CHECK(*t.image_death <= *t.death);
                    CHECK(fp.in_L(*t.death));
                }
                births.insert(t.birth);
            }

            // births and deaths are those of the standalone persistence of L (creators are stable)
            if (k <= l.max_dim()) {
                std::multiset<std::pair<CellId, std::optional<CellId>>> restricted, original;
                for (const auto& t : mixup_barcode_indices(l, k))
                    restricted.insert({l.label(t.birth), t.death ? std::optional(l.label(*t.death)) : std::nullopt});
                for (const auto& t : ts) original.insert({t.birth, t.death});
                CHECK(restricted == original);
            }

            // deterministic
            CHECK(ts == mixup_barcode_indices(fp, k));
        }
    }
}

TEST_CASE("pairing is invariant under extra left-to-right column additions")
{
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        const auto inst = verify::random_instance(rng);
        const auto& fp = inst.pair;
        const int k = std::min(1, fp.max_dim());
        SparseBoundaryMatrix m(image_row_order(fp));
        for (CellId id = 1; id <= fp.size(); ++id)
            if (fp.dim(id) == k + 1) m.add_column(id, fp.boundary(id));
        const auto baseline = pivot_pairs(reduce(m));

        // adding earlier columns to later ones is a valid change of basis
        auto shuffled = m;
        std::bernoulli_distribution coin(0.3);
        for (std::size_t j = 1; j < shuffled.num_columns(); ++j)
            for (std::size_t i = 0; i < j; ++i)
                if (coin(rng)) shuffled.add_into(j, i);
        CHECK(pivot_pairs(reduce(shuffled)) == baseline);
    }
}
