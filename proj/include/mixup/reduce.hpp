#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mixup/complex.hpp"

namespace mixup {

using RowKey = std::uint32_t;

// Total order on cell ids used to compare rows; the pivot of a column is its greatest key.
class RowOrder {
public:
    RowOrder() = default;
    // sequence[k] is the cell holding key k; must be a permutation of 1..n.
    explicit RowOrder(std::vector<CellId> sequence);
    static RowOrder identity(std::size_t n);

    std::size_t size() const { return sequence_.size(); }
    RowKey key(CellId id) const { return keys_[id - 1]; }
    CellId cell(RowKey key) const { return sequence_[key]; }
    const std::vector<CellId>& sequence() const { return sequence_; }

private:
    std::vector<CellId> sequence_;
    std::vector<RowKey> keys_;
};

// L-cells first, then K∖L-cells, each block in filtration order.
RowOrder image_row_order(const FilteredPair& fp);

// Column-major Z/2 matrix; each column is a strictly increasing list of row keys.
class SparseBoundaryMatrix {
public:
    explicit SparseBoundaryMatrix(RowOrder rows) : rows_(std::move(rows)) {}

    // Appends the column of cell `id` with the given support (cell ids, any order).
    void add_column(CellId id, std::span<const CellId> support);

    std::size_t num_columns() const { return columns_.size(); }
    CellId column_id(std::size_t j) const { return ids_[j]; }
    std::span<const RowKey> column(std::size_t j) const { return columns_[j]; }
    bool is_zero(std::size_t j) const { return columns_[j].empty(); }
    std::optional<RowKey> pivot_key(std::size_t j) const;
    // Pivot as a cell id.
    std::optional<CellId> pivot(std::size_t j) const;
    const RowOrder& row_order() const { return rows_; }

    // column[dst] += column[src] (mod 2)
    void add_into(std::size_t dst, std::size_t src);

    bool operator==(const SparseBoundaryMatrix& other) const
    {
        return ids_ == other.ids_ && columns_ == other.columns_ && rows_.sequence() == other.rows_.sequence();
    }

private:
    RowOrder rows_;
    std::vector<CellId> ids_;
    std::vector<std::vector<RowKey>> columns_;
    std::vector<RowKey> scratch_;
};

// Left-to-right column reduction: while an earlier column shares the pivot of column j,
// add it to column j. Nonzero columns end with pairwise distinct pivots.
void reduce_in_place(SparseBoundaryMatrix& m);
SparseBoundaryMatrix reduce(SparseBoundaryMatrix m);

// (pivot cell, column cell) for every nonzero column.
std::vector<std::pair<CellId, CellId>> pivot_pairs(const SparseBoundaryMatrix& m);

// An index mixup triple; std::nullopt stands for +∞ (the class never dies).
struct IndexMixupTriple {
    CellId birth;
    std::optional<CellId> image_death;
    std::optional<CellId> death;
    int degree;

    bool operator==(const IndexMixupTriple&) const = default;
};

// Reduced BL and BK for one degree; columns are the k- and (k+1)-cells in filtration order.
struct MixupReduction {
    SparseBoundaryMatrix bl;
    SparseBoundaryMatrix bk;
};

// Builds and reduces both matrices. BL keeps only L columns (K∖L rows and columns zeroed);
// both use image_row_order. The two reductions run concurrently.
MixupReduction reduce_mixup_matrices(const FilteredPair& fp, int k);

// Coordinated reduction of BL and BK. One triple per k-cell of L whose reduced BL column is
// zero, in birth order. Throws std::out_of_range unless 0 <= k <= fp.max_dim().
std::vector<IndexMixupTriple> mixup_barcode_indices(const FilteredPair& fp, int k);
std::vector<IndexMixupTriple> extract_triples(const FilteredPair& fp, int k, const MixupReduction& reduced);

// Filtration values of a triple; +∞ encoded as std::numeric_limits<double>::infinity().
struct ValueTriple {
    double birth;
    double image_death;
    double death;
    bool zero_length;  // birth == death after mapping to values

    bool operator==(const ValueTriple&) const = default;
};

std::vector<ValueTriple> to_value_barcode(std::span<const IndexMixupTriple> triples, const FilteredPair& fp);

}  // namespace mixup
