#include "mixup/reduce.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace mixup {

RowOrder::RowOrder(std::vector<CellId> sequence) : sequence_(std::move(sequence)), keys_(sequence_.size())
{
    std::vector<bool> seen(sequence_.size(), false);
    for (std::size_t k = 0; k < sequence_.size(); ++k) {
        const CellId id = sequence_[k];
        if (id == 0 || id > sequence_.size() || seen[id - 1])
            throw std::invalid_argument("row order is not a permutation of the cell ids");
        seen[id - 1] = true;
        keys_[id - 1] = static_cast<RowKey>(k);
    }
}

RowOrder RowOrder::identity(std::size_t n)
{
    std::vector<CellId> seq(n);
    std::iota(seq.begin(), seq.end(), CellId{1});
    return RowOrder(std::move(seq));
}

RowOrder image_row_order(const FilteredPair& fp)
{
    std::vector<CellId> seq;
    seq.reserve(fp.size());
    for (CellId id = 1; id <= fp.size(); ++id)
        if (fp.in_L(id)) seq.push_back(id);
    for (CellId id = 1; id <= fp.size(); ++id)
        if (!fp.in_L(id)) seq.push_back(id);
    return RowOrder(std::move(seq));
}

void SparseBoundaryMatrix::add_column(CellId id, std::span<const CellId> support)
{
    std::vector<RowKey> col;
    col.reserve(support.size());
    for (CellId c : support) col.push_back(rows_.key(c));
    std::sort(col.begin(), col.end());
    if (std::adjacent_find(col.begin(), col.end()) != col.end())
        throw std::invalid_argument("column " + std::to_string(id) + " repeats a row");
    ids_.push_back(id);
    columns_.push_back(std::move(col));
}

std::optional<RowKey> SparseBoundaryMatrix::pivot_key(std::size_t j) const
{
    if (columns_[j].empty()) return std::nullopt;
    return columns_[j].back();
}

std::optional<CellId> SparseBoundaryMatrix::pivot(std::size_t j) const
{
    if (columns_[j].empty()) return std::nullopt;
    return rows_.cell(columns_[j].back());
}

void SparseBoundaryMatrix::add_into(std::size_t dst, std::size_t src)
{
    const auto& a = columns_[dst];
    const auto& b = columns_[src];
    scratch_.clear();
    scratch_.reserve(a.size() + b.size());
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(scratch_));
    columns_[dst].swap(scratch_);
}

void reduce_in_place(SparseBoundaryMatrix& m)
{
    constexpr auto none = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> owner(m.row_order().size(), none);
    for (std::size_t j = 0; j < m.num_columns(); ++j) {
        while (auto p = m.pivot_key(j)) {
            const auto k = owner[*p];
            if (k == none) {
                owner[*p] = j;
                break;
            }
            m.add_into(j, k);
        }
    }
}

SparseBoundaryMatrix reduce(SparseBoundaryMatrix m)
{
    reduce_in_place(m);
    return m;
}

std::vector<std::pair<CellId, CellId>> pivot_pairs(const SparseBoundaryMatrix& m)
{
    std::vector<std::pair<CellId, CellId>> out;
    for (std::size_t j = 0; j < m.num_columns(); ++j)
        if (auto p = m.pivot(j)) out.emplace_back(*p, m.column_id(j));
    return out;
}

namespace {

void check_degree(const FilteredPair& fp, int k)
{
    if (k < 0 || k > fp.max_dim())
        throw std::out_of_range("degree " + std::to_string(k) + " outside 0.." + std::to_string(fp.max_dim()));
}

}  // namespace

MixupReduction reduce_mixup_matrices(const FilteredPair& fp, int k)
{
    check_degree(fp, k);
    fp.validate_subcomplex();
    auto rows = image_row_order(fp);
    MixupReduction out{SparseBoundaryMatrix(rows), SparseBoundaryMatrix(rows)};
    for (CellId id = 1; id <= fp.size(); ++id) {
        const int d = fp.dim(id);
        if (d != k && d != k + 1) continue;
        const auto boundary = fp.boundary(id);
        out.bk.add_column(id, boundary);
        // L-cells have L-faces only, so dropping K∖L columns also drops every K∖L row
        if (fp.in_L(id)) out.bl.add_column(id, boundary);
    }
#pragma omp parallel sections
    {
#pragma omp section
        reduce_in_place(out.bl);
#pragma omp section
        reduce_in_place(out.bk);
    }
    return out;
}

std::vector<IndexMixupTriple> extract_triples(const FilteredPair& fp, int k, const MixupReduction& reduced)
{
    constexpr CellId none = 0;
    std::vector<CellId> killer_in_l(fp.size() + 1, none);
    std::vector<CellId> killer_in_k(fp.size() + 1, none);
    for (auto [piv, col] : pivot_pairs(reduced.bl)) killer_in_l[piv] = col;
    for (auto [piv, col] : pivot_pairs(reduced.bk)) killer_in_k[piv] = col;

    std::vector<IndexMixupTriple> out;
    for (std::size_t j = 0; j < reduced.bl.num_columns(); ++j) {
        const CellId sigma = reduced.bl.column_id(j);
        if (fp.dim(sigma) != k || !reduced.bl.is_zero(j)) continue;
        IndexMixupTriple t{sigma, std::nullopt, std::nullopt, k};
        if (killer_in_l[sigma] != none) t.death = killer_in_l[sigma];
        if (killer_in_k[sigma] != none) t.image_death = killer_in_k[sigma];
        out.push_back(t);
    }
    return out;
}

std::vector<IndexMixupTriple> mixup_barcode_indices(const FilteredPair& fp, int k)
{
    const auto reduced = reduce_mixup_matrices(fp, k);
    return extract_triples(fp, k, reduced);
}

std::vector<ValueTriple> to_value_barcode(std::span<const IndexMixupTriple> triples, const FilteredPair& fp)
{
    constexpr double inf = std::numeric_limits<double>::infinity();
    auto value_of = [&](std::optional<CellId> id) {
        if (!id) return inf;
        if (*id == 0 || *id > fp.size()) throw std::out_of_range("cell id " + std::to_string(*id) + " out of range");
        return fp.value(*id);
    };
    std::vector<ValueTriple> out;
    out.reserve(triples.size());
    for (const auto& t : triples) {
        ValueTriple v{value_of(t.birth), value_of(t.image_death), value_of(t.death), false};
        v.zero_length = v.birth == v.death;
        out.push_back(v);
    }
    return out;
}

}  // namespace mixup
