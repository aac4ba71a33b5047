#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mixup/point_cloud.hpp"

namespace mixup {

// Position of a cell in the total order of K, starting at 1.
using CellId = std::uint32_t;

enum class Member : std::uint8_t { L, K_minus_L };

struct Cell {
    CellId id;
    int dim;
    double value;
    Member member;
    std::span<const CellId> boundary;     // sorted, all ids < id
    std::span<const std::uint32_t> vertices;  // VR simplices only; indices into A ∪ B
};

// Simplex-wise filtration of K together with the induced filtration of L ⊆ K.
//
// Cells are appended in filtration order; add_cell rejects anything that would break
// the ordering invariants (faces before cofaces, monotone values, boundary dimensions).
class FilteredPair {
public:
    CellId add_cell(int dim, double value, Member member, std::span<const CellId> boundary,
                    std::span<const std::uint32_t> vertices = {});

    std::size_t size() const { return dims_.size(); }
    bool empty() const { return dims_.empty(); }
    // -1 for an empty pair.
    int max_dim() const { return max_dim_; }

    Cell cell(CellId id) const;
    int dim(CellId id) const { return dims_[id - 1]; }
    double value(CellId id) const { return values_[id - 1]; }
    Member member(CellId id) const { return members_[id - 1]; }
    bool in_L(CellId id) const { return members_[id - 1] == Member::L; }
    std::span<const CellId> boundary(CellId id) const;
    std::span<const std::uint32_t> vertices(CellId id) const;

    // Id of this cell in the pair it was restricted from (identity unless produced by restrict_to_L).
    CellId label(CellId id) const { return labels_.empty() ? id : labels_[id - 1]; }

    std::size_t count(Member m) const;
    // Throws input_error if some L-cell has a face in K∖L.
    void validate_subcomplex() const;

    bool operator==(const FilteredPair&) const = default;

private:
    friend FilteredPair restrict_to_L(const FilteredPair& fp);

    std::vector<int> dims_;
    std::vector<double> values_;
    std::vector<Member> members_;
    std::vector<std::size_t> boundary_offsets_{0};
    std::vector<CellId> boundary_ids_;
    std::vector<std::size_t> vertex_offsets_{0};
    std::vector<std::uint32_t> vertex_ids_;
    std::vector<CellId> labels_;
    int max_dim_ = -1;
};

// Vietoris–Rips pair L = VR(A) ⊆ K = VR(A ∪ B) on a combined distance matrix whose
// first `a_count` points form A. Simplices have dimension ≤ k_max + 1 and diameter ≤ r_max,
// ordered by (value, dim, L before K∖L, lexicographic vertices).
FilteredPair build_rips_pair(const DistanceMatrix& distances, std::size_t a_count, double r_max, int k_max);
FilteredPair build_rips_pair(const PointCloud& a, const PointCloud& b, double r_max, int k_max);

namespace serial {
FilteredPair build_rips_pair(const DistanceMatrix& distances, std::size_t a_count, double r_max, int k_max);
}  // namespace serial

// Explicit filtration text: one cell per line, `id dim value member(L|K) boundary_id...`,
// '#' starts a comment.
FilteredPair parse_explicit_pair(std::string_view text);
std::string format_explicit_pair(const FilteredPair& fp);

// The sub-filtration of L-cells, renumbered 1..m; label() maps back to the original ids.
FilteredPair restrict_to_L(const FilteredPair& fp);

}  // namespace mixup
