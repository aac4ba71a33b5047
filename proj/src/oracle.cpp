#include "mixup/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace mixup::oracle {

namespace {

class BitVector {
public:
    explicit BitVector(std::size_t bits = 0) : words_((bits + 63) / 64, 0) {}

    void flip(std::size_t i) { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }
    void operator^=(const BitVector& o)
    {
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= o.words_[w];
    }
    // Highest set bit, or -1 when zero.
    long highest() const
    {
        for (std::size_t w = words_.size(); w-- > 0;)
            if (words_[w] != 0) return static_cast<long>(w * 64 + 63 - static_cast<std::size_t>(std::countl_zero(words_[w])));
        return -1;
    }

private:
    std::vector<std::uint64_t> words_;
};

// Row-echelon basis keyed by highest set bit.
class EchelonBasis {
public:
    explicit EchelonBasis(std::size_t bits) : by_pivot_(bits) {}

    // Returns true if v was independent of the basis (and is now part of it).
    bool insert(BitVector v)
    {
        for (long p = v.highest(); p >= 0; p = v.highest()) {
            auto& slot = by_pivot_[static_cast<std::size_t>(p)];
            if (!slot) {
                slot = std::move(v);
                ++rank_;
                return true;
            }
            v ^= *slot;
        }
        return false;
    }
    int rank() const { return rank_; }

private:
    std::vector<std::optional<BitVector>> by_pivot_;
    int rank_ = 0;
};

// Boundary-reduction with tracked chains; emits a cycle basis of Z_k as cells are added.
class CycleTracker {
public:
    CycleTracker(std::size_t face_bits, std::size_t chain_bits) : row_of_pivot_(face_bits, none), chain_bits_(chain_bits) {}

    // Adds a k-cell with the given boundary; returns the new cycle if the boundary is dependent.
    std::optional<BitVector> add(std::size_t chain_bit, const BitVector& boundary)
    {
        BitVector v = boundary;
        BitVector chain(chain_bits_);
        chain.flip(chain_bit);
        for (long p = v.highest(); p >= 0; p = v.highest()) {
            auto& row = row_of_pivot_[static_cast<std::size_t>(p)];
            if (row == none) {
                row = rows_.size();
                rows_.push_back({std::move(v), std::move(chain)});
                return std::nullopt;
            }
            v ^= rows_[row].boundary;
            chain ^= rows_[row].chain;
        }
        return chain;
    }

private:
    static constexpr std::size_t none = static_cast<std::size_t>(-1);
    struct Row {
        BitVector boundary;
        BitVector chain;
    };
    std::vector<std::size_t> row_of_pivot_;
    std::size_t chain_bits_;
    std::vector<Row> rows_;
};

}  // namespace

bool RankFunction::is_monotone() const
{
    for (std::size_t i = 0; i <= n_; ++i)
        for (std::size_t j = i; j <= n_; ++j) {
            if (j + 1 <= n_ && (*this)(i, j) < (*this)(i, j + 1)) return false;
            if (i + 1 <= j && (*this)(i, j) > (*this)(i + 1, j)) return false;
        }
    return true;
}

RankFunction rank_function(const FilteredPair& fp, int k, RankMode mode, std::size_t max_cells)
{
    if (fp.size() > max_cells)
        throw std::length_error("oracle size guard: " + std::to_string(fp.size()) + " cells > " +
                                std::to_string(max_cells));
    if (k < 0) throw std::out_of_range("negative degree");
    const std::size_t n = fp.size();

    // bit positions of k-cells and (k-1)-cells of K
    std::vector<std::size_t> slot(n + 1, 0);
    std::size_t n_k = 0, n_km1 = 0;
    for (CellId id = 1; id <= n; ++id) {
        if (fp.dim(id) == k) slot[id] = n_k++;
        else if (fp.dim(id) == k - 1) slot[id] = n_km1++;
    }

    const bool cycles_from_L = mode != RankMode::standard_K;
    const bool boundaries_from_L = mode == RankMode::standard_L;
    auto counts = [&](CellId id, bool from_L) { return !from_L || fp.in_L(id); };

    // Z_k(X_i): cycles[i] holds the basis vectors available at prefix i
    std::vector<BitVector> cycles;
    std::vector<std::size_t> cycles_at(n + 1, 0);
    CycleTracker tracker(n_km1, n_k);
    for (CellId id = 1; id <= n; ++id) {
        if (fp.dim(id) == k && counts(id, cycles_from_L)) {
            BitVector bd(n_km1);
            for (CellId f : fp.boundary(id)) bd.flip(slot[f]);
            if (auto z = tracker.add(slot[id], bd)) cycles.push_back(std::move(*z));
        }
        cycles_at[id] = cycles.size();
    }

    auto boundary_of = [&](CellId id) {
        BitVector v(n_k);
        for (CellId f : fp.boundary(id)) v.flip(slot[f]);
        return v;
    };
    auto is_boundary_cell = [&](CellId id) { return fp.dim(id) == k + 1 && counts(id, boundaries_from_L); };

    std::vector<int> rank_b(n + 1, 0);
    {
        EchelonBasis b(n_k);
        for (CellId id = 1; id <= n; ++id) {
            if (is_boundary_cell(id)) b.insert(boundary_of(id));
            rank_b[id] = b.rank();
        }
    }

    RankFunction rf(k, n);
    for (std::size_t i = 1; i <= n; ++i) {
        if (cycles_at[i] == cycles_at[i - 1]) {
            for (std::size_t j = i; j <= n; ++j) rf.at(i, j) = rf(i - 1, j);
            continue;
        }
        EchelonBasis zb(n_k);
        for (std::size_t c = 0; c < cycles_at[i]; ++c) zb.insert(cycles[c]);
        for (CellId id = 1; id <= n; ++id) {
            if (is_boundary_cell(id)) zb.insert(boundary_of(id));
            if (id >= i) rf.at(i, id) = zb.rank() - rank_b[id];
        }
    }
    return rf;
}

std::vector<Interval> barcode_from_ranks(const RankFunction& rf)
{
    const std::size_t n = rf.size();
    // r with r(0, ·) = 0 and r(·, n+1) = 0
    auto r = [&](std::size_t i, std::size_t j) -> int {
        if (i == 0 || j > n) return 0;
        return rf(i, j);
    };
    std::vector<Interval> out;
    for (std::size_t b = 1; b <= n; ++b)
        for (std::size_t d = b + 1; d <= n + 1; ++d) {
            const int m = r(b, d - 1) - r(b, d) - r(b - 1, d - 1) + r(b - 1, d);
            if (m < 0)
                throw std::logic_error("negative multiplicity for [" + std::to_string(b) + ", " +
                                       std::to_string(d) + ")");
            for (int c = 0; c < m; ++c) {
                Interval iv{static_cast<CellId>(b), std::nullopt};
                if (d <= n) iv.death = static_cast<CellId>(d);
                out.push_back(iv);
            }
        }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace mixup::oracle
