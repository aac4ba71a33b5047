#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <vector>

#include "mixup/complex.hpp"

// Brute-force persistence by dense Z/2 linear algebra on cycle and boundary spaces.
// Independent of the sparse reduction in reduce.hpp; used to cross-check it.
namespace mixup::oracle {

enum class RankMode {
    standard_L,  // Z_k(L_i) / (B_k(L_j) ∩ Z_k(L_i))
    standard_K,  // Z_k(K_i) / (B_k(K_j) ∩ Z_k(K_i))
    image,       // Z_k(L_i) / (B_k(K_j) ∩ Z_k(L_i))
};

inline constexpr std::size_t default_max_cells = 2000;

// r(i, j) for 0 <= i <= j <= n; index 0 is the empty prefix, so r(0, j) = 0.
class RankFunction {
public:
    RankFunction(int degree, std::size_t n) : degree_(degree), n_(n), ranks_((n + 1) * (n + 1), 0) {}

    int degree() const { return degree_; }
    std::size_t size() const { return n_; }
    int operator()(std::size_t i, std::size_t j) const { return ranks_[i * (n_ + 1) + j]; }
    int& at(std::size_t i, std::size_t j) { return ranks_[i * (n_ + 1) + j]; }

    // r(i,j) >= r(i,j+1) and r(i,j) <= r(i+1,j) wherever defined.
    bool is_monotone() const;

private:
    int degree_;
    std::size_t n_;
    std::vector<int> ranks_;
};

RankFunction rank_function(const FilteredPair& fp, int k, RankMode mode,
                           std::size_t max_cells = default_max_cells);

// Half-open [birth, death); std::nullopt death means the bar never ends.
struct Interval {
    CellId birth;
    std::optional<CellId> death;

    auto operator<=>(const Interval&) const = default;
};

// Multiset of bars (sorted) from second differences of the rank function.
// Throws std::logic_error on a negative multiplicity.
std::vector<Interval> barcode_from_ranks(const RankFunction& rf);

}  // namespace mixup::oracle
