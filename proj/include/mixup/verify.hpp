#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mixup/complex.hpp"
#include "mixup/oracle.hpp"
#include "mixup/reduce.hpp"

namespace mixup::verify {

struct DegreeCheck {
    int degree = 0;
    std::vector<oracle::Interval> fast_bars, oracle_bars;    // (b, d)
    std::vector<oracle::Interval> fast_image, oracle_image;  // (b, d') with d' > b
    bool ordered = true;                                     // b <= d' <= d on every triple

    bool ok() const { return ordered && fast_bars == oracle_bars && fast_image == oracle_image; }
};

// Bars read off index mixup triples.
std::vector<oracle::Interval> persistence_bars(const std::vector<IndexMixupTriple>& triples);
std::vector<oracle::Interval> image_bars(const std::vector<IndexMixupTriple>& triples);
bool triples_ordered(const std::vector<IndexMixupTriple>& triples);

// Fast path against the rank-function oracle in one degree.
DegreeCheck check_degree(const FilteredPair& fp, int k);

struct RandomInstance {
    PointCloud a, b;
    double r_max = 0.0;
    int k_max = 0;
    FilteredPair pair;
};

struct RandomInstanceSpec {
    std::size_t max_a = 6;
    std::size_t max_b = 3;
    std::size_t min_dim = 2;
    std::size_t max_dim = 4;
    int k_max = 2;
};

// Uniform points in [0,1]^d, |A| in [1, max_a], |B| in [0, max_b], r_max uniform in
// (0, diameter] so both truncated and complete complexes occur.
RandomInstance random_instance(std::mt19937_64& rng, const RandomInstanceSpec& spec = {});

std::string describe(const DegreeCheck& c);

}  // namespace mixup::verify
