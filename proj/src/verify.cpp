#include "mixup/verify.hpp"

#include <algorithm>
#include <sstream>

namespace mixup::verify {

std::vector<oracle::Interval> persistence_bars(const std::vector<IndexMixupTriple>& triples)
{
    std::vector<oracle::Interval> out;
    for (const auto& t : triples) out.push_back({t.birth, t.death});
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<oracle::Interval> image_bars(const std::vector<IndexMixupTriple>& triples)
{
    std::vector<oracle::Interval> out;
    for (const auto& t : triples)
        if (!t.image_death || *t.image_death > t.birth) out.push_back({t.birth, t.image_death});
    std::sort(out.begin(), out.end());
    return out;
}

bool triples_ordered(const std::vector<IndexMixupTriple>& triples)
{
    for (const auto& t : triples) {
        if (t.image_death && *t.image_death < t.birth) return false;
        if (t.death && !t.image_death) return false;
        if (t.death && *t.image_death > *t.death) return false;
    }
    return true;
}

DegreeCheck check_degree(const FilteredPair& fp, int k)
{
    DegreeCheck c;
    c.degree = k;
    // a degree above the top dimension has no cells and no bars
    const auto triples = k <= fp.max_dim() ? mixup_barcode_indices(fp, k) : std::vector<IndexMixupTriple>{};
    c.fast_bars = persistence_bars(triples);
    c.fast_image = image_bars(triples);
    c.ordered = triples_ordered(triples);
    c.oracle_bars = oracle::barcode_from_ranks(oracle::rank_function(fp, k, oracle::RankMode::standard_L));
    c.oracle_image = oracle::barcode_from_ranks(oracle::rank_function(fp, k, oracle::RankMode::image));
    return c;
}

RandomInstance random_instance(std::mt19937_64& rng, const RandomInstanceSpec& spec)
{
    std::uniform_int_distribution<std::size_t> n_a(1, spec.max_a);
    std::uniform_int_distribution<std::size_t> n_b(0, spec.max_b);
    std::uniform_int_distribution<std::size_t> dim(spec.min_dim, spec.max_dim);
    std::uniform_real_distribution<double> coord(0.0, 1.0);

    const auto d = dim(rng);
    auto sample = [&](std::size_t n) {
        std::vector<double> xs(n * d);
        for (auto& x : xs) x = coord(rng);
        return PointCloud(d, std::move(xs));
    };
    RandomInstance inst;
    inst.a = sample(n_a(rng));
    inst.b = sample(n_b(rng));
    inst.k_max = spec.k_max;
    const auto all = PointCloud::concat(inst.a, inst.b);
    double diameter = 0.0;
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) diameter = std::max(diameter, all.distance(i, j));
    inst.r_max = diameter * std::uniform_real_distribution<double>(0.05, 1.0)(rng);
    inst.pair = build_rips_pair(inst.a, inst.b, inst.r_max, inst.k_max);
    return inst;
}

namespace {

void print_bars(std::ostringstream& os, const std::vector<oracle::Interval>& bars)
{
    os << '{';
    for (std::size_t i = 0; i < bars.size(); ++i) {
        if (i) os << ", ";
        os << '[' << bars[i].birth << ", ";
        if (bars[i].death) os << *bars[i].death;
        else os << "inf";
        os << ')';
    }
    os << '}';
}

}  // namespace

std::string describe(const DegreeCheck& c)
{
    std::ostringstream os;
    os << "degree " << c.degree << ": " << (c.ok() ? "match" : "MISMATCH");
    if (!c.ok()) {
        os << "\n  bars  fast ";
        print_bars(os, c.fast_bars);
        os << " oracle ";
        print_bars(os, c.oracle_bars);
        os << "\n  image fast ";
        print_bars(os, c.fast_image);
        os << " oracle ";
        print_bars(os, c.oracle_image);
        if (!c.ordered) os << "\n  triple ordering violated";
    }
    return os.str();
}

}  // namespace mixup::verify
