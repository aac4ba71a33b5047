#include "mixup/subsample.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>

#include "mixup/exact_sum.hpp"

namespace mixup {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

// priority[i]: smaller wins ties
std::vector<std::size_t> tie_priority(std::size_t n, std::uint64_t seed)
{
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    if (seed != 0) {
        std::mt19937_64 rng(seed);
        std::shuffle(order.begin(), order.end(), rng);
    }
    std::vector<std::size_t> priority(n);
    for (std::size_t r = 0; r < n; ++r) priority[order[r]] = r;
    return priority;
}

struct NearestCache {
    std::vector<double> d1, d2;
    std::vector<std::size_t> nearest;  // position in the medoid list
};

NearestCache nearest_medoids(const DistanceMatrix& d, const std::vector<std::size_t>& medoids)
{
    const auto n = d.size();
    NearestCache c{std::vector<double>(n, inf), std::vector<double>(n, inf), std::vector<std::size_t>(n, 0)};
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t p = 0; p < medoids.size(); ++p) {
            const double x = d(j, medoids[p]);
            if (x < c.d1[j]) {
                c.d2[j] = c.d1[j];
                c.d1[j] = x;
                c.nearest[j] = p;
            } else if (x < c.d2[j]) {
                c.d2[j] = x;
            }
        }
    return c;
}

// Costs after replacing the medoid at each position p by point h, in one pass over the points:
// every point contributes min(d_h, d1) to a shared sum, and points served by p add a correction
// to p's sum. Both are exact, so each cost is the correctly rounded total.
void swap_costs(const DistanceMatrix& d, const NearestCache& c, std::size_t h, std::vector<ExactSum>& corr,
                double* out)
{
    ExactSum base;
    for (auto& s : corr) s.clear();
    for (std::size_t j = 0; j < d.size(); ++j) {
        const double dh = d(j, h);
        const double keep = std::min(dh, c.d1[j]);
        base.add(keep);
        const double lose = std::min(dh, c.d2[j]);
        if (lose != keep) {
            auto& s = corr[c.nearest[j]];
            s.add(lose);
            s.add(-keep);
        }
    }
    for (std::size_t p = 0; p < corr.size(); ++p) {
        ExactSum total = base;
        total.add(corr[p]);
        out[p] = total.value();
    }
}

std::vector<std::size_t> build_phase(const DistanceMatrix& d, std::size_t k, const std::vector<std::size_t>& priority)
{
    const auto n = d.size();
    std::vector<double> dn(n, inf);
    std::vector<bool> chosen(n, false);
    std::vector<std::size_t> medoids;
    for (std::size_t step = 0; step < k; ++step) {
        std::size_t best = n;
        double best_cost = inf;
        for (std::size_t c = 0; c < n; ++c) {
            if (chosen[c]) continue;
            double cost = 0.0;
            for (std::size_t j = 0; j < n; ++j) cost += std::min(dn[j], d(c, j));
            if (best == n || cost < best_cost || (cost == best_cost && priority[c] < priority[best])) {
                best = c;
                best_cost = cost;
            }
        }
        chosen[best] = true;
        medoids.push_back(best);
        for (std::size_t j = 0; j < n; ++j) dn[j] = std::min(dn[j], d(best, j));
    }
    return medoids;
}

template <bool Parallel>
MedoidSelection swap_phase(const DistanceMatrix& d, std::vector<std::size_t> medoids,
                           const std::vector<std::size_t>& priority)
{
    const auto n = d.size();
    const auto k = medoids.size();
    auto by_rank = [&](auto a, auto b) { return priority[a] < priority[b]; };
    std::sort(medoids.begin(), medoids.end(), by_rank);

    std::vector<bool> is_medoid(n, false);
    for (auto m : medoids) is_medoid[m] = true;

    auto cache = nearest_medoids(d, medoids);
    double cost = exact_sum(cache.d1);

    // candidate h in priority order, medoid positions in priority order
    std::vector<std::size_t> by_priority(n);
    for (std::size_t i = 0; i < n; ++i) by_priority[priority[i]] = i;

    constexpr std::size_t max_iterations = 10000;
    std::vector<double> costs;
    for (std::size_t iter = 0; iter < max_iterations; ++iter) {
        std::vector<std::size_t> candidates;
        for (auto h : by_priority)
            if (!is_medoid[h]) candidates.push_back(h);
        const auto n_pairs = candidates.size() * k;
        costs.assign(n_pairs, inf);
        if constexpr (Parallel) {
#pragma omp parallel
            {
                std::vector<ExactSum> corr(k);
#pragma omp for schedule(static)
                for (std::ptrdiff_t q = 0; q < static_cast<std::ptrdiff_t>(candidates.size()); ++q) {
                    const auto uq = static_cast<std::size_t>(q);
                    swap_costs(d, cache, candidates[uq], corr, costs.data() + uq * k);
                }
            }
        } else {
            std::vector<ExactSum> corr(k);
            for (std::size_t q = 0; q < candidates.size(); ++q)
                swap_costs(d, cache, candidates[q], corr, costs.data() + q * k);
        }
        const auto best = static_cast<std::size_t>(std::min_element(costs.begin(), costs.end()) - costs.begin());
        if (!(costs[best] < cost)) break;

        const auto p = best % k;
        const auto h = candidates[best / k];
        is_medoid[medoids[p]] = false;
        is_medoid[h] = true;
        medoids[p] = h;
        std::sort(medoids.begin(), medoids.end(), by_rank);
        cache = nearest_medoids(d, medoids);
        cost = exact_sum(cache.d1);
    }

    MedoidSelection out{std::move(medoids), cost};
    std::sort(out.indices.begin(), out.indices.end());
    return out;
}

template <bool Parallel>
MedoidSelection pam(const DistanceMatrix& d, std::size_t k, std::uint64_t seed, std::size_t restarts)
{
    const auto n = d.size();
    if (n == 0) throw input_error("cannot pick medoids of an empty point cloud");
    if (k == 0) throw input_error("number of medoids must be >= 1");
    if (k >= n) {
        MedoidSelection all;
        all.indices.resize(n);
        std::iota(all.indices.begin(), all.indices.end(), std::size_t{0});
        return all;
    }

    const auto priority = tie_priority(n, seed);
    auto best = swap_phase<Parallel>(d, build_phase(d, k, priority), priority);

    // extra SWAP runs from seeded random medoid sets; a restart must be strictly cheaper to win
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::vector<std::size_t> pool(n);
    for (std::size_t r = 0; r < restarts; ++r) {
        std::iota(pool.begin(), pool.end(), std::size_t{0});
        for (std::size_t i = 0; i < k; ++i) {
            const auto j = std::uniform_int_distribution<std::size_t>(i, n - 1)(rng);
            std::swap(pool[i], pool[j]);
        }
        auto trial = swap_phase<Parallel>(d, {pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k)}, priority);
        if (trial.cost < best.cost) best = std::move(trial);
    }
    return best;
}

}  // namespace

double medoid_cost(const DistanceMatrix& d, std::span<const std::size_t> medoids)
{
    ExactSum s;
    for (std::size_t j = 0; j < d.size(); ++j) {
        double best = inf;
        for (auto m : medoids) best = std::min(best, d(j, m));
        s.add(best);
    }
    return s.value();
}

MedoidSelection k_medoids(const DistanceMatrix& d, std::size_t k, std::uint64_t seed, std::size_t restarts)
{
    return pam<true>(d, k, seed, restarts);
}

MedoidSelection k_medoids(const PointCloud& cloud, std::size_t k, std::uint64_t seed, std::size_t restarts)
{
    if (cloud.empty()) throw input_error("cannot pick medoids of an empty point cloud");
    return k_medoids(distance_matrix(cloud), k, seed, restarts);
}

namespace serial {

MedoidSelection k_medoids(const DistanceMatrix& d, std::size_t k, std::uint64_t seed, std::size_t restarts)
{
    return pam<false>(d, k, seed, restarts);
}

}  // namespace serial

namespace {

std::vector<std::size_t> medoids_of_subset(const PointCloud& cloud, const std::vector<std::size_t>& subset,
                                           std::optional<std::size_t> k, std::uint64_t seed)
{
    if (!k || *k >= subset.size()) return subset;
    const auto sel = k_medoids(distance_matrix(cloud.select(subset)), *k, seed);
    std::vector<std::size_t> out;
    out.reserve(sel.indices.size());
    for (auto i : sel.indices) out.push_back(subset[i]);
    return out;
}

}  // namespace

std::vector<std::size_t> label_medoids(const LabeledPointCloud& x, int label, std::optional<std::size_t> k,
                                       std::uint64_t seed)
{
    x.validate();
    const auto subset = x.indices_of(label);
    if (subset.empty()) throw input_error("label " + std::to_string(label) + " has no points");
    return medoids_of_subset(x.cloud, subset, k, seed);
}

std::vector<LabelSubsample> consistent_subsample(std::span<const LabeledPointCloud> series,
                                                 std::optional<std::size_t> k_a, std::optional<std::size_t> k_b,
                                                 std::uint64_t seed, std::size_t reference)
{
    if (series.empty()) throw input_error("empty series");
    if (reference >= series.size()) throw input_error("reference index outside the series");
    for (const auto& x : series) {
        x.validate();
        if (x.labels != series[reference].labels)
            throw input_error("series clouds must list the same examples with the same labels");
    }
    const auto& ref = series[reference];
    std::vector<LabelSubsample> out;
    for (int label : ref.label_set()) {
        LabelSubsample s{label, {}, {}};
        s.a_indices = medoids_of_subset(ref.cloud, ref.indices_of(label), k_a, seed);
        const auto rest = ref.indices_except(label);
        if (!rest.empty()) s.b_indices = medoids_of_subset(ref.cloud, rest, k_b, seed);
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace mixup
