#include "mixup/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "mixup/exact_sum.hpp"
#include "mixup/subsample.hpp"

namespace mixup {

MixupBarcode MixupBarcode::compute(const FilteredPair& fp, int k, std::optional<double> clamp)
{
    if (k < 0) throw std::out_of_range("negative degree");
    MixupBarcode bc;
    bc.degree = k;
    bc.clamp = clamp;
    if (k > fp.max_dim()) return bc;
    bc.index_triples = mixup_barcode_indices(fp, k);
    bc.triples = to_value_barcode(bc.index_triples, fp);
    return bc;
}

ValueTriple clamped(const ValueTriple& t, std::optional<double> clamp)
{
    ValueTriple c = t;
    if (clamp) {
        c.birth = std::min(c.birth, *clamp);
        c.image_death = std::min(c.image_death, *clamp);
        c.death = std::min(c.death, *clamp);
    }
    if (std::isinf(c.death) || std::isinf(c.image_death))
        throw std::domain_error("infinite death; set a clamp value");
    c.zero_length = c.birth == c.death;
    return c;
}

double mixup(const ValueTriple& t, std::optional<double> clamp)
{
    const auto c = clamped(t, clamp);
    return c.death - c.image_death;
}

double mixup_percentage(const ValueTriple& t, std::optional<double> clamp)
{
    const auto c = clamped(t, clamp);
    if (!(c.death > c.birth)) throw std::domain_error("mixup percentage of a zero-persistence bar");
    return (c.death - c.image_death) / (c.death - c.birth);
}

double total_mixup(const MixupBarcode& bc)
{
    ExactSum s;
    for (const auto& t : bc.triples) {
        const auto c = clamped(t, bc.clamp);
        s.add(c.death);
        s.add(-c.image_death);
    }
    return s.value();
}

double total_persistence(const MixupBarcode& bc)
{
    ExactSum s;
    for (const auto& t : bc.triples) {
        const auto c = clamped(t, bc.clamp);
        s.add(c.death);
        s.add(-c.birth);
    }
    return s.value();
}

double total_image_persistence(const MixupBarcode& bc)
{
    ExactSum s;
    for (const auto& t : bc.triples) {
        const auto c = clamped(t, bc.clamp);
        s.add(c.image_death);
        s.add(-c.birth);
    }
    return s.value();
}

namespace {

std::vector<double> percentages(const MixupBarcode& bc)
{
    std::vector<double> out;
    for (const auto& t : bc.triples) {
        const auto c = clamped(t, bc.clamp);
        if (c.death > c.birth) out.push_back(mixup_percentage(c));
    }
    return out;
}

}  // namespace

double total_mixup_percentage(const MixupBarcode& bc)
{
    return exact_sum(percentages(bc));
}

double mean_mixup_percentage(const MixupBarcode& bc)
{
    const auto p = percentages(bc);
    if (p.empty()) return 0.0;
    return exact_sum(p) / static_cast<double>(p.size());
}

MixupBarcode point_cloud_barcode(const PointCloud& cloud, std::span<const std::size_t> a,
                                 std::span<const std::size_t> b, int k, double r_max, std::optional<double> clamp)
{
    std::vector<std::size_t> all(a.begin(), a.end());
    all.insert(all.end(), b.begin(), b.end());
    const auto dm = serial::distance_matrix(cloud.select(all));
    const auto fp = serial::build_rips_pair(dm, a.size(), r_max, k);
    return MixupBarcode::compute(fp, k, clamp.value_or(r_max));
}

namespace {

double aggregate(const MixupBarcode& bc, ProfileAggregate how)
{
    return how == ProfileAggregate::total ? total_mixup_percentage(bc) : mean_mixup_percentage(bc);
}

struct PairTask {
    std::size_t i, j;
};

struct PairwisePlan {
    std::vector<int> labels;
    std::vector<std::vector<std::size_t>> a_sets, b_sets;
    std::vector<PairTask> tasks;
};

PairwisePlan plan_pairwise(const LabeledPointCloud& x, int k, const AnalysisConfig& config)
{
    x.validate();
    if (k < 0) throw input_error("degree must be >= 0");
    PairwisePlan plan;
    plan.labels = x.label_set();
    if (plan.labels.size() < 2) throw input_error("pairwise matrix needs at least two labels");
    const bool subsample = k > 0 || config.subsample_degree0;
    for (int label : plan.labels) {
        plan.a_sets.push_back(label_medoids(x, label, subsample ? config.subsample_a : std::nullopt, config.seed));
        plan.b_sets.push_back(label_medoids(x, label, subsample ? config.subsample_b : std::nullopt, config.seed));
    }
    for (std::size_t i = 0; i < plan.labels.size(); ++i)
        for (std::size_t j = 0; j < plan.labels.size(); ++j)
            if (i != j) plan.tasks.push_back({i, j});
    return plan;
}

template <bool Parallel>
PairwiseMatrix pairwise_impl(const LabeledPointCloud& x, int k, const AnalysisConfig& config)
{
    const auto plan = plan_pairwise(x, k, config);
    const auto m = plan.labels.size();
    PairwiseMatrix out{plan.labels, Matrix(m, std::vector<double>(m, 0.0))};
    auto run = [&](const PairTask& t) {
        const auto bc = point_cloud_barcode(x.cloud, plan.a_sets[t.i], plan.b_sets[t.j], k, config.r_max,
                                            config.effective_clamp());
        out.values[t.i][t.j] = mean_mixup_percentage(bc);
    };
    if constexpr (Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (std::ptrdiff_t q = 0; q < static_cast<std::ptrdiff_t>(plan.tasks.size()); ++q)
            run(plan.tasks[static_cast<std::size_t>(q)]);
    } else {
        for (const auto& t : plan.tasks) run(t);
    }
    return out;
}

struct ProfilePlan {
    std::vector<int> layers, steps;
    std::vector<std::vector<const LabeledPointCloud*>> grid;  // [layer][step]
    std::vector<LabelSubsample> subsets;
};

ProfilePlan plan_profile(std::span<const SeriesEntry> series, int k, const AnalysisConfig& config)
{
    if (series.empty()) throw input_error("empty series");
    if (k < 0) throw input_error("degree must be >= 0");
    ProfilePlan plan;
    std::map<std::pair<int, int>, const LabeledPointCloud*> cells;
    for (const auto& e : series) {
        if (e.cloud.cloud.empty()) throw input_error("empty point cloud in series");
        if (!cells.emplace(std::make_pair(e.layer, e.step), &e.cloud).second)
            throw input_error("duplicate (layer, step) in series");
        plan.layers.push_back(e.layer);
        plan.steps.push_back(e.step);
    }
    for (auto* v : {&plan.layers, &plan.steps}) {
        std::sort(v->begin(), v->end());
        v->erase(std::unique(v->begin(), v->end()), v->end());
    }
    for (int layer : plan.layers) {
        plan.grid.emplace_back();
        for (int step : plan.steps) {
            auto it = cells.find({layer, step});
            if (it == cells.end())
                throw input_error("series is missing layer " + std::to_string(layer) + " step " + std::to_string(step));
            plan.grid.back().push_back(it->second);
        }
    }

    std::vector<LabeledPointCloud> clouds;
    clouds.reserve(series.size());
    for (const auto& e : series) clouds.push_back(e.cloud);
    const bool subsample = k > 0 || config.subsample_degree0;
    plan.subsets = consistent_subsample(clouds, subsample ? config.subsample_a : std::nullopt,
                                        subsample ? config.subsample_b : std::nullopt, config.seed);
    return plan;
}

template <bool Parallel>
MixupProfile profile_impl(std::span<const SeriesEntry> series, int k, const AnalysisConfig& config)
{
    const auto plan = plan_profile(series, k, config);
    const auto n_layers = plan.layers.size();
    const auto n_steps = plan.steps.size();
    const auto n_labels = plan.subsets.size();
    // one score per (layer, step, label)
    std::vector<double> scores(n_layers * n_steps * n_labels, 0.0);
    auto run = [&](std::size_t q) {
        const auto label = q % n_labels;
        const auto step = (q / n_labels) % n_steps;
        const auto layer = q / (n_labels * n_steps);
        const auto& s = plan.subsets[label];
        if (s.b_indices.empty()) return;
        const auto bc = point_cloud_barcode(plan.grid[layer][step]->cloud, s.a_indices, s.b_indices, k,
                                            config.r_max, config.effective_clamp());
        scores[q] = aggregate(bc, config.aggregate);
    };
    if constexpr (Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (std::ptrdiff_t q = 0; q < static_cast<std::ptrdiff_t>(scores.size()); ++q)
            run(static_cast<std::size_t>(q));
    } else {
        for (std::size_t q = 0; q < scores.size(); ++q) run(q);
    }

    MixupProfile out{plan.layers, plan.steps, Matrix(n_layers, std::vector<double>(n_steps, 0.0))};
    for (std::size_t layer = 0; layer < n_layers; ++layer)
        for (std::size_t step = 0; step < n_steps; ++step) {
            const auto* first = scores.data() + (layer * n_steps + step) * n_labels;
            out.values[layer][step] = n_labels == 0 ? 0.0 : *std::max_element(first, first + n_labels);
        }
    return out;
}

}  // namespace

PairwiseMatrix pairwise_matrix(const LabeledPointCloud& x, int k, const AnalysisConfig& config)
{
    return pairwise_impl<true>(x, k, config);
}

MixupProfile mixup_profile(std::span<const SeriesEntry> series, int k, const AnalysisConfig& config)
{
    return profile_impl<true>(series, k, config);
}

namespace serial {

PairwiseMatrix pairwise_matrix(const LabeledPointCloud& x, int k, const AnalysisConfig& config)
{
    return pairwise_impl<false>(x, k, config);
}

MixupProfile mixup_profile(std::span<const SeriesEntry> series, int k, const AnalysisConfig& config)
{
    return profile_impl<false>(series, k, config);
}

}  // namespace serial

}  // namespace mixup
