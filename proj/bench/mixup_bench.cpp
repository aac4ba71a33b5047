// Serial reference vs OpenMP kernels on synthetic data.
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "mixup/complex.hpp"
#include "mixup/reduce.hpp"
#include "mixup/stats.hpp"
#include "mixup/subsample.hpp"

using namespace mixup;

namespace {

double time_best(const std::function<void()>& f, int reps)
{
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

void row(const std::string& name, const std::function<void()>& serial, const std::function<void()>& parallel,
         int reps)
{
    const double s = time_best(serial, reps);
    const double p = time_best(parallel, reps);
    std::printf("%-28s %10.4f %10.4f %8.2fx\n", name.c_str(), s, p, p > 0 ? s / p : 0.0);
}

PointCloud gaussian(std::mt19937_64& rng, std::size_t n, std::size_t d)
{
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<double> xs(n * d);
    for (auto& x : xs) x = g(rng);
    return PointCloud(d, std::move(xs));
}

}  // namespace

int main(int argc, char** argv)
{
    const int reps = argc > 1 ? std::stoi(argv[1]) : 3;
    std::printf("threads: %d\n", omp_get_max_threads());
    std::printf("%-28s %10s %10s %9s\n", "kernel", "serial s", "omp s", "speedup");

    std::mt19937_64 rng(7);
    const auto a = gaussian(rng, 500, 10);
    const auto b = gaussian(rng, 100, 10);
    const auto all = PointCloud::concat(a, b);
    const auto d = distance_matrix(all);

    row("distance matrix 600x10", [&] { serial::distance_matrix(all); }, [&] { distance_matrix(all); }, reps);
    row("rips pair r=3.0 k=1", [&] { serial::build_rips_pair(d, 500, 3.0, 1); },
        [&] { build_rips_pair(d, 500, 3.0, 1); }, reps);

    const auto fp = build_rips_pair(d, 500, 3.0, 1);
    row("BL+BK reduction degree 1",
        [&] {
            auto rows = image_row_order(fp);
            SparseBoundaryMatrix bl(rows), bk(rows);
            for (CellId id = 1; id <= fp.size(); ++id) {
                if (fp.dim(id) < 1) continue;
                bk.add_column(id, fp.boundary(id));
                if (fp.in_L(id)) bl.add_column(id, fp.boundary(id));
            }
            reduce_in_place(bl);
            reduce_in_place(bk);
        },
        [&] { reduce_mixup_matrices(fp, 1); }, reps);

    const auto dm = distance_matrix(gaussian(rng, 400, 5));
    row("k-medoids n=400 k=20", [&] { serial::k_medoids(dm, 20, 0); }, [&] { k_medoids(dm, 20, 0); }, 1);

    LabeledPointCloud x;
    x.cloud = gaussian(rng, 160, 4);
    for (std::size_t i = 0; i < 160; ++i) x.labels.push_back(static_cast<int>(i % 4));
    AnalysisConfig config;
    config.r_max = 2.0;
    row("pairwise 4 labels degree 1", [&] { serial::pairwise_matrix(x, 1, config); },
        [&] { pairwise_matrix(x, 1, config); }, reps);

    std::vector<SeriesEntry> series;
    for (int layer = 0; layer < 2; ++layer)
        for (int step = 0; step < 3; ++step) {
            auto y = x;
            y.cloud = gaussian(rng, 160, 4);
            series.push_back({layer, step, y});
        }
    row("profile 2x3 degree 0", [&] { serial::mixup_profile(series, 0, config); },
        [&] { mixup_profile(series, 0, config); }, reps);
    return 0;
}
