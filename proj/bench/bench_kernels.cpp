#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "nclab/kernels.hpp"
#include "nclab/report.hpp"

using namespace nclab;

namespace {

XiModel figure_model() {
    const PhysicalParams p = params_from_ratio({0.002, RatioMode::single_theta});
    return XiModel::ground_mode(p, make_gauge(p));
}

std::vector<PhasePoint> random_points(std::size_t n) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    std::vector<PhasePoint> pts(n);
    for (auto& pt : pts) pt = {u(rng), u(rng), u(rng), u(rng)};
    return pts;
}

void BM_XiSeries(benchmark::State& state, kernels::Exec exec, XiSource source) {
    const XiModel model = figure_model();
    const auto grid = kernels::linspace(0.0, 1570.0, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(kernels::xi_series(model, source, grid, exec));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ResidualScan(benchmark::State& state, kernels::Exec exec) {
    const PhysicalParams p{1.0, 1.0, 1.0, 0.3, 0.2};
    const DerivedConstants dc = derived_constants(p, make_gauge(p));
    const auto pts = random_points(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(kernels::residual_scan(pts, {2, 1}, dc, p.hbar, exec));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Normalisation(benchmark::State& state, kernels::Exec exec) {
    const PhysicalParams p{1.0, 1.0, 1.0, 0.3, 0.2};
    const DerivedConstants dc = derived_constants(p, make_gauge(p));
    const int nodes = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(kernels::wigner_overlap({1, 0}, nullptr, dc, p.hbar, nodes, exec));
    state.SetItemsProcessed(state.iterations() * nodes * nodes * nodes * nodes);
}

}  // namespace

BENCHMARK_CAPTURE(BM_XiSeries, closed_serial, kernels::Exec::serial, XiSource::closed_form)->Arg(200000);
BENCHMARK_CAPTURE(BM_XiSeries, closed_parallel, kernels::Exec::parallel, XiSource::closed_form)->Arg(200000);
BENCHMARK_CAPTURE(BM_XiSeries, trajectory_serial, kernels::Exec::serial, XiSource::trajectory)->Arg(200000);
BENCHMARK_CAPTURE(BM_XiSeries, trajectory_parallel, kernels::Exec::parallel, XiSource::trajectory)->Arg(200000);
BENCHMARK_CAPTURE(BM_ResidualScan, serial, kernels::Exec::serial)->Arg(2000);
BENCHMARK_CAPTURE(BM_ResidualScan, parallel, kernels::Exec::parallel)->Arg(2000);
BENCHMARK_CAPTURE(BM_Normalisation, serial, kernels::Exec::serial)->Arg(40);
BENCHMARK_CAPTURE(BM_Normalisation, parallel, kernels::Exec::parallel)->Arg(40);

BENCHMARK_MAIN();
