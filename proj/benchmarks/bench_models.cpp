#include <benchmark/benchmark.h>

#include "randlink/deep.hpp"
#include "randlink/ensemble.hpp"
#include "randlink/linalg.hpp"
#include "randlink/rng.hpp"
#include "randlink/sparse_pretrain.hpp"

namespace {

using namespace randlink;

DenseMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
    Rng rng(seed);
    DenseMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = uniform_in(rng, -1.0, 1.0);
    return m;
}

Dataset random_dataset(int samples, int features, int classes, std::uint64_t seed) {
    Dataset ds;
    ds.features = random_matrix(samples, features, seed);
    ds.labels.resize(static_cast<size_t>(samples));
    for (int t = 0; t < samples; ++t) ds.labels[static_cast<size_t>(t)] = t % classes;
    ds.class_count = classes;
    ds.name = "bench";
    for (int c = 0; c < classes; ++c) ds.class_names.push_back(std::to_string(c));
    return ds;
}

void BM_RidgePrimal(benchmark::State& state) {
    auto n = static_cast<Eigen::Index>(state.range(0));
    DenseMatrix D = random_matrix(2 * n, n, 1);
    DenseMatrix Y = random_matrix(2 * n, 4, 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(ridge_solve(D, Y, 0.5, RidgeMode::Primal));
}
BENCHMARK(BM_RidgePrimal)->Arg(64)->Arg(256)->Arg(512);

void BM_RidgeDual(benchmark::State& state) {
    auto n = static_cast<Eigen::Index>(state.range(0));
    DenseMatrix D = random_matrix(n / 2, n, 1);
    DenseMatrix Y = random_matrix(n / 2, 4, 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(ridge_solve(D, Y, 0.5, RidgeMode::Dual));
}
BENCHMARK(BM_RidgeDual)->Arg(64)->Arg(256)->Arg(512);

void BM_Fista(benchmark::State& state) {
    DenseMatrix A = random_matrix(100, static_cast<Eigen::Index>(state.range(0)), 3);
    DenseMatrix B = random_matrix(100, 20, 4);
    FistaConfig cfg;
    cfg.max_iterations = 200;
    for (auto _ : state)
        benchmark::DoNotOptimize(fista_l1(A, B, cfg));
}
BENCHMARK(BM_Fista)->Arg(32)->Arg(128);

void BM_TrainRvfl(benchmark::State& state) {
    Dataset ds = random_dataset(500, 20, 3, 5);
    NetworkConfig cfg;
    cfg.hidden_nodes = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(train_rvfl(ds, cfg));
}
BENCHMARK(BM_TrainRvfl)->Arg(100)->Arg(400);

void BM_TrainDrvfl(benchmark::State& state) {
    Dataset ds = random_dataset(500, 20, 3, 6);
    NetworkConfig cfg;
    cfg.layers = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(train_drvfl(ds, cfg));
}
BENCHMARK(BM_TrainDrvfl)->Arg(1)->Arg(5)->Arg(10);

void BM_TrainEdrvfl(benchmark::State& state) {
    Dataset ds = random_dataset(500, 20, 3, 7);
    NetworkConfig cfg;
    cfg.layers = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(train_edrvfl(ds, cfg));
}
BENCHMARK(BM_TrainEdrvfl)->Arg(1)->Arg(5)->Arg(10);

void BM_PredictEdrvfl(benchmark::State& state) {
    Dataset ds = random_dataset(500, 20, 3, 8);
    NetworkConfig cfg;
    cfg.layers = 8;
    EnsembleDeepModel model = train_edrvfl(ds, cfg);
    DenseMatrix X = random_matrix(1000, 20, 9);
    for (auto _ : state)
        benchmark::DoNotOptimize(ensemble_predict(model, X));
}
BENCHMARK(BM_PredictEdrvfl);

} // namespace

BENCHMARK_MAIN();
