#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <vector>

#include <doctest.h>

#include "randlink/errors.hpp"
#include "randlink/eval.hpp"
#include "matrixeq.hpp"
#include "synthetic.hpp"

using namespace randlink;

namespace {

MethodSpec rvfl_spec(int nodes, double lambda, std::uint64_t seed = 0) {
    MethodSpec spec;
    spec.method = MethodId::Rvfl;
    spec.network.hidden_nodes = nodes;
    spec.network.lambda = lambda;
    spec.network.seed = seed;
    return spec;
}

struct EnvGuard {
    std::string name;
    std::string saved;
    bool had = false;

    explicit EnvGuard(const char* var) : name(var) {
        const char* v = std::getenv(var);
        if (v) {
            had = true;
            saved = v;
        }
    }
    ~EnvGuard() {
        if (had)
            setenv(name.c_str(), saved.c_str(), 1);
        else
            unsetenv(name.c_str());
    }
};

double median_train_seconds(const MethodSpec& spec, const Dataset& ds, int runs) {
    std::vector<double> times;
    for (int i = 0; i < runs; ++i) times.push_back(time_method(spec, ds).first);
    std::sort(times.begin(), times.end());
    return times[static_cast<size_t>(runs / 2)];
}

} // namespace

TEST_CASE("cross_validate is deterministic apart from wall-clock fields") {
    Dataset ds = synthetic::make_blobs(50, 4, 3, 301, 2.5);
    MethodSpec spec = rvfl_spec(20, 0.5);

    EvalReport a = cross_validate(spec, ds, 5, 42);
    EvalReport b = cross_validate(spec, ds, 5, 42);
    CHECK(a.fold_accuracies == b.fold_accuracies);
    CHECK(a.mean_accuracy == b.mean_accuracy);
    CHECK(a.std_accuracy == b.std_accuracy);
    CHECK(a.method == "rvfl");
    CHECK(a.dataset == ds.name);
    CHECK(a.k == 5);
    CHECK(a.seed == 42);
    CHECK(a.chosen_config.hidden_nodes == 20);
    CHECK(a.train_seconds >= 0.0);
    CHECK(a.test_seconds >= 0.0);

    // A different evaluation seed reshuffles the fold assignment.
    std::vector<std::vector<int>> tests42(5), tests43(5);
    cross_validate(spec, ds, 5, 42, [&](const FoldInfo& info) {
        tests42[static_cast<size_t>(info.fold)] = info.test_rows;
    });
    cross_validate(spec, ds, 5, 43, [&](const FoldInfo& info) {
        tests43[static_cast<size_t>(info.fold)] = info.test_rows;
    });
    CHECK(tests42 != tests43);
}

TEST_CASE("fold summary matches an independent mean and population std") {
    Dataset ds = synthetic::make_blobs(40, 3, 2, 310, 2.5);
    MethodSpec spec = rvfl_spec(10, 2.0);
    EvalReport rep = cross_validate(spec, ds, 8, 7);
    REQUIRE(rep.fold_accuracies.size() == 8);

    double mean = 0.0;
    for (size_t i = rep.fold_accuracies.size(); i > 0; --i) mean += rep.fold_accuracies[i - 1];
    mean /= 8.0;
    double var = 0.0;
    for (size_t i = rep.fold_accuracies.size(); i > 0; --i) {
        double d = rep.fold_accuracies[i - 1] - mean;
        var += d * d;
    }
    var /= 8.0;
    CHECK(rep.mean_accuracy == doctest::Approx(mean).epsilon(1e-12));
    CHECK(rep.std_accuracy == doctest::Approx(std::sqrt(var)).epsilon(1e-12));
}

TEST_CASE("normalization is fit on the training split only") {
    Dataset ds = synthetic::make_blobs(30, 3, 2, 320);
    MethodSpec spec = rvfl_spec(8, 1.0);
    const int k = 3;
    const int probe_fold = 1;

    std::vector<NormalizationParams> norms(k);
    std::vector<std::vector<int>> train_rows(k), test_rows(k);
    FoldObserver capture = [&](const FoldInfo& info) {
        norms[static_cast<size_t>(info.fold)] = info.norm;
        train_rows[static_cast<size_t>(info.fold)] = info.train_rows;
        test_rows[static_cast<size_t>(info.fold)] = info.test_rows;
    };
    cross_validate(spec, ds, k, 99, capture);

    for (int f = 0; f < k; ++f) {
        std::vector<int> both = train_rows[static_cast<size_t>(f)];
        both.insert(both.end(), test_rows[static_cast<size_t>(f)].begin(),
                    test_rows[static_cast<size_t>(f)].end());
        std::sort(both.begin(), both.end());
        REQUIRE(both.size() == 30);
        for (int i = 0; i < 30; ++i) CHECK(both[static_cast<size_t>(i)] == i);
    }

    // Blowing up the probe fold's held-out rows must not move that fold's
    // fitted normalization; every other fold trains on those rows.
    Dataset scaled = ds;
    for (int r : test_rows[probe_fold])
        scaled.features.row(r) *= 1000.0;

    std::vector<NormalizationParams> norms2(k);
    FoldObserver capture2 = [&](const FoldInfo& info) {
        norms2[static_cast<size_t>(info.fold)] = info.norm;
    };
    cross_validate(spec, scaled, k, 99, capture2);

    CHECK(testutil::bits_equal(Vector(norms[probe_fold].offset),
                               Vector(norms2[probe_fold].offset)));
    CHECK(testutil::bits_equal(Vector(norms[probe_fold].scale),
                               Vector(norms2[probe_fold].scale)));
    int other = (probe_fold + 1) % k;
    CHECK_FALSE(testutil::bits_equal(Vector(norms[static_cast<size_t>(other)].scale),
                                     Vector(norms2[static_cast<size_t>(other)].scale)));
}

TEST_CASE("an easily separable toy scores a perfect cross validation") {
    Dataset ds = synthetic::make_separable_toy(11);
    MethodSpec spec = rvfl_spec(50, 1.0 / 64.0);
    EvalReport rep = cross_validate(spec, ds, 5, 0);
    CHECK(rep.mean_accuracy == 1.0);
    CHECK(rep.std_accuracy == 0.0);
}

TEST_CASE("a singleton grid reproduces a plain cross validation bitwise") {
    Dataset ds = synthetic::make_blobs(36, 3, 2, 330);
    MethodSpec spec = rvfl_spec(12, 1.0);

    GridSpec grid;
    grid.c_exponents = {4};
    grid.layer_values = {1};
    grid.node_values = {12};
    GridResult result = grid_search(spec, ds, grid, 4, 21);

    MethodSpec direct = spec;
    direct.network.lambda = std::exp2(-4.0);
    EvalReport plain = cross_validate(direct, ds, 4, 21);

    REQUIRE(result.cells.size() == 1);
    CHECK(result.best.c_exponent == 4);
    CHECK(result.best.report.fold_accuracies == plain.fold_accuracies);
    CHECK(result.best.report.mean_accuracy == plain.mean_accuracy);
    CHECK(result.best.report.chosen_config.lambda == plain.chosen_config.lambda);
}

TEST_CASE("grid search enumerates cells canonically and picks the first best") {
    Dataset ds = synthetic::make_blobs(30, 3, 2, 340, 2.5);
    MethodSpec spec;
    spec.method = MethodId::Drvfl;
    spec.network.hidden_nodes = 6;

    GridSpec grid;
    grid.c_exponents = {-2, 0};
    grid.layer_values = {1, 2, 3};
    grid.node_values = {4, 6};
    GridResult result = grid_search(spec, ds, grid, 3, 5);
    REQUIRE(result.cells.size() == 12);
    CHECK(result.cells[0].c_exponent == -2);
    CHECK(result.cells[0].layers == 1);
    CHECK(result.cells[0].hidden_nodes == 4);
    CHECK(result.cells[1].hidden_nodes == 6);
    CHECK(result.cells[2].layers == 2);
    CHECK(result.cells[6].c_exponent == 0);

    size_t best = 0;
    for (size_t i = 1; i < result.cells.size(); ++i)
        if (result.cells[i].report.mean_accuracy > result.cells[best].report.mean_accuracy)
            best = i;
    CHECK(result.best.c_exponent == result.cells[best].c_exponent);
    CHECK(result.best.layers == result.cells[best].layers);
    CHECK(result.best.hidden_nodes == result.cells[best].hidden_nodes);
    CHECK(result.best.report.mean_accuracy == result.cells[best].report.mean_accuracy);

    for (const GridCell& cell : result.cells) {
        double lambda = std::exp2(static_cast<double>(-cell.c_exponent));
        CHECK(cell.report.chosen_config.lambda == doctest::Approx(lambda).epsilon(1e-15));
        CHECK(cell.report.chosen_config.layers == cell.layers);
    }
}

TEST_CASE("saturated grids break ties toward the first canonical cell") {
    Dataset ds = synthetic::make_separable_toy(11);
    MethodSpec spec = rvfl_spec(40, 1.0);
    GridSpec grid;
    grid.c_exponents = {-2, 0, 2};
    grid.layer_values = {1, 2};
    grid.node_values = {40};

    GridResult result = grid_search(spec, ds, grid, 4, 3);
    // Shallow methods collapse the layer axis.
    REQUIRE(result.cells.size() == 3);
    bool all_perfect = true;
    for (const GridCell& cell : result.cells)
        all_perfect = all_perfect && cell.report.mean_accuracy == 1.0;
    REQUIRE(all_perfect);
    CHECK(result.best.c_exponent == -2);
    CHECK(result.best.layers == 1);
}

TEST_CASE("the default grid spans one hundred cells for deep methods") {
    Dataset ds = synthetic::make_blobs(16, 3, 2, 350);
    MethodSpec spec;
    spec.method = MethodId::Edrvfl;
    spec.network.hidden_nodes = 8;

    GridSpec grid;
    grid.node_values = {8};
    CHECK(grid.c_exponents.size() == 10);
    CHECK(grid.layer_values.size() == 10);

    GridResult result = grid_search(spec, ds, grid, 2, 1);
    CHECK(result.cells.size() == 100);
}

TEST_CASE("nested grid search chooses a cell per outer fold") {
    Dataset ds = synthetic::make_blobs(40, 3, 2, 360, 2.0);
    MethodSpec spec = rvfl_spec(10, 1.0);
    GridSpec grid;
    grid.c_exponents = {-2, 2};
    grid.node_values = {10};

    NestedGridResult nested = nested_grid_search(spec, ds, grid, 3, 17);
    CHECK(nested.fold_choices.size() == 3);
    CHECK(nested.report.fold_accuracies.size() == 3);
    CHECK(nested.report.k == 3);
    for (const GridCell& choice : nested.fold_choices) {
        bool known = choice.c_exponent == -2 || choice.c_exponent == 2;
        CHECK(known);
        CHECK(choice.layers == 1);
    }

    NestedGridResult again = nested_grid_search(spec, ds, grid, 3, 17);
    CHECK(nested.report.fold_accuracies == again.report.fold_accuracies);
}

TEST_CASE("grid validation rejects empty or non-positive axes") {
    Dataset ds = synthetic::make_blobs(20, 3, 2, 370);
    MethodSpec spec = rvfl_spec(5, 1.0);
    GridSpec grid;
    grid.c_exponents = {};
    CHECK_THROWS_AS(grid_search(spec, ds, grid, 2, 0), usage_error);
    grid = GridSpec{};
    grid.layer_values = {0};
    CHECK_THROWS_AS(grid_search(spec, ds, grid, 2, 0), usage_error);
    grid = GridSpec{};
    grid.node_values = {-3};
    CHECK_THROWS_AS(grid_search(spec, ds, grid, 2, 0), usage_error);

    CHECK_THROWS_AS(cross_validate(spec, ds, 25, 0), usage_error);
}

TEST_CASE("time_method reports non-negative train and test seconds") {
    Dataset ds = synthetic::make_blobs(30, 3, 2, 380);
    auto [train_s, test_s] = time_method(rvfl_spec(10, 1.0), ds);
    CHECK(train_s >= 0.0);
    CHECK(test_s >= 0.0);
    CHECK(std::isfinite(train_s));
    CHECK(std::isfinite(test_s));
}

TEST_CASE("training time grows with depth") {
    Dataset ds = synthetic::make_blobs(300, 8, 2, 390);
    MethodSpec spec;
    spec.method = MethodId::Drvfl;
    spec.network.hidden_nodes = 120;

    spec.network.layers = 1;
    double m1 = median_train_seconds(spec, ds, 5);
    spec.network.layers = 5;
    double m5 = median_train_seconds(spec, ds, 5);
    spec.network.layers = 10;
    double m10 = median_train_seconds(spec, ds, 5);

    CHECK(m1 < m5);
    CHECK(m5 < m10);
}

TEST_CASE("the thread budget does not change evaluation results") {
    EnvGuard guard("RANDLINK_THREADS");
    Dataset ds = synthetic::make_blobs(40, 3, 3, 400);
    MethodSpec spec = rvfl_spec(15, 0.5);

    setenv("RANDLINK_THREADS", "1", 1);
    EvalReport serial = cross_validate(spec, ds, 5, 8);
    setenv("RANDLINK_THREADS", "4", 1);
    EvalReport parallel = cross_validate(spec, ds, 5, 8);

    CHECK(serial.fold_accuracies == parallel.fold_accuracies);
    CHECK(serial.mean_accuracy == parallel.mean_accuracy);
}
