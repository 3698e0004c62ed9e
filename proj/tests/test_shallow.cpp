#include <cmath>
#include <vector>

#include <doctest.h>

#include "randlink/errors.hpp"
#include "randlink/linalg.hpp"
#include "randlink/shallow.hpp"
#include "matrixeq.hpp"
#include "synthetic.hpp"

using namespace randlink;

namespace {

// The toy must be separable before any claim about model accuracy on it:
// plain ridge on raw features has to classify it perfectly.
bool toy_is_linearly_separable(const Dataset& ds) {
    DenseMatrix beta = ridge_solve(ds.features, one_hot(ds.labels, ds.class_count), 1e-6);
    std::vector<int> labels = argmax_rows(ds.features * beta);
    return accuracy(labels, ds.labels) == 1.0;
}

} // namespace

TEST_CASE("random_layer is deterministic and respects ranges") {
    HiddenLayerParams a = random_layer(6, 40, 9, {-1.0, 1.0}, {0.0, 1.0});
    HiddenLayerParams b = random_layer(6, 40, 9, {-1.0, 1.0}, {0.0, 1.0});
    CHECK(testutil::bits_equal(a.weights, b.weights));
    CHECK(testutil::bits_equal(a.biases, b.biases));

    CHECK(a.weights.minCoeff() >= -1.0);
    CHECK(a.weights.maxCoeff() <= 1.0);
    CHECK(a.biases.minCoeff() >= 0.0);
    CHECK(a.biases.maxCoeff() <= 1.0);

    HiddenLayerParams c = random_layer(6, 40, 10, {-1.0, 1.0}, {0.0, 1.0});
    CHECK_FALSE(testutil::bits_equal(a.weights, c.weights));

    CHECK_THROWS_AS(random_layer(6, 40, 9, {1.0, -1.0}, {0.0, 1.0}), std::invalid_argument);
}

TEST_CASE("random weights hit the range midpoint on average") {
    HiddenLayerParams layer = random_layer(200, 500, 4, {-1.0, 1.0}, {0.0, 1.0});
    double n = static_cast<double>(layer.weights.size());
    double se = 2.0 / std::sqrt(12.0) / std::sqrt(n);
    CHECK(std::abs(layer.weights.mean()) < 3.0 * se);
}

TEST_CASE("random_layer_from consumes weights row-major, then biases") {
    NetworkConfig cfg;
    cfg.hidden_nodes = 3;
    Rng rng(21);
    HiddenLayerParams layer = random_layer_from(rng, 2, 3, cfg);

    Rng replay(21);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 3; ++c)
            CHECK(layer.weights(r, c) == uniform_in(replay, -1.0, 1.0));
    for (int i = 0; i < 3; ++i) CHECK(layer.biases[i] == uniform_in(replay, 0.0, 1.0));
}

TEST_CASE("hidden_output matches a scalar loop") {
    DenseMatrix X(3, 2);
    X << 0.5, -1.0, 2.0, 0.25, -0.75, 1.5;
    HiddenLayerParams layer = random_layer(2, 4, 3, {-1.0, 1.0}, {0.0, 1.0});
    DenseMatrix H = hidden_output(X, layer);

    REQUIRE(H.rows() == 3);
    REQUIRE(H.cols() == 4);
    for (int t = 0; t < 3; ++t)
        for (int j = 0; j < 4; ++j) {
            double pre = layer.biases[j];
            for (int c = 0; c < 2; ++c) pre += X(t, c) * layer.weights(c, j);
            CHECK(H(t, j) == doctest::Approx(1.0 / (1.0 + std::exp(-pre))).epsilon(1e-12));
        }
}

TEST_CASE("assemble_design concatenates blocks in order") {
    DenseMatrix H(2, 3), X(2, 2);
    H << 1, 2, 3, 4, 5, 6;
    X << 7, 8, 9, 10;

    DenseMatrix D = assemble_design({&H}, X, true, false);
    REQUIRE(D.cols() == 5);
    CHECK(testutil::matrix_equal(D.leftCols(3), H));
    CHECK(testutil::matrix_equal(D.rightCols(2), X));

    DenseMatrix Db = assemble_design({&H}, X, false, true);
    REQUIRE(Db.cols() == 4);
    CHECK(testutil::matrix_equal(Db.leftCols(3), H));
    CHECK(testutil::matrix_equal(Db.col(3), DenseMatrix::Ones(2, 1)));

    DenseMatrix Dh = assemble_design({&H}, X, false, false);
    CHECK(testutil::matrix_equal(Dh, H));
}

TEST_CASE("identity hidden layer reduces the model to ridge on raw features") {
    Dataset ds = synthetic::make_blobs(30, 4, 3, 17);
    NetworkConfig cfg;
    cfg.lambda = 0.5;
    cfg.direct_links = false;
    cfg.bias_in_output = false;

    HiddenLayerParams layer;
    layer.weights = DenseMatrix::Identity(4, 4);
    layer.biases = Vector::Zero(4);
    layer.activation = Activation::Identity;

    ShallowModel model = train_shallow_with_layer(ds, cfg, layer);
    DenseMatrix expected = ridge_solve(ds.features, one_hot(ds.labels, 3), 0.5);
    CHECK((model.beta - expected).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("rvfl and elm reach 100% train accuracy on a separable toy") {
    Dataset ds = synthetic::make_separable_toy();
    REQUIRE(toy_is_linearly_separable(ds));

    NetworkConfig cfg;
    cfg.hidden_nodes = 50;
    cfg.lambda = std::exp2(-6.0);
    cfg.seed = 1;

    ShallowModel rvfl = train_rvfl(ds, cfg);
    CHECK(accuracy(predict(rvfl, ds.features).labels, ds.labels) == 1.0);

    ShallowModel elm = train_elm(ds, cfg);
    CHECK(accuracy(predict(elm, ds.features).labels, ds.labels) == 1.0);
}

TEST_CASE("beta widths follow the design matrix") {
    Dataset ds = synthetic::make_blobs(40, 7, 2, 23);
    NetworkConfig cfg;
    cfg.hidden_nodes = 12;

    CHECK(train_rvfl(ds, cfg).beta.rows() == 12 + 7);

    cfg.bias_in_output = true;
    CHECK(train_rvfl(ds, cfg).beta.rows() == 12 + 7 + 1);

    cfg.bias_in_output = false;
    ShallowModel elm = train_elm(ds, cfg);
    CHECK(elm.beta.rows() == 12);
    CHECK_FALSE(elm.config.direct_links);
    CHECK_FALSE(elm.config.bias_in_output);
}

TEST_CASE("huge lambda shrinks beta toward zero") {
    Dataset ds = synthetic::make_separable_toy();
    NetworkConfig cfg;
    cfg.hidden_nodes = 20;
    cfg.lambda = 1e12;
    ShallowModel model = train_rvfl(ds, cfg);
    CHECK(model.beta.norm() < 1e-6);
}

TEST_CASE("lambda zero uses the pseudoinverse") {
    Dataset ds = synthetic::make_separable_toy();
    NetworkConfig cfg;
    cfg.hidden_nodes = 10;
    cfg.lambda = 0.0;
    ShallowModel model = train_rvfl(ds, cfg);
    CHECK(accuracy(predict(model, ds.features).labels, ds.labels) == 1.0);
}

TEST_CASE("training is deterministic") {
    Dataset ds = synthetic::make_blobs(35, 5, 3, 31);
    NetworkConfig cfg;
    cfg.seed = 77;
    ShallowModel a = train_rvfl(ds, cfg);
    ShallowModel b = train_rvfl(ds, cfg);
    CHECK(testutil::bits_equal(a.beta, b.beta));
    CHECK(testutil::bits_equal(a.layer.weights, b.layer.weights));
}

TEST_CASE("argmax breaks ties toward the lowest index") {
    DenseMatrix scores(3, 3);
    scores << 0.1, 0.9, 0.2, 0.5, 0.5, 0.5, 0.3, 0.7, 0.7;
    CHECK(argmax_rows(scores) == std::vector<int>{1, 0, 1});
}

TEST_CASE("scaling beta leaves labels unchanged") {
    Dataset ds = synthetic::make_blobs(30, 4, 3, 41);
    NetworkConfig cfg;
    ShallowModel model = train_rvfl(ds, cfg);
    std::vector<int> before = predict(model, ds.features).labels;
    model.beta *= 3.0;
    CHECK(predict(model, ds.features).labels == before);
}

TEST_CASE("train-set accuracy equals a confusion-matrix recount") {
    Dataset ds = synthetic::make_blobs(60, 4, 3, 47, 2.5);
    NetworkConfig cfg;
    cfg.hidden_nodes = 15;
    ShallowModel model = train_rvfl(ds, cfg);
    PredictResult pred = predict(model, ds.features);

    std::vector<std::vector<int>> confusion(3, std::vector<int>(3, 0));
    for (size_t i = 0; i < pred.labels.size(); ++i)
        ++confusion[static_cast<size_t>(ds.labels[i])][static_cast<size_t>(pred.labels[i])];
    int diag = 0, total = 0;
    for (int a = 0; a < 3; ++a)
        for (int p = 0; p < 3; ++p) {
            total += confusion[static_cast<size_t>(a)][static_cast<size_t>(p)];
            if (a == p) diag += confusion[static_cast<size_t>(a)][static_cast<size_t>(p)];
        }
    CHECK(total == 60);
    CHECK(accuracy(pred.labels, ds.labels) == doctest::Approx(double(diag) / 60.0));
}

TEST_CASE("predict applies stored normalization") {
    Dataset raw = synthetic::make_blobs(40, 3, 2, 53);
    auto [norm_ds, params] = normalize(raw, NormMethod::MinMax);
    NetworkConfig cfg;
    ShallowModel model = train_rvfl(norm_ds, cfg);

    PredictResult direct = predict(model, norm_ds.features);
    model.norm = params;
    PredictResult via_raw = predict(model, raw.features);
    CHECK(via_raw.labels == direct.labels);
    CHECK(testutil::matrix_equal(via_raw.scores, direct.scores));
}

TEST_CASE("config validation") {
    NetworkConfig cfg;
    cfg.hidden_nodes = 0;
    CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
    cfg = {};
    cfg.layers = 0;
    CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
    cfg = {};
    cfg.lambda = -0.5;
    CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);

    Dataset ds = synthetic::make_blobs(20, 3, 2, 3);
    NetworkConfig deep;
    deep.layers = 2;
    CHECK_THROWS_AS(train_rvfl(ds, deep), std::invalid_argument);
}

TEST_CASE("hidden biases can be disabled") {
    Dataset ds = synthetic::make_blobs(25, 3, 2, 61);
    NetworkConfig cfg;
    cfg.hidden_bias = false;
    ShallowModel model = train_rvfl(ds, cfg);
    CHECK(model.layer.biases.size() == 0);
    PredictResult pred = predict(model, ds.features);
    CHECK(pred.labels.size() == 25);
}
