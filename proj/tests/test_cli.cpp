// End-to-end runs of the installed binary: exit codes, report files, and
// agreement with in-process predictions.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "doctest.h"
#include "randlink/dataset.hpp"
#include "randlink/errors.hpp"
#include "randlink/keyval.hpp"
#include "randlink/method.hpp"
#include "randlink/model_io.hpp"
#include "synthetic.hpp"
#include "temputil.hpp"

using namespace randlink;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output; // stdout and stderr interleaved
};

RunResult run_cli(const std::string& args, const fs::path& dir) {
    fs::path log = dir / "run.log";
    std::string cmd = std::string("'") + RANDLINK_CLI_PATH + "' " + args + " > '" +
                      log.string() + "' 2>&1";
    int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.output = testutil::read_file(log);
    return r;
}

std::string write_dataset_csv(const Dataset& ds, const fs::path& path) {
    std::ostringstream out;
    for (Eigen::Index c = 0; c < ds.cols(); ++c) out << "f" << c << ",";
    out << "label\n";
    for (Eigen::Index r = 0; r < ds.rows(); ++r) {
        for (Eigen::Index c = 0; c < ds.cols(); ++c) out << ds.features(r, c) << ",";
        out << "k" << ds.labels[static_cast<size_t>(r)] << "\n";
    }
    return testutil::write_file(path, out.str());
}

std::string write_config(const fs::path& dir, const std::string& csv,
                         const std::string& extra = "") {
    return testutil::write_file(dir / "run.conf",
                                "dataset.path = " + csv +
                                    "\n"
                                    "network.hidden_nodes = 12\n"
                                    "seed = 5\n" +
                                    extra);
}

std::string strip_timing(const std::string& text) {
    std::istringstream in(text);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("train_seconds", 0) == 0 || line.rfind("test_seconds", 0) == 0) continue;
        out << line << "\n";
    }
    return out.str();
}

} // namespace

TEST_CASE("help exits cleanly and names every subcommand") {
    auto dir = testutil::temp_dir("clihelp");
    RunResult r = run_cli("--help", dir);
    CHECK(r.exit_code == 0);
    for (const char* sub : {"train", "predict", "cv", "grid", "compare", "bench"})
        CHECK(r.output.find(sub) != std::string::npos);
}

TEST_CASE("argument mistakes exit with the usage code") {
    auto dir = testutil::temp_dir("cliusage");
    CHECK(run_cli("", dir).exit_code == 2);                 // missing subcommand
    CHECK(run_cli("cv --wat", dir).exit_code == 2);         // unknown flag
    CHECK(run_cli("definitely-not-a-command", dir).exit_code == 2);
    CHECK(run_cli("cv", dir).exit_code == 2);               // --config is required
}

TEST_CASE("config and file problems map to distinct exit codes") {
    auto dir = testutil::temp_dir("clierr");
    Dataset ds = synthetic::make_blobs(40, 3, 2, 700, 1.5);
    std::string csv = write_dataset_csv(ds, dir / "data.csv");
    std::string conf = write_config(dir, csv);

    // Unknown method id is a usage error even though the config is fine.
    RunResult bad_method = run_cli("cv -c '" + conf + "' --method zzz -k 2", dir);
    CHECK(bad_method.exit_code == 2);
    CHECK(bad_method.output.find("usage error") != std::string::npos);

    // A config pointing at a nonexistent dataset is an i/o error.
    std::string missing = testutil::write_file(
        dir / "missing.conf", "dataset.path = " + (dir / "gone.csv").string() + "\n");
    RunResult io = run_cli("cv -c '" + missing + "' -k 2", dir);
    CHECK(io.exit_code == 3);
    CHECK(io.output.find("i/o error") != std::string::npos);

    // A typo inside the config file is a usage error naming the key.
    std::string typo = testutil::write_file(dir / "typo.conf",
                                            "dataset.path = " + csv + "\nnetwork.lamda = 1\n");
    RunResult bad_key = run_cli("cv -c '" + typo + "' -k 2", dir);
    CHECK(bad_key.exit_code == 2);
    CHECK(bad_key.output.find("network.lamda") != std::string::npos);

    // A missing config file is an i/o error.
    CHECK(run_cli("cv -c '" + (dir / "absent.conf").string() + "'", dir).exit_code == 3);
}

TEST_CASE("cv writes a report, defaults to 10 folds, and reruns identically") {
    auto dir = testutil::temp_dir("clicv");
    Dataset ds = synthetic::make_blobs(80, 4, 2, 710, 2.0);
    std::string csv = write_dataset_csv(ds, dir / "blobs.csv");
    std::string conf = write_config(dir, csv);

    fs::path rep1 = dir / "first.report";
    RunResult r1 = run_cli("cv -c '" + conf + "' -o '" + rep1.string() + "'", dir);
    CHECK(r1.exit_code == 0);
    CHECK(r1.output.find("report written to") != std::string::npos);
    REQUIRE(fs::exists(rep1));

    KeyValueFile kv = KeyValueFile::parse_file(rep1.string());
    CHECK(kv.get_string("report") == "cv");
    CHECK(kv.get_int("k") == 10);
    CHECK(kv.get_string("method") == "rvfl");
    CHECK(kv.get_string("dataset") == "blobs");
    CHECK(kv.get_int("fold_count") == 10);

    fs::path rep2 = dir / "second.report";
    RunResult r2 = run_cli("cv -c '" + conf + "' -o '" + rep2.string() + "'", dir);
    CHECK(r2.exit_code == 0);
    CHECK(strip_timing(testutil::read_file(rep1)) == strip_timing(testutil::read_file(rep2)));

    // The fold override lands in the report, and --json adds a sibling file.
    fs::path rep3 = dir / "third.report";
    RunResult r3 = run_cli("cv -c '" + conf + "' -k 4 --json -o '" + rep3.string() + "'", dir);
    CHECK(r3.exit_code == 0);
    CHECK(KeyValueFile::parse_file(rep3.string()).get_int("k") == 4);
    CHECK(fs::exists(dir / "third.report.json"));
}

TEST_CASE("train then predict reproduces in-process predictions") {
    auto dir = testutil::temp_dir("clitrain");
    Dataset ds = synthetic::make_blobs(60, 3, 3, 720, 1.0);
    std::string csv = write_dataset_csv(ds, dir / "blobs.csv");
    std::string conf = write_config(dir, csv);

    fs::path model_path = dir / "blobs.model";
    RunResult tr = run_cli("train -c '" + conf + "' -o '" + model_path.string() + "'", dir);
    CHECK(tr.exit_code == 0);
    CHECK(tr.output.find("model written to") != std::string::npos);
    REQUIRE(fs::exists(model_path));

    fs::path preds = dir / "preds.csv";
    RunResult pr = run_cli("predict -m '" + model_path.string() + "' -d '" + csv + "' -o '" +
                               preds.string() + "'",
                           dir);
    CHECK(pr.exit_code == 0);
    // The training data is labeled, so the run reports its accuracy.
    CHECK(pr.output.find("accuracy = ") != std::string::npos);

    TrainedModel model = load_model(model_path.string());
    Dataset reread = load_csv(csv, "", true);
    PredictResult expect = predict_method(model, reread.features);
    const std::vector<std::string>& names = model_class_names(model);

    std::ifstream in(preds.string());
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line.rfind("prediction,score_", 0) == 0);
    for (size_t r = 0; r < expect.labels.size(); ++r) {
        REQUIRE(std::getline(in, line));
        std::string field = line.substr(0, line.find(','));
        CHECK(field == names[static_cast<size_t>(expect.labels[r])]);
    }
    CHECK_FALSE(std::getline(in, line));

    // Unlabeled prediction prints the CSV on stdout and no accuracy line.
    fs::path feats = dir / "feats.csv";
    std::ostringstream fx;
    fx << "f0,f1,f2\n";
    for (Eigen::Index r = 0; r < 5; ++r)
        fx << ds.features(r, 0) << "," << ds.features(r, 1) << "," << ds.features(r, 2) << "\n";
    testutil::write_file(feats, fx.str());
    RunResult un = run_cli("predict -m '" + model_path.string() + "' -d '" + feats.string() +
                               "' --label-column none",
                           dir);
    CHECK(un.exit_code == 0);
    CHECK(un.output.find("prediction,score_") != std::string::npos);
    CHECK(un.output.find("accuracy") == std::string::npos);

    // Pointing predict at a non-model file is an i/o error.
    CHECK(run_cli("predict -m '" + csv + "' -d '" + csv + "'", dir).exit_code == 3);
}

TEST_CASE("compare accepts cv reports and accuracy matrices") {
    auto dir = testutil::temp_dir("clicompare");
    std::vector<std::string> reports;
    for (int d = 0; d < 2; ++d) {
        Dataset ds = synthetic::make_blobs(40, 3, 2, 730 + d, 2.0);
        std::string csv = write_dataset_csv(ds, dir / ("d" + std::to_string(d) + ".csv"));
        std::string conf = testutil::write_file(
            dir / ("d" + std::to_string(d) + ".conf"),
            "dataset.path = " + csv + "\ndataset.name = set" + std::to_string(d) +
                "\nnetwork.hidden_nodes = 12\nseed = 5\ncv.folds = 3\n");
        for (const char* method : {"rvfl", "elm"}) {
            fs::path rep = dir / ("d" + std::to_string(d) + "_" + method + ".report");
            RunResult r =
                run_cli("cv -c '" + conf + "' --method " + method + " -o '" + rep.string() + "'",
                        dir);
            REQUIRE(r.exit_code == 0);
            reports.push_back(rep.string());
        }
    }

    fs::path cmp = dir / "cmp.report";
    std::string joined;
    for (const auto& r : reports) joined += "'" + r + "' ";
    RunResult rc = run_cli("compare " + joined + "-o '" + cmp.string() + "'", dir);
    CHECK(rc.exit_code == 0);
    KeyValueFile kv = KeyValueFile::parse_file(cmp.string());
    CHECK(kv.get_int("classifiers") == 2);
    CHECK(kv.get_int("datasets") == 2);
    CHECK(kv.get_int("pair_count") == 1);

    // Fewer than four reports cannot form a methods x datasets table.
    CHECK(run_cli("compare '" + reports[0] + "' '" + reports[1] + "'", dir).exit_code == 2);

    // The same comparison can come from a plain accuracy matrix.
    fs::path matrix = dir / "acc.csv";
    testutil::write_file(matrix,
                         "dataset,alpha,beta,gamma\n"
                         "d1,0.90,0.80,0.70\n"
                         "d2,0.95,0.85,0.75\n"
                         "d3,0.80,0.90,0.60\n");
    fs::path mrep = dir / "matrix.report";
    RunResult rm = run_cli("compare --matrix '" + matrix.string() + "' --f-critical 3.0 -o '" +
                               mrep.string() + "'",
                           dir);
    CHECK(rm.exit_code == 0);
    KeyValueFile mk = KeyValueFile::parse_file(mrep.string());
    CHECK(mk.get_int("classifiers") == 3);
    CHECK(mk.get_int("datasets") == 3);
    CHECK(mk.get_string("method.0") == "alpha");
    CHECK(mk.has("friedman.chi_squared"));
    CHECK(mk.has("friedman.reject_null"));
    CHECK(mk.get_int("pair_count") == 3);

    // Mixing reports with --matrix is rejected.
    CHECK(run_cli("compare '" + reports[0] + "' --matrix '" + matrix.string() + "'", dir)
              .exit_code == 2);
}

TEST_CASE("grid and bench run end to end") {
    auto dir = testutil::temp_dir("cligrid");
    Dataset ds = synthetic::make_blobs(40, 3, 2, 740, 2.0);
    std::string csv = write_dataset_csv(ds, dir / "blobs.csv");
    std::string conf = write_config(dir, csv,
                                    "cv.folds = 2\n"
                                    "grid.c_exponents = 0,2\n"
                                    "grid.hidden_nodes = 8\n");

    fs::path rep = dir / "grid.report";
    RunResult rg = run_cli("grid -c '" + conf + "' -o '" + rep.string() + "'", dir);
    CHECK(rg.exit_code == 0);
    KeyValueFile kv = KeyValueFile::parse_file(rep.string());
    CHECK(kv.get_string("report") == "grid");
    CHECK(kv.get_int("cell_count") == 2); // rvfl collapses the layer axis
    CHECK(kv.has("best.c_exponent"));

    RunResult rb = run_cli("bench -c '" + conf + "'", dir);
    CHECK(rb.exit_code == 0);
    CHECK(rb.output.find("train_seconds = ") != std::string::npos);
    CHECK(rb.output.find("test_seconds = ") != std::string::npos);
}
