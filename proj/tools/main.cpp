#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "randlink/cli.hpp"

namespace {

struct Args {
    std::string config;
    std::string out;
    std::string method;
    std::uint64_t seed = 0;
    int k = 10;
    std::string combine;
    bool json = false;
    std::string model;
    std::string data;
    std::string label_column;
    bool no_header = false;
    std::vector<std::string> reports;
    std::string matrix;
    double alpha = 0.05;
    double f_critical = 0.0;
};

randlink::CliOverrides overrides_from(const CLI::App& sub, const Args& a) {
    auto given = [&](const char* name) {
        const CLI::Option* opt = sub.get_option_no_throw(name);
        return opt != nullptr && opt->count() > 0;
    };
    randlink::CliOverrides o;
    if (given("--method")) o.method = a.method;
    if (given("--seed")) o.seed = a.seed;
    if (given("--k")) o.k = a.k;
    if (given("--combine")) o.combine = a.combine;
    return o;
}

std::optional<std::string> maybe(const CLI::App& sub, const char* flag, const std::string& v) {
    if (sub.count(flag)) return v;
    return std::nullopt;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"random-weight network trainer, evaluator, and rank-test harness"};
    app.require_subcommand(1);
    Args a;

    auto add_config = [&](CLI::App* sub) {
        sub->add_option("-c,--config", a.config, "experiment config file")->required();
    };
    auto add_overrides = [&](CLI::App* sub, bool with_k) {
        sub->add_option("--method", a.method,
                        "method id override (elm, rvfl, sp-rvfl, drvfl, drvfl-no-dl, edrvfl, "
                        "edrvfl-no-dl, dsp-rvfl, edsp-rvfl, tedrvfl)");
        sub->add_option("--seed", a.seed, "RNG seed override");
        if (with_k) sub->add_option("-k,--k", a.k, "fold count override");
        sub->add_option("--combine", a.combine, "ensemble combine rule override (vote, average)");
    };

    CLI::App* train = app.add_subcommand("train", "fit a model on the full dataset and save it");
    add_config(train);
    add_overrides(train, false);
    train->add_option("-o,--out", a.out, "model output path");

    CLI::App* predict = app.add_subcommand("predict", "apply a saved model to a CSV file");
    predict->add_option("-m,--model", a.model, "saved model file")->required();
    predict->add_option("-d,--data", a.data, "input CSV")->required();
    predict->add_option("--label-column", a.label_column,
                        "label column name/index, 'last', or 'none' for unlabeled data");
    predict->add_flag("--no-header", a.no_header, "input CSV has no header row");
    predict->add_option("-o,--out", a.out, "predictions CSV path (default: stdout)");

    CLI::App* cv = app.add_subcommand("cv", "stratified k-fold cross-validation");
    add_config(cv);
    add_overrides(cv, true);
    cv->add_option("-o,--out", a.out, "report output path");
    cv->add_flag("--json", a.json, "also write a .json copy of the report");

    CLI::App* grid = app.add_subcommand("grid", "hyperparameter grid search under k-fold CV");
    add_config(grid);
    add_overrides(grid, true);
    grid->add_option("-o,--out", a.out, "report output path");
    grid->add_flag("--json", a.json, "also write a .json copy of the report");

    CLI::App* compare =
        app.add_subcommand("compare", "Friedman/Nemenyi rank comparison across cv reports");
    compare->add_option("reports", a.reports, "cv report files (methods x datasets)");
    compare->add_option("--matrix", a.matrix,
                        "accuracy matrix CSV (header: dataset,<method>...) instead of reports");
    compare->add_option("--alpha", a.alpha, "Nemenyi significance level")
        ->default_val(0.05);
    compare->add_option("--f-critical", a.f_critical,
                        "critical value for the F statistic (0 = skip the verdict)");
    compare->add_option("-o,--out", a.out, "report output path");
    compare->add_flag("--json", a.json, "also write a .json copy of the report");

    CLI::App* bench = app.add_subcommand("bench", "time one full train and predict pass");
    add_config(bench);
    add_overrides(bench, false);
    bench->add_option("-o,--out", a.out, "timing report path");

    int rc = randlink::kExitOk;
    train->callback([&] {
        rc = randlink::guarded("train", [&] {
            return randlink::cmd_train(a.config, maybe(*train, "--out", a.out),
                                       overrides_from(*train, a));
        });
    });
    predict->callback([&] {
        rc = randlink::guarded("predict", [&] {
            return randlink::cmd_predict(a.model, a.data,
                                         maybe(*predict, "--label-column", a.label_column),
                                         !a.no_header, maybe(*predict, "--out", a.out));
        });
    });
    cv->callback([&] {
        rc = randlink::guarded("cv", [&] {
            return randlink::cmd_cv(a.config, maybe(*cv, "--out", a.out), overrides_from(*cv, a),
                                    a.json);
        });
    });
    grid->callback([&] {
        rc = randlink::guarded("grid", [&] {
            return randlink::cmd_grid(a.config, maybe(*grid, "--out", a.out),
                                      overrides_from(*grid, a), a.json);
        });
    });
    compare->callback([&] {
        rc = randlink::guarded("compare", [&] {
            return randlink::cmd_compare(a.reports, maybe(*compare, "--matrix", a.matrix),
                                         a.alpha, a.f_critical, maybe(*compare, "--out", a.out),
                                         a.json);
        });
    });
    bench->callback([&] {
        rc = randlink::guarded("bench", [&] {
            return randlink::cmd_bench(a.config, overrides_from(*bench, a),
                                       maybe(*bench, "--out", a.out));
        });
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? randlink::kExitOk : randlink::kExitUsage;
    }
    return rc;
}
