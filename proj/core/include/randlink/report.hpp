#pragma once

#include <string>

#include "randlink/eval.hpp"
#include "randlink/keyval.hpp"
#include "randlink/stats.hpp"

namespace randlink {

/// Serializes in insertion order; written via temp file + rename.
std::string render_key_value(const KeyValueFile& kv);
void write_text_file_atomic(const std::string& path, const std::string& content);
void write_report(const KeyValueFile& kv, const std::string& path, bool also_json);

KeyValueFile report_from_eval(const EvalReport& report, NormMethod normalization);
EvalReport eval_from_report(const KeyValueFile& kv);

KeyValueFile report_from_grid(const GridResult& grid, const EvalReport& best_report,
                              NormMethod normalization);

struct CompareInput {
    std::vector<std::string> methods;  // column order
    std::vector<std::string> datasets; // row order
    DenseMatrix accuracies;            // datasets x methods
};

struct CompareOutcome {
    CompareInput input;
    RankTable ranks;
    FriedmanResult friedman;
    NemenyiResult nemenyi;
    std::vector<RankPair> pairs;
    double f_critical = 0.0; // 0 = not supplied
};

CompareOutcome run_comparison(const CompareInput& input, double alpha, double f_critical);
KeyValueFile report_from_comparison(const CompareOutcome& outcome);

} // namespace randlink
