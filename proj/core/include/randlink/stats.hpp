#pragma once

#include <vector>

#include "randlink/matrix.hpp"

namespace randlink {

/// Per-dataset ranks of classifier accuracies; rank 1 is the best, ties get
/// the average of the ranks they span.
struct RankTable {
    DenseMatrix accuracies; // M datasets x m classifiers
    DenseMatrix ranks;      // same shape; each row sums to m(m+1)/2
    std::vector<double> avg_ranks;
};

RankTable rank_matrix(const DenseMatrix& accuracies);

struct FriedmanResult {
    double chi_squared = 0.0;
    double f_statistic = 0.0;
    bool f_defined = true; // false when chi_squared >= M(m-1)
    int df1 = 0;           // m-1
    int df2 = 0;           // (m-1)(M-1)
    int datasets = 0;      // M
    int classifiers = 0;   // m
};

FriedmanResult friedman(const std::vector<double>& avg_ranks, int dataset_count);
FriedmanResult friedman(const RankTable& table);

struct NemenyiResult {
    double q_alpha = 0.0;
    double critical_difference = 0.0;
    double alpha = 0.05;
};

/// Embedded two-sided q table at alpha = 0.05 for 2..10 classifiers.
NemenyiResult nemenyi_cd(int classifier_count, int dataset_count, double alpha = 0.05);

struct RankPair {
    int first = 0;
    int second = 0;
    double rank_difference = 0.0; // |R_first - R_second|
    bool significant = false;    // rank_difference >= cd
};

std::vector<RankPair> significance_pairs(const std::vector<double>& avg_ranks, double cd);

} // namespace randlink
