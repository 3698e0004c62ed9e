#include "randlink/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "randlink/errors.hpp"

namespace randlink {

RankTable rank_matrix(const DenseMatrix& accuracies) {
    if (accuracies.rows() < 2 || accuracies.cols() < 2)
        throw std::invalid_argument("rank_matrix: need at least 2 datasets and 2 classifiers");
    require_finite(accuracies, "accuracy matrix");

    RankTable table;
    table.accuracies = accuracies;
    table.ranks.resize(accuracies.rows(), accuracies.cols());
    Eigen::Index m = accuracies.cols();

    for (Eigen::Index r = 0; r < accuracies.rows(); ++r) {
        std::vector<int> order(static_cast<size_t>(m));
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return accuracies(r, a) > accuracies(r, b); // rank 1 = highest accuracy
        });
        size_t i = 0;
        while (i < order.size()) {
            size_t j = i;
            while (j + 1 < order.size() &&
                   accuracies(r, order[j + 1]) == accuracies(r, order[i]))
                ++j;
            // positions i..j hold tied entries; share the mean rank
            double rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
            for (size_t p = i; p <= j; ++p) table.ranks(r, order[p]) = rank;
            i = j + 1;
        }
    }

    table.avg_ranks.resize(static_cast<size_t>(m));
    for (Eigen::Index c = 0; c < m; ++c)
        table.avg_ranks[static_cast<size_t>(c)] = table.ranks.col(c).mean();
    return table;
}

FriedmanResult friedman(const std::vector<double>& avg_ranks, int dataset_count) {
    int m = static_cast<int>(avg_ranks.size());
    int M = dataset_count;
    if (m < 2 || M < 2)
        throw std::invalid_argument("friedman: need at least 2 classifiers and 2 datasets");
    for (double r : avg_ranks)
        if (!std::isfinite(r)) throw numeric_error("friedman: non-finite rank");

    double sum_sq = 0.0;
    for (double r : avg_ranks) sum_sq += r * r;
    double md = static_cast<double>(M);
    double mm = static_cast<double>(m);

    FriedmanResult res;
    res.datasets = M;
    res.classifiers = m;
    res.df1 = m - 1;
    res.df2 = (m - 1) * (M - 1);
    res.chi_squared = (12.0 * md / (mm * (mm + 1.0))) *
                      (sum_sq - mm * (mm + 1.0) * (mm + 1.0) / 4.0);

    double denom = md * (mm - 1.0) - res.chi_squared;
    if (denom <= 0.0) {
        res.f_defined = false;
        res.f_statistic = std::numeric_limits<double>::infinity();
    } else {
        res.f_statistic = (md - 1.0) * res.chi_squared / denom;
    }
    return res;
}

FriedmanResult friedman(const RankTable& table) {
    return friedman(table.avg_ranks, static_cast<int>(table.ranks.rows()));
}

NemenyiResult nemenyi_cd(int classifier_count, int dataset_count, double alpha) {
    // Studentized range q(0.05) / sqrt(2) for m = 2..10.
    static constexpr double q05[] = {1.960, 2.344, 2.569, 2.728, 2.850,
                                     2.948, 3.031, 3.102, 3.164};
    if (alpha != 0.05)
        throw usage_error("nemenyi_cd: unsupported alpha " + std::to_string(alpha) +
                          " (only 0.05 is tabulated)");
    if (classifier_count < 2 || classifier_count > 10)
        throw usage_error("nemenyi_cd: classifier count " + std::to_string(classifier_count) +
                          " outside tabulated range 2..10");
    if (dataset_count < 1)
        throw std::invalid_argument("nemenyi_cd: dataset count must be >= 1");

    NemenyiResult res;
    res.alpha = alpha;
    res.q_alpha = q05[classifier_count - 2];
    double m = static_cast<double>(classifier_count);
    double M = static_cast<double>(dataset_count);
    res.critical_difference = res.q_alpha * std::sqrt(m * (m + 1.0) / (6.0 * M));
    return res;
}

std::vector<RankPair> significance_pairs(const std::vector<double>& avg_ranks, double cd) {
    if (!(cd > 0.0)) throw std::invalid_argument("significance_pairs: cd must be > 0");
    std::vector<RankPair> pairs;
    int m = static_cast<int>(avg_ranks.size());
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            RankPair p;
            p.first = i;
            p.second = j;
            p.rank_difference = std::abs(avg_ranks[static_cast<size_t>(i)] -
                                         avg_ranks[static_cast<size_t>(j)]);
            p.significant = p.rank_difference >= cd;
            pairs.push_back(p);
        }
    }
    return pairs;
}

} // namespace randlink
