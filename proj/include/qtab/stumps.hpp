#pragma once

#include <span>
#include <string>
#include <vector>

#include "qtab/common.hpp"

namespace qtab {

// Deterministic gradient-boosted decision stumps: least-squares boosting
// with depth-1 trees, a fixed round count and learning rate, exhaustive
// split search and first-best tie breaking. Stands in for a heavyweight
// boosted-tree library where the metric contract only needs an identical
// learner on both sides of a comparison.
class BoostedStumps {
public:
    static constexpr int kRounds = 50;
    static constexpr double kLearningRate = 0.3;

    struct Stump {
        int feature = -1;
        double threshold = 0.0;
        double left = 0.0;   // value for x[feature] <= threshold
        double right = 0.0;
    };

    // X is row-major [n_rows][n_features].
    void fit(const std::vector<std::vector<double>>& x, std::span<const double> y);
    double predict(std::span<const double> row) const;

private:
    double base_ = 0.0;
    std::vector<Stump> stumps_;
};

// One-vs-rest classification on top of the regressor; predicts the class
// with the highest score, ties to the lower class index.
class StumpClassifier {
public:
    void fit(const std::vector<std::vector<double>>& x, std::span<const int> y, int num_classes);
    int predict(std::span<const double> row) const;

private:
    std::vector<BoostedStumps> per_class_;
};

}  // namespace qtab
