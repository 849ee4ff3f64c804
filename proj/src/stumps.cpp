#include "qtab/stumps.hpp"

#include <algorithm>
#include <numeric>

namespace qtab {

namespace {

// Best SSE split of residuals along one feature, via prefix sums over a
// precomputed sort order. Returns the SSE reduction (0 when no split helps).
struct SplitResult {
    double gain = 0.0;
    double threshold = 0.0;
    double left = 0.0;
    double right = 0.0;
};

SplitResult best_split(const std::vector<std::vector<double>>& x, int feature,
                       const std::vector<int>& order, std::span<const double> residual) {
    const std::size_t n = order.size();
    const double total = std::accumulate(residual.begin(), residual.end(), 0.0);
    SplitResult best;
    double left_sum = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const int row = order[i];
        left_sum += residual[static_cast<std::size_t>(row)];
        const double v = x[static_cast<std::size_t>(row)][static_cast<std::size_t>(feature)];
        const double v_next = x[static_cast<std::size_t>(order[i + 1])][static_cast<std::size_t>(feature)];
        if (v == v_next) continue;  // only split between distinct values
        const double nl = static_cast<double>(i + 1), nr = static_cast<double>(n - i - 1);
        const double right_sum = total - left_sum;
        // SSE reduction of predicting the mean on each side.
        const double gain = left_sum * left_sum / nl + right_sum * right_sum / nr - total * total / static_cast<double>(n);
        if (gain > best.gain) {
            best.gain = gain;
            best.threshold = 0.5 * (v + v_next);
            best.left = left_sum / nl;
            best.right = right_sum / nr;
        }
    }
    return best;
}

}  // namespace

void BoostedStumps::fit(const std::vector<std::vector<double>>& x, std::span<const double> y) {
    if (x.empty() || x.size() != y.size()) throw ArgumentError("stump fit needs matching non-empty x/y");
    const std::size_t n = x.size();
    const int num_features = static_cast<int>(x[0].size());

    base_ = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
    std::vector<double> residual(n);
    for (std::size_t i = 0; i < n; ++i) residual[i] = y[i] - base_;

    // Sort orders are data-dependent only; compute once.
    std::vector<std::vector<int>> orders(static_cast<std::size_t>(num_features));
    for (int f = 0; f < num_features; ++f) {
        auto& ord = orders[static_cast<std::size_t>(f)];
        ord.resize(n);
        std::iota(ord.begin(), ord.end(), 0);
        std::stable_sort(ord.begin(), ord.end(), [&](int a, int b) {
            return x[static_cast<std::size_t>(a)][static_cast<std::size_t>(f)] <
                   x[static_cast<std::size_t>(b)][static_cast<std::size_t>(f)];
        });
    }

    stumps_.clear();
    stumps_.reserve(kRounds);
    for (int round = 0; round < kRounds; ++round) {
        SplitResult best;
        int best_feature = -1;
        for (int f = 0; f < num_features; ++f) {
            const SplitResult r = best_split(x, f, orders[static_cast<std::size_t>(f)], residual);
            if (r.gain > best.gain) {
                best = r;
                best_feature = f;
            }
        }
        if (best_feature < 0) break;  // residuals constant along every feature
        Stump s;
        s.feature = best_feature;
        s.threshold = best.threshold;
        s.left = kLearningRate * best.left;
        s.right = kLearningRate * best.right;
        stumps_.push_back(s);
        for (std::size_t i = 0; i < n; ++i)
            residual[i] -= x[i][static_cast<std::size_t>(best_feature)] <= s.threshold ? s.left : s.right;
    }
}

double BoostedStumps::predict(std::span<const double> row) const {
    double v = base_;
    for (const Stump& s : stumps_)
        v += row[static_cast<std::size_t>(s.feature)] <= s.threshold ? s.left : s.right;
    return v;
}

void StumpClassifier::fit(const std::vector<std::vector<double>>& x, std::span<const int> y,
                          int num_classes) {
    if (num_classes < 2) throw ArgumentError("classification needs >= 2 classes");
    per_class_.assign(static_cast<std::size_t>(num_classes), BoostedStumps{});
    std::vector<double> indicator(x.size());
    for (int k = 0; k < num_classes; ++k) {
        for (std::size_t i = 0; i < x.size(); ++i) indicator[i] = y[i] == k ? 1.0 : 0.0;
        per_class_[static_cast<std::size_t>(k)].fit(x, indicator);
    }
}

int StumpClassifier::predict(std::span<const double> row) const {
    int best = 0;
    double best_score = per_class_[0].predict(row);
    for (std::size_t k = 1; k < per_class_.size(); ++k) {
        const double s = per_class_[k].predict(row);
        if (s > best_score) {
            best_score = s;
            best = static_cast<int>(k);
        }
    }
    return best;
}

}  // namespace qtab
