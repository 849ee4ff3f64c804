#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qtab/schema.hpp"
#include "qtab/table.hpp"

namespace qtab {

// 1 - sup_x |ECDF_real(x) - ECDF_synth(x)|, the Kolmogorov-Smirnov
// complement used for numeric columns.
double ks_complement(std::span<const double> real_col, std::span<const double> synth_col);

// 1 - total variation distance between normalized category frequencies;
// categories present on one side only contribute their full frequency.
double tvd_complement(const std::vector<std::string>& real_col,
                      const std::vector<std::string>& synth_col);

// 1 - |pearson_synth - pearson_real| / 2 for a numeric column pair. A
// zero-variance column has its coefficient defined as 0 so degenerate
// synthetic output is penalized instead of producing NaN.
double pair_numeric(std::span<const double> real_i, std::span<const double> real_j,
                    std::span<const double> synth_i, std::span<const double> synth_j);

// Contingency similarity 1 - L1/2 between normalized joint frequency tables
// over the union of observed label pairs. Mixed numeric/categorical pairs
// discretize the numeric side into its encoding bins before calling this.
double pair_contingency(const std::vector<std::string>& real_i, const std::vector<std::string>& real_j,
                        const std::vector<std::string>& synth_i,
                        const std::vector<std::string>& synth_j);

struct MetricsReport {
    double s_shape = 0.0;
    std::optional<double> s_pair;  // absent for single-column tables
    double overall = 0.0;
    std::map<std::string, double> per_column;
    std::map<std::string, double> per_pair;  // key "colA|colB"
    std::optional<double> overlap_fraction;
    std::map<std::string, double> downstream;  // target column -> score

    std::string to_json() const;
};

// Column-shape and column-pair similarity plus their average. Numeric
// columns in both tables are reduced to bin representatives first so the
// comparison matches what the generator can emit.
MetricsReport overall_score(const Table& real, const Table& synth, const TabularSchema& schema);

// Map every numeric cell to its bin representative; categorical cells pass
// through. All metrics and the unique-row comparisons run on this view.
Table binned_view(const Table& table, const TabularSchema& schema);

// |unique(synth) intersect unique(real)| / |unique(synth)|: the fraction of
// distinct synthetic rows that also occur in the training data. Expects
// tables that are directly comparable (use binned_view first).
double overlap_fraction(const Table& real, const Table& synth);

// Gap in held-out predictive performance between the reference learner
// trained on real vs. synthetic data: |score_real - score_synth| with
// accuracy for categorical targets and R^2 for numeric ones, both models
// evaluated on the same 80/20 held-out split of the real table.
double downstream_score(const Table& real, const Table& synth, const std::string& target_column,
                        const TabularSchema& schema, std::uint64_t split_seed = 17);

}  // namespace qtab
