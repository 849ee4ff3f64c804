#include "qtab/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <json.hpp>

#include "qtab/encoding.hpp"
#include "qtab/stumps.hpp"

namespace qtab {

using nlohmann::json;

double ks_complement(std::span<const double> real_col, std::span<const double> synth_col) {
    if (real_col.empty() || synth_col.empty()) throw ArgumentError("ks_complement needs non-empty columns");
    std::vector<double> r(real_col.begin(), real_col.end());
    std::vector<double> s(synth_col.begin(), synth_col.end());
    std::sort(r.begin(), r.end());
    std::sort(s.begin(), s.end());
    const double nr = static_cast<double>(r.size()), ns = static_cast<double>(s.size());
    std::size_t i = 0, j = 0;
    double ks = 0.0;
    while (i < r.size() || j < s.size()) {
        const double x = (i < r.size() && (j >= s.size() || r[i] <= s[j])) ? r[i] : s[j];
        while (i < r.size() && r[i] <= x) ++i;
        while (j < s.size() && s[j] <= x) ++j;
        ks = std::max(ks, std::abs(static_cast<double>(i) / nr - static_cast<double>(j) / ns));
    }
    return 1.0 - ks;
}

namespace {

std::map<std::string, double> frequencies(const std::vector<std::string>& col) {
    std::map<std::string, double> f;
    for (const auto& v : col) f[v] += 1.0;
    for (auto& [_, v] : f) v /= static_cast<double>(col.size());
    return f;
}

double pearson(std::span<const double> x, std::span<const double> y) {
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx <= 0.0 || syy <= 0.0) return 0.0;  // constant column convention
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace

double tvd_complement(const std::vector<std::string>& real_col,
                      const std::vector<std::string>& synth_col) {
    if (real_col.empty() || synth_col.empty()) throw ArgumentError("tvd_complement needs non-empty columns");
    const auto pr = frequencies(real_col);
    const auto ps = frequencies(synth_col);
    std::set<std::string> keys;
    for (const auto& [k, _] : pr) keys.insert(k);
    for (const auto& [k, _] : ps) keys.insert(k);
    double tvd = 0.0;
    for (const auto& k : keys) {
        const double p = pr.count(k) ? pr.at(k) : 0.0;
        const double q = ps.count(k) ? ps.at(k) : 0.0;
        tvd += std::abs(p - q);
    }
    return 1.0 - 0.5 * tvd;
}

double pair_numeric(std::span<const double> real_i, std::span<const double> real_j,
                    std::span<const double> synth_i, std::span<const double> synth_j) {
    if (real_i.size() != real_j.size() || synth_i.size() != synth_j.size())
        throw ArgumentError("pair_numeric column lengths mismatch");
    if (real_i.empty() || synth_i.empty()) throw ArgumentError("pair_numeric needs non-empty columns");
    const double cr = pearson(real_i, real_j);
    const double cs = pearson(synth_i, synth_j);
    return 1.0 - std::abs(cs - cr) / 2.0;
}

double pair_contingency(const std::vector<std::string>& real_i, const std::vector<std::string>& real_j,
                        const std::vector<std::string>& synth_i,
                        const std::vector<std::string>& synth_j) {
    if (real_i.size() != real_j.size() || synth_i.size() != synth_j.size())
        throw ArgumentError("pair_contingency column lengths mismatch");
    if (real_i.empty() || synth_i.empty()) throw ArgumentError("pair_contingency needs non-empty columns");
    std::map<std::pair<std::string, std::string>, double> fr, fs;
    for (std::size_t k = 0; k < real_i.size(); ++k) fr[{real_i[k], real_j[k]}] += 1.0;
    for (auto& [_, v] : fr) v /= static_cast<double>(real_i.size());
    for (std::size_t k = 0; k < synth_i.size(); ++k) fs[{synth_i[k], synth_j[k]}] += 1.0;
    for (auto& [_, v] : fs) v /= static_cast<double>(synth_i.size());
    std::set<std::pair<std::string, std::string>> keys;
    for (const auto& [k, _] : fr) keys.insert(k);
    for (const auto& [k, _] : fs) keys.insert(k);
    double l1 = 0.0;
    for (const auto& k : keys) {
        const double p = fr.count(k) ? fr.at(k) : 0.0;
        const double q = fs.count(k) ? fs.at(k) : 0.0;
        l1 += std::abs(p - q);
    }
    return 1.0 - 0.5 * l1;
}

Table binned_view(const Table& table, const TabularSchema& schema) {
    Table out;
    out.columns = table.columns;
    out.rows.reserve(table.rows.size());
    for (const Row& row : table.rows) {
        Row r = row;
        for (std::size_t f = 0; f < schema.features.size(); ++f)
            if (schema.features[f].is_numeric())
                r[f] = unbin_numeric(bin_numeric(num_value(row[f]), schema.features[f].numeric()),
                                     schema.features[f].numeric());
        out.rows.push_back(std::move(r));
    }
    return out;
}

namespace {

std::vector<double> numeric_column(const Table& t, std::size_t col) {
    std::vector<double> v;
    v.reserve(t.rows.size());
    for (const Row& r : t.rows) v.push_back(num_value(r[col]));
    return v;
}

// Label view used by the contingency metric: category strings, or bin
// indices for numeric columns.
std::vector<std::string> label_column(const Table& t, std::size_t col, const FeatureSpec& f) {
    std::vector<std::string> v;
    v.reserve(t.rows.size());
    for (const Row& r : t.rows) {
        if (f.is_numeric())
            v.push_back("b" + std::to_string(bin_numeric(num_value(r[col]), f.numeric())));
        else
            v.push_back(cat_value(r[col]));
    }
    return v;
}

}  // namespace

MetricsReport overall_score(const Table& real_raw, const Table& synth_raw,
                            const TabularSchema& schema) {
    if (real_raw.columns != synth_raw.columns) throw ArgumentError("tables have different columns");
    if (real_raw.rows.empty() || synth_raw.rows.empty())
        throw ArgumentError("overall_score needs non-empty tables");
    const std::size_t c = schema.features.size();
    if (real_raw.columns.size() != c) throw ArgumentError("tables do not match the schema");

    const Table real = binned_view(real_raw, schema);
    const Table synth = binned_view(synth_raw, schema);

    MetricsReport rep;
    double shape_sum = 0.0;
    for (std::size_t i = 0; i < c; ++i) {
        const FeatureSpec& f = schema.features[i];
        double s;
        if (f.is_numeric())
            s = ks_complement(numeric_column(real, i), numeric_column(synth, i));
        else
            s = tvd_complement(label_column(real, i, f), label_column(synth, i, f));
        rep.per_column[f.name] = s;
        shape_sum += s;
    }
    rep.s_shape = shape_sum / static_cast<double>(c);

    if (c >= 2) {
        double pair_sum = 0.0;
        std::size_t pairs = 0;
        for (std::size_t i = 0; i < c; ++i) {
            for (std::size_t j = i + 1; j < c; ++j) {
                const FeatureSpec& fi = schema.features[i];
                const FeatureSpec& fj = schema.features[j];
                double t;
                if (fi.is_numeric() && fj.is_numeric())
                    t = pair_numeric(numeric_column(real, i), numeric_column(real, j),
                                     numeric_column(synth, i), numeric_column(synth, j));
                else
                    t = pair_contingency(label_column(real, i, fi), label_column(real, j, fj),
                                         label_column(synth, i, fi), label_column(synth, j, fj));
                rep.per_pair[fi.name + "|" + fj.name] = t;
                pair_sum += t;
                ++pairs;
            }
        }
        rep.s_pair = pair_sum / static_cast<double>(pairs);
        rep.overall = 0.5 * (rep.s_shape + *rep.s_pair);
    } else {
        rep.overall = rep.s_shape;  // single column: no pair component
    }
    return rep;
}

double overlap_fraction(const Table& real, const Table& synth) {
    if (synth.rows.empty()) throw ArgumentError("overlap_fraction needs a non-empty synthetic table");
    const auto keys = [](const Table& t) {
        std::set<std::string> s;
        for (const Row& r : t.rows) {
            std::string key;
            for (std::size_t f = 0; f < r.size(); ++f) {
                if (f) key.push_back('|');
                if (std::holds_alternative<double>(r[f])) {
                    // Exact value identity; callers pass binned views.
                    key += std::to_string(num_value(r[f]));
                } else {
                    key += cat_value(r[f]);
                }
            }
            s.insert(std::move(key));
        }
        return s;
    };
    const std::set<std::string> real_keys = keys(real);
    const std::set<std::string> synth_keys = keys(synth);
    std::size_t both = 0;
    for (const auto& k : synth_keys) both += real_keys.count(k);
    return static_cast<double>(both) / static_cast<double>(synth_keys.size());
}

double downstream_score(const Table& real, const Table& synth, const std::string& target_column,
                        const TabularSchema& schema, std::uint64_t split_seed) {
    const int target = schema.feature_index(target_column);
    if (target < 0) throw ArgumentError("unknown target column '" + target_column + "'");
    if (schema.features.size() < 2) throw ArgumentError("downstream score needs feature columns besides the target");
    if (real.rows.size() < 5) throw ArgumentError("downstream score needs at least 5 real rows");
    if (synth.rows.empty()) throw ArgumentError("downstream score needs synthetic rows");

    const FeatureSpec& tf = schema.features[static_cast<std::size_t>(target)];

    // Feature matrix: numeric columns raw, categorical columns one-hot.
    const auto vectorize = [&](const Row& row) {
        std::vector<double> x;
        for (std::size_t f = 0; f < schema.features.size(); ++f) {
            if (static_cast<int>(f) == target) continue;
            const FeatureSpec& spec = schema.features[f];
            if (spec.is_numeric()) {
                x.push_back(num_value(row[f]));
            } else {
                const auto& cats = spec.categorical().categories;
                const std::uint64_t k = category_index(cat_value(row[f]), spec);
                for (std::size_t i = 0; i < cats.size(); ++i) x.push_back(i == k ? 1.0 : 0.0);
            }
        }
        return x;
    };

    // The same seeded 80/20 shuffle is applied to both tables; each learner
    // trains on its own 80% and both are evaluated on the held-out real 20%,
    // so identical tables produce identical training runs and a zero gap.
    const auto shuffled = [&](std::size_t n) {
        std::vector<std::size_t> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        Rng rng(split_seed);
        for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.integer(i)]);
        return order;
    };
    const std::vector<std::size_t> real_order = shuffled(real.rows.size());
    const std::vector<std::size_t> synth_order = shuffled(synth.rows.size());
    const std::size_t test_count = std::max<std::size_t>(1, real.rows.size() / 5);
    const std::size_t synth_skip = std::max<std::size_t>(1, synth.rows.size() / 5);

    std::vector<std::vector<double>> x_train_real, x_test;
    std::vector<const Row*> train_real_rows, test_rows;
    for (std::size_t i = 0; i < real_order.size(); ++i) {
        const Row& row = real.rows[real_order[i]];
        if (i < test_count) {
            x_test.push_back(vectorize(row));
            test_rows.push_back(&row);
        } else {
            x_train_real.push_back(vectorize(row));
            train_real_rows.push_back(&row);
        }
    }
    std::vector<std::vector<double>> x_train_synth;
    std::vector<const Row*> train_synth_rows;
    for (std::size_t i = synth_skip; i < synth_order.size(); ++i) {
        const Row& row = synth.rows[synth_order[i]];
        x_train_synth.push_back(vectorize(row));
        train_synth_rows.push_back(&row);
    }
    if (x_train_synth.empty()) throw ArgumentError("synthetic table too small for the downstream split");

    if (tf.is_numeric()) {
        const auto targets = [&](const std::vector<const Row*>& rows) {
            std::vector<double> y;
            for (const Row* r : rows) y.push_back(num_value((*r)[static_cast<std::size_t>(target)]));
            return y;
        };
        std::vector<double> y_real = targets(train_real_rows), y_test = targets(test_rows);
        std::vector<double> y_synth = targets(train_synth_rows);

        const auto r2 = [&](const BoostedStumps& model) {
            double mean = 0.0;
            for (double v : y_test) mean += v;
            mean /= static_cast<double>(y_test.size());
            double ss_res = 0.0, ss_tot = 0.0;
            for (std::size_t i = 0; i < y_test.size(); ++i) {
                const double pred = model.predict(x_test[i]);
                ss_res += (y_test[i] - pred) * (y_test[i] - pred);
                ss_tot += (y_test[i] - mean) * (y_test[i] - mean);
            }
            if (ss_tot <= 0.0) return ss_res <= 0.0 ? 1.0 : 0.0;
            return 1.0 - ss_res / ss_tot;
        };
        BoostedStumps on_real, on_synth;
        on_real.fit(x_train_real, y_real);
        on_synth.fit(x_train_synth, y_synth);
        return std::abs(r2(on_real) - r2(on_synth));
    }

    const auto& cats = tf.categorical().categories;
    const auto labels = [&](const std::vector<const Row*>& rows) {
        std::vector<int> y;
        for (const Row* r : rows)
            y.push_back(static_cast<int>(category_index(cat_value((*r)[static_cast<std::size_t>(target)]), tf)));
        return y;
    };
    std::vector<int> y_real = labels(train_real_rows), y_test = labels(test_rows);
    std::vector<int> y_synth = labels(train_synth_rows);

    const auto single_class = [](std::span<const int> y) {
        for (int v : y)
            if (v != y[0]) return false;
        return true;
    };
    if (single_class(y_real)) throw ArgumentError("target column '" + target_column + "' has a single class in the real training split");

    const auto accuracy = [&](const StumpClassifier& model) {
        std::size_t hit = 0;
        for (std::size_t i = 0; i < x_test.size(); ++i)
            hit += model.predict(x_test[i]) == y_test[i] ? 1u : 0u;
        return static_cast<double>(hit) / static_cast<double>(x_test.size());
    };
    StumpClassifier on_real, on_synth;
    on_real.fit(x_train_real, y_real, static_cast<int>(cats.size()));
    on_synth.fit(x_train_synth, y_synth, static_cast<int>(cats.size()));
    return std::abs(accuracy(on_real) - accuracy(on_synth));
}

std::string MetricsReport::to_json() const {
    json j;
    j["s_shape"] = s_shape;
    if (s_pair)
        j["s_pair"] = *s_pair;
    else
        j["s_pair"] = nullptr;
    j["overall"] = overall;
    j["per_column"] = per_column;
    j["per_pair"] = per_pair;
    if (overlap_fraction)
        j["overlap_fraction"] = *overlap_fraction;
    else
        j["overlap_fraction"] = nullptr;
    j["downstream"] = downstream;
    return j.dump(2) + "\n";
}

}  // namespace qtab
