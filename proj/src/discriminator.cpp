#include "qtab/discriminator.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "qtab/encoding.hpp"

namespace qtab {

using nlohmann::json;

int feature_vector_dim(const TabularSchema& schema) {
    int d = 0;
    for (const auto& f : schema.features)
        d += f.is_numeric() ? 1 : static_cast<int>(f.categorical().categories.size());
    return d;
}

FeatureVector feature_vector(const Row& row, const TabularSchema& schema) {
    FeatureVector x;
    x.reserve(static_cast<std::size_t>(feature_vector_dim(schema)));
    for (std::size_t f = 0; f < schema.features.size(); ++f) {
        const FeatureSpec& feat = schema.features[f];
        if (feat.is_numeric()) {
            const auto idx = bin_numeric(num_value(row[f]), feat.numeric());
            const double top = static_cast<double>(feat.numeric().bin_count() - 1);
            x.push_back(top > 0.0 ? static_cast<double>(idx) / top : 0.0);
        } else {
            const std::size_t c = feat.categorical().categories.size();
            const std::uint64_t k = category_index(cat_value(row[f]), feat);
            for (std::size_t i = 0; i < c; ++i) x.push_back(i == k ? 1.0 : 0.0);
        }
    }
    return x;
}

namespace {

double clip_prob(double p) {
    return std::clamp(p, Discriminator::kProbClip, 1.0 - Discriminator::kProbClip);
}

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

}  // namespace

Discriminator Discriminator::init(int input_dim, int hidden_width, std::uint64_t seed) {
    if (input_dim < 1 || hidden_width < 1) throw ArgumentError("discriminator dims must be >= 1");
    Discriminator d = zeros(input_dim, hidden_width);
    Rng rng(seed);
    const auto fill = [&rng](std::vector<double>& w, int fan_in, int fan_out) {
        const double a = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
        for (double& v : w) v = rng.uniform(-a, a);
    };
    fill(d.w1_, input_dim, hidden_width);
    fill(d.w2_, hidden_width, hidden_width);
    fill(d.w3_, hidden_width, 1);
    // Biases start at zero.
    return d;
}

Discriminator Discriminator::zeros(int input_dim, int hidden_width) {
    if (input_dim < 1 || hidden_width < 1) throw ArgumentError("discriminator dims must be >= 1");
    Discriminator d;
    d.input_dim_ = input_dim;
    d.hidden_ = hidden_width;
    d.w1_.assign(static_cast<std::size_t>(hidden_width) * static_cast<std::size_t>(input_dim), 0.0);
    d.b1_.assign(static_cast<std::size_t>(hidden_width), 0.0);
    d.w2_.assign(static_cast<std::size_t>(hidden_width) * static_cast<std::size_t>(hidden_width), 0.0);
    d.b2_.assign(static_cast<std::size_t>(hidden_width), 0.0);
    d.w3_.assign(static_cast<std::size_t>(hidden_width), 0.0);
    d.b3_ = 0.0;
    return d;
}

std::size_t Discriminator::num_params() const {
    return w1_.size() + b1_.size() + w2_.size() + b2_.size() + w3_.size() + 1;
}

double Discriminator::forward(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != input_dim_)
        throw ArgumentError("feature vector length " + std::to_string(x.size()) +
                            " does not match discriminator input " + std::to_string(input_dim_));
    std::vector<double> h1(static_cast<std::size_t>(hidden_)), h2(static_cast<std::size_t>(hidden_));
    for (int o = 0; o < hidden_; ++o) {
        double z = b1_[static_cast<std::size_t>(o)];
        const double* row = w1_.data() + static_cast<std::size_t>(o) * static_cast<std::size_t>(input_dim_);
        for (int i = 0; i < input_dim_; ++i) z += row[i] * x[static_cast<std::size_t>(i)];
        h1[static_cast<std::size_t>(o)] = std::max(0.0, z);
    }
    for (int o = 0; o < hidden_; ++o) {
        double z = b2_[static_cast<std::size_t>(o)];
        const double* row = w2_.data() + static_cast<std::size_t>(o) * static_cast<std::size_t>(hidden_);
        for (int i = 0; i < hidden_; ++i) z += row[i] * h1[static_cast<std::size_t>(i)];
        h2[static_cast<std::size_t>(o)] = std::max(0.0, z);
    }
    double z = b3_;
    for (int i = 0; i < hidden_; ++i) z += w3_[static_cast<std::size_t>(i)] * h2[static_cast<std::size_t>(i)];
    return sigmoid(z);
}

double Discriminator::loss_d(const Batch& real, const Batch& fake) const {
    if (real.empty() || fake.empty()) throw ArgumentError("loss_d needs non-empty batches");
    double loss = 0.0;
    for (const auto& x : real) loss += -std::log(clip_prob(forward(x)));
    loss /= static_cast<double>(real.size());
    double loss_f = 0.0;
    for (const auto& x : fake) loss_f += -std::log(clip_prob(1.0 - forward(x)));
    return loss + loss_f / static_cast<double>(fake.size());
}

double Discriminator::loss_g(const Batch& fake) const {
    if (fake.empty()) throw ArgumentError("loss_g needs a non-empty batch");
    double loss = 0.0;
    for (const auto& x : fake) loss += -std::log(clip_prob(forward(x)));
    return loss / static_cast<double>(fake.size());
}

struct Discriminator::Grads {
    std::vector<double> w1, b1, w2, b2, w3;
    double b3 = 0.0;
};

Discriminator::Grads Discriminator::gradients(const Batch& real, const Batch& fake) const {
    Grads g;
    g.w1.assign(w1_.size(), 0.0);
    g.b1.assign(b1_.size(), 0.0);
    g.w2.assign(w2_.size(), 0.0);
    g.b2.assign(b2_.size(), 0.0);
    g.w3.assign(w3_.size(), 0.0);

    std::vector<double> h1(static_cast<std::size_t>(hidden_)), h2(static_cast<std::size_t>(hidden_));
    std::vector<double> d1(static_cast<std::size_t>(hidden_)), d2(static_cast<std::size_t>(hidden_));

    // dL/dz3 for one sample: real term gives (p - 1)/m, fake term gives p/m,
    // both after clipping cancels out of the chain only when the output is
    // inside the clip band; outside it the gradient is zero by construction.
    const auto accumulate = [&](const FeatureVector& x, bool is_real, double inv_m) {
        for (int o = 0; o < hidden_; ++o) {
            double z = b1_[static_cast<std::size_t>(o)];
            const double* row = w1_.data() + static_cast<std::size_t>(o) * static_cast<std::size_t>(input_dim_);
            for (int i = 0; i < input_dim_; ++i) z += row[i] * x[static_cast<std::size_t>(i)];
            h1[static_cast<std::size_t>(o)] = std::max(0.0, z);
        }
        for (int o = 0; o < hidden_; ++o) {
            double z = b2_[static_cast<std::size_t>(o)];
            const double* row = w2_.data() + static_cast<std::size_t>(o) * static_cast<std::size_t>(hidden_);
            for (int i = 0; i < hidden_; ++i) z += row[i] * h1[static_cast<std::size_t>(i)];
            h2[static_cast<std::size_t>(o)] = std::max(0.0, z);
        }
        double z3 = b3_;
        for (int i = 0; i < hidden_; ++i) z3 += w3_[static_cast<std::size_t>(i)] * h2[static_cast<std::size_t>(i)];
        const double p = sigmoid(z3);

        double dz3;
        if (p <= kProbClip || p >= 1.0 - kProbClip) {
            dz3 = 0.0;  // clipped: loss is locally constant in the parameters
        } else {
            dz3 = (is_real ? p - 1.0 : p) * inv_m;
        }
        if (dz3 == 0.0) return;

        g.b3 += dz3;
        for (int i = 0; i < hidden_; ++i) {
            g.w3[static_cast<std::size_t>(i)] += dz3 * h2[static_cast<std::size_t>(i)];
            d2[static_cast<std::size_t>(i)] =
                h2[static_cast<std::size_t>(i)] > 0.0 ? dz3 * w3_[static_cast<std::size_t>(i)] : 0.0;
        }
        for (int o = 0; o < hidden_; ++o) {
            const double d = d2[static_cast<std::size_t>(o)];
            if (d != 0.0) {
                double* wrow = g.w2.data() + static_cast<std::size_t>(o) * static_cast<std::size_t>(hidden_);
                for (int i = 0; i < hidden_; ++i) wrow[i] += d * h1[static_cast<std::size_t>(i)];
                g.b2[static_cast<std::size_t>(o)] += d;
            }
        }
        for (int i = 0; i < hidden_; ++i) {
            double acc = 0.0;
            for (int o = 0; o < hidden_; ++o)
                acc += d2[static_cast<std::size_t>(o)] *
                       w2_[static_cast<std::size_t>(o) * static_cast<std::size_t>(hidden_) + static_cast<std::size_t>(i)];
            d1[static_cast<std::size_t>(i)] = h1[static_cast<std::size_t>(i)] > 0.0 ? acc : 0.0;
        }
        for (int o = 0; o < hidden_; ++o) {
            const double d = d1[static_cast<std::size_t>(o)];
            if (d != 0.0) {
                double* wrow = g.w1.data() + static_cast<std::size_t>(o) * static_cast<std::size_t>(input_dim_);
                for (int i = 0; i < input_dim_; ++i) wrow[i] += d * x[static_cast<std::size_t>(i)];
                g.b1[static_cast<std::size_t>(o)] += d;
            }
        }
    };

    const double inv_real = 1.0 / static_cast<double>(real.size());
    const double inv_fake = 1.0 / static_cast<double>(fake.size());
    for (const auto& x : real) accumulate(x, true, inv_real);
    for (const auto& x : fake) accumulate(x, false, inv_fake);
    return g;
}

void Discriminator::backward_update(const Batch& real, const Batch& fake, double eta_d) {
    if (real.empty() || fake.empty()) throw ArgumentError("backward_update needs non-empty batches");
    if (!(eta_d >= 0.0)) throw ArgumentError("eta_d must be >= 0");
    const Grads g = gradients(real, fake);
    const auto finite = [](const std::vector<double>& v) {
        for (double x : v)
            if (!std::isfinite(x)) return false;
        return true;
    };
    if (!finite(g.w1) || !finite(g.b1) || !finite(g.w2) || !finite(g.b2) || !finite(g.w3) ||
        !std::isfinite(g.b3))
        throw TrainingError("discriminator gradient went non-finite");
    const auto step = [eta_d](std::vector<double>& w, const std::vector<double>& gw) {
        for (std::size_t i = 0; i < w.size(); ++i) w[i] -= eta_d * gw[i];
    };
    step(w1_, g.w1);
    step(b1_, g.b1);
    step(w2_, g.w2);
    step(b2_, g.b2);
    step(w3_, g.w3);
    b3_ -= eta_d * g.b3;
}

std::vector<double> Discriminator::flat_params() const {
    std::vector<double> p;
    p.reserve(num_params());
    for (const auto* v : {&w1_, &b1_, &w2_, &b2_, &w3_}) p.insert(p.end(), v->begin(), v->end());
    p.push_back(b3_);
    return p;
}

void Discriminator::set_flat_params(std::span<const double> p) {
    if (p.size() != num_params()) throw ArgumentError("flat parameter length mismatch");
    std::size_t at = 0;
    for (auto* v : {&w1_, &b1_, &w2_, &b2_, &w3_}) {
        std::copy(p.begin() + static_cast<std::ptrdiff_t>(at),
                  p.begin() + static_cast<std::ptrdiff_t>(at + v->size()), v->begin());
        at += v->size();
    }
    b3_ = p[at];
}

std::string Discriminator::to_json() const {
    json j;
    j["input_dim"] = input_dim_;
    j["hidden_width"] = hidden_;
    j["params"] = flat_params();
    return j.dump();
}

Discriminator Discriminator::from_json(const std::string& text) {
    json j = json::parse(text);
    Discriminator d = zeros(j.at("input_dim").get<int>(), j.at("hidden_width").get<int>());
    d.set_flat_params(j.at("params").get<std::vector<double>>());
    return d;
}

}  // namespace qtab
