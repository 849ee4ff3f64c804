#pragma once

#include <span>
#include <string>
#include <vector>

#include "qtab/common.hpp"
#include "qtab/schema.hpp"
#include "qtab/table.hpp"

namespace qtab {

using FeatureVector = std::vector<double>;
using Batch = std::vector<FeatureVector>;

// Discriminator input width: one entry per numeric feature plus a one-hot
// block per categorical feature, independent of the encoding mode.
int feature_vector_dim(const TabularSchema& schema);

// Numeric features scaled to [0,1] as bin_index / (2^q - 1); categorical
// features as one-hot blocks.
FeatureVector feature_vector(const Row& row, const TabularSchema& schema);

// Three-layer feed-forward classifier: input -> hidden -> hidden -> 1 with
// ReLU hidden units and a sigmoid output. Trained by plain gradient descent
// on the usual GAN discriminator loss; outputs are clamped to
// [1e-7, 1 - 1e-7] inside the losses to keep the logs finite.
class Discriminator {
public:
    static constexpr double kProbClip = 1e-7;

    Discriminator() = default;
    // Scaled-uniform (Glorot) init, weights drawn in a fixed documented
    // order so a seed pins every parameter.
    static Discriminator init(int input_dim, int hidden_width, std::uint64_t seed);
    // All-zero parameters; the output is sigmoid(0) = 0.5 for any input.
    static Discriminator zeros(int input_dim, int hidden_width);

    int input_dim() const { return input_dim_; }
    int hidden_width() const { return hidden_; }
    std::size_t num_params() const;

    double forward(std::span<const double> x) const;

    double loss_d(const Batch& real, const Batch& fake) const;
    double loss_g(const Batch& fake) const;

    // One vanilla gradient-descent step on loss_d. Throws TrainingError if a
    // gradient goes non-finite.
    void backward_update(const Batch& real, const Batch& fake, double eta_d);

    // Flat parameter access (w1,b1,w2,b2,w3,b3 order), used by the gradient
    // check and by checkpoint serialization.
    std::vector<double> flat_params() const;
    void set_flat_params(std::span<const double> p);

    std::string to_json() const;
    static Discriminator from_json(const std::string& text);

private:
    struct Grads;
    Grads gradients(const Batch& real, const Batch& fake) const;

    int input_dim_ = 0;
    int hidden_ = 0;
    std::vector<double> w1_, b1_, w2_, b2_, w3_;  // w row-major [out][in]
    double b3_ = 0.0;
};

}  // namespace qtab
