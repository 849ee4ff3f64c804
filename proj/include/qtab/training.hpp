#pragma once

#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qtab/ansatz.hpp"
#include "qtab/discriminator.hpp"
#include "qtab/encoding.hpp"

namespace qtab {

// Per-basis-state decode cache for exact expectations: the feature vector
// of every basis state that decodes cleanly. Only available up to
// kMaxExactQubits total qubits.
struct BasisTable {
    static constexpr int kMaxExactQubits = 16;

    int num_qubits = 0;
    std::vector<FeatureVector> vectors;  // empty vector marks an invalid basis state
    std::vector<std::uint8_t> valid;

    bool any_valid() const;
};

BasisTable build_basis_table(const TabularSchema& schema, const RegisterLayout& layout);

// Generator-loss observable: M(x) = -log clip(D(vec(x))) per basis state.
// Basis states that do not decode (possible only in unique-row-index mode)
// score as certainly fake, -log(clip floor), so the generator is pushed off
// them; valid rows are never produced from them since sampling renormalizes
// over the valid sector.
std::vector<double> loss_observable(const Discriminator& disc, const BasisTable& table);

// <M> = sum_x p(x) M(x) over the full 2^N distribution. Deterministic.
double exact_expectation(const CircuitAnsatz& circuit, std::span<const double> params,
                         std::span<const double> observable);

// Monte-Carlo estimate of the same expectation from `shots` measurements.
double sampled_expectation(const CircuitAnsatz& circuit, std::span<const double> params,
                           std::span<const double> observable, int shots, Rng& rng);

// E[-log D] of the generator distribution: exact when shots == 0 (requires
// N <= BasisTable::kMaxExactQubits), sampled otherwise.
double generator_expectation(const CircuitAnsatz& circuit, std::span<const double> params,
                             const Discriminator& disc, const TabularSchema& schema, int shots = 0,
                             std::uint64_t seed = 0);

// Exact gradient of exact_expectation with respect to every circuit
// parameter via parameter-shift rules. RY and IsingYY use the two-term
// +-pi/2 rule; gates whose generator picks up a zero eigenvalue (controlled
// RY) or the +-1 pair (Givens, controlled Givens) use the corresponding
// exact four-term rule. The shifted evaluations are independent and run
// under OpenMP; results are combined serially in parameter order, so the
// gradient is bit-identical at any thread count. With shots > 0 each
// shifted evaluation is estimated from `shots` measurements instead
// (unbiased, seeded per evaluation).
std::vector<double> parameter_shift_gradient(const CircuitAnsatz& circuit,
                                             std::span<const double> params,
                                             std::span<const double> observable, int shots = 0,
                                             std::uint64_t seed = 0);

// Same rules with the observable given as a function of the basis index;
// used when the register is too wide to tabulate 2^N values.
std::vector<double> parameter_shift_gradient(
    const CircuitAnsatz& circuit, std::span<const double> params,
    const std::function<double(std::uint64_t)>& observable, int shots = 0, std::uint64_t seed = 0);

// D_KL(P_real || P_gen) over basis states, smoothing the generated
// distribution with a 1e-9 floor so observed rows with zero generated mass
// stay finite.
double kl_divergence(const std::map<std::uint64_t, double>& real_probs,
                     std::span<const double> gen_probs);

struct TrainingConfig {
    int depth = 1;
    double batch_fraction = 0.2;
    double eta_g = 0.1;
    double eta_d = 0.1;
    int epochs = 1;
    int disc_steps = 1;
    std::uint64_t seed = 0;
    int hidden_width = 0;  // 0 -> twice the feature-vector width
    int shots = 0;         // 0 -> exact expectations
    double theta_init_range = kDefaultThetaInitRange;

    static constexpr double kDefaultThetaInitRange = 0.78539816339744830962;  // pi/4

    void validate() const;
};

struct EpochRecord {
    int epoch = 0;
    double loss_d = 0.0;
    double loss_g = 0.0;
    double kl = 0.0;
};

// Self-describing training state: together with nothing else it can resume
// training or generate samples.
struct Checkpoint {
    SchemaFile schema_file;
    TrainingConfig config;
    std::uint64_t schema_fingerprint = 0;

    int epoch = 0;
    std::vector<double> theta;
    Discriminator disc;
    std::string rng_state;

    double best_kl = std::numeric_limits<double>::infinity();
    int best_epoch = 0;
    std::vector<double> best_theta;

    std::vector<EpochRecord> history;
    bool aborted = false;  // training stopped on a non-finite loss
};

std::string checkpoint_to_json(const Checkpoint& ckpt);
Checkpoint checkpoint_from_json(const std::string& text);
void save_checkpoint(const Checkpoint& ckpt, const std::string& path);
Checkpoint load_checkpoint(const std::string& path);

using EpochCallback = std::function<void(const EpochRecord&)>;

// Alternating GAN loop: per epoch, disc_steps discriminator updates on
// fresh real/fake batches, one generator parameter-shift step, then the
// KL divergence between the training distribution and the generated row
// distribution is logged and the best-KL parameters are retained.
// Deterministic given (data, config); pass `resume` to continue a run.
Checkpoint train(const EncodedDataset& data, const SchemaFile& sf, const TrainingConfig& cfg,
                 const EpochCallback& on_epoch = {}, const Checkpoint* resume = nullptr);

// Sample num_rows decoded rows from the stored generator (best-KL
// parameters by default, final parameters otherwise).
Table generate(const Checkpoint& ckpt, int num_rows, std::uint64_t seed, bool use_best = true);

}  // namespace qtab
