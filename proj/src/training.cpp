#include "qtab/training.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

namespace qtab {

using nlohmann::json;

namespace {

constexpr double kKlFloor = 1e-9;
constexpr int kAutoShotsAboveExactLimit = 4096;

StateVector run_circuit(const CircuitAnsatz& circuit, std::span<const double> params,
                        int override_gate, double override_angle, bool parallel) {
    StateVector state(circuit.num_qubits());
    state.set_parallel(parallel);
    for (std::size_t g = 0; g < circuit.gates.size(); ++g) {
        const GateSpec& gate = circuit.gates[g];
        if (static_cast<int>(g) != override_gate) {
            state.apply(gate, params);
            continue;
        }
        const double a = override_angle;
        switch (gate.kind) {
            case GateKind::RY: state.apply_ry(gate.qubits[0], a); break;
            case GateKind::IsingYY: state.apply_isingyy(gate.qubits[0], gate.qubits[1], a); break;
            case GateKind::ControlledRY:
                state.apply_controlled_ry(gate.qubits[0], gate.qubits[1], a);
                break;
            case GateKind::Givens: state.apply_givens(gate.qubits[0], gate.qubits[1], a); break;
            case GateKind::ControlledGivens:
                state.apply_controlled_givens(gate.qubits[0], gate.qubits[1], gate.qubits[2], a);
                break;
            case GateKind::X: state.apply_x(gate.qubits[0]); break;
        }
    }
    return state;
}

double dot_expectation(const StateVector& state, std::span<const double> observable) {
    const auto amps = state.amplitudes();
    double acc = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) acc += std::norm(amps[i]) * observable[i];
    return acc;
}

// Parameter-shift terms per gate kind. RY and IsingYY are exp(-i theta P/2)
// with P^2 = I, a single frequency: the two-term rule. A controlled RY has
// generator eigenvalues {0, +-1/2} (frequencies 1/2 and 1) and the Givens
// gates, parameterized as exp(-i theta P) with P eigenvalues {0, +-1},
// produce frequencies 1 and 2; both need the exact four-term rule at the
// shifts and coefficients below.
struct ShiftTerm {
    double shift;
    double coeff;
};

std::span<const ShiftTerm> shift_rule(GateKind kind) {
    constexpr double kPi = 3.14159265358979323846;
    static const ShiftTerm two_term[] = {{kPi / 2, 0.5}, {-kPi / 2, -0.5}};
    constexpr double c_plus = 0.42677669529663688110;   // (sqrt(2)+1) / (4 sqrt(2))
    constexpr double c_minus = 0.07322330470336311890;  // (sqrt(2)-1) / (4 sqrt(2))
    static const ShiftTerm four_term_half[] = {{kPi / 2, c_plus},
                                               {-kPi / 2, -c_plus},
                                               {3 * kPi / 2, -c_minus},
                                               {-3 * kPi / 2, c_minus}};
    static const ShiftTerm four_term_full[] = {{kPi / 4, 2 * c_plus},
                                               {-kPi / 4, -2 * c_plus},
                                               {3 * kPi / 4, -2 * c_minus},
                                               {-3 * kPi / 4, 2 * c_minus}};
    switch (kind) {
        case GateKind::RY:
        case GateKind::IsingYY:
            return two_term;
        case GateKind::ControlledRY:
            return four_term_half;
        case GateKind::Givens:
        case GateKind::ControlledGivens:
            return four_term_full;
        case GateKind::X:
            break;
    }
    return {};
}

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t salt) {
    std::uint64_t x = base ^ (salt + 0x9e3779b97f4a7c15ull + (base << 6) + (base >> 2));
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdull;
    x ^= x >> 33;
    return x;
}

}  // namespace

bool BasisTable::any_valid() const {
    for (auto v : valid)
        if (v) return true;
    return false;
}

BasisTable build_basis_table(const TabularSchema& schema, const RegisterLayout& layout) {
    const int n = layout.total_qubits();
    if (n > BasisTable::kMaxExactQubits)
        throw ConfigError("exact expectations need <= " + std::to_string(BasisTable::kMaxExactQubits) +
                          " qubits, layout has " + std::to_string(n));
    BasisTable table;
    table.num_qubits = n;
    const std::uint64_t dim = std::uint64_t{1} << n;
    table.vectors.resize(dim);
    table.valid.assign(dim, 0);
    for (std::uint64_t x = 0; x < dim; ++x) {
        if (!bits_valid(x, schema, layout)) continue;
        const Row row = decode_bits(to_bitstring(x, n), schema, layout);
        table.vectors[x] = feature_vector(row, schema);
        table.valid[x] = 1;
    }
    return table;
}

std::vector<double> loss_observable(const Discriminator& disc, const BasisTable& table) {
    const double fake_score = -std::log(Discriminator::kProbClip);
    std::vector<double> m(table.vectors.size(), fake_score);
    for (std::size_t x = 0; x < table.vectors.size(); ++x) {
        if (!table.valid[x]) continue;
        const double p = std::clamp(disc.forward(table.vectors[x]), Discriminator::kProbClip,
                                    1.0 - Discriminator::kProbClip);
        m[x] = -std::log(p);
    }
    return m;
}

double exact_expectation(const CircuitAnsatz& circuit, std::span<const double> params,
                         std::span<const double> observable) {
    if (observable.size() != (std::size_t{1} << circuit.num_qubits()))
        throw ArgumentError("observable length does not match circuit dimension");
    return dot_expectation(run_circuit(circuit, params, -1, 0.0, true), observable);
}

double sampled_expectation(const CircuitAnsatz& circuit, std::span<const double> params,
                           std::span<const double> observable, int shots, Rng& rng) {
    if (shots < 1) throw ArgumentError("shots must be >= 1");
    const StateVector state = run_circuit(circuit, params, -1, 0.0, true);
    double acc = 0.0;
    for (std::uint64_t idx : state.sample(shots, rng)) acc += observable[idx];
    return acc / static_cast<double>(shots);
}

double generator_expectation(const CircuitAnsatz& circuit, std::span<const double> params,
                             const Discriminator& disc, const TabularSchema& schema, int shots,
                             std::uint64_t seed) {
    const BasisTable table = build_basis_table(schema, circuit.layout);
    const std::vector<double> m = loss_observable(disc, table);
    if (shots == 0) return exact_expectation(circuit, params, m);
    Rng rng(seed);
    return sampled_expectation(circuit, params, m, shots, rng);
}

namespace {

template <typename Observable>
std::vector<double> shift_gradient_impl(const CircuitAnsatz& circuit,
                                        std::span<const double> params, Observable&& observe,
                                        int shots, std::uint64_t seed) {
    if (static_cast<int>(params.size()) != circuit.num_params)
        throw ArgumentError("parameter length mismatch");

    struct Job {
        int gate;
        int param;
        double angle;
        double coeff;
    };
    std::vector<Job> jobs;
    for (std::size_t g = 0; g < circuit.gates.size(); ++g) {
        const GateSpec& gate = circuit.gates[g];
        if (gate.param_index < 0) continue;
        for (const ShiftTerm& t : shift_rule(gate.kind))
            jobs.push_back({static_cast<int>(g), gate.param_index,
                            params[static_cast<std::size_t>(gate.param_index)] + t.shift, t.coeff});
    }

    std::vector<double> values(jobs.size());
    const std::int64_t njobs = static_cast<std::int64_t>(jobs.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t j = 0; j < njobs; ++j) {
        const Job& job = jobs[static_cast<std::size_t>(j)];
        const StateVector state = run_circuit(circuit, params, job.gate, job.angle, false);
        if (shots == 0) {
            const auto amps = state.amplitudes();
            double acc = 0.0;
            for (std::size_t i = 0; i < amps.size(); ++i) acc += std::norm(amps[i]) * observe(i);
            values[static_cast<std::size_t>(j)] = acc;
        } else {
            Rng rng(mix_seed(seed, static_cast<std::uint64_t>(j)));
            double acc = 0.0;
            for (std::uint64_t idx : state.sample(shots, rng)) acc += observe(idx);
            values[static_cast<std::size_t>(j)] = acc / static_cast<double>(shots);
        }
    }

    // Serial reduction in job order keeps the result thread-count independent.
    std::vector<double> grad(params.size(), 0.0);
    for (std::size_t j = 0; j < jobs.size(); ++j)
        grad[static_cast<std::size_t>(jobs[j].param)] += jobs[j].coeff * values[j];
    return grad;
}

}  // namespace

std::vector<double> parameter_shift_gradient(const CircuitAnsatz& circuit,
                                             std::span<const double> params,
                                             std::span<const double> observable, int shots,
                                             std::uint64_t seed) {
    if (observable.size() != (std::size_t{1} << circuit.num_qubits()))
        throw ArgumentError("observable length does not match circuit dimension");
    return shift_gradient_impl(
        circuit, params, [observable](std::uint64_t i) { return observable[i]; }, shots, seed);
}

std::vector<double> parameter_shift_gradient(
    const CircuitAnsatz& circuit, std::span<const double> params,
    const std::function<double(std::uint64_t)>& observable, int shots, std::uint64_t seed) {
    return shift_gradient_impl(circuit, params, observable, shots, seed);
}

double kl_divergence(const std::map<std::uint64_t, double>& real_probs,
                     std::span<const double> gen_probs) {
    if (real_probs.empty()) throw ArgumentError("real distribution is empty");
    double kl = 0.0;
    for (const auto& [idx, p] : real_probs) {
        if (p <= 0.0) continue;
        const double q = std::max(idx < gen_probs.size() ? gen_probs[idx] : 0.0, kKlFloor);
        kl += p * std::log(p / q);
    }
    return kl;
}

void TrainingConfig::validate() const {
    if (depth < 1) throw ArgumentError("depth must be >= 1");
    if (!(batch_fraction > 0.0 && batch_fraction <= 1.0))
        throw ArgumentError("batch_fraction must be in (0, 1]");
    if (!(eta_g > 0.0) || !(eta_d > 0.0)) throw ArgumentError("learning rates must be > 0");
    if (epochs < 1) throw ArgumentError("epochs must be >= 1");
    if (disc_steps < 1) throw ArgumentError("disc_steps must be >= 1");
    if (shots < 0) throw ArgumentError("shots must be >= 0 (0 = exact)");
    if (hidden_width < 0) throw ArgumentError("hidden_width must be >= 0 (0 = data width)");
    if (!(theta_init_range >= 0.0)) throw ArgumentError("theta_init_range must be >= 0");
}

namespace {

json config_to_json(const TrainingConfig& c) {
    json j;
    j["depth"] = c.depth;
    j["batch_fraction"] = c.batch_fraction;
    j["eta_g"] = c.eta_g;
    j["eta_d"] = c.eta_d;
    j["epochs"] = c.epochs;
    j["disc_steps"] = c.disc_steps;
    j["seed"] = c.seed;
    j["hidden_width"] = c.hidden_width;
    j["shots"] = c.shots;
    j["theta_init_range"] = c.theta_init_range;
    return j;
}

TrainingConfig config_from_json(const json& j) {
    TrainingConfig c;
    c.depth = j.at("depth").get<int>();
    c.batch_fraction = j.at("batch_fraction").get<double>();
    c.eta_g = j.at("eta_g").get<double>();
    c.eta_d = j.at("eta_d").get<double>();
    c.epochs = j.at("epochs").get<int>();
    c.disc_steps = j.at("disc_steps").get<int>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.hidden_width = j.at("hidden_width").get<int>();
    c.shots = j.at("shots").get<int>();
    c.theta_init_range = j.at("theta_init_range").get<double>();
    return c;
}

}  // namespace

std::string checkpoint_to_json(const Checkpoint& ckpt) {
    json j;
    j["version"] = 1;
    j["schema"] = json::parse(schema_to_json(ckpt.schema_file));
    j["config"] = config_to_json(ckpt.config);
    j["schema_fingerprint"] = ckpt.schema_fingerprint;
    j["epoch"] = ckpt.epoch;
    j["theta"] = ckpt.theta;
    j["disc"] = json::parse(ckpt.disc.to_json());
    j["rng_state"] = ckpt.rng_state;
    if (std::isfinite(ckpt.best_kl))
        j["best_kl"] = ckpt.best_kl;
    else
        j["best_kl"] = nullptr;
    j["best_epoch"] = ckpt.best_epoch;
    j["best_theta"] = ckpt.best_theta;
    json hist = json::array();
    for (const EpochRecord& r : ckpt.history) hist.push_back({r.epoch, r.loss_d, r.loss_g, r.kl});
    j["history"] = hist;
    j["aborted"] = ckpt.aborted;
    return j.dump() + "\n";
}

Checkpoint checkpoint_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw DataError(std::string("checkpoint is not valid JSON: ") + e.what());
    }
    if (j.value("version", 0) != 1) throw DataError("unsupported checkpoint version");
    Checkpoint c;
    c.schema_file = schema_from_json(j.at("schema").dump());
    c.config = config_from_json(j.at("config"));
    c.schema_fingerprint = j.at("schema_fingerprint").get<std::uint64_t>();
    c.epoch = j.at("epoch").get<int>();
    c.theta = j.at("theta").get<std::vector<double>>();
    c.disc = Discriminator::from_json(j.at("disc").dump());
    c.rng_state = j.at("rng_state").get<std::string>();
    c.best_kl = j.at("best_kl").is_null() ? std::numeric_limits<double>::infinity()
                                          : j.at("best_kl").get<double>();
    c.best_epoch = j.at("best_epoch").get<int>();
    c.best_theta = j.at("best_theta").get<std::vector<double>>();
    for (const auto& r : j.at("history"))
        c.history.push_back({r.at(0).get<int>(), r.at(1).get<double>(), r.at(2).get<double>(),
                             r.at(3).get<double>()});
    c.aborted = j.value("aborted", false);
    return c;
}

void save_checkpoint(const Checkpoint& ckpt, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write checkpoint: " + path);
    out << checkpoint_to_json(ckpt);
}

Checkpoint load_checkpoint(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open checkpoint: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return checkpoint_from_json(text);
}

Checkpoint train(const EncodedDataset& data, const SchemaFile& sf, const TrainingConfig& cfg,
                 const EpochCallback& on_epoch, const Checkpoint* resume) {
    cfg.validate();
    sf.schema.validate();
    if (data.rows.empty()) throw ArgumentError("training data is empty");
    if (data.schema_fingerprint != schema_hash(sf))
        throw DataError("encoded dataset was produced with a different schema");
    if (data.mode != sf.mode) throw DataError("encoded dataset mode differs from schema mode");

    const RegisterLayout layout = build_layout(sf.schema, sf.mode);
    if (data.num_bits != layout.total_qubits())
        throw DataError("encoded dataset width does not match the layout");
    const CircuitAnsatz circuit = build_circuit(layout, cfg.depth);
    const int n = layout.total_qubits();

    int shots = cfg.shots;
    if (shots == 0 && n > BasisTable::kMaxExactQubits) shots = kAutoShotsAboveExactLimit;
    const bool exact = shots == 0;

    const BasisTable table = exact ? build_basis_table(sf.schema, layout) : BasisTable{};

    // Real side: basis indices, appearance histogram and feature vectors.
    std::vector<std::uint64_t> real_idx;
    real_idx.reserve(data.rows.size());
    std::map<std::uint64_t, double> real_hist;
    for (const std::string& bits : data.rows) {
        const std::uint64_t idx = from_bitstring(bits);
        real_idx.push_back(idx);
        real_hist[idx] += 1.0;
    }
    for (auto& [_, v] : real_hist) v /= static_cast<double>(real_idx.size());
    std::vector<FeatureVector> real_vecs;
    real_vecs.reserve(real_idx.size());
    for (const std::string& bits : data.rows)
        real_vecs.push_back(feature_vector(decode_bits(bits, sf.schema, layout), sf.schema));

    const int input_dim = feature_vector_dim(sf.schema);
    // Default width: twice the feature-vector length, floored so narrow
    // schemas still get a discriminator with usable capacity.
    const int hidden = cfg.hidden_width > 0 ? cfg.hidden_width : std::max(16, 2 * input_dim);
    const int batch =
        std::max<int>(1, static_cast<int>(std::llround(cfg.batch_fraction *
                                                       static_cast<double>(real_idx.size()))));

    Checkpoint ckpt;
    Rng rng;
    if (resume) {
        ckpt = *resume;
        if (ckpt.schema_fingerprint != schema_hash(sf))
            throw DataError("resume checkpoint belongs to a different schema");
        const TrainingConfig& old = ckpt.config;
        if (old.depth != cfg.depth || old.batch_fraction != cfg.batch_fraction ||
            old.eta_g != cfg.eta_g || old.eta_d != cfg.eta_d || old.disc_steps != cfg.disc_steps ||
            old.seed != cfg.seed || old.hidden_width != cfg.hidden_width ||
            old.shots != cfg.shots || old.theta_init_range != cfg.theta_init_range)
            throw ArgumentError("resume config differs from the checkpoint (only epochs may change)");
        ckpt.config.epochs = cfg.epochs;
        rng.restore(ckpt.rng_state);
    } else {
        ckpt.schema_file = sf;
        ckpt.config = cfg;
        ckpt.schema_fingerprint = schema_hash(sf);
        rng = Rng(cfg.seed);
        ckpt.theta.resize(static_cast<std::size_t>(circuit.num_params));
        for (double& t : ckpt.theta) t = rng.uniform(-cfg.theta_init_range, cfg.theta_init_range);
        ckpt.disc = Discriminator::init(input_dim, hidden, rng.raw());
    }

    const auto valid_at = [&](std::uint64_t i) {
        return exact ? table.valid[i] != 0 : bits_valid(i, sf.schema, layout);
    };
    const auto vector_at = [&](std::uint64_t i) -> FeatureVector {
        if (exact) return table.vectors[i];
        return feature_vector(decode_bits(to_bitstring(i, n), sf.schema, layout), sf.schema);
    };
    const double fake_score = -std::log(Discriminator::kProbClip);

    for (int epoch = ckpt.epoch + 1; epoch <= cfg.epochs; ++epoch) {
        const std::vector<double> theta_snapshot = ckpt.theta;
        const Discriminator disc_snapshot = ckpt.disc;
        EpochRecord rec;
        rec.epoch = epoch;
        try {
            const StateVector state = run_circuit(circuit, ckpt.theta, -1, 0.0, true);
            const std::vector<double> probs = state.probabilities();
            // Fake samples always come from the decodable sector,
            // renormalized (closed-form rejection sampling).
            std::vector<double> cum(probs.size());
            double mass = 0.0;
            for (std::size_t i = 0; i < probs.size(); ++i) {
                mass += valid_at(i) ? probs[i] : 0.0;
                cum[i] = mass;
            }
            if (mass <= 0.0) throw TrainingError("generator assigns no mass to decodable rows");
            for (double& c : cum) c /= mass;
            cum.back() = 1.0;

            for (int k = 0; k < cfg.disc_steps; ++k) {
                Batch real_batch, fake_batch;
                real_batch.reserve(static_cast<std::size_t>(batch));
                fake_batch.reserve(static_cast<std::size_t>(batch));
                for (int i = 0; i < batch; ++i)
                    real_batch.push_back(real_vecs[rng.integer(real_vecs.size())]);
                for (int i = 0; i < batch; ++i) fake_batch.push_back(vector_at(rng.categorical(cum)));
                rec.loss_d = ckpt.disc.loss_d(real_batch, fake_batch);
                ckpt.disc.backward_update(real_batch, fake_batch, cfg.eta_d);
            }

            // Generator step against the frozen discriminator. Basis states
            // that cannot decode score as certainly fake.
            if (exact) {
                const std::vector<double> observable = loss_observable(ckpt.disc, table);
                rec.loss_g = dot_expectation(state, observable);
                const std::vector<double> grad =
                    parameter_shift_gradient(circuit, ckpt.theta, observable);
                for (std::size_t i = 0; i < ckpt.theta.size(); ++i)
                    ckpt.theta[i] -= cfg.eta_g * grad[i];
            } else {
                const auto observe = [&](std::uint64_t i) {
                    if (!valid_at(i)) return fake_score;
                    const double p = std::clamp(ckpt.disc.forward(vector_at(i)),
                                                Discriminator::kProbClip,
                                                1.0 - Discriminator::kProbClip);
                    return -std::log(p);
                };
                Rng loss_rng(rng.raw());
                double acc = 0.0;
                for (std::uint64_t idx : state.sample(shots, loss_rng)) acc += observe(idx);
                rec.loss_g = acc / static_cast<double>(shots);
                const std::vector<double> grad = parameter_shift_gradient(
                    circuit, ckpt.theta, std::function<double(std::uint64_t)>(observe), shots,
                    rng.raw());
                for (std::size_t i = 0; i < ckpt.theta.size(); ++i)
                    ckpt.theta[i] -= cfg.eta_g * grad[i];
            }

            // KL of the generated row distribution (decodable sector,
            // renormalized) against the training histogram; computed from
            // the exact simulated distribution in either mode.
            const StateVector post = run_circuit(circuit, ckpt.theta, -1, 0.0, true);
            std::vector<double> gen = post.probabilities();
            double post_mass = 0.0;
            for (std::size_t i = 0; i < gen.size(); ++i)
                post_mass += valid_at(i) ? gen[i] : 0.0;
            if (post_mass <= 0.0) throw TrainingError("generator left the decodable sector");
            for (std::size_t i = 0; i < gen.size(); ++i) gen[i] = valid_at(i) ? gen[i] / post_mass : 0.0;
            rec.kl = kl_divergence(real_hist, gen);

            if (!std::isfinite(rec.loss_d) || !std::isfinite(rec.loss_g) || !std::isfinite(rec.kl))
                throw TrainingError("non-finite loss at epoch " + std::to_string(epoch));
            for (double t : ckpt.theta)
                if (!std::isfinite(t)) throw TrainingError("non-finite generator parameter");
        } catch (const TrainingError&) {
            ckpt.theta = theta_snapshot;
            ckpt.disc = disc_snapshot;
            ckpt.aborted = true;
            break;
        }

        ckpt.epoch = epoch;
        ckpt.history.push_back(rec);
        if (rec.kl < ckpt.best_kl) {
            ckpt.best_kl = rec.kl;
            ckpt.best_epoch = epoch;
            ckpt.best_theta = ckpt.theta;
        }
        ckpt.rng_state = rng.state();
        if (on_epoch) on_epoch(rec);
    }
    if (ckpt.best_theta.empty()) {
        ckpt.best_theta = ckpt.theta;
        ckpt.best_epoch = ckpt.epoch;
    }
    ckpt.rng_state = rng.state();
    return ckpt;
}

Table generate(const Checkpoint& ckpt, int num_rows, std::uint64_t seed, bool use_best) {
    if (num_rows < 0) throw ArgumentError("num_rows must be >= 0");
    const TabularSchema& schema = ckpt.schema_file.schema;
    const RegisterLayout layout = build_layout(schema, ckpt.schema_file.mode);
    const CircuitAnsatz circuit = build_circuit(layout, ckpt.config.depth);
    const std::vector<double>& theta =
        use_best && !ckpt.best_theta.empty() ? ckpt.best_theta : ckpt.theta;

    Table out;
    for (const auto& f : schema.features) out.columns.push_back(f.name);
    if (num_rows == 0) return out;

    const StateVector state = evaluate(circuit, theta, true);
    const std::vector<double> probs = state.probabilities();
    const int n = layout.total_qubits();

    // Sample from the decodable sector only; out-of-range unique-row indices
    // are rejected by renormalizing, which is rejection sampling in closed
    // form. One-hot layouts put no mass outside the sector to begin with.
    std::vector<double> cum(probs.size());
    double mass = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        mass += bits_valid(i, schema, layout) ? probs[i] : 0.0;
        cum[i] = mass;
    }
    if (mass <= 0.0) throw TrainingError("generator assigns no mass to decodable rows");
    for (double& c : cum) c /= mass;
    cum.back() = 1.0;

    Rng rng(seed);
    out.rows.reserve(static_cast<std::size_t>(num_rows));
    for (int i = 0; i < num_rows; ++i) {
        const std::uint64_t idx = rng.categorical(cum);
        out.rows.push_back(decode_bits(to_bitstring(idx, n), schema, layout));
    }
    return out;
}

}  // namespace qtab
