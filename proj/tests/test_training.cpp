#include <doctest.h>

#include <cmath>

#include "qtab/training.hpp"

using namespace qtab;

namespace {

constexpr double kPi = 3.14159265358979323846;

// One numeric feature over 4 bins plus a binary category.
SchemaFile toy_schema(EncodingMode mode) {
    TabularSchema s;
    s.features.push_back({"x", NumericSpec{0.0, 4.0, 2}});
    s.features.push_back({"flag", CategoricalSpec{{"a", "b"}}});
    return SchemaFile{s, mode};
}

SchemaFile numeric_only_schema(int qubits) {
    TabularSchema s;
    s.features.push_back({"x", NumericSpec{0.0, static_cast<double>(1 << qubits), qubits}});
    return SchemaFile{s, EncodingMode::NonBoolean};
}

CircuitAnsatz toy_circuit(const SchemaFile& sf, int depth) {
    return build_circuit(build_layout(sf.schema, sf.mode), depth);
}

std::vector<double> random_params(const CircuitAnsatz& c, Rng& rng) {
    std::vector<double> p(static_cast<std::size_t>(c.num_params));
    for (double& v : p) v = rng.uniform(-kPi, kPi);
    return p;
}

}  // namespace

TEST_CASE("constant observable gives log 2 under a zero-weight discriminator") {
    const SchemaFile sf = toy_schema(EncodingMode::NonBoolean);
    const CircuitAnsatz circuit = toy_circuit(sf, 2);
    const Discriminator half = Discriminator::zeros(feature_vector_dim(sf.schema), 4);
    Rng rng(1);
    for (int i = 0; i < 5; ++i) {
        const auto params = random_params(circuit, rng);
        CHECK(generator_expectation(circuit, params, half, sf.schema) ==
              doctest::Approx(std::log(2.0)).epsilon(1e-12));
    }
}

TEST_CASE("exact expectation equals the brute-force sum") {
    const SchemaFile sf = toy_schema(EncodingMode::NonBoolean);
    const CircuitAnsatz circuit = toy_circuit(sf, 2);
    const Discriminator disc = Discriminator::init(feature_vector_dim(sf.schema), 6, 5);
    Rng rng(2);
    const auto params = random_params(circuit, rng);

    const double fast = generator_expectation(circuit, params, disc, sf.schema);

    // Brute force: walk every bitstring, decode, score, weight by |amp|^2.
    const StateVector st = evaluate(circuit, params);
    const RegisterLayout layout = build_layout(sf.schema, sf.mode);
    double brute = 0.0;
    const auto probs = st.probabilities();
    for (std::size_t x = 0; x < probs.size(); ++x) {
        double m;
        if (bits_valid(x, sf.schema, layout)) {
            const Row row = decode_bits(to_bitstring(x, layout.total_qubits()), sf.schema, layout);
            const double p = std::clamp(disc.forward(feature_vector(row, sf.schema)),
                                        Discriminator::kProbClip, 1.0 - Discriminator::kProbClip);
            m = -std::log(p);
        } else {
            m = -std::log(Discriminator::kProbClip);
        }
        brute += probs[x] * m;
    }
    CHECK(fast == doctest::Approx(brute).epsilon(1e-12));
}

TEST_CASE("sampled expectation converges to the exact one") {
    const SchemaFile sf = toy_schema(EncodingMode::NonBoolean);
    const CircuitAnsatz circuit = toy_circuit(sf, 1);
    Rng rng(3);
    const auto params = random_params(circuit, rng);
    const BasisTable table = build_basis_table(sf.schema, build_layout(sf.schema, sf.mode));
    const Discriminator disc = Discriminator::init(feature_vector_dim(sf.schema), 6, 5);
    const auto observable = loss_observable(disc, table);

    const double exact = exact_expectation(circuit, params, observable);
    const int shots = 100000;
    Rng sample_rng(17);
    const double sampled = sampled_expectation(circuit, params, observable, shots, sample_rng);

    // Batch-mean standard error bound from the observable's scatter.
    double var = 0.0;
    const StateVector st = evaluate(circuit, params);
    const auto probs = st.probabilities();
    for (std::size_t x = 0; x < probs.size(); ++x)
        var += probs[x] * (observable[x] - exact) * (observable[x] - exact);
    const double se = std::sqrt(var / static_cast<double>(shots));
    CHECK(std::abs(sampled - exact) < 3.0 * se + 1e-12);
}

TEST_CASE("shift rule reproduces the closed-form ry derivative") {
    // One RY qubit, observable = P(|1>) = sin^2(theta/2); d/dtheta at pi/2 is 1/2.
    const SchemaFile sf = numeric_only_schema(1);
    const CircuitAnsatz circuit = toy_circuit(sf, 1);
    REQUIRE(circuit.num_params == 1);
    const std::vector<double> observable{0.0, 1.0};
    const std::vector<double> params{kPi / 2};
    const auto grad = parameter_shift_gradient(circuit, params, observable);
    CHECK(grad[0] == doctest::Approx(0.5).epsilon(1e-12));

    for (double theta : {0.0, 0.3, 1.1, 2.7}) {
        const std::vector<double> p{theta};
        CHECK(parameter_shift_gradient(circuit, p, observable)[0] ==
              doctest::Approx(std::sin(theta) / 2.0).epsilon(1e-10));
    }
}

TEST_CASE("constant observables have exactly zero gradient") {
    const SchemaFile sf = toy_schema(EncodingMode::NonBoolean);
    const CircuitAnsatz circuit = toy_circuit(sf, 2);
    Rng rng(4);
    const auto params = random_params(circuit, rng);
    const std::vector<double> observable(std::size_t{1} << circuit.num_qubits(), std::log(2.0));
    for (double g : parameter_shift_gradient(circuit, params, observable))
        CHECK(std::abs(g) < 1e-12);
}

TEST_CASE("shift gradients match finite differences for every gate kind") {
    //

    // [n3,c3] puts RY, IsingYY, controlled RY, Givens and controlled Givens
    // all in one 6-qubit circuit.
    TabularSchema s;
    s.features.push_back({"x", NumericSpec{0.0, 8.0, 3}});
    s.features.push_back({"c", CategoricalSpec{{"u", "v", "w"}}});
    const SchemaFile sf{s, EncodingMode::NonBoolean};
    const CircuitAnsatz circuit = toy_circuit(sf, 1);

    Rng rng(6);
    std::vector<double> observable(std::size_t{1} << circuit.num_qubits());
    for (double& m : observable) m = -std::log(rng.uniform(0.1, 0.9));

    for (int trial = 0; trial < 10; ++trial) {
        const auto params = random_params(circuit, rng);
        const auto grad = parameter_shift_gradient(circuit, params, observable);
        const double h = 1e-5;
        for (int p = 0; p < circuit.num_params; ++p) {
            auto plus = params, minus = params;
            plus[static_cast<std::size_t>(p)] += h;
            minus[static_cast<std::size_t>(p)] -= h;
            const double fd = (exact_expectation(circuit, plus, observable) -
                               exact_expectation(circuit, minus, observable)) /
                              (2.0 * h);
            CHECK(std::abs(grad[static_cast<std::size_t>(p)] - fd) < 1e-5);
        }
    }
}

TEST_CASE("sampled gradients are unbiased") {
    const SchemaFile sf = numeric_only_schema(2);
    const CircuitAnsatz circuit = toy_circuit(sf, 1);
    Rng rng(7);
    const auto params = random_params(circuit, rng);
    std::vector<double> observable{0.3, 1.7, 0.9, 2.2};

    const auto exact = parameter_shift_gradient(circuit, params, observable);
    const int reps = 1000, shots = 128;
    std::vector<double> mean(exact.size(), 0.0), m2(exact.size(), 0.0);
    for (int r = 0; r < reps; ++r) {
        const auto g = parameter_shift_gradient(circuit, params, observable, shots,
                                                static_cast<std::uint64_t>(r + 1));
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double delta = g[i] - mean[i];
            mean[i] += delta / static_cast<double>(r + 1);
            m2[i] += delta * (g[i] - mean[i]);
        }
    }
    for (std::size_t i = 0; i < exact.size(); ++i) {
        const double se = std::sqrt(m2[i] / static_cast<double>(reps - 1)) /
                          std::sqrt(static_cast<double>(reps));
        CHECK(std::abs(mean[i] - exact[i]) < 3.0 * se + 1e-9);
    }
}

TEST_CASE("kl divergence basics") {
    std::map<std::uint64_t, double> p{{0, 0.5}, {1, 0.5}};
    const std::vector<double> same{0.5, 0.5};
    CHECK(kl_divergence(p, same) == doctest::Approx(0.0).epsilon(1e-12));

    std::map<std::uint64_t, double> point{{0, 1.0}};
    const std::vector<double> uniform{0.5, 0.5};
    CHECK(kl_divergence(point, uniform) == doctest::Approx(std::log(2.0)).epsilon(1e-12));

    // Gibbs: non-negative across random distribution pairs.
    Rng rng(8);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t k = 2 + rng.integer(14);
        std::map<std::uint64_t, double> real;
        std::vector<double> gen(k);
        double sr = 0.0, sg = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            const double a = rng.uniform(0.01, 1.0), b = rng.uniform(0.01, 1.0);
            real[i] = a;
            gen[i] = b;
            sr += a;
            sg += b;
        }
        for (auto& [_, v] : real) v /= sr;
        for (auto& v : gen) v /= sg;
        CHECK(kl_divergence(real, gen) >= 0.0);
    }
}

TEST_CASE("training learns a bimodal two-qubit target") {
    const SchemaFile sf = numeric_only_schema(2);
    // Bins 1 and 2 equally likely.
    Table t;
    t.columns = {"x"};
    for (int i = 0; i < 100; ++i) {
        t.rows.push_back({1.0});
        t.rows.push_back({2.0});
    }
    const EncodedDataset data = encode_table(t, sf);

    TrainingConfig cfg;
    cfg.depth = 2;
    cfg.epochs = 500;
    cfg.eta_g = 0.1;
    cfg.eta_d = 0.1;
    cfg.batch_fraction = 0.2;
    cfg.seed = 1;
    const Checkpoint ckpt = train(data, sf, cfg);
    CHECK(!ckpt.aborted);
    CHECK(ckpt.best_kl < 0.05);

    TrainingConfig bad = cfg;
    bad.epochs = 0;
    CHECK_THROWS_AS(train(data, sf, bad), ArgumentError);
}

TEST_CASE("same seed reproduces the trajectory; best kl bounds the final kl") {
    const SchemaFile sf = toy_schema(EncodingMode::NonBoolean);
    Table t;
    t.columns = {"x", "flag"};
    Rng rng(9);
    for (int i = 0; i < 60; ++i)
        t.rows.push_back({static_cast<double>(rng.integer(4)),
                          std::string(rng.integer(2) ? "b" : "a")});
    const EncodedDataset data = encode_table(t, sf);

    TrainingConfig cfg;
    cfg.depth = 1;
    cfg.epochs = 40;
    cfg.seed = 3;
    const Checkpoint a = train(data, sf, cfg);
    const Checkpoint b = train(data, sf, cfg);
    CHECK(checkpoint_to_json(a) == checkpoint_to_json(b));
    REQUIRE(!a.history.empty());
    for (std::size_t i = 0; i < a.history.size(); ++i) {
        CHECK(a.history[i].loss_d == b.history[i].loss_d);
        CHECK(a.history[i].loss_g == b.history[i].loss_g);
        CHECK(a.history[i].kl == b.history[i].kl);
    }
    CHECK(a.best_kl <= a.history.back().kl);
}

TEST_CASE("checkpoint resume reproduces the uninterrupted trajectory") {
    const SchemaFile sf = toy_schema(EncodingMode::NonBoolean);
    Table t;
    t.columns = {"x", "flag"};
    Rng rng(10);
    for (int i = 0; i < 50; ++i)
        t.rows.push_back({static_cast<double>(rng.integer(4)),
                          std::string(rng.integer(2) ? "b" : "a")});
    const EncodedDataset data = encode_table(t, sf);

    TrainingConfig cfg;
    cfg.depth = 1;
    cfg.epochs = 30;
    cfg.seed = 12;
    const Checkpoint full = train(data, sf, cfg);

    TrainingConfig first_half = cfg;
    first_half.epochs = 13;
    const Checkpoint half = train(data, sf, first_half);
    // Serialize and reload mid-run, then continue.
    const Checkpoint reloaded = checkpoint_from_json(checkpoint_to_json(half));
    const Checkpoint resumed = train(data, sf, cfg, {}, &reloaded);

    CHECK(checkpoint_to_json(resumed) == checkpoint_to_json(full));

    TrainingConfig tampered = cfg;
    tampered.eta_g = 0.123;
    CHECK_THROWS_AS(train(data, sf, tampered, {}, &reloaded), ArgumentError);
}

TEST_CASE("generation decodes cleanly") {
    const SchemaFile sf = toy_schema(EncodingMode::NonBoolean);
    Table t;
    t.columns = {"x", "flag"};
    for (int i = 0; i < 40; ++i) t.rows.push_back({static_cast<double>(i % 4), std::string("a")});
    const EncodedDataset data = encode_table(t, sf);

    TrainingConfig cfg;
    cfg.depth = 1;
    cfg.epochs = 5;
    cfg.seed = 2;
    const Checkpoint ckpt = train(data, sf, cfg);

    CHECK(generate(ckpt, 0, 1).rows.empty());
    const Table out = generate(ckpt, 200, 1);
    CHECK(out.rows.size() == 200u);
    const RegisterLayout layout = build_layout(sf.schema, sf.mode);
    for (const Row& row : out.rows) {
        CHECK(num_value(row[0]) >= 0.0);
        CHECK(num_value(row[0]) <= 3.0);
        const std::string flag = cat_value(row[1]);
        CHECK((flag == "a" || flag == "b"));
        // Rows re-encode, i.e. they are schema-valid.
        CHECK(encode_row(row, sf.schema, layout).size() == 4u);
    }
    CHECK_THROWS_AS(generate(ckpt, -1, 1), ArgumentError);
}

TEST_CASE("untrained zero parameters emit the reference row") {
    const SchemaFile sf = toy_schema(EncodingMode::NonBoolean);
    Checkpoint ckpt;
    ckpt.schema_file = sf;
    ckpt.config.depth = 1;
    const CircuitAnsatz circuit = toy_circuit(sf, 1);
    ckpt.theta.assign(static_cast<std::size_t>(circuit.num_params), 0.0);
    const Table out = generate(ckpt, 20, 7);
    for (const Row& row : out.rows) {
        CHECK(num_value(row[0]) == 0.0);      // bin 0
        CHECK(cat_value(row[1]) == "a");      // first category
    }
}

TEST_CASE("unique-row-index training stays on valid rows") {
    const SchemaFile sf = toy_schema(EncodingMode::UniqueRowIndex);
    Table t;
    t.columns = {"x", "flag"};
    Rng rng(11);
    for (int i = 0; i < 60; ++i)
        t.rows.push_back({static_cast<double>(rng.integer(4)),
                          std::string(rng.integer(2) ? "b" : "a")});
    const EncodedDataset data = encode_table(t, sf);
    CHECK(data.num_bits == 3);  // |S| = 8 exactly

    TrainingConfig cfg;
    cfg.depth = 2;
    cfg.epochs = 20;
    cfg.seed = 5;
    const Checkpoint ckpt = train(data, sf, cfg);
    CHECK(!ckpt.aborted);
    const Table out = generate(ckpt, 100, 3);
    for (const Row& row : out.rows) {
        CHECK(num_value(row[0]) <= 3.0);
        const std::string flag = cat_value(row[1]);
        CHECK((flag == "a" || flag == "b"));
    }
}
