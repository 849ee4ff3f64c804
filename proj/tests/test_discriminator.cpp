#include <doctest.h>

#include <cmath>

#include "qtab/discriminator.hpp"

using namespace qtab;

namespace {

Batch random_batch(int rows, int dim, Rng& rng) {
    Batch b;
    for (int i = 0; i < rows; ++i) {
        FeatureVector v(static_cast<std::size_t>(dim));
        for (double& x : v) x = rng.uniform(-1.0, 1.0);
        b.push_back(std::move(v));
    }
    return b;
}

}  // namespace

TEST_CASE("initialization is deterministic and counts parameters") {
    const Discriminator a = Discriminator::init(10, 256, 7);
    const Discriminator b = Discriminator::init(10, 256, 7);
    CHECK(a.flat_params() == b.flat_params());
    CHECK(a.num_params() == 68865u);  // 10*256+256 + 256*256+256 + 256+1

    const Discriminator c = Discriminator::init(10, 256, 8);
    CHECK(a.flat_params() != c.flat_params());

    CHECK_THROWS_AS(Discriminator::init(0, 4, 1), ArgumentError);
}

TEST_CASE("zero weights output one half") {
    const Discriminator d = Discriminator::zeros(6, 4);
    Rng rng(3);
    for (int i = 0; i < 100; ++i) {
        FeatureVector x(6);
        for (double& v : x) v = rng.uniform(-5.0, 5.0);
        CHECK(d.forward(x) == 0.5);
    }
    CHECK_THROWS_AS(d.forward(std::vector<double>(5, 0.0)), ArgumentError);
}

TEST_CASE("output stays strictly inside (0,1)") {
    const Discriminator d = Discriminator::init(4, 8, 11);
    Rng rng(12);
    for (int i = 0; i < 10000; ++i) {
        FeatureVector x(4);
        for (double& v : x) v = rng.uniform(-30.0, 30.0);
        const double p = d.forward(x);
        CHECK(p > 0.0);
        CHECK(p < 1.0);
    }
}

TEST_CASE("monotone response of a pass-through network") {
    // h1 = relu(x), h2 = relu(h1), out = sigmoid(h2): increasing in x > 0.
    Discriminator d = Discriminator::zeros(1, 1);
    d.set_flat_params(std::vector<double>{1.0, 0.0, 1.0, 0.0, 1.0, 0.0});
    double prev = d.forward(std::vector<double>{0.0});
    for (double x = 0.25; x <= 3.0; x += 0.25) {
        const double p = d.forward(std::vector<double>{x});
        CHECK(p > prev);
        prev = p;
    }
}

TEST_CASE("loss values at the uninformative point") {
    const Discriminator d = Discriminator::zeros(3, 4);
    Rng rng(5);
    const Batch real = random_batch(8, 3, rng), fake = random_batch(8, 3, rng);
    CHECK(d.loss_d(real, fake) == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));
    CHECK(d.loss_g(fake) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK_THROWS_AS(d.loss_d({}, fake), ArgumentError);
    CHECK_THROWS_AS(d.loss_g({}), ArgumentError);
}

TEST_CASE("a separating network drives the loss toward zero") {
    // h1 = [relu(50x), relu(-50x)], h2 passes through, out = sigmoid(50x).
    Discriminator d = Discriminator::zeros(1, 2);
    std::vector<double> p{50.0, -50.0,          // w1
                          0.0,  0.0,            // b1
                          1.0,  0.0, 0.0, 1.0,  // w2
                          0.0,  0.0,            // b2
                          1.0,  -1.0,           // w3
                          0.0};                 // b3
    d.set_flat_params(p);
    const Batch real{{1.0}}, fake{{-1.0}};
    CHECK(d.loss_d(real, fake) < 1e-4);

    // L_G falls as D(fake) rises.
    CHECK(d.loss_g({{0.2}}) < d.loss_g({{0.1}}));
}

TEST_CASE("backprop matches central finite differences on a 4-2-2-1 network") {
    Discriminator d = Discriminator::init(4, 2, 21);
    Rng rng(22);
    const Batch real = random_batch(5, 4, rng), fake = random_batch(5, 4, rng);

    // Recover the analytic gradient from a unit step.
    Discriminator stepped = d;
    stepped.backward_update(real, fake, 1.0);
    const std::vector<double> before = d.flat_params();
    const std::vector<double> after = stepped.flat_params();

    const double h = 1e-5;
    double max_rel = 0.0;
    for (std::size_t i = 0; i < before.size(); ++i) {
        const double grad = before[i] - after[i];
        std::vector<double> plus = before, minus = before;
        plus[i] += h;
        minus[i] -= h;
        Discriminator dp = d, dm = d;
        dp.set_flat_params(plus);
        dm.set_flat_params(minus);
        const double fd = (dp.loss_d(real, fake) - dm.loss_d(real, fake)) / (2.0 * h);
        const double rel = std::abs(grad - fd) / std::max({1e-6, std::abs(grad), std::abs(fd)});
        max_rel = std::max(max_rel, rel);
    }
    CHECK(max_rel < 1e-4);
}

TEST_CASE("zero learning rate leaves parameters unchanged") {
    Discriminator d = Discriminator::init(3, 3, 9);
    Rng rng(10);
    const Batch real = random_batch(4, 3, rng), fake = random_batch(4, 3, rng);
    const auto before = d.flat_params();
    d.backward_update(real, fake, 0.0);
    CHECK(d.flat_params() == before);
}

TEST_CASE("small steps descend the loss on a fixed batch") {
    Discriminator d = Discriminator::init(3, 6, 33);
    Rng rng(34);
    const Batch real = random_batch(16, 3, rng), fake = random_batch(16, 3, rng);
    double prev = d.loss_d(real, fake);
    for (int step = 0; step < 20; ++step) {
        d.backward_update(real, fake, 1e-3);
        const double now = d.loss_d(real, fake);
        CHECK(now <= prev + 1e-12);
        prev = now;
    }
}

TEST_CASE("training trajectories are reproducible") {
    const auto run = [] {
        Discriminator d = Discriminator::init(4, 5, 77);
        Rng rng(78);
        for (int i = 0; i < 10; ++i) {
            const Batch real = random_batch(6, 4, rng), fake = random_batch(6, 4, rng);
            d.backward_update(real, fake, 0.05);
        }
        return d.flat_params();
    };
    CHECK(run() == run());
}

TEST_CASE("json round trip") {
    const Discriminator d = Discriminator::init(5, 4, 13);
    const Discriminator back = Discriminator::from_json(d.to_json());
    CHECK(back.flat_params() == d.flat_params());
    CHECK(back.input_dim() == 5);
    CHECK(back.hidden_width() == 4);
}

TEST_CASE("feature vectors follow the schema") {
    TabularSchema s;
    s.features.push_back({"age", NumericSpec{0.0, 32.0, 5}});
    s.features.push_back({"income", CategoricalSpec{{"<=50K", ">50K"}}});
    s.features.push_back({"workclass", CategoricalSpec{{"a", "b", "c", "d"}}});
    CHECK(feature_vector_dim(s) == 7);  // 1 + 2 + 4, independent of encoding mode

    const Row row{31.0, std::string(">50K"), std::string("c")};
    const FeatureVector v = feature_vector(row, s);
    REQUIRE(v.size() == 7u);
    CHECK(v[0] == 1.0);  // top bin scales to 1
    CHECK(v[1] == 0.0);
    CHECK(v[2] == 1.0);
    CHECK(v == FeatureVector{1.0, 0.0, 1.0, 0.0, 0.0, 1.0, 0.0});
}
