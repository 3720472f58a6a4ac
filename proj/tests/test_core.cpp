#include <doctest.h>

#include <cmath>

#include "linsep/rng.hpp"
#include "linsep/types.hpp"

using namespace linsep;

TEST_CASE("rng: identical seeds give identical streams") {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.unit() == b.unit());
}

TEST_CASE("rng: different seeds diverge within the first draws") {
    Rng a(42), b(43);
    bool differ = false;
    for (int i = 0; i < 10 && !differ; ++i) differ = a.unit() != b.unit();
    CHECK(differ);
}

TEST_CASE("rng: uniform on [-1,1] has near-zero sample mean") {
    Rng rng(7);
    double sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) sum += rng.uniform(-1.0, 1.0);
    CHECK(std::abs(sum / n) < 0.02);
}

TEST_CASE("rng: ball samples stay inside the radius") {
    Rng rng(3);
    for (int i = 0; i < 1000; ++i) {
        auto x = rng.in_ball(5, 0.75);
        CHECK(norm(x) <= 0.75 * (1.0 + 1e-12));
    }
}

TEST_CASE("rng: sphere samples have unit norm") {
    Rng rng(4);
    for (int i = 0; i < 100; ++i) CHECK(norm(rng.unit_sphere(8)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("dataset: label and norm invariants are enforced") {
    CHECK_THROWS(LabeledDataset({Example{{0.5, 0.5}, 2}}));
    CHECK_THROWS(LabeledDataset({Example{{2.0, 0.0}, 1}}));
    CHECK_THROWS(LabeledDataset({Example{{0.5, 0.5}, 1}, Example{{0.5}, 1}}));
    CHECK_NOTHROW(LabeledDataset({Example{{0.5, 0.5}, 1}, Example{{-0.5, 0.5}, -1}}));
}

TEST_CASE("dataset: separator must certify margin 1 on every example") {
    // y<w*, x> = 2 for the first example but only 0.4 for the second.
    std::vector<Example> examples{Example{{0.5, 0.5}, 1}, Example{{0.1, 0.1}, 1}};
    CHECK_THROWS(LabeledDataset(examples, std::vector<double>{2.0, 2.0}));
    CHECK_NOTHROW(LabeledDataset({Example{{0.5, 0.5}, 1}}, std::vector<double>{2.0, 2.0}));
}

TEST_CASE("params: construction rejects bad v, shape and alpha") {
    Matrix w(2, 3);
    CHECK_THROWS(NetworkParams(w, 0.0, ActivationKind::relu()));
    CHECK_THROWS(NetworkParams(w, -1.0, ActivationKind::relu()));
    CHECK_THROWS(NetworkParams(Matrix(3, 3), 1.0, ActivationKind::relu()));
    CHECK_THROWS(ActivationKind::leaky_relu(0.0));
    CHECK_THROWS(ActivationKind::leaky_relu(1.0));
    CHECK_THROWS(ActivationKind::leaky_relu(-0.5));
    CHECK_NOTHROW(ActivationKind::leaky_relu(0.5));
    NetworkParams params(w, 2.0, ActivationKind::leaky_relu(0.25));
    CHECK(params.units() == 1);
    CHECK(params.dim() == 3);
}
