#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "linsep/constructions.hpp"
#include "linsep/data.hpp"

using namespace linsep;

namespace {

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("linsep_test_" + name);
}

}  // namespace

TEST_CASE("generate_separable: every example satisfies the margin contract") {
    SeparableSpec spec;
    spec.dim = 7;
    spec.count = 200;
    spec.norm_wstar_target = 2.5;
    spec.seed = 11;
    const auto data = generate_separable(spec);
    REQUIRE(data.size() == 200);
    REQUIRE(data.separator().has_value());
    CHECK(norm(*data.separator()) == doctest::Approx(2.5).epsilon(1e-12));
    for (const auto& ex : data.examples()) {
        CHECK(norm(ex.x) <= 1.0 + 1e-12);
        CHECK(ex.y * dot(*data.separator(), ex.x) >= 1.0 - 1e-9);
    }
}

TEST_CASE("generate_separable: one-dimensional band") {
    SeparableSpec spec;
    spec.dim = 1;
    spec.count = 400;
    spec.norm_wstar_target = 2.0;
    spec.seed = 3;
    const auto data = generate_separable(spec);
    for (const auto& ex : data.examples()) {
        CHECK(std::abs(ex.x[0]) >= 0.5);
        CHECK(std::abs(ex.x[0]) <= 1.0);
    }
}

TEST_CASE("generate_separable: fixed seed reproduces byte-identical data") {
    SeparableSpec spec;
    spec.dim = 4;
    spec.count = 50;
    spec.seed = 21;
    const auto a = generate_separable(spec);
    const auto b = generate_separable(spec);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].x == b[i].x);
        CHECK(a[i].y == b[i].y);
    }
    CHECK(*a.separator() == *b.separator());
}

TEST_CASE("generate_separable: infeasible margin errors out") {
    SeparableSpec spec;
    spec.dim = 40;
    spec.count = 10;
    spec.norm_wstar_target = 1.000001;  // requires |<w_hat, x>| ~ 1 in a 40-dim ball
    spec.seed = 5;
    CHECK_THROWS(generate_separable(spec));
}

TEST_CASE("estimate_separator: certifies its input with margin exactly 1") {
    const auto basis = adversarial_sequence(6);
    const auto w = estimate_separator(basis, 100);
    double min_margin = 1e300;
    for (const auto& ex : basis.examples())
        min_margin = std::min(min_margin, ex.y * dot(w, ex.x));
    CHECK(min_margin >= 1.0 - 1e-12);

    SeparableSpec spec;
    spec.dim = 5;
    spec.count = 80;
    spec.seed = 8;
    const auto data = generate_separable(spec);
    const auto w2 = estimate_separator(data, 1000);
    for (const auto& ex : data.examples())
        CHECK(ex.y * dot(w2, ex.x) >= 1.0 - 1e-12);
}

TEST_CASE("estimate_separator: XOR-style data is rejected after max_passes") {
    std::vector<Example> xor_points{
        Example{{0.5, 0.5}, 1},
        Example{{-0.5, -0.5}, 1},
        Example{{0.5, -0.5}, -1},
        Example{{-0.5, 0.5}, -1},
    };
    LabeledDataset data(std::move(xor_points));
    CHECK_THROWS_WITH_AS(estimate_separator(data, 200), "estimate_separator: separability not certified",
                         std::runtime_error);
}

TEST_CASE("idx: synthetic file round-trips exactly") {
    RawIdxData data;
    data.count = 7;
    data.rows = 3;
    data.cols = 2;
    data.pixels.resize(7 * 3 * 2);
    for (std::size_t i = 0; i < data.pixels.size(); ++i)
        data.pixels[i] = static_cast<std::uint8_t>((i * 37) % 251);
    data.labels = {3, 5, 3, 5, 3, 5, 9};

    const auto images = temp_path("roundtrip_images.idx");
    const auto labels = temp_path("roundtrip_labels.idx");
    write_idx(data, images.string(), labels.string());
    const auto back = load_idx(images.string(), labels.string());
    CHECK(back.count == data.count);
    CHECK(back.rows == data.rows);
    CHECK(back.cols == data.cols);
    CHECK(back.pixels == data.pixels);
    CHECK(back.labels == data.labels);
    std::filesystem::remove(images);
    std::filesystem::remove(labels);
}

TEST_CASE("idx: malformed files raise distinct errors") {
    RawIdxData data;
    data.count = 2;
    data.rows = 2;
    data.cols = 2;
    data.pixels.assign(8, 1);
    data.labels = {3, 5};
    const auto images = temp_path("bad_images.idx");
    const auto labels = temp_path("bad_labels.idx");
    write_idx(data, images.string(), labels.string());

    SUBCASE("bad image magic") {
        std::fstream f(images, std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(3);
        f.put(static_cast<char>(9));
        f.close();
        CHECK_THROWS_WITH_AS(load_idx(images.string(), labels.string()),
                             doctest::Contains("bad magic"), std::runtime_error);
    }
    SUBCASE("count mismatch") {
        std::fstream f(labels, std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(7);
        f.put(static_cast<char>(3));
        f.close();
        CHECK_THROWS_WITH_AS(load_idx(images.string(), labels.string()),
                             doctest::Contains("count mismatch"), std::runtime_error);
    }
    SUBCASE("truncated image payload") {
        std::filesystem::resize_file(images, 16 + 5);
        CHECK_THROWS_WITH_AS(load_idx(images.string(), labels.string()),
                             doctest::Contains("truncated"), std::runtime_error);
    }
    SUBCASE("label out of range") {
        std::fstream f(labels, std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(8);
        f.put(static_cast<char>(12));
        f.close();
        CHECK_THROWS_WITH_AS(load_idx(images.string(), labels.string()),
                             doctest::Contains("label out of range"), std::runtime_error);
    }
    std::filesystem::remove(images);
    std::filesystem::remove(labels);
}

TEST_CASE("build_mnist_task: filtering, scaling and split sizes") {
    // Two synthetic digit clusters: digit 3 bright in the first half, digit 5
    // bright in the second half, plus some other digits to be filtered out.
    RawIdxData raw;
    raw.rows = 2;
    raw.cols = 2;
    const int per_digit = 30;
    for (int i = 0; i < per_digit; ++i) {
        raw.labels.push_back(3);
        raw.pixels.insert(raw.pixels.end(), {static_cast<std::uint8_t>(200 + (i % 50)), 255, 0, 10});
        raw.labels.push_back(5);
        raw.pixels.insert(raw.pixels.end(), {0, 10, static_cast<std::uint8_t>(190 + (i % 60)), 255});
        raw.labels.push_back(7);
        raw.pixels.insert(raw.pixels.end(), {9, 9, 9, 9});
    }
    raw.count = static_cast<int>(raw.labels.size());

    const auto task = build_mnist_task(raw, 3, 5, 40, 20, 123);
    CHECK(task.train.size() == 40);
    CHECK(task.test.size() == 20);
    CHECK(task.train.dim() == 4);

    double max_norm_seen = 0.0;
    int pos = 0, neg = 0;
    for (const auto* dataset : {&task.train, &task.test})
        for (const auto& ex : dataset->examples()) {
            CHECK(norm(ex.x) <= 1.0 + 1e-12);
            max_norm_seen = std::max(max_norm_seen, norm(ex.x));
            CHECK((ex.y == 1 || ex.y == -1));
            (ex.y == 1 ? pos : neg) += 1;
        }
    CHECK(max_norm_seen == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pos + neg == 60);
    CHECK(pos > 0);
    CHECK(neg > 0);

    CHECK_THROWS_WITH_AS(build_mnist_task(raw, 3, 5, 100, 20, 1), doctest::Contains("insufficient"),
                         std::runtime_error);
}
