#include "linsep/data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "linsep/matrix.hpp"
#include "linsep/rng.hpp"

namespace linsep {

LabeledDataset generate_separable(const SeparableSpec& spec) {
    if (spec.dim < 1) throw std::invalid_argument("generate_separable: d must be >= 1");
    if (spec.count < 1) throw std::invalid_argument("generate_separable: n must be >= 1");
    if (spec.norm_wstar_target < 1.0)
        throw std::invalid_argument("generate_separable: norm_wstar_target must be >= 1");

    Rng rng(spec.seed);
    const auto w_hat = rng.unit_sphere(spec.dim);
    const double gap = 1.0 / spec.norm_wstar_target;

    std::vector<Example> examples;
    examples.reserve(spec.count);
    std::int64_t attempts = 0;
    while (static_cast<int>(examples.size()) < spec.count) {
        // Acceptance below 1e-4 means the requested margin band is
        // essentially empty for this dimension.
        if (attempts > 10'000 && static_cast<double>(examples.size() + 1) / attempts < 1e-4)
            throw std::runtime_error("generate_separable: rejection acceptance rate below 1e-4");
        ++attempts;
        auto x = rng.in_ball(spec.dim, 1.0);
        const double ip = dot(w_hat, x);
        if (std::abs(ip) < gap) continue;
        Example ex;
        ex.x = std::move(x);
        ex.y = ip >= 0.0 ? 1 : -1;
        examples.push_back(std::move(ex));
    }

    std::vector<double> separator(w_hat);
    for (auto& c : separator) c *= spec.norm_wstar_target;
    return LabeledDataset(std::move(examples), std::move(separator));
}

std::vector<double> estimate_separator(const LabeledDataset& dataset, int max_passes) {
    if (dataset.empty()) throw std::invalid_argument("estimate_separator: empty dataset");
    if (max_passes < 1) throw std::invalid_argument("estimate_separator: max_passes must be >= 1");

    std::vector<double> w(dataset.dim(), 0.0);
    bool clean = false;
    for (int pass = 0; pass < max_passes && !clean; ++pass) {
        clean = true;
        for (const auto& ex : dataset.examples()) {
            if (ex.y * dot(w, ex.x) <= 0.0) {
                for (int j = 0; j < dataset.dim(); ++j) w[j] += ex.y * ex.x[j];
                clean = false;
            }
        }
    }
    if (!clean) throw std::runtime_error("estimate_separator: separability not certified");

    double min_margin = std::numeric_limits<double>::infinity();
    for (const auto& ex : dataset.examples())
        min_margin = std::min(min_margin, ex.y * dot(w, ex.x));
    // A clean pass guarantees min_margin > 0.
    for (auto& c : w) c /= min_margin;
    return w;
}

namespace {

constexpr std::uint32_t kImagesMagic = 2051;
constexpr std::uint32_t kLabelsMagic = 2049;

std::uint32_t read_be32(std::istream& in, const std::string& path) {
    unsigned char bytes[4];
    if (!in.read(reinterpret_cast<char*>(bytes), 4))
        throw std::runtime_error("load_idx: truncated header in " + path);
    return (static_cast<std::uint32_t>(bytes[0]) << 24) | (static_cast<std::uint32_t>(bytes[1]) << 16) |
           (static_cast<std::uint32_t>(bytes[2]) << 8) | static_cast<std::uint32_t>(bytes[3]);
}

void write_be32(std::ostream& out, std::uint32_t value) {
    unsigned char bytes[4] = {static_cast<unsigned char>(value >> 24),
                              static_cast<unsigned char>(value >> 16),
                              static_cast<unsigned char>(value >> 8),
                              static_cast<unsigned char>(value)};
    out.write(reinterpret_cast<char*>(bytes), 4);
}

}  // namespace

RawIdxData load_idx(const std::string& images_path, const std::string& labels_path) {
    std::ifstream images(images_path, std::ios::binary);
    if (!images) throw std::runtime_error("load_idx: cannot open " + images_path);
    std::ifstream labels(labels_path, std::ios::binary);
    if (!labels) throw std::runtime_error("load_idx: cannot open " + labels_path);

    RawIdxData data;
    if (read_be32(images, images_path) != kImagesMagic)
        throw std::runtime_error("load_idx: bad magic in " + images_path + " (want 2051)");
    const std::uint32_t n_images = read_be32(images, images_path);
    data.rows = static_cast<int>(read_be32(images, images_path));
    data.cols = static_cast<int>(read_be32(images, images_path));

    if (read_be32(labels, labels_path) != kLabelsMagic)
        throw std::runtime_error("load_idx: bad magic in " + labels_path + " (want 2049)");
    const std::uint32_t n_labels = read_be32(labels, labels_path);
    if (n_images != n_labels)
        throw std::runtime_error("load_idx: image/label count mismatch (" + std::to_string(n_images) +
                                 " vs " + std::to_string(n_labels) + ")");
    data.count = static_cast<int>(n_images);

    const std::size_t pixel_count =
        static_cast<std::size_t>(data.count) * data.rows * data.cols;
    data.pixels.resize(pixel_count);
    if (!images.read(reinterpret_cast<char*>(data.pixels.data()), static_cast<std::streamsize>(pixel_count)))
        throw std::runtime_error("load_idx: truncated image payload in " + images_path);

    data.labels.resize(data.count);
    if (!labels.read(reinterpret_cast<char*>(data.labels.data()), data.count))
        throw std::runtime_error("load_idx: truncated label payload in " + labels_path);
    for (std::uint8_t label : data.labels)
        if (label > 9)
            throw std::runtime_error("load_idx: label out of range in " + labels_path + " (" +
                                     std::to_string(label) + ")");
    return data;
}

void write_idx(const RawIdxData& data, const std::string& images_path, const std::string& labels_path) {
    std::ofstream images(images_path, std::ios::binary);
    if (!images) throw std::runtime_error("write_idx: cannot open " + images_path);
    write_be32(images, kImagesMagic);
    write_be32(images, static_cast<std::uint32_t>(data.count));
    write_be32(images, static_cast<std::uint32_t>(data.rows));
    write_be32(images, static_cast<std::uint32_t>(data.cols));
    images.write(reinterpret_cast<const char*>(data.pixels.data()),
                 static_cast<std::streamsize>(data.pixels.size()));

    std::ofstream labels(labels_path, std::ios::binary);
    if (!labels) throw std::runtime_error("write_idx: cannot open " + labels_path);
    write_be32(labels, kLabelsMagic);
    write_be32(labels, static_cast<std::uint32_t>(data.count));
    labels.write(reinterpret_cast<const char*>(data.labels.data()),
                 static_cast<std::streamsize>(data.labels.size()));
}

BinaryDigitTask build_mnist_task(const RawIdxData& raw, int digit_pos, int digit_neg, int n_train,
                                 int n_test, std::uint64_t seed) {
    if (digit_pos == digit_neg) throw std::invalid_argument("build_mnist_task: digits must differ");
    if (n_train < 1 || n_test < 0) throw std::invalid_argument("build_mnist_task: bad split sizes");

    const int pixels_per_image = raw.rows * raw.cols;
    std::vector<Example> pool;
    for (int i = 0; i < raw.count; ++i) {
        const int label = raw.labels[i];
        if (label != digit_pos && label != digit_neg) continue;
        Example ex;
        ex.x.resize(pixels_per_image);
        const std::uint8_t* src = raw.pixels.data() + static_cast<std::size_t>(i) * pixels_per_image;
        for (int p = 0; p < pixels_per_image; ++p) ex.x[p] = src[p] / 255.0;
        ex.y = label == digit_pos ? 1 : -1;
        pool.push_back(std::move(ex));
    }
    if (static_cast<int>(pool.size()) < n_train + n_test)
        throw std::runtime_error("build_mnist_task: insufficient examples of digits " +
                                 std::to_string(digit_pos) + "/" + std::to_string(digit_neg) + " (" +
                                 std::to_string(pool.size()) + " < " + std::to_string(n_train + n_test) +
                                 ")");

    double max_norm = 0.0;
    for (const auto& ex : pool) max_norm = std::max(max_norm, norm(ex.x));
    if (max_norm == 0.0) throw std::runtime_error("build_mnist_task: all-zero images");
    for (auto& ex : pool)
        for (auto& value : ex.x) value /= max_norm;

    // Fisher-Yates with the deterministic stream.
    Rng rng(seed);
    for (std::size_t i = pool.size(); i > 1; --i)
        std::swap(pool[i - 1], pool[rng.index(i)]);

    std::vector<Example> train_examples(pool.begin(), pool.begin() + n_train);
    std::vector<Example> test_examples(pool.begin() + n_train, pool.begin() + n_train + n_test);
    BinaryDigitTask task;
    task.train = LabeledDataset(std::move(train_examples));
    task.test = LabeledDataset(std::move(test_examples));
    task.max_norm = max_norm;
    return task;
}

}  // namespace linsep
