#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "linsep/types.hpp"

namespace linsep {

/// Sampling contract for synthetic linearly separable data: points uniform in
/// the unit ball, kept only when |<w_hat, x>| >= 1/norm_wstar_target, labeled
/// by the side of w_hat. The stored separator norm_wstar_target * w_hat then
/// gives every example margin at least 1.
struct SeparableSpec {
    int dim = 2;
    int count = 100;
    double norm_wstar_target = 2.0;
    std::uint64_t seed = 0;
};

LabeledDataset generate_separable(const SeparableSpec& spec);

/// Mistake-driven separator estimation: w += y*x whenever y<w, x> <= 0, until
/// a clean pass, then rescale so the minimum margin is exactly 1. Throws if
/// no clean pass happens within max_passes ("separability not certified").
std::vector<double> estimate_separator(const LabeledDataset& dataset, int max_passes);

/// IDX image/label pair as stored on disk (big-endian headers, magic 2051 for
/// images and 2049 for labels, unsigned byte payloads).
struct RawIdxData {
    int count = 0;
    int rows = 0;
    int cols = 0;
    std::vector<std::uint8_t> pixels;  // count * rows * cols
    std::vector<std::uint8_t> labels;  // count
};

RawIdxData load_idx(const std::string& images_path, const std::string& labels_path);

/// Writes the pair back in IDX format (test and tooling helper).
void write_idx(const RawIdxData& data, const std::string& images_path, const std::string& labels_path);

/// Two-digit classification task: keeps digit_pos (label +1) and digit_neg
/// (label -1), scales pixels to [0,1], divides every vector by the maximum
/// norm over the selected pool, shuffles with the seed and splits
/// n_train/n_test.
struct BinaryDigitTask {
    LabeledDataset train;
    LabeledDataset test;
    double max_norm = 0.0;  // the norm divisor, recorded for metadata
};

BinaryDigitTask build_mnist_task(const RawIdxData& raw, int digit_pos = 3, int digit_neg = 5,
                                 int n_train = 3000, int n_test = 1000, std::uint64_t seed = 0);

}  // namespace linsep
