#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "linsep/types.hpp"

namespace linsep {

/// One training run flattened for runs.csv.
struct RunRow {
    std::int64_t run_id = 0;
    std::uint64_t seed = 0;
    int k = 0;
    double eta = 0.0;
    double alpha = 0.0;  // 0 for ReLU
    std::string activation;
    int epochs = 0;
    std::int64_t nonzero_updates = 0;
    double final_train_loss = 0.0;
    double final_train_err = 0.0;
    std::optional<double> final_test_err;
    RunStatus status = RunStatus::epoch_limit;
};

RunRow make_run_row(std::int64_t run_id, std::uint64_t seed, int k, double eta, double alpha,
                    const std::string& activation, const RunRecord& record);

/// RFC-4180 quoting of a single field.
std::string csv_escape(const std::string& field);

/// Deterministic fixed-precision rendering used in all emitted artifacts.
std::string format_double(double value);

/// Writes the rows (sorted by run_id) under the fixed header
/// run_id,seed,k,eta,alpha,activation,epochs,nonzero_updates,
/// final_train_loss,final_train_err,final_test_err,status.
void emit_csv(std::vector<RunRow> rows, const std::string& path);

}  // namespace linsep
