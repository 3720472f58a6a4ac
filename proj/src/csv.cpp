#include "linsep/csv.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace linsep {

RunRow make_run_row(std::int64_t run_id, std::uint64_t seed, int k, double eta, double alpha,
                    const std::string& activation, const RunRecord& record) {
    RunRow row;
    row.run_id = run_id;
    row.seed = seed;
    row.k = k;
    row.eta = eta;
    row.alpha = alpha;
    row.activation = activation;
    row.epochs = record.epoch_stats.empty() ? 0 : record.epoch_stats.back().epoch;
    row.nonzero_updates = record.nonzero_updates;
    if (!record.epoch_stats.empty()) {
        const auto& last = record.epoch_stats.back();
        row.final_train_loss = last.hinge_loss;
        row.final_train_err = last.zero_one_train_error;
        row.final_test_err = last.zero_one_test_error;
    }
    row.status = record.status;
    return row;
}

std::string csv_escape(const std::string& field) {
    const bool needs_quotes =
        field.find_first_of(",\"\r\n") != std::string::npos;
    if (!needs_quotes) return field;
    std::string quoted = "\"";
    for (char c : field) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

std::string format_double(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.12g", value);
    return buffer;
}

void emit_csv(std::vector<RunRow> rows, const std::string& path) {
    if (rows.empty()) throw std::invalid_argument("emit_csv: no rows");
    std::sort(rows.begin(), rows.end(),
              [](const RunRow& a, const RunRow& b) { return a.run_id < b.run_id; });

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("emit_csv: cannot open " + path);
    out << "run_id,seed,k,eta,alpha,activation,epochs,nonzero_updates,"
           "final_train_loss,final_train_err,final_test_err,status\n";
    for (const auto& row : rows) {
        out << row.run_id << ',' << row.seed << ',' << row.k << ',' << format_double(row.eta) << ','
            << format_double(row.alpha) << ',' << csv_escape(row.activation) << ',' << row.epochs << ','
            << row.nonzero_updates << ',' << format_double(row.final_train_loss) << ','
            << format_double(row.final_train_err) << ','
            << (row.final_test_err ? format_double(*row.final_test_err) : std::string()) << ','
            << to_string(row.status) << '\n';
    }
    if (!out) throw std::runtime_error("emit_csv: write failure on " + path);
}

}  // namespace linsep
