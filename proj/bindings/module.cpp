#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "linsep/bounds.hpp"
#include "linsep/constructions.hpp"
#include "linsep/data.hpp"
#include "linsep/experiment.hpp"
#include "linsep/network.hpp"
#include "linsep/trainer.hpp"

namespace py = pybind11;
using namespace linsep;

namespace {

Matrix matrix_from_array(const py::array_t<double, py::array::c_style | py::array::forcecast>& array) {
    if (array.ndim() != 2) throw std::invalid_argument("weights must be a 2-D array");
    Matrix m(static_cast<int>(array.shape(0)), static_cast<int>(array.shape(1)));
    auto view = array.unchecked<2>();
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) m(r, c) = view(r, c);
    return m;
}

py::array_t<double> array_from_matrix(const Matrix& m) {
    py::array_t<double> array({m.rows(), m.cols()});
    auto view = array.mutable_unchecked<2>();
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) view(r, c) = m(r, c);
    return array;
}

LabeledDataset dataset_from_python(const std::vector<std::pair<std::vector<double>, int>>& points,
                                   const std::optional<std::vector<double>>& separator) {
    std::vector<Example> examples;
    examples.reserve(points.size());
    for (const auto& [x, y] : points) examples.push_back(Example{x, y});
    return LabeledDataset(std::move(examples), separator);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "SGD on linearly separable data: two-layer trainer, bound calculators and "
              "counterexample constructions";

    py::class_<ActivationKind>(m, "ActivationKind")
        .def_static("leaky_relu", &ActivationKind::leaky_relu, py::arg("alpha"))
        .def_static("relu", &ActivationKind::relu)
        .def_property_readonly("is_relu", &ActivationKind::is_relu)
        .def_property_readonly("alpha", &ActivationKind::alpha)
        .def("__repr__", [](const ActivationKind& kind) {
            return kind.is_relu() ? std::string("ActivationKind.relu()")
                                  : "ActivationKind.leaky_relu(" + std::to_string(kind.alpha()) + ")";
        });

    py::class_<Example>(m, "Example")
        .def(py::init([](std::vector<double> x, int y) { return Example{std::move(x), y}; }),
             py::arg("x"), py::arg("y"))
        .def_readonly("x", &Example::x)
        .def_readonly("y", &Example::y);

    py::class_<LabeledDataset>(m, "LabeledDataset")
        .def(py::init(&dataset_from_python), py::arg("points"), py::arg("separator") = std::nullopt)
        .def("__len__", &LabeledDataset::size)
        .def_property_readonly("dim", &LabeledDataset::dim)
        .def_property_readonly("separator", &LabeledDataset::separator)
        .def("example", [](const LabeledDataset& d, std::size_t i) { return d[i]; }, py::arg("index"));

    py::class_<NetworkParams>(m, "NetworkParams")
        .def(py::init([](const py::array_t<double, py::array::c_style | py::array::forcecast>& w,
                         double v, const ActivationKind& kind) {
                 return NetworkParams(matrix_from_array(w), v, kind);
             }),
             py::arg("weights"), py::arg("v"), py::arg("activation"))
        .def_property_readonly("weights",
                               [](const NetworkParams& p) { return array_from_matrix(p.weights()); })
        .def_property_readonly("v", &NetworkParams::out_scale)
        .def_property_readonly("k", &NetworkParams::units)
        .def_property_readonly("dim", &NetworkParams::dim)
        .def_property_readonly("activation", &NetworkParams::activation);

    py::enum_<SamplingOrder>(m, "SamplingOrder")
        .value("uniform_with_replacement", SamplingOrder::uniform_with_replacement)
        .value("cyclic", SamplingOrder::cyclic);

    py::enum_<RunStatus>(m, "RunStatus")
        .value("global_min", RunStatus::global_min)
        .value("nonglobal_stall", RunStatus::nonglobal_stall)
        .value("epoch_limit", RunStatus::epoch_limit);

    py::class_<TrainConfig>(m, "TrainConfig")
        .def(py::init<>())
        .def_readwrite("learning_rate", &TrainConfig::learning_rate)
        .def_readwrite("max_epochs", &TrainConfig::max_epochs)
        .def_readwrite("order", &TrainConfig::order)
        .def_readwrite("seed", &TrainConfig::seed)
        .def_readwrite("margin_tol", &TrainConfig::margin_tol)
        .def_readwrite("record_trajectory", &TrainConfig::record_trajectory);

    py::class_<TrajectoryPoint>(m, "TrajectoryPoint")
        .def_readonly("t", &TrajectoryPoint::t)
        .def_readonly("F", &TrajectoryPoint::F)
        .def_readonly("G", &TrajectoryPoint::G)
        .def_readonly("cosine", &TrajectoryPoint::cosine);

    py::class_<EpochStats>(m, "EpochStats")
        .def_readonly("epoch", &EpochStats::epoch)
        .def_readonly("hinge_loss", &EpochStats::hinge_loss)
        .def_readonly("zero_one_train_error", &EpochStats::zero_one_train_error)
        .def_readonly("zero_one_test_error", &EpochStats::zero_one_test_error);

    py::class_<RunRecord>(m, "RunRecord")
        .def_readonly("nonzero_updates", &RunRecord::nonzero_updates)
        .def_readonly("status", &RunRecord::status)
        .def_readonly("epoch_stats", &RunRecord::epoch_stats)
        .def_readonly("trajectory", &RunRecord::trajectory);

    py::class_<InitScheme>(m, "InitScheme")
        .def_static("balanced_default", &InitScheme::balanced_default)
        .def_static("bounded_rows", &InitScheme::bounded_rows, py::arg("R"), py::arg("v"))
        .def_static("symmetric_box", &InitScheme::symmetric_box, py::arg("C"))
        .def_static("explicit_weights",
                    [](const py::array_t<double, py::array::c_style | py::array::forcecast>& w,
                       double v) { return InitScheme::explicit_weights(matrix_from_array(w), v); },
                    py::arg("weights"), py::arg("v"));

    // Network evaluation.
    m.def("activation", &activation, py::arg("z"), py::arg("kind"));
    m.def("activation_slope", &activation_slope, py::arg("preactivation"), py::arg("kind"));
    m.def("forward",
          [](const NetworkParams& p, const std::vector<double>& x) { return forward(p, x); },
          py::arg("params"), py::arg("x"));
    m.def("hinge_loss", &hinge_loss, py::arg("params"), py::arg("dataset"));
    m.def("zero_one_error", &zero_one_error, py::arg("params"), py::arg("dataset"));
    m.def("subgradient",
          [](const NetworkParams& p, const Example& ex) {
              const auto report = subgradient(p, ex);
              return py::make_tuple(array_from_matrix(report.grad), report.active, report.slopes_p,
                                    report.slopes_q);
          },
          py::arg("params"), py::arg("example"),
          "Returns (grad, active, slopes_p, slopes_q).");
    m.def("batch_subgradient",
          [](const NetworkParams& p, const LabeledDataset& d) {
              return array_from_matrix(batch_subgradient(p, d));
          },
          py::arg("params"), py::arg("dataset"));
    m.def("critical_point_report",
          [](const NetworkParams& p, const LabeledDataset& d, double tol) {
              const auto report = critical_point_report(p, d, tol);
              return py::make_tuple(report.is_critical, report.is_global);
          },
          py::arg("params"), py::arg("dataset"), py::arg("tol") = 1e-12);
    m.def("nonconvexity_witness",
          [](const std::vector<double>& x, double alpha) {
              const auto w = nonconvexity_witness(x, alpha);
              return py::make_tuple(w.f_endpoint_a, w.f_endpoint_b, w.f_midpoint);
          },
          py::arg("x"), py::arg("alpha"));

    // Training.
    m.def("initialize",
          [](const InitScheme& scheme, int k, int d, const ActivationKind& kind, std::uint64_t seed) {
              Rng rng(seed);
              return initialize(scheme, k, d, kind, rng);
          },
          py::arg("scheme"), py::arg("k"), py::arg("d"), py::arg("activation"), py::arg("seed"));
    m.def("sgd_step", &sgd_step, py::arg("params"), py::arg("example"), py::arg("learning_rate"),
          "Returns (params, was_nonzero).");
    m.def("train",
          [](const NetworkParams& params, const LabeledDataset& data, const TrainConfig& config,
             const std::optional<LabeledDataset>& test) {
              return train(params, data, config, test ? &*test : nullptr);
          },
          py::arg("params"), py::arg("dataset"), py::arg("config"),
          py::arg("test") = std::nullopt);

    // Bounds.
    m.def("nonzero_update_cap", &nonzero_update_cap, py::arg("norm_wstar"), py::arg("alpha"), py::arg("eta"),
          py::arg("k"), py::arg("v"), py::arg("R"));
    m.def("nonzero_update_cap_default_init", &nonzero_update_cap_default_init, py::arg("norm_wstar"), py::arg("alpha"), py::arg("eta"),
          py::arg("k"));
    m.def("lower_bound", &lower_bound, py::arg("norm_wstar"), py::arg("alpha"), py::arg("eta"),
          py::arg("k"), py::arg("v"), py::arg("R"));
    m.def("compression_bound", &compression_bound, py::arg("c_k"), py::arg("n"), py::arg("delta"),
          py::arg("L_V") = 0.0);
    m.def("generalization_global_min", &generalization_global_min, py::arg("norm_wstar"),
          py::arg("alpha"), py::arg("eta"), py::arg("k"), py::arg("v"), py::arg("R"), py::arg("n"),
          py::arg("delta"));
    m.def("relu_thresholds",
          [](int d, double delta) {
              const auto t = relu_thresholds(d, delta);
              return py::make_tuple(t.k_fail, t.k_succeed);
          },
          py::arg("d"), py::arg("delta"), "Returns (k_fail, k_succeed).");
    m.def("relu_iteration_bound", &relu_iteration_bound, py::arg("d"), py::arg("C"), py::arg("eta"));

    // Constructions and data.
    m.def("adversarial_sequence", &adversarial_sequence, py::arg("d"));
    m.def("adversarial_init", &adversarial_init, py::arg("k"), py::arg("d"), py::arg("R"),
          py::arg("v"), py::arg("activation"));
    m.def("orthogonal_dataset", &orthogonal_dataset, py::arg("d"));
    m.def("relu_bad_local_min",
          [](const LabeledDataset& data, int k, std::uint64_t seed) {
              Rng rng(seed);
              const auto bad = relu_bad_local_min(data, k, rng);
              return py::make_tuple(bad.params, bad.safe_eps);
          },
          py::arg("dataset"), py::arg("k"), py::arg("seed"), "Returns (params, safe_eps).");
    m.def("compute_dead_set",
          [](const NetworkParams& p) { return compute_dead_set(p).indices; }, py::arg("params"));
    m.def("predict_relu_outcome",
          [](const NetworkParams& p) { return to_string(predict_relu_outcome(p)); },
          py::arg("params"));
    m.def("orthogonal_nonglobal_probability", &orthogonal_nonglobal_probability, py::arg("d"),
          py::arg("k"));
    m.def("generate_separable",
          [](int d, int n, double norm_wstar, std::uint64_t seed) {
              SeparableSpec spec;
              spec.dim = d;
              spec.count = n;
              spec.norm_wstar_target = norm_wstar;
              spec.seed = seed;
              return generate_separable(spec);
          },
          py::arg("d"), py::arg("n"), py::arg("norm_wstar") = 2.0, py::arg("seed") = 0);
    m.def("estimate_separator", &estimate_separator, py::arg("dataset"), py::arg("max_passes") = 1000);
    m.def("monte_carlo_relu",
          [](int d, int k, double C, double eta, int trials, std::uint64_t seed) {
              const auto result = monte_carlo_relu(d, k, C, eta, trials, seed);
              return py::make_tuple(result.frac_global, result.frac_nonglobal,
                                    result.max_iters_when_global);
          },
          py::arg("d"), py::arg("k"), py::arg("C"), py::arg("eta"), py::arg("trials"),
          py::arg("seed") = 0, "Returns (frac_global, frac_nonglobal, max_iters_when_global).");
}
