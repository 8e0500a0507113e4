#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fmt/core.h>

#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "hetpca/asymptotic_prediction.hpp"
#include "hetpca/error.hpp"
#include "hetpca/experiment.hpp"
#include "hetpca/noise_model.hpp"
#include "hetpca/pca_simulation.hpp"

namespace py = pybind11;
using namespace hetpca;

namespace {

NoiseMixture make_mixture(const std::vector<std::pair<double, double>>& levels) {
  std::vector<NoiseLevel> raw;
  raw.reserve(levels.size());
  for (const auto& [p, v] : levels) raw.push_back({p, v});
  return validate_and_normalize(raw);
}

std::vector<std::pair<double, double>> mixture_levels(const NoiseMixture& mix) {
  std::vector<std::pair<double, double>> out;
  for (const auto& level : mix.levels()) out.emplace_back(level.proportion, level.variance);
  return out;
}

std::array<Distribution, 3> parse_distributions(const std::vector<std::string>& names) {
  if (names.size() != 3) throw Error(ErrorCode::InvalidArgument, "expected three distribution names");
  std::array<Distribution, 3> out{};
  for (std::size_t k = 0; k < 3; ++k) {
    const auto parsed = parse_distribution(names[k]);
    if (!parsed) throw Error(ErrorCode::InvalidArgument, "unknown distribution '" + names[k] + "'");
    out[k] = *parsed;
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Asymptotic recovery prediction and Monte Carlo simulation for PCA under heteroscedastic noise";
  m.attr("__version__") = std::string(experiment::kToolVersion);

  py::register_exception<Error>(m, "HetpcaError", PyExc_ValueError);

  py::class_<NoiseMixture>(m, "NoiseMixture")
      .def(py::init(&make_mixture), py::arg("levels"),
           "Validate (proportion, variance) pairs; equal variances merge, levels sort by variance.")
      .def_property_readonly("levels", &mixture_levels)
      .def_property_readonly("max_variance", &NoiseMixture::max_variance)
      .def_property_readonly("noiseless", &NoiseMixture::noiseless)
      .def("__len__", &NoiseMixture::size)
      .def("__repr__", [](const NoiseMixture& mix) {
        return "NoiseMixture(" + py::repr(py::cast(mixture_levels(mix))).cast<std::string>() + ")";
      });

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init<double, double>(), py::arg("sample_ratio"), py::arg("amplitude"))
      .def_property_readonly("sample_ratio", &ModelParams::sample_ratio)
      .def_property_readonly("amplitude", &ModelParams::amplitude);

  py::class_<PredictionResult>(m, "PredictionResult")
      .def_readonly("beta", &PredictionResult::beta)
      .def_readonly("alpha", &PredictionResult::alpha)
      .def_readonly("a_at_beta", &PredictionResult::a_at_beta)
      .def_readonly("b_prime_at_beta", &PredictionResult::b_prime_at_beta)
      .def_readonly("unclamped_value", &PredictionResult::unclamped_value)
      .def_readonly("value", &PredictionResult::value)
      .def_readonly("above_transition", &PredictionResult::above_transition)
      .def("__repr__", [](const PredictionResult& r) {
        return fmt::format("PredictionResult(value={:.6g}, beta={:.6g}, alpha={}, above_transition={})", r.value,
                           r.beta, r.alpha ? fmt::format("{:.6g}", *r.alpha) : std::string("None"),
                           r.above_transition ? "True" : "False");
      });

  m.def("average_variance", &average_variance, py::arg("mixture"));
  m.def("lambda_split", &lambda_split, py::arg("lam"), py::arg("avg_variance"), py::arg("proportions"));
  m.def("predict", py::overload_cast<const NoiseMixture&, const ModelParams&>(&predict), py::arg("mixture"),
        py::arg("params"));
  m.def("homoscedastic_closed_form", &homoscedastic_closed_form, py::arg("sample_ratio"), py::arg("amplitude"),
        py::arg("variance"));
  m.def("critical_sample_ratio", &critical_sample_ratio, py::arg("mixture"), py::arg("amplitude"));
  m.def(
      "largest_root_B",
      [](const NoiseMixture& mix, const ModelParams& params) { return largest_root_B({mix, params}); },
      py::arg("mixture"), py::arg("params"));
  m.def(
      "largest_root_A",
      [](const NoiseMixture& mix, const ModelParams& params) { return largest_root_A({mix, params}); },
      py::arg("mixture"), py::arg("params"));
  m.def(
      "all_real_roots_B",
      [](const NoiseMixture& mix, const ModelParams& params) { return all_real_roots_B({mix, params}); },
      py::arg("mixture"), py::arg("params"));

  m.def(
      "top_left_singular_vector",
      [](const Eigen::MatrixXd& matrix) {
        auto r = top_left_singular_vector(matrix);
        return std::make_tuple(std::move(r.vector), r.singular_value, r.iterations, r.converged);
      },
      py::arg("matrix"), "Returns (vector, singular_value, iterations, converged).");

  m.def(
      "run_monte_carlo",
      [](std::size_t d, std::size_t n, const NoiseMixture& mixture, double amplitude, std::size_t trials,
         std::uint64_t seed, const std::vector<std::string>& distributions, unsigned threads) {
        DatasetSpec spec{.dimension = d,
                         .num_samples = n,
                         .mixture = mixture,
                         .amplitude = amplitude,
                         .distributions = parse_distributions(distributions),
                         .seed = seed};
        MonteCarloSummary s;
        {
          py::gil_scoped_release release;
          s = run_monte_carlo(spec, trials, threads);
        }
        py::dict out;
        out["mean"] = s.mean;
        out["q25"] = s.q25;
        out["median"] = s.median;
        out["q75"] = s.q75;
        out["normalized_mean"] = s.normalized_mean;
        out["convergence_failures"] = s.convergence_failures;
        std::vector<double> raw;
        for (const auto& t : s.trials) raw.push_back(t.raw_sq_inner);
        out["raw_sq_inner"] = raw;
        return out;
      },
      py::arg("d"), py::arg("n"), py::arg("mixture"), py::arg("amplitude"), py::arg("trials"), py::arg("seed"),
      py::arg("distributions") = std::vector<std::string>{"gaussian", "gaussian", "gaussian"},
      py::arg("threads") = 0u);
}
