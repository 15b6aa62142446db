#include <pybind11/numpy.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <vector>

#include "fluidq/entropy.hpp"
#include "fluidq/experiments.hpp"
#include "fluidq/gaussian_path.hpp"
#include "fluidq/io.hpp"
#include "fluidq/queue.hpp"
#include "fluidq/scaling.hpp"
#include "fluidq/stats.hpp"
#include "fluidq/variance_model.hpp"

namespace py = pybind11;
using namespace fluidq;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) {
  py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

std::vector<double> to_vector(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  return std::vector<double>(a.data(), a.data() + a.size());
}

// Reports cross the boundary as JSON text; the package wrapper decodes them.
template <class T>
std::string dumps(const T& v) {
  return to_json(v).dump();
}

}  // namespace

PYBIND11_MODULE(_fluidq, m) {
  m.doc() = "fluidq core bindings";

  py::class_<VarianceModel>(m, "VarianceModel")
      .def_static("fbm", &VarianceModel::fbm, py::arg("hurst"))
      .def_static("power_sum", &VarianceModel::power_sum, py::arg("lambda0"), py::arg("alpha_inf"),
                  py::arg("a") = 1.0, py::arg("b") = 1.0)
      .def_static("power_ratio", &VarianceModel::power_ratio, py::arg("lambda0"), py::arg("alpha_inf"),
                  py::arg("a") = 1.0)
      .def_static("from_json", [](const std::string& s) { return model_from_json(nlohmann::json::parse(s)); })
      .def("to_json", [](const VarianceModel& v) { return to_json(v).dump(); })
      .def_property_readonly("kind", [](const VarianceModel& v) { return to_string(v.kind()); })
      .def_property_readonly("lambda0", &VarianceModel::lambda0)
      .def_property_readonly("alpha_inf", &VarianceModel::alpha_inf)
      .def("sigma2", py::vectorize(&VarianceModel::sigma2))
      .def("sigma", py::vectorize(&VarianceModel::sigma))
      .def("describe", &VarianceModel::describe)
      .def("__repr__", &VarianceModel::describe)
      .def(py::self == py::self);

  m.def("covariance", &covariance, py::arg("model"), py::arg("s"), py::arg("t"));
  m.def("increment_autocovariances",
        [](const VarianceModel& v, double h, std::size_t max_lag) { return to_array(increment_autocovariances(v, h, max_lag)); },
        py::arg("model"), py::arg("h"), py::arg("max_lag"));
  m.def("check_condition_C",
        [](const VarianceModel& v, double eps) { return dumps(check_condition_C(v, eps, default_condition_c_grid())); },
        py::arg("model"), py::arg("epsilon") = 0.5);
  m.def("estimate_rv_index",
        [](const VarianceModel& v, const std::string& end) {
          const auto e = end == "zero" ? RvEnd::Zero : RvEnd::Infinity;
          return estimate_rv_index(v, e, default_rv_grid(e));
        },
        py::arg("model"), py::arg("end"));
  m.def("potter_check", [](const VarianceModel& v, double eps, double a) { return dumps(potter_check(v, eps, a)); },
        py::arg("model"), py::arg("epsilon"), py::arg("a") = 1.0);

  m.def("solve_delta", [](const VarianceModel& v, double c) { return dumps(solve_delta(v, c)); },
        py::arg("model"), py::arg("c"));
  m.def("delta_exponent_audit",
        [](const VarianceModel& v, const std::string& regime) {
          const auto r = regime_from_string(regime);
          return dumps(delta_exponent_audit(v, r, default_audit_grid(r)));
        },
        py::arg("model"), py::arg("regime"));

  m.def("sample_path",
        [](const VarianceModel& v, double h, std::size_t n_left, std::size_t n_right, std::uint64_t seed) {
          const GridSpec g{h, n_left, n_right};
          const auto p = sample_path(v, g, seed);
          std::vector<double> t(g.size());
          for (std::size_t k = 0; k < g.size(); ++k) t[k] = g.time(k);
          return py::make_tuple(to_array(t), to_array(p.values));
        },
        py::arg("model"), py::arg("h"), py::arg("n_left"), py::arg("n_right"), py::arg("seed"));

  m.def("workload_from_values",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& values, std::size_t n_left,
           double h, double c) {
          const auto x = to_vector(values);
          if (x.size() <= n_left) throw std::invalid_argument("values must extend past the anchor");
          const auto w = workload_from_path(PathSample::from_values(GridSpec{h, n_left, x.size() - n_left - 1}, x), c);
          return py::make_tuple(to_array(w.q_values), w.argmax_location, w.truncation_flag);
        },
        py::arg("values"), py::arg("n_left"), py::arg("h"), py::arg("c"));
  m.def("stationary_workload",
        [](const VarianceModel& v, double c, double S, double T, double h, std::uint64_t seed) {
          const auto w = stationary_workload(v, QueueConfig{c, S}, T, h, seed);
          return py::make_tuple(to_array(w.q_values), w.argmax_location, w.truncation_flag);
        },
        py::arg("model"), py::arg("c"), py::arg("S"), py::arg("T"), py::arg("h"), py::arg("seed"));
  m.def("one_sided_sup_q0",
        [](const VarianceModel& v, double c, double horizon, double h, std::uint64_t seed) {
          return one_sided_sup_q0(v, c, horizon, h, seed);
        },
        py::arg("model"), py::arg("c"), py::arg("horizon"), py::arg("h"), py::arg("seed"));

  m.def("covering_number", &covering_number, py::arg("model"), py::arg("L"), py::arg("theta"));
  m.def("dudley_integral", [](const VarianceModel& v, double L) { return dudley_integral(v, L).value; },
        py::arg("model"), py::arg("L"));
  m.def("modulus_bound", &modulus_bound, py::arg("model"), py::arg("L"), py::arg("zeta"));
  m.def("entropy_profile", [](const VarianceModel& v, double L) { return dumps(entropy_profile(v, L)); },
        py::arg("model"), py::arg("L"));

  m.def("ks_two_sample",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& a,
           const py::array_t<double, py::array::c_style | py::array::forcecast>& b) {
          return ks_two_sample(EmpiricalSample(to_vector(a)), EmpiricalSample(to_vector(b)));
        },
        py::arg("a"), py::arg("b"));
  m.def("ks_one_sample_exponential",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& a, double rate) {
          return ks_one_sample_exponential(EmpiricalSample(to_vector(a)), rate);
        },
        py::arg("a"), py::arg("rate"));
  m.def("dkw_threshold", &dkw_threshold, py::arg("n"), py::arg("m"), py::arg("alpha_level") = 0.01);

  m.def("run_input_flt",
        [](const std::string& config) {
          py::gil_scoped_release release;
          return dumps(run_input_flt(config_from_json(nlohmann::json::parse(config))));
        },
        py::arg("config_json"));
  m.def("run_workload_flt",
        [](const std::string& config) {
          py::gil_scoped_release release;
          return dumps(run_workload_flt(config_from_json(nlohmann::json::parse(config))));
        },
        py::arg("config_json"));
}
