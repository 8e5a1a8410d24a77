#include "abnet/analysis.hpp"
#include "abnet/closed_form.hpp"
#include "abnet/error.hpp"
#include "abnet/io.hpp"
#include "abnet/ode.hpp"
#include "abnet/sim.hpp"
#include "abnet/special.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace abnet;

namespace {

// Composite results cross the boundary as JSON text; the Python layer decodes it.
std::string dump(const Json& j) { return j.dump(); }

py::tuple fraction_parts(const ExactRational& r) { return py::make_tuple(r.numerator_string(), r.denominator_string()); }

SimOptions sim_options(const std::string& sampling, bool check_every_event) {
  SimOptions o;
  o.sampling = sampling_mode_from_string(sampling);
  o.check_every_event = check_every_event;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Native core of the abnet package";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<IntegrationError>(m, "IntegrationError", PyExc_RuntimeError);
  py::register_exception<SimulationError>(m, "SimulationError", PyExc_RuntimeError);

  m.def("version", &version);

  py::class_<ModelParams>(m, "ModelParams")
      .def_static(
          "create",
          [](double lambda, int mm, double d0, double n0, std::map<int, double> counts, const std::string& mode) {
            return ModelParams::create(lambda, mm, d0, n0, std::move(counts), validation_mode_from_string(mode));
          },
          py::arg("lam"), py::arg("m"), py::arg("d0"), py::arg("n0"), py::arg("initial_counts"),
          py::arg("mode") = "strict")
      .def_static("standard", &ModelParams::standard, py::arg("m"), py::arg("lam") = 1.0)
      .def_static("krapivsky_redner", &ModelParams::krapivsky_redner)
      .def_static("from_json", [](const std::string& text) { return params_from_json(Json::parse(text)); })
      .def("to_json", [](const ModelParams& p) { return dump(to_json(p)); })
      .def_property_readonly("lam", &ModelParams::lambda)
      .def_property_readonly("m", &ModelParams::m)
      .def_property_readonly("d0", &ModelParams::d0)
      .def_property_readonly("n0", &ModelParams::n0)
      .def_property_readonly("initial_counts", &ModelParams::initial_counts)
      .def_property_readonly("mode", [](const ModelParams& p) { return to_string(p.mode()); })
      .def_property_readonly("preset", [](const ModelParams& p) { return to_string(p.preset()); })
      .def_property_readonly("warnings", [](const ModelParams& p) { return p.consistency().warnings; })
      .def("__repr__", [](const ModelParams& p) { return "ModelParams(" + to_json(p).dump() + ")"; });

  m.def("d_of_t", &d_of_t, py::arg("params"), py::arg("t"));
  m.def("n_of_t", &n_of_t, py::arg("params"), py::arg("t"));
  m.def("g", &g, py::arg("params"), py::arg("t"));

  m.def("factorial", [](long n) { return fraction_parts(factorial(n)); });
  m.def("binomial", [](long n, long k) { return fraction_parts(binomial(n, k)); });
  m.def("hyp2f1_terminating", py::overload_cast<long, long, long, double>(&hyp2f1_terminating), py::arg("a"),
        py::arg("b"), py::arg("c"), py::arg("x"));

  py::class_<ClosedFormSolution>(m, "ClosedFormSolution")
      .def(py::init<ModelParams, int>(), py::arg("params"), py::arg("k_max"))
      .def("extend", &ClosedFormSolution::extend)
      .def_property_readonly("k_max", &ClosedFormSolution::k_max)
      .def_property_readonly("m", &ClosedFormSolution::m)
      .def("scaled_constant", [](const ClosedFormSolution& s, int i) { return fraction_parts(s.scaled_constant(i)); })
      .def("nk", [](const ClosedFormSolution& s, int k, double t) { return nk_series(s, k, t); }, py::arg("k"),
           py::arg("t"))
      .def("nk_at_origin", [](const ClosedFormSolution& s, int k) { return fraction_parts(nk_series_at_origin(s, k)); })
      .def("degree_distribution", &degree_distribution, py::arg("t"), py::arg("k_max"))
      .def("conservation", [](const ClosedFormSolution& s, double t, int k_max) {
        return dump(to_json(conservation_check(s, t, k_max)));
      })
      .def("decay_fit", [](const ClosedFormSolution& s, int k, const std::vector<double>& grid) {
        return dump(to_json(decay_fit(s, k, grid)));
      });

  m.def("nk_hypergeometric", &nk_hypergeometric, py::arg("params"), py::arg("k"), py::arg("t"));
  m.def("nk_krapivsky_redner", &nk_krapivsky_redner, py::arg("k"), py::arg("t"));
  m.def("asymptotic_pk", [](int mm, int k) { return fraction_parts(asymptotic_pk(mm, k)); });

  m.def(
      "integrate",
      [](const ModelParams& p, const std::vector<double>& t, int k_max, double rel_tol, double abs_tol) {
        OdeConfig cfg;
        cfg.k_max = k_max;
        cfg.rel_tol = rel_tol;
        cfg.abs_tol = abs_tol;
        cfg.t_snapshots = t;
        DegreeTrajectory traj;
        {
          py::gil_scoped_release release;
          traj = integrate(p, cfg);
        }
        return dump(to_json(traj));
      },
      py::arg("params"), py::arg("t"), py::arg("k_max") = 400, py::arg("rel_tol") = 1e-10,
      py::arg("abs_tol") = 1e-18);

  m.def(
      "simulate",
      [](const ModelParams& p, double t_end, std::uint64_t seed, const std::vector<double>& snapshots,
         const std::string& sampling) {
        DegreeTrajectory traj;
        const SimOptions opts = sim_options(sampling, false);
        {
          py::gil_scoped_release release;
          traj = simulate(p, t_end, seed, snapshots, opts);
        }
        return dump(to_json(traj));
      },
      py::arg("params"), py::arg("t_end"), py::arg("seed"), py::arg("snapshots"), py::arg("sampling") = "distinct");

  m.def(
      "ensemble",
      [](const ModelParams& p, double t_end, const std::vector<double>& snapshots, std::size_t replicas,
         std::uint64_t seed, const std::string& sampling, unsigned threads) {
        EnsembleResult result;
        const SimOptions opts = sim_options(sampling, false);
        {
          py::gil_scoped_release release;
          result = ensemble(p, t_end, snapshots, replicas, seed, opts, threads);
        }
        Json j = to_json(result);
        j["final_arrivals"] = result.final_arrivals;
        return dump(j);
      },
      py::arg("params"), py::arg("t_end"), py::arg("snapshots"), py::arg("replicas"), py::arg("seed"),
      py::arg("sampling") = "distinct", py::arg("threads") = 0);

  m.def(
      "compare_sources",
      [](const ModelParams& p, const std::string& a, const std::string& b, const std::vector<double>& t, int k_max,
         double tol) {
        auto build = [&](const std::string& name) -> DegreeTrajectory {
          if (name == "closed_form") return closed_form_trajectory(build_constants(p, k_max), t, k_max);
          if (name == "hypergeometric") return hypergeometric_trajectory(p, t, k_max);
          if (name == "krapivsky_redner") return krapivsky_redner_trajectory(t, k_max);
          if (name == "ode") {
            OdeConfig cfg;
            cfg.k_max = std::max(400, k_max);
            cfg.t_snapshots = t;
            return integrate(p, cfg);
          }
          throw InputError("unknown source '" + name + "'");
        };
        auto report = compare(build(a), build(b), tol);
        if (a == "hypergeometric" || b == "hypergeometric") report.report_only = true;
        return dump(to_json(report));
      },
      py::arg("params"), py::arg("a"), py::arg("b"), py::arg("t"), py::arg("k_max") = 40, py::arg("tol") = 1e-6);

  m.def(
      "identity_probe",
      [](int mm, double lambda, double t, int j_max, double tol) {
        return dump(to_json(identity_probe(mm, lambda, t, j_max, tol)));
      },
      py::arg("m"), py::arg("lam"), py::arg("t"), py::arg("j_max") = 50, py::arg("tol") = 1e-6);
}
