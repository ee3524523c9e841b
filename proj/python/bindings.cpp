#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nncert/config.hpp"
#include "nncert/setup.hpp"
#include "nncert/study.hpp"
#include "nncert/young.hpp"

namespace py = pybind11;
using namespace nncert;

namespace {

Tensor3 tensor_from(const std::vector<double>& flat) {
  if (flat.size() != 9) throw std::invalid_argument("tensor expects 9 components, row major");
  Tensor3 t;
  for (std::size_t k = 0; k < 9; ++k) t.a[k] = flat[k];
  return t;
}

py::dict entry_dict(const CheckEntry& e) {
  py::dict d;
  d["name"] = e.name;
  d["value"] = e.value;
  d["bound"] = e.bound;
  d["residual"] = e.residual;
  d["pass"] = e.pass;
  d["constants"] = e.constants;
  return d;
}

py::dict report_dict(const CertificateReport& r) {
  py::dict d;
  d["title"] = r.title;
  d["all_pass"] = r.all_pass();
  py::list entries;
  for (const auto& e : r.entries) entries.append(entry_dict(e));
  d["entries"] = entries;
  return d;
}

py::dict simulate_config_text(const std::string& text, const std::string& origin) {
  const Config cfg = Config::parse_string(text, origin);
  const SimSetup setup = sim_from_config(cfg);
  cfg.reject_unknown();
  const Trajectory traj = run(setup.sim);
  const auto rows = energy_report(traj, setup.sim.law, setup.sim.forcing);
  py::dict d;
  py::list t, mass, kinetic, internal, sei;
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    t.append(traj.states[k].t);
    mass.append(integrate(traj.states[k].rho));
    kinetic.append(rows[k].kinetic);
    internal.append(rows[k].internal);
    sei.append(rows[k].energy_residual);
  }
  d["t"] = t;
  d["mass"] = mass;
  d["kinetic"] = kinetic;
  d["internal"] = internal;
  d["sei_residual"] = sei;

  if (setup.manufactured) {
    const ReferenceSolution ref = ReferenceSolution::from_manufactured(*setup.manufactured);
    const EnergySeries series = energy_vs_reference(traj, ref);
    py::list energy;
    for (double e : series.energy) energy.append(e);
    d["relative_energy"] = energy;
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(_nncert, m) {
  m.doc() = "shear-dependent compressible flow certification library";

  py::class_<YoungFunction>(m, "YoungFunction")
      .def_static("m_exponential", &YoungFunction::m_exponential)
      .def_static("phi_gamma", &YoungFunction::phi_gamma, py::arg("gamma"))
      .def_static("n_conjugate_of_m", &YoungFunction::n_conjugate_of_m)
      .def_static("quadratic_f", &YoungFunction::quadratic_f)
      .def_property_readonly("domain_max", &YoungFunction::domain_max)
      .def("__call__", [](const YoungFunction& f, double z) { return eval_young(f, z); });

  m.def("eval_young", &eval_young, py::arg("f"), py::arg("z"));
  m.def(
      "conjugate_numeric",
      [](const YoungFunction& f, double y, double z_hi, double tol) {
        return conjugate_numeric(f, y, {z_hi, tol});
      },
      py::arg("f"), py::arg("y"), py::arg("z_hi") = 64.0, py::arg("tol") = 1e-12);
  m.def(
      "check_delta2",
      [](const YoungFunction& f, double lo, double hi, int samples) {
        const Delta2Report r = check_delta2(f, lo, hi, samples);
        py::dict d;
        d["sup_ratio"] = r.sup_ratio;
        d["satisfied"] = r.satisfied;
        return d;
      },
      py::arg("f"), py::arg("z_lo"), py::arg("z_hi"), py::arg("samples") = 400);

  py::class_<ViscosityLaw>(m, "ViscosityLaw")
      .def_static("exponential_m", &ViscosityLaw::exponential_m)
      .def_static("power_law", &ViscosityLaw::power_law, py::arg("c"), py::arg("alpha"))
      .def_static("newtonian", &ViscosityLaw::newtonian, py::arg("mu"))
      .def("value", &ViscosityLaw::value, py::arg("z"))
      .def("p_times_z", &ViscosityLaw::p_times_z, py::arg("z"))
      .def("stress_gauge", &ViscosityLaw::stress_gauge, py::arg("z"))
      .def_property_readonly("q_claimed",
                             [](const ViscosityLaw& l) { return l.q_claimed(); });

  m.def(
      "pairing",
      [](const ViscosityLaw& law, const std::vector<double>& u, const std::vector<double>& v) {
        return pairing(law, tensor_from(u), tensor_from(v));
      },
      py::arg("law"), py::arg("u"), py::arg("v"));

  m.def(
      "certify_pointwise_conditions",
      [](const ViscosityLaw& law, const std::vector<double>& z_grid, double tol) {
        return report_dict(certify_pointwise_conditions(law, z_grid, tol));
      },
      py::arg("law"), py::arg("z_grid"), py::arg("tol") = 1e-10);
  m.def(
      "certify_monotonicity_exponent",
      [](const ViscosityLaw& law, double q, long n, double lo, double hi, std::uint64_t seed) {
        const MonotonicityCertificate c = certify_monotonicity_exponent(law, q, n, lo, hi, seed);
        py::dict d;
        d["c_min"] = c.c_min;
        d["pass"] = c.pass;
        d["nonpositive"] = c.nonpositive;
        d["evaluated"] = c.evaluated;
        return d;
      },
      py::arg("law"), py::arg("q"), py::arg("n_samples"), py::arg("entry_lo") = -5.0,
      py::arg("entry_hi") = 5.0, py::arg("seed") = 1);
  m.def(
      "certify_growth_chain",
      [](const ViscosityLaw& law, long n, double lo, double hi, std::uint64_t seed) {
        return report_dict(certify_growth_chain(law, n, lo, hi, seed));
      },
      py::arg("law"), py::arg("n_samples"), py::arg("entry_lo") = -5.0, py::arg("entry_hi") = 5.0,
      py::arg("seed") = 1);
  m.def(
      "certify_exponential_decomposition",
      [](const ViscosityLaw& law, double lo, double hi, int points) {
        return report_dict(certify_exponential_decomposition(law, lo, hi, points));
      },
      py::arg("law"), py::arg("z_lo") = 1e-6, py::arg("z_hi") = 30.0, py::arg("points") = 1000);
  m.def("fit_pairing_exponent", &fit_pairing_exponent, py::arg("law"), py::arg("n_samples"),
        py::arg("entry_lo") = -5.0, py::arg("entry_hi") = 5.0, py::arg("seed") = 1);

  m.def("h_gap", &h_gap, py::arg("rho"), py::arg("r"));
  m.def("sbp_residual",
        [](int dim, int n, int trials, std::uint64_t seed) {
          return sbp_residual(Grid::unit(dim, n), trials, seed);
        },
        py::arg("dim"), py::arg("n"), py::arg("trials") = 4, py::arg("seed") = 1);

  m.def(
      "run_convergence_study",
      [](int base_n, int levels, double amplitude, double speed, double end_time, double cfl) {
        StudyParams p;
        p.amplitude = amplitude;
        p.speed = speed;
        p.end_time = end_time;
        p.cfl = cfl;
        const ConvergenceStudy s = run_convergence_study(p, base_n, levels);
        py::dict d;
        d["order_rho"] = s.order_rho;
        d["order_u"] = s.order_u;
        d["order_energy"] = s.order_energy;
        d["sei_monotone"] = s.sei_monotone;
        py::list levels_out;
        for (const auto& lvl : s.levels) {
          py::dict ld;
          ld["n"] = lvl.n;
          ld["h"] = lvl.h;
          ld["err_rho"] = lvl.err_rho;
          ld["err_u"] = lvl.err_u;
          ld["sei_max"] = lvl.sei_max;
          ld["max_rel_energy"] = lvl.max_energy;
          levels_out.append(ld);
        }
        d["levels"] = levels_out;
        return d;
      },
      py::arg("base_n"), py::arg("levels") = 3, py::arg("amplitude") = 0.25, py::arg("speed") = 1.0,
      py::arg("end_time") = 0.02, py::arg("cfl") = 0.4);

  m.def("simulate_config", &simulate_config_text, py::arg("config_text"),
        py::arg("origin") = "<python>");

  py::register_exception<ConfigError>(m, "ConfigError");
}
