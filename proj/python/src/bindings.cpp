#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bikegeo/closedform.hpp"
#include "bikegeo/diagnostics.hpp"
#include "bikegeo/dynamics.hpp"
#include "bikegeo/elliptic.hpp"
#include "bikegeo/io.hpp"
#include "bikegeo/rodshape.hpp"
#include "bikegeo/shooting.hpp"
#include "bikegeo/transforms.hpp"

namespace py = pybind11;
using namespace bikegeo;

namespace {

std::vector<double> as_list(const Vec3& v) { return {v.x, v.y, v.z}; }

Vec3 as_vec3(const std::vector<double>& v) {
  if (v.size() != 3) throw DomainError("expected a 3-vector");
  return {v[0], v[1], v[2]};
}

py::dict params_dict(const GeodesicParams& g) {
  py::dict d;
  d["a"] = g.a;
  d["b"] = g.b;
  d["p"] = g.p_norm;
  d["omega"] = g.omega;
  d["k2"] = g.k.m;
  d["A"] = g.A;
  d["B"] = g.B;
  d["n"] = g.n;
  d["period"] = g.period_T;
  return d;
}

py::dict screw_dict(const ScrewMotion& s) {
  py::dict d;
  d["axis_point"] = as_list(s.axis_point);
  d["axis_dir"] = as_list(s.axis_dir);
  d["dtheta"] = s.delta_theta;
  d["dtheta_signed"] = s.signed_theta;
  d["dz"] = s.delta_z;
  d["winding"] = s.winding;
  return d;
}

py::dict simulate_py(double a, double b, double t_max, double dt_out,
                     double rel_tol, double abs_tol, bool aligned) {
  const GeodesicParams params = GeodesicParams::from_ab(a, b);
  IntegrationOptions opts;
  opts.rel_tol = rel_tol;
  opts.abs_tol = abs_tol;
  opts.dt_out = dt_out;
  const PhaseState seed =
      aligned ? aligned_initial_state(a, b) : canonical_initial_state(a, b);
  const SampledPath path = integrate(seed, t_max, opts);
  const auto rows = track_rows(path, params);

  py::list t, front, back, kappa, tau;
  for (const TrackRow& r : rows) {
    t.append(r.t);
    front.append(as_list(r.front));
    back.append(as_list(r.back));
    kappa.append(r.kappa);
    tau.append(r.tau);
  }
  const InvariantReport rep = invariant_report(path);
  py::dict drift;
  drift["H"] = rep.drift_H;
  drift["p"] = rep.drift_p;
  drift["b"] = rep.drift_b;
  drift["v_norm"] = rep.drift_vnorm;
  drift["rv"] = rep.drift_rv;

  py::dict d;
  d["params"] = params_dict(params);
  d["t"] = t;
  d["front"] = front;
  d["back"] = back;
  d["kappa"] = kappa;
  d["tau"] = tau;
  d["drift"] = drift;
  return d;
}

py::dict closed_form_py(double a, double b, double t_max, double dt_out) {
  const GeodesicParams params = GeodesicParams::from_ab(a, b);
  const auto rows = closed_form_rows(params, t_max, dt_out);
  py::list t, front, back, kappa, tau;
  for (const TrackRow& r : rows) {
    t.append(r.t);
    front.append(as_list(r.front));
    back.append(as_list(r.back));
    kappa.append(r.kappa);
    tau.append(r.tau);
  }
  py::dict d;
  d["params"] = params_dict(params);
  d["t"] = t;
  d["front"] = front;
  d["back"] = back;
  d["kappa"] = kappa;
  d["tau"] = tau;
  return d;
}

py::object monodromy_py(double a, double b, bool numeric) {
  const GeodesicParams params = GeodesicParams::from_ab(a, b);
  if (params.is_soliton()) throw SolitonError("soliton: aperiodic");
  nlohmann::json j;
  if (!numeric) {
    j = monodromy_report(params, nullptr);
  } else {
    IntegrationOptions opts;
    opts.rel_tol = 1e-11;
    opts.abs_tol = 1e-12;
    opts.dt_out = params.period_T / 64;
    const SampledPath path =
        integrate(aligned_initial_state(a, b), 2.5 * params.period_T, opts);
    j = monodromy_report(params, &path);
  }
  py::module_ json_mod = py::module_::import("json");
  return json_mod.attr("loads")(j.dump());
}

py::list shoot_py(const std::vector<double>& from_x, const std::vector<double>& from_v,
                  const std::vector<double>& to_x, const std::vector<double>& to_v,
                  std::uint64_t seed, int restarts) {
  FramePlacement from{as_vec3(from_x), as_vec3(from_v).normalized()};
  FramePlacement to{as_vec3(to_x), as_vec3(to_v).normalized()};
  ShootOptions opts;
  opts.seed = seed;
  opts.restarts = restarts;
  py::list out;
  for (const ShootingResult& r : shoot(from, to, opts)) {
    py::dict d;
    d["p"] = as_list(r.p);
    d["x_dot0"] = as_list(r.x_dot0);
    d["duration"] = r.duration;
    d["residual"] = r.residual;
    d["converged"] = r.converged;
    out.append(d);
  }
  return out;
}

py::list check_py(const std::string& suite) {
  py::list out;
  for (const CheckResult& r : run_check_suite(suite)) {
    py::dict d;
    d["name"] = r.name;
    d["measured"] = r.measured;
    d["bound"] = r.bound;
    d["pass"] = r.pass;
    out.append(d);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bicycle (sub-Riemannian) geodesics in R^3: Hamiltonian "
            "integration, elliptic closed forms, monodromy, correspondence, "
            "shooting.";

  py::register_exception<Error>(m, "BikegeoError");

  m.def("geodesic_params", [](double a, double b) {
          return params_dict(GeodesicParams::from_ab(a, b));
        },
        py::arg("a"), py::arg("b"),
        "Derived quantities (|p|, omega, k^2, A, B, n, period) for (a, b).");

  m.def("simulate", &simulate_py, py::arg("a"), py::arg("b"), py::arg("t_max"),
        py::arg("dt_out") = 0.01, py::arg("rel_tol") = 1e-10,
        py::arg("abs_tol") = 1e-12, py::arg("aligned") = true,
        "Integrate the geodesic equations; returns tracks, kappa, tau and "
        "conserved-quantity drift.");

  m.def("closed_form", &closed_form_py, py::arg("a"), py::arg("b"),
        py::arg("t_max"), py::arg("dt_out") = 0.01,
        "Elliptic-function front/back track in the axis frame.");

  m.def("kappa_sq_closed", [](double t, double a, double b) {
          return kappa_sq_closed(t, GeodesicParams::from_ab(a, b));
        },
        py::arg("t"), py::arg("a"), py::arg("b"));

  m.def("monodromy", &monodromy_py, py::arg("a"), py::arg("b"),
        py::arg("numeric") = true,
        "Monodromy report: closed-form and numerically extracted screw data.");

  m.def("ranges", [](double a, double b) {
          const Ranges r = ranges(a, b);
          py::dict d;
          d["kappa"] = py::make_tuple(r.kappa_min, r.kappa_max);
          d["tau"] = py::make_tuple(r.tau_min, r.tau_max);
          return d;
        },
        py::arg("a"), py::arg("b"), "Attained curvature/torsion ranges.");

  m.def("kirchhoff_params", [](double a, double b) {
          const KirchhoffParams k = kirchhoff_params(a, b);
          return py::make_tuple(k.a1, k.a2, k.a3, k.a4);
        },
        py::arg("a"), py::arg("b"));

  m.def("flip", [](const std::vector<double>& x, const std::vector<double>& v) {
          const FramePose f = flip(FramePose{as_vec3(x), as_vec3(v)});
          return py::make_tuple(as_list(f.x), as_list(f.v));
        },
        py::arg("x"), py::arg("v"), "Bicycle correspondence (x,v) -> (x-2v,-v).");

  m.def("shoot", &shoot_py, py::arg("from_x"), py::arg("from_v"),
        py::arg("to_x"), py::arg("to_v"), py::arg("seed") = 0x42696b65,
        py::arg("restarts") = 16,
        "Solve the two-placement boundary value problem.");

  m.def("check", &check_py, py::arg("suite") = "all",
        "Run an invariant suite; returns one record per check.");

  auto ell = m.def_submodule("elliptic", "Elliptic integrals and functions");
  ell.def("complete_k", [](double m) {
    return elliptic::complete_k(elliptic::Modulus::from_m(m));
  });
  ell.def("complete_e", [](double m) {
    return elliptic::complete_e(elliptic::Modulus::from_m(m));
  });
  ell.def("complete_pi", [](double n, double m) {
    return elliptic::complete_pi(n, elliptic::Modulus::from_m(m));
  });
  ell.def("jacobi_sn_cn_dn", [](double u, double m) {
    const auto j = elliptic::jacobi_sn_cn_dn(u, elliptic::Modulus::from_m(m));
    return py::make_tuple(j.sn, j.cn, j.dn);
  });
  ell.def("incomplete_e", [](double x, double m) {
    return elliptic::incomplete_e(x, elliptic::Modulus::from_m(m));
  });
  ell.def("incomplete_pi", [](double x, double n, double m) {
    return elliptic::incomplete_pi(x, n, elliptic::Modulus::from_m(m));
  });

#ifdef BIKEGEO_VERSION
  m.attr("__version__") = BIKEGEO_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}
