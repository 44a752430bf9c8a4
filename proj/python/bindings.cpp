// SPDX-License-Identifier: Apache-2.0
#include "lclab/bm_verify.hpp"
#include "lclab/calculus.hpp"
#include "lclab/catalog.hpp"
#include "lclab/level_sets.hpp"
#include "lclab/perimeter.hpp"
#include "lclab/sampler.hpp"

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace lclab;

namespace {

py::dict estimate_dict(const MCEstimate& e) {
  py::dict d;
  d["value"] = e.value;
  d["std_error"] = e.std_error;
  d["n_samples"] = e.n_samples;
  return d;
}

SamplerConfig config(std::uint64_t seed, const std::string& method) {
  SamplerConfig c;
  c.seed = seed;
  if (method == "exact") c.method = SampleMethod::Exact;
  else if (method == "hit-and-run") c.method = SampleMethod::HitAndRun;
  else if (method != "auto") fail(ErrorKind::InvalidArgument, "method must be auto, exact or hit-and-run");
  return c;
}

}  // namespace

PYBIND11_MODULE(_lclab, m) {
  m.doc() = "Bindings for the lclab core library";
  m.attr("__version__") = LCLAB_VERSION;

  static py::exception<Error> error(m, "Error", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  py::class_<LogConcaveDensity>(m, "Measure")
      .def_property_readonly("dimension", &LogConcaveDensity::dimension)
      .def_property_readonly("family", &LogConcaveDensity::family_name)
      .def("potential", &LogConcaveDensity::potential)
      .def("gradient", &LogConcaveDensity::gradient)
      .def("density", &LogConcaveDensity::density)
      .def("is_even", &LogConcaveDensity::is_even)
      .def("__repr__", [](const LogConcaveDensity& d) {
        return "<Measure " + d.family_name() + " n=" + std::to_string(d.dimension()) + ">";
      });

  py::class_<ConvexBody>(m, "Body")
      .def_property_readonly("dimension", &ConvexBody::dimension)
      .def("contains", [](const ConvexBody& b, const Vec& x) { return contains(b, x); })
      .def("gauge", [](const ConvexBody& b, const Vec& x) { return gauge(b, x); })
      .def("volume", [](const ConvexBody& b) { return exact_volume(b); });

  m.def("measure", [](const std::string& key, int n) { return Catalog::standard().measure(key, n); },
        py::arg("key"), py::arg("n"), "Catalog measure by key or inline JSON descriptor.");
  m.def("body", [](const std::string& key, int n) { return Catalog::standard().body(key, n); }, py::arg("key"),
        py::arg("n"));
  m.def("measure_keys", [] { return Catalog::standard().measure_keys(); });
  m.def("set_threads", &set_thread_count, py::arg("threads"));

  m.def(
      "sample",
      [](const LogConcaveDensity& d, std::int64_t count, std::uint64_t seed, const std::string& method) {
        py::gil_scoped_release release;
        return sample(d, count, config(seed, method));
      },
      py::arg("measure"), py::arg("count"), py::arg("seed") = 1, py::arg("method") = "auto",
      "count x n array of draws; identical for every thread count.");

  m.def(
      "functional_perimeter",
      [](const LogConcaveDensity& d, std::int64_t count, std::uint64_t seed) {
        PerimeterEstimate p;
        {
          py::gil_scoped_release release;
          p = estimate_functional_perimeter(d, count, config(seed, "auto"));
        }
        py::dict out = estimate_dict(p.estimate);
        out["bound"] = p.upper_cap;
        out["scale"] = p.linear_scale;
        return out;
      },
      py::arg("measure"), py::arg("count") = 200000, py::arg("seed") = 1);

  m.def(
      "mu_perimeter",
      [](const LogConcaveDensity& d, const ConvexBody& b, const std::string& method, std::int64_t samples,
         std::uint64_t seed) {
        PerimeterOptions o;
        o.samples = samples;
        o.seed = seed;
        const auto r = mu_perimeter(d, b, method == "epsilon" ? PerimeterMethod::Epsilon : PerimeterMethod::Boundary, o);
        return estimate_dict(r.estimate);
      },
      py::arg("measure"), py::arg("body"), py::arg("method") = "boundary", py::arg("samples") = 200000,
      py::arg("seed") = 11);

  m.def("coarea_integral", &coarea_integral, py::arg("measure"));
  m.def("exact_level_set_mass", &exact_level_set_mass, py::arg("measure"), py::arg("t"));
  m.def(
      "level_set_contains",
      [](const LogConcaveDensity& d, double t, const Mat& points) {
        const auto r = level_set(d, t);
        std::vector<bool> out;
        out.reserve(points.rows());
        for (Eigen::Index i = 0; i < points.rows(); ++i) out.push_back(r.contains(points.row(i).transpose()));
        return out;
      },
      py::arg("measure"), py::arg("t"), py::arg("points"));

  m.def(
      "radial_identities",
      [](const LogConcaveDensity& d) {
        const auto r = radial_identities(d);
        py::dict out;
        out["mass"] = r.mass;
        out["second_moment"] = r.second_moment;
        out["perimeter"] = r.perimeter;
        out["bound"] = r.bound;
        out["holds"] = r.holds;
        return out;
      },
      py::arg("measure"));

  m.def(
      "entropy",
      [](const LogConcaveDensity& d, const std::string& method, std::int64_t count, std::uint64_t seed) {
        const auto q = entropy(d, method == "quadrature" ? EntropyMethod::Quadrature : EntropyMethod::MonteCarlo,
                               config(seed, "auto"), count);
        return py::make_tuple(q.value, q.std_error);
      },
      py::arg("measure"), py::arg("method") = "monte-carlo", py::arg("count") = 200000, py::arg("seed") = 1);

  m.def(
      "legendre_1d",
      [](const std::vector<double>& values, double half_width) {
        GridFunction g;
        g.dim = 1;
        g.half_width = half_width;
        g.points = static_cast<int>(values.size());
        g.values = values;
        return legendre(g).values;
      },
      py::arg("values"), py::arg("half_width"), "Discrete Legendre transform on the grid [-a, a].");

  m.def(
      "moreau",
      [](const std::function<double(const Vec&)>& psi, double lambda, const Vec& x) {
        const auto r = moreau(psi, lambda, x);
        return py::make_tuple(r.value, r.argmin);
      },
      py::arg("psi"), py::arg("lam"), py::arg("x"));

  m.def("default_exponent", &default_exponent, py::arg("n"));
  m.def(
      "bm_check",
      [](const LogConcaveDensity& d, const ConvexBody& K, const ConvexBody& L, double lambda, double exponent,
         std::int64_t samples, std::uint64_t seed) {
        BMOptions o;
        o.samples = samples;
        o.seed = seed;
        BMCheckResult r;
        {
          py::gil_scoped_release release;
          r = bm_check(d, K, L, lambda, exponent, o);
        }
        py::dict out;
        out["margin"] = r.margin;
        out["error"] = r.error;
        out["verdict"] = std::string(to_string(r.verdict));
        out["mass_k"] = r.masses.k.value;
        out["mass_l"] = r.masses.l.value;
        out["mass_m"] = r.masses.m.value;
        return out;
      },
      py::arg("measure"), py::arg("K"), py::arg("L"), py::arg("lam"), py::arg("exponent"),
      py::arg("samples") = 20000, py::arg("seed") = 21);
}
