#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "orbitns/diagnostics.hpp"
#include "orbitns/dynamics.hpp"
#include "orbitns/error.hpp"
#include "orbitns/incidence.hpp"
#include "orbitns/lattice.hpp"
#include "orbitns/spectral.hpp"
#include "orbitns/state_io.hpp"
#include "orbitns/symmetry.hpp"

namespace py = pybind11;
using namespace orbitns;

namespace {

using Triple = std::array<int, 3>;

Mode mode(const Triple& t) { return {t[0], t[1], t[2]}; }
py::tuple triple(const Mode& k) { return py::make_tuple(k[0], k[1], k[2]); }

py::array_t<int> mode_array(const std::vector<Mode>& modes) {
  py::array_t<int> out({static_cast<py::ssize_t>(modes.size()), py::ssize_t{3}});
  auto view = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < modes.size(); ++i)
    for (py::ssize_t j = 0; j < 3; ++j) view(i, j) = modes[i][j];
  return out;
}

py::array_t<double> matrix_array(const SquareMatrix& m) {
  const auto d = static_cast<py::ssize_t>(m.dim());
  py::array_t<double> out({d, d});
  auto view = out.mutable_unchecked<2>();
  for (py::ssize_t i = 0; i < d; ++i)
    for (py::ssize_t j = 0; j < d; ++j) view(i, j) = m(i, j);
  return out;
}

SquareMatrix to_matrix(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 2 || a.shape(0) != a.shape(1)) throw InvalidParameter("expected a square matrix");
  SquareMatrix m(static_cast<std::size_t>(a.shape(0)));
  auto view = a.unchecked<2>();
  for (py::ssize_t i = 0; i < a.shape(0); ++i)
    for (py::ssize_t j = 0; j < a.shape(1); ++j) m(i, j) = view(i, j);
  return m;
}

py::array_t<std::complex<double>> coefficients(const TruncatedState& u) {
  py::array_t<std::complex<double>> out({static_cast<py::ssize_t>(u.size()), py::ssize_t{3}});
  auto view = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < u.size(); ++i)
    for (py::ssize_t j = 0; j < 3; ++j) view(i, j) = u.at_index(i)[j];
  return out;
}

TruncatedState state_from_array(
    int n, const py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>& a) {
  TruncatedState u(n);
  if (a.ndim() != 2 || a.shape(0) != static_cast<py::ssize_t>(u.size()) || a.shape(1) != 3)
    throw InvalidParameter("coefficients must have shape (" + std::to_string(u.size()) + ", 3)");
  auto view = a.unchecked<2>();
  for (std::size_t i = 0; i < u.size(); ++i)
    for (py::ssize_t j = 0; j < 3; ++j) u.at_index(i)[j] = view(i, j);
  validate_state(u);
  return u;
}

py::list labels(const std::vector<Mode>& modes) {
  py::list out;
  for (const auto& k : modes) out.append(py::make_tuple(k[0], k[1], k[2]));
  return out;
}

py::dict identity_dict(const IdentityCheck& c) {
  py::list orbits;
  for (const auto& o : c.orbits) {
    py::dict d;
    d["canonical"] = triple(o.canonical);
    d["enstrophy"] = o.enstrophy;
    d["dissipation"] = o.dissipation;
    d["dzdt_direct"] = o.dzdt_direct;
    d["dzdt_from_matrix"] = o.dzdt_from_matrix;
    d["residual"] = o.residual;
    d["scale"] = o.scale;
    orbits.append(d);
  }
  py::dict out;
  out["orbits"] = orbits;
  out["aggregate_from_matrix"] = c.aggregate_from_matrix;
  out["aggregate_direct"] = c.aggregate_direct;
  out["max_relative_residual"] = c.max_relative_residual();
  out["aggregate_relative_residual"] = c.aggregate_relative_residual();
  out["holds"] = c.holds();
  return out;
}

}  // namespace

PYBIND11_MODULE(_orbitns, m) {
  m.doc() = "Orbit-reduced cubic Fourier-Galerkin truncation of 3D Navier-Stokes";

  // Owned references kept for the lifetime of the interpreter.
  static PyObject* validation_error =
      PyErr_NewException("orbitns.ValidationError", PyExc_ValueError, nullptr);
  static PyObject* divergence_error =
      PyErr_NewException("orbitns.DivergenceError", PyExc_RuntimeError, nullptr);
  m.attr("ValidationError") = py::handle(validation_error);
  m.attr("DivergenceError") = py::handle(divergence_error);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ValidationError& e) {
      PyErr_SetString(validation_error, e.what());
    } catch (const DivergenceError& e) {
      py::object err = py::reinterpret_borrow<py::object>(divergence_error)(e.what());
      err.attr("step") = e.step();
      PyErr_SetObject(divergence_error, err.ptr());
    }
  });

  // lattice
  m.def("enumerate_lattice", [](int n) { return mode_array(enumerate_lattice(n)); }, py::arg("n"));
  m.def("triad_count", [](const Triple& k, int n) { return triad_count_exact(mode(k), n); },
        py::arg("k"), py::arg("n"));
  m.def("triad_count_brute", [](const Triple& k, int n) { return triad_count_brute(mode(k), n); },
        py::arg("k"), py::arg("n"));
  m.def("total_triads", &total_triads, py::arg("n"));
  m.def("max_triad_count", &max_triad_count, py::arg("n"));
  m.def("shell_radii", &shell_radii, py::arg("n"));

  // symmetry
  m.def("canonical_rep", [](const Triple& k) { return triple(canonical_rep(mode(k))); }, py::arg("k"));
  m.def("orbit", [](const Triple& k) { return mode_array(orbit_of(mode(k)).members); }, py::arg("k"));
  m.def(
      "enumerate_orbits",
      [](int n) {
        py::list out;
        for (const auto& o : enumerate_orbits(n))
          out.append(py::make_tuple(triple(o.canonical), o.size()));
        return out;
      },
      py::arg("n"), "List of (canonical representative, orbit size) in orbit order.");

  // incidence
  m.def("gamma",
        [](const Triple& a, const Triple& b, int n) {
          return gamma(orbit_of(mode(a)), orbit_of(mode(b)), n);
        },
        py::arg("alpha"), py::arg("beta"), py::arg("n"));
  m.def(
      "incidence_matrix",
      [](int n, int workers) {
        const OrbitTable table(n);
        const auto rows = incidence_matrix(table, workers);
        const auto d = static_cast<py::ssize_t>(table.size());
        py::array_t<std::int64_t> out({d, d});
        auto view = out.mutable_unchecked<2>();
        std::vector<Mode> names;
        for (const auto& o : table.orbits()) names.push_back(o.canonical);
        for (py::ssize_t i = 0; i < d; ++i)
          for (py::ssize_t j = 0; j < d; ++j) view(i, j) = rows[i].gamma[j];
        return py::make_tuple(labels(names), out);
      },
      py::arg("n"), py::arg("workers") = 1, "(labels, Gamma) with Gamma[alpha, beta].");
  m.def(
      "max_incidence_scan",
      [](int n_max, int workers) {
        std::vector<std::pair<int, double>> out;
        for (const auto& p : max_incidence_scan(n_max, workers)) out.emplace_back(p.n, p.max_row_sqrt_sum);
        return out;
      },
      py::arg("n_max"), py::arg("workers") = 1);
  m.def(
      "diagnostics_table",
      [](int n_max) {
        py::list out;
        for (const auto& r : diagnostics_table(n_max)) {
          py::dict d;
          d["N"] = r.n;
          d["modes"] = r.modes;
          d["orbits"] = r.orbits;
          d["shells"] = r.shells;
          d["max_triads"] = r.max_triads;
          d["total_triads"] = r.total_triads;
          out.append(d);
        }
        return out;
      },
      py::arg("n_max"));

  // states
  py::class_<TruncatedState>(m, "State")
      .def(py::init<int>(), py::arg("n"), "Zero state at truncation n.")
      .def_static("random", &random_state, py::arg("n"), py::arg("s") = 2.0, py::arg("norm") = 1.0,
                  py::arg("seed") = 0)
      .def_static("from_coefficients", &state_from_array, py::arg("n"), py::arg("coefficients"))
      .def_static("from_json", &state_from_json, py::arg("text"))
      .def("to_json", &state_to_json)
      .def_property_readonly("n", &TruncatedState::truncation)
      .def_property_readonly("modes", [](const TruncatedState& u) {
        return mode_array(enumerate_lattice(u.truncation()));
      })
      .def_property_readonly("coefficients", &coefficients)
      .def("__getitem__", [](const TruncatedState& u, const Triple& k) {
        require_in_lattice(mode(k), u.truncation());
        return u[mode(k)];
      })
      .def("__len__", &TruncatedState::size)
      .def("__eq__", [](const TruncatedState& a, const TruncatedState& b) { return a == b; })
      .def("h_s_norm", &h_s_norm, py::arg("s"))
      .def("energy", &kinetic_energy)
      .def("enstrophy", &total_enstrophy);

  m.def("read_state", [](const std::string& p) { return read_state(p); }, py::arg("path"));
  m.def("write_state", [](const std::string& p, const TruncatedState& u) { write_state(p, u); },
        py::arg("path"), py::arg("state"));

  // spectral
  m.def("leray_project", [](const Triple& k, const Vec3c& v) { return leray_project(mode(k), v); },
        py::arg("k"), py::arg("v"));
  m.def("nonlinear_term",
        [](const TruncatedState& u, const Triple& k) { return nonlinear_term(u, mode(k)); },
        py::arg("state"), py::arg("k"));
  m.def("galerkin_rhs", &galerkin_rhs, py::arg("state"), py::arg("nu"), py::arg("workers") = 1);
  m.def(
      "transfer_matrix",
      [](const TruncatedState& u, int workers) {
        const OrbitTable table(u.truncation());
        const auto tm = transfer_matrix(u, table, workers);
        return py::make_tuple(labels(tm.labels), matrix_array(tm.entries));
      },
      py::arg("state"), py::arg("workers") = 1, "(labels, M) with M[alpha, beta].");
  m.def(
      "decompose",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
        const auto d = decompose(to_matrix(a));
        return py::make_tuple(matrix_array(d.antisymmetric), matrix_array(d.symmetric));
      },
      py::arg("m"), "(A, V) with A antisymmetric, V symmetric and A + V = M.");
  m.def("sigma_sum", [](const Triple& k, double s, int n) { return sigma_sum(mode(k), s, n); },
        py::arg("k"), py::arg("s"), py::arg("n"));
  m.def(
      "row_sum_check",
      [](const TruncatedState& u, double s, int workers) {
        const OrbitTable table(u.truncation());
        py::list out;
        for (const auto& r : row_sum_check(u, table, s, workers)) {
          py::dict d;
          d["alpha"] = triple(table[r.orbit].canonical);
          d["rowsum"] = r.rowsum;
          d["bound_shape"] = r.bound_shape;
          d["ratio"] = r.ratio;
          d["intermediate_bound"] = r.intermediate_bound;
          out.append(d);
        }
        return out;
      },
      py::arg("state"), py::arg("s"), py::arg("workers") = 1);

  // dynamics
  m.def(
      "verify_enstrophy_identity",
      [](const TruncatedState& u, double nu, int workers) {
        return identity_dict(verify_enstrophy_identity(u, nu, OrbitTable(u.truncation()), workers));
      },
      py::arg("state"), py::arg("nu"), py::arg("workers") = 1);
  m.def("step_rk4", &step_rk4, py::arg("state"), py::arg("dt"), py::arg("nu"), py::arg("workers") = 1);
  m.def("default_time_step", &default_time_step, py::arg("state"), py::arg("nu"));
  m.def(
      "simulate",
      [](const TruncatedState& u, double nu, double dt, long steps, long every, int workers) {
        SimulationConfig cfg{nu, dt, steps, every, workers};
        py::list out;
        for (const auto& r : simulate(u, cfg)) {
          py::dict d = identity_dict(r.check);
          d["step"] = r.step;
          d["time"] = r.time;
          out.append(d);
        }
        return out;
      },
      py::arg("state"), py::arg("nu"), py::arg("dt"), py::arg("steps"), py::arg("every") = 1,
      py::arg("workers") = 1);
}
