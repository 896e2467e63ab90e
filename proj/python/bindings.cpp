#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "chlab/approx.hpp"
#include "chlab/bump.hpp"
#include "chlab/config.hpp"
#include "chlab/fit.hpp"
#include "chlab/runner.hpp"
#include "chlab/solver.hpp"
#include "chlab/spectral.hpp"

namespace py = pybind11;
using namespace chlab;

namespace {

py::array_t<double> to_numpy(const Field& f) {
  auto v = f.values();
  py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

Field from_numpy(const Grid& grid, py::array_t<double, py::array::c_style | py::array::forcecast> a) {
  if (a.ndim() != 1 || static_cast<std::size_t>(a.shape(0)) != grid.size()) {
    throw InvalidArgument("sample array must be one-dimensional with grid.size entries");
  }
  RealBuffer v(a.data(), a.data() + a.shape(0));
  return Field(grid, std::move(v));
}

}  // namespace

PYBIND11_MODULE(_chlab, m) {
  m.doc() = "Pseudospectral Camassa-Holm laboratory";

  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);

  py::class_<Grid>(m, "Grid")
      .def(py::init(&make_grid), py::arg("half_length"), py::arg("n_points"))
      .def_property_readonly("half_length", &Grid::half_length)
      .def_property_readonly("size", &Grid::size)
      .def_property_readonly("dx", &Grid::dx)
      .def_property_readonly("k_max", &Grid::k_max)
      .def("nodes", [](const Grid& g) { return py::array_t<double>(py::cast(g.nodes())); })
      .def("__repr__", [](const Grid& g) {
        std::ostringstream ss;
        ss << "Grid(half_length=" << g.half_length() << ", n_points=" << g.size() << ")";
        return ss.str();
      });

  py::class_<Field>(m, "Field")
      .def(py::init(&from_numpy), py::arg("grid"), py::arg("values"))
      .def_property_readonly("grid", &Field::grid)
      .def("values", &to_numpy)
      .def("__len__", &Field::size)
      .def("__add__", [](const Field& a, const Field& b) { return a + b; })
      .def("__sub__", [](const Field& a, const Field& b) { return a - b; })
      .def("__mul__", [](const Field& a, const Field& b) { return a * b; })
      .def("__mul__", [](const Field& a, double c) { return c * a; })
      .def("__rmul__", [](const Field& a, double c) { return c * a; });

  m.def("ds_apply", &ds_apply, py::arg("f"), py::arg("s"));
  m.def("lambda_inv_apply", &lambda_inv_apply, py::arg("f"));
  m.def("derivative", &derivative, py::arg("f"), py::arg("order") = 1);
  m.def("sobolev_norm", &sobolev_norm, py::arg("f"), py::arg("s"));
  m.def("sup_norm", &sup_norm, py::arg("f"));
  m.def("c1_norm", &c1_norm, py::arg("f"));

  m.def(
      "make_bump",
      [](const Grid& g, double inner, double outer) { return make_bump(BumpSpec{inner, outer}, g); },
      py::arg("grid"), py::arg("inner_radius") = 1.0, py::arg("outer_radius") = 2.0);

  py::class_<SolverConfig>(m, "SolverConfig")
      .def(py::init<>())
      .def_readwrite("cfl", &SolverConfig::cfl)
      .def_readwrite("dealias_fraction", &SolverConfig::dealias_fraction)
      .def_readwrite("t_end", &SolverConfig::t_end)
      .def_readwrite("record_every", &SolverConfig::record_every)
      .def_readwrite("blowup_c1_threshold", &SolverConfig::blowup_c1_threshold)
      .def_readwrite("max_dt", &SolverConfig::max_dt);

  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("times", &Trajectory::times)
      .def_readonly("states", &Trajectory::states)
      .def_readonly("blowup", &Trajectory::blowup)
      .def_readonly("steps", &Trajectory::steps)
      .def_property_readonly("hs_norms", [](const Trajectory& t) {
        std::vector<double> out;
        for (const auto& d : t.diagnostics) out.push_back(d.hs_norm);
        return out;
      });

  m.def("ch_rhs", &ch_rhs, py::arg("u"), py::arg("dealias_fraction") = 2.0 / 3.0);
  m.def(
      "solve", [](const Field& u0, const SolverConfig& cfg, double s) { return solve(u0, cfg, s); },
      py::arg("u0"), py::arg("config") = SolverConfig{}, py::arg("s_monitor") = 2.0,
      py::call_guard<py::gil_scoped_release>());

  py::class_<ApproxParams>(m, "ApproxParams")
      .def(py::init([](double omega, double lambda, double delta, double s) {
             return ApproxParams{omega, lambda, delta, s};
           }),
           py::arg("omega") = 1.0, py::arg("lambda_") = 16.0, py::arg("delta") = 1.5, py::arg("s") = 2.0)
      .def_readwrite("omega", &ApproxParams::omega)
      .def_readwrite("lambda_", &ApproxParams::lambda)
      .def_readwrite("delta", &ApproxParams::delta)
      .def_readwrite("s", &ApproxParams::s);

  m.def("grid_for", &grid_for, py::arg("lambda_"), py::arg("delta"), py::arg("resolution") = 1);
  m.def("high_freq", &high_freq, py::arg("params"), py::arg("t"), py::arg("grid"),
        py::arg("dealias_fraction") = 2.0 / 3.0);

  py::class_<ApproxSolution>(m, "ApproxSolution")
      .def(py::init<const ApproxParams&, const Grid&, const SolverConfig&>(), py::arg("params"), py::arg("grid"),
           py::arg("config") = SolverConfig{}, py::call_guard<py::gil_scoped_release>())
      .def("high", &ApproxSolution::high)
      .def("low", &ApproxSolution::low)
      .def("total", &ApproxSolution::total);

  py::class_<ResidualReport>(m, "ResidualReport")
      .def_readonly("t", &ResidualReport::t)
      .def_readonly("h1_terms", &ResidualReport::h1_terms)
      .def_readonly("h1_sum", &ResidualReport::h1_sum)
      .def_readonly("h1_direct", &ResidualReport::h1_direct)
      .def_readonly("rel_gap", &ResidualReport::rel_gap);
  m.def("residual_h1", &residual_h1, py::arg("approx"), py::arg("t"));

  m.def(
      "fit_slope",
      [](std::vector<std::pair<double, double>> pts, std::size_t top_k) {
        const auto f = fit_slope(std::move(pts), top_k);
        return py::make_tuple(f.slope, f.std_error);
      },
      py::arg("points"), py::arg("top_k") = 3);

  m.def("parse_config", [](const std::string& text) { return serialize_config(parse_config(text)); },
        py::arg("text"), "Validate a configuration and return it with every default spelled out.");
  m.def(
      "run",
      [](const std::string& text, const std::string& out_dir) {
        RunConfig cfg = parse_config(text);
        if (!out_dir.empty()) cfg.output_dir = out_dir;
        std::ostringstream log;
        RunResult r;
        {
          py::gil_scoped_release release;
          r = run(cfg, log);
        }
        py::dict verdicts;
        for (const auto& v : r.verdicts) verdicts[py::str(v.id)] = v.pass;
        return py::make_tuple(r.exit_status, verdicts);
      },
      py::arg("config_text"), py::arg("out_dir") = "");
}
