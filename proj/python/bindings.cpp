#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "xyzt/analysis.hpp"
#include "xyzt/io.hpp"
#include "xyzt/version.hpp"

namespace py = pybind11;
using namespace xyzt;

namespace {

py::array_t<cplx> to_numpy(const ComplexMatrix& m) {
    const int n = m.dim();
    py::array_t<cplx> out({n, n});
    auto buf = out.mutable_unchecked<2>();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) buf(i, j) = m(i, j);
    return out;
}

ComplexMatrix from_numpy(const py::array_t<cplx, py::array::c_style | py::array::forcecast>& arr) {
    if (arr.ndim() != 2 || arr.shape(0) != arr.shape(1))
        throw py::value_error("expected a square matrix");
    const int n = static_cast<int>(arr.shape(0));
    ComplexMatrix m(n);
    auto buf = arr.unchecked<2>();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = buf(i, j);
    return m;
}

DensityMatrix state_from_numpy(
    const py::array_t<cplx, py::array::c_style | py::array::forcecast>& arr) {
    return DensityMatrix::validated(from_numpy(arr));
}

py::dict record_to_dict(const MeasureRecord& rec) {
    py::dict d;
    d["t"] = rec.t;
    d["C"] = rec.C;
    d["IC"] = rec.IC;
    d["F"] = rec.F;
    d["F_A"] = rec.F_A;
    d["F_B"] = rec.F_B;
    d["purity"] = rec.purity;
    d["upper_bound"] = rec.upper_bound;
    d["residual"] = rec.residual;
    return d;
}

ModelParams params_from_kwargs(double Jx, double Jy, double Jz, double chi, double gamma, double p) {
    ModelParams m{Jx, Jy, Jz, chi, gamma, p};
    m.validate();
    return m;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "two-qubit XYZ spin dynamics and trade-off measures";
    m.attr("__version__") = kVersion;

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init(&params_from_kwargs), py::arg("Jx") = 0.5, py::arg("Jy") = 0.3,
             py::arg("Jz") = 0.8, py::arg("chi") = 0.0, py::arg("gamma") = 0.0, py::arg("p") = 1.0)
        .def_readonly("Jx", &ModelParams::Jx)
        .def_readonly("Jy", &ModelParams::Jy)
        .def_readonly("Jz", &ModelParams::Jz)
        .def_readonly("chi", &ModelParams::chi)
        .def_readonly("gamma", &ModelParams::gamma)
        .def_readonly("p", &ModelParams::p)
        .def("__repr__", [](const ModelParams& mp) {
            return "ModelParams(Jx=" + std::to_string(mp.Jx) + ", Jy=" + std::to_string(mp.Jy) +
                   ", Jz=" + std::to_string(mp.Jz) + ", chi=" + std::to_string(mp.chi) +
                   ", gamma=" + std::to_string(mp.gamma) + ", p=" + std::to_string(mp.p) + ")";
        });

    // states
    m.def("horodecki_state",
          [](double p) { return to_numpy(horodecki_state(p).matrix()); }, py::arg("p"),
          "p |Phi><Phi| + (1-p) |11><11| in the |00>,|01>,|10>,|11> basis");
    m.def("random_density",
          [](int rank, std::uint64_t seed) {
              SplitMix64 rng(seed);
              return to_numpy(random_density(rank, rng).matrix());
          },
          py::arg("rank"), py::arg("seed"));
    m.def("random_pure",
          [](std::uint64_t seed) {
              SplitMix64 rng(seed);
              const auto amp = random_pure(rng).amplitudes();
              py::array_t<cplx> out(4);
              auto buf = out.mutable_unchecked<1>();
              for (int i = 0; i < 4; ++i) buf(i) = amp[static_cast<size_t>(i)];
              return out;
          },
          py::arg("seed"));
    m.def("partial_trace",
          [](const py::array_t<cplx, py::array::c_style | py::array::forcecast>& rho,
             const std::string& keep) {
              const Subsystem side = keep == "A" ? Subsystem::A : Subsystem::B;
              return to_numpy(partial_trace(state_from_numpy(rho), side).matrix());
          },
          py::arg("rho"), py::arg("keep") = "A");
    m.def("spin_flip",
          [](const py::array_t<cplx, py::array::c_style | py::array::forcecast>& rho) {
              return to_numpy(spin_flip(from_numpy(rho)));
          },
          py::arg("rho"));
    m.def("purity",
          [](const py::array_t<cplx, py::array::c_style | py::array::forcecast>& rho) {
              return purity(state_from_numpy(rho));
          },
          py::arg("rho"));

    // measures
    m.def("concurrence",
          [](const py::array_t<cplx, py::array::c_style | py::array::forcecast>& rho) {
              return concurrence(state_from_numpy(rho));
          },
          py::arg("rho"));
    m.def("intrinsic_concurrence",
          [](const py::array_t<cplx, py::array::c_style | py::array::forcecast>& rho) {
              return intrinsic_concurrence(state_from_numpy(rho));
          },
          py::arg("rho"));
    m.def("first_order_coherence",
          [](const py::array_t<cplx, py::array::c_style | py::array::forcecast>& rho) {
              const Coherence c = first_order_coherence(state_from_numpy(rho));
              return py::make_tuple(c.F, c.F_A, c.F_B);
          },
          py::arg("rho"), "returns (F, F_A, F_B)");
    m.def("wootters_spectrum",
          [](const py::array_t<cplx, py::array::c_style | py::array::forcecast>& rho) {
              const auto spec = wootters_spectrum(state_from_numpy(rho));
              py::array_t<double> out(4);
              auto buf = out.mutable_unchecked<1>();
              for (int i = 0; i < 4; ++i) buf(i) = spec.lambdas[static_cast<size_t>(i)];
              return out;
          },
          py::arg("rho"));
    m.def("ic_upper_bound", &ic_upper_bound, py::arg("C"));
    m.def("conservation_residual",
          [](const py::array_t<cplx, py::array::c_style | py::array::forcecast>& rho) {
              return conservation_residual(state_from_numpy(rho));
          },
          py::arg("rho"));
    m.def("measure_state",
          [](const py::array_t<cplx, py::array::c_style | py::array::forcecast>& rho, double t) {
              return record_to_dict(measure_state(state_from_numpy(rho), t));
          },
          py::arg("rho"), py::arg("t") = 0.0);

    // model
    m.def("hamiltonian", [](const ModelParams& p) { return to_numpy(hamiltonian(p)); },
          py::arg("params"));
    m.def("propagator",
          [](const ModelParams& p, double t) { return to_numpy(propagator(p, t)); },
          py::arg("params"), py::arg("t"));
    m.def("analytic_state",
          [](const ModelParams& p, double t) { return to_numpy(analytic_state(p, t).matrix()); },
          py::arg("params"), py::arg("t"));
    m.def("derived_constants",
          [](const ModelParams& p) {
              const DerivedConstants d = derived_constants(p);
              py::dict out;
              out["beta"] = d.beta;
              out["u"] = d.u;
              out["v"] = d.v;
              out["xi"] = d.xi;
              return out;
          },
          py::arg("params"));
    m.def("eigensystem",
          [](const ModelParams& p) {
              const auto [sys, d] = eigensystem(p);
              py::array_t<double> energies(4);
              auto ebuf = energies.mutable_unchecked<1>();
              py::array_t<cplx> vectors({4, 4});
              auto vbuf = vectors.mutable_unchecked<2>();
              for (int c = 0; c < 4; ++c) {
                  ebuf(c) = sys.energies[static_cast<size_t>(c)];
                  for (int i = 0; i < 4; ++i)
                      vbuf(i, c) = sys.eigenvectors[static_cast<size_t>(c)][i];
              }
              return py::make_tuple(energies, vectors, sys.degenerate_inner);
          },
          py::arg("params"), "returns (energies, column eigenvectors, degenerate_inner)");

    // dynamics
    m.def("master_rhs",
          [](const py::array_t<cplx, py::array::c_style | py::array::forcecast>& rho,
             const ModelParams& p) { return to_numpy(master_rhs(from_numpy(rho), p)); },
          py::arg("rho"), py::arg("params"));
    m.def("evolve",
          [](const ModelParams& p, double t_end, int nodes, const std::string& route, double dt) {
              const TimeGrid grid{t_end, nodes};
              Route r = Route::analytic;
              if (route == "integrator") r = Route::integrator;
              else if (route == "propagator") r = Route::propagator;
              else if (route != "analytic") throw py::value_error("unknown route '" + route + "'");
              const Trajectory traj = make_trajectory(p, grid, r, dt);

              py::array_t<double> times(static_cast<py::ssize_t>(traj.times.size()));
              auto tbuf = times.mutable_unchecked<1>();
              py::array_t<cplx> states(
                  {static_cast<py::ssize_t>(traj.states.size()), py::ssize_t{4}, py::ssize_t{4}});
              auto sbuf = states.mutable_unchecked<3>();
              py::list records;
              for (size_t k = 0; k < traj.times.size(); ++k) {
                  tbuf(static_cast<py::ssize_t>(k)) = traj.times[k];
                  const ComplexMatrix& mk = traj.states[k].matrix();
                  for (int i = 0; i < 4; ++i)
                      for (int j = 0; j < 4; ++j)
                          sbuf(static_cast<py::ssize_t>(k), i, j) = mk(i, j);
                  records.append(record_to_dict(measure_state(traj.states[k], traj.times[k])));
              }
              return py::make_tuple(times, states, records);
          },
          py::arg("params"), py::arg("t_end") = 10.0, py::arg("nodes") = 1000,
          py::arg("route") = "analytic", py::arg("dt") = 1e-3,
          "returns (times, states[N,4,4], list of measure records)");
}
