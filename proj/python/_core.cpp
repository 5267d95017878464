#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "elastoloc/datagen.hpp"
#include "elastoloc/errors.hpp"
#include "elastoloc/eval.hpp"
#include "elastoloc/experiment.hpp"
#include "elastoloc/fem.hpp"
#include "elastoloc/learn/models.hpp"
#include "elastoloc/tune.hpp"

namespace py = pybind11;
using namespace elastoloc;

namespace {

nlohmann::ordered_json to_json(const py::object& obj) {
    return nlohmann::ordered_json::parse(py::module_::import("json").attr("dumps")(obj).cast<std::string>());
}

py::object from_json(const nlohmann::json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

learn::ParamValue param_value(const py::handle& h) {
    if (py::isinstance<py::str>(h)) return h.cast<std::string>();
    return h.cast<double>();
}

learn::ModelSpec make_spec(const std::string& family, const py::dict& params, std::uint64_t seed) {
    auto spec = experiment::RunConfig::default_spec();
    spec.family = learn::parse_family(family);
    spec.seed = seed;
    for (const auto& [k, v] : params) spec.set(k.cast<std::string>(), param_value(v));
    return spec;
}

py::dict report_dict(const eval::EvalReport& r) {
    py::dict d;
    d["model"] = r.model;
    d["n_samples"] = r.n_samples;
    d["mse"] = r.mse_overall;
    d["mse_xyz"] = r.mse;
    d["mean_distance"] = r.mean_distance;
    d["mad_xyz"] = r.mad;
    return d;
}

DatasetConfig dataset_config(std::size_t n, double eps, Divisions div, const std::string& sensors, std::uint64_t seed,
                             double amplitude) {
    DatasetConfig c;
    c.n_samples = n;
    c.eps = eps;
    c.divisions = div;
    c.layout = SensorLayout::of(parse_sensor_kind(sensors));
    c.seed = seed;
    c.amplitude = amplitude;
    return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Elastic source localisation: FEM forward model, datasets and regressors";

    auto base = py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
    py::register_exception<OutOfDomain>(m, "OutOfDomain", PyExc_ValueError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);
    py::register_exception<SolverFailure>(m, "SolverFailure", PyExc_RuntimeError);
    (void)base;

    py::class_<Divisions>(m, "Divisions")
        .def(py::init<int, int, int>(), py::arg("nx") = 10, py::arg("ny") = 5, py::arg("nz") = 4)
        .def_readwrite("nx", &Divisions::nx)
        .def_readwrite("ny", &Divisions::ny)
        .def_readwrite("nz", &Divisions::nz)
        .def("__repr__", [](const Divisions& d) {
            return "Divisions(" + std::to_string(d.nx) + ", " + std::to_string(d.ny) + ", " + std::to_string(d.nz) + ")";
        });

    py::class_<DisplacementField>(m, "DisplacementField")
        .def("displacement", &DisplacementField::displacement, py::arg("x"))
        .def("gradient", &DisplacementField::gradient, py::arg("x"))
        .def_property_readonly("nodal", [](const DisplacementField& f) { auto n = f.nodal(); return std::vector<double>(n.begin(), n.end()); })
        .def("features", [](const DisplacementField& f, const std::string& sensors) {
            return extract_features(f, SensorLayout::of(parse_sensor_kind(sensors)));
        }, py::arg("sensors") = "microphone");

    m.def("solve",
          [](Vec3 source, double eps, double amplitude, Divisions div, Vec3 direction) {
              auto mesh = std::make_shared<const HexMesh>(div, DomainBounds{});
              return ForwardModel(mesh, Material{}).solve({source, amplitude, eps, direction}).field;
          },
          py::arg("source"), py::arg("eps") = 0.01, py::arg("amplitude") = 1.0, py::arg("divisions") = Divisions{},
          py::arg("direction") = Vec3{1.0, 1.0, 1.0},
          "Displacement field of the clamped beam under a Gaussian body force centred at `source`.");

    m.def("feature_names", [](const std::string& sensors) {
        return feature_names(SensorLayout::of(parse_sensor_kind(sensors)));
    }, py::arg("sensors") = "microphone");

    m.def("generate",
          [](std::size_t n, double eps, Divisions div, const std::string& sensors, std::uint64_t seed, double amplitude,
             unsigned workers) {
              const auto ds = generate_dataset(dataset_config(n, eps, div, sensors, seed, amplitude), workers);
              return py::make_tuple(learn::feature_matrix(ds), learn::label_matrix(ds));
          },
          py::arg("n"), py::arg("eps") = 0.01, py::arg("divisions") = Divisions{}, py::arg("sensors") = "microphone",
          py::arg("seed") = 0, py::arg("amplitude") = 1.0, py::arg("workers") = 1,
          "Returns (features, source positions) as arrays of shape (n, 12 * sites) and (n, 3).");

    m.def("load_dataset", [](const std::filesystem::path& csv) {
        const auto ds = read_dataset(csv);
        return py::make_tuple(learn::feature_matrix(ds), learn::label_matrix(ds));
    }, py::arg("path"));

    py::class_<learn::Pipeline>(m, "Pipeline")
        .def_static("fit",
                    [](const std::string& family, const Matrix& x, const Matrix& y, const py::dict& params,
                       std::uint64_t seed, unsigned workers) {
                        const auto spec = make_spec(family, params, seed);
                        py::gil_scoped_release release;
                        return learn::Pipeline::fit(spec, x, y, workers);
                    },
                    py::arg("family"), py::arg("x"), py::arg("y"), py::arg("params") = py::dict(),
                    py::arg("seed") = 0, py::arg("workers") = 1)
        .def("predict", &learn::Pipeline::predict, py::arg("x"))
        .def_property_readonly("family", [](const learn::Pipeline& p) { return learn::to_string(p.spec().family); })
        .def_property_readonly("spec", [](const learn::Pipeline& p) { return from_json(p.spec().to_json()); })
        .def("save", &learn::Pipeline::save, py::arg("path"))
        .def_static("load", &learn::Pipeline::load, py::arg("path"));

    m.def("mse", &eval::mse, py::arg("truth"), py::arg("pred"));
    m.def("per_coordinate_mse", &eval::per_coordinate_mse, py::arg("truth"), py::arg("pred"));
    m.def("evaluate", [](const Matrix& t, const Matrix& p, const std::string& name) {
        return report_dict(eval::evaluate(name, t, p));
    }, py::arg("truth"), py::arg("pred"), py::arg("name") = "model");
    m.def("average_predictions", py::overload_cast<const Matrix&, const Matrix&>(&eval::average_predictions));

    m.def("grid_search",
          [](const std::string& family, const py::dict& grid, const Matrix& x, const Matrix& y, std::size_t folds,
             std::uint64_t seed) {
              tune::ParamGrid g;
              g.family = learn::parse_family(family);
              for (const auto& [k, vs] : grid) {
                  std::vector<learn::ParamValue> values;
                  for (const auto& v : vs) values.push_back(param_value(v));
                  g.params.emplace_back(k.cast<std::string>(), std::move(values));
              }
              const auto r = tune::grid_search(make_spec(family, {}, seed), g, x, y, folds, seed);
              py::list rows;
              for (const auto& row : r.rows) {
                  py::dict d;
                  for (std::size_t i = 0; i < r.names.size(); ++i)
                      d[py::str(r.names[i])] = std::visit([](const auto& v) { return py::cast(v); }, row.values[i]);
                  d["fold_mse"] = row.fold_mse;
                  d["mean_mse"] = row.mean_mse;
                  rows.append(d);
              }
              py::dict out;
              out["rows"] = rows;
              out["best"] = r.best;
              return out;
          },
          py::arg("family"), py::arg("grid"), py::arg("x"), py::arg("y"), py::arg("folds") = 5, py::arg("seed") = 0);

    m.def("run",
          [](const std::string& command, const py::object& config) {
              const auto cfg = experiment::parse_config(to_json(config));
              experiment::RunOutcome out;
              if (command == "generate") out = experiment::cmd_generate(cfg);
              else if (command == "train") out = experiment::cmd_train(cfg);
              else if (command == "tune") out = experiment::cmd_tune(cfg);
              else if (command == "evaluate") out = experiment::cmd_evaluate(cfg);
              else if (command == "ablate-sensors") out = experiment::cmd_ablate_sensors(cfg);
              else if (command == "report") out = experiment::cmd_report(cfg);
              else throw InvalidArgument("unknown command '" + command + "'");
              return py::make_tuple(out.outputs, out.manifest);
          },
          py::arg("command"), py::arg("config"),
          "Runs one CLI subcommand with a config dict. Returns (outputs, manifest path).");
}
