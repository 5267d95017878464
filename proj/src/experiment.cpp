#include "elastoloc/experiment.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <system_error>

#include <fmt/format.h>

#include "elastoloc/errors.hpp"
#include "elastoloc/eval.hpp"
#include "elastoloc/io.hpp"
#include "elastoloc/report.hpp"
#include "elastoloc/rng.hpp"

namespace elastoloc::experiment {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

Divisions parse_mesh(const std::string& text) {
    int nx = 0, ny = 0, nz = 0;
    char a = 0, b = 0;
    std::istringstream is(text);
    if (!(is >> nx >> a >> ny >> b >> nz) || a != 'x' || b != 'x' || !is.eof() || nx < 1 || ny < 1 || nz < 1)
        throw ConfigError("bad mesh '" + text + "' (expected e.g. 10x5x4)");
    return {nx, ny, nz};
}

std::string mesh_text(const Divisions& d) { return fmt::format("{}x{}x{}", d.nx, d.ny, d.nz); }

template <class T>
std::vector<T> as_list(const ojson& v) {
    if (v.is_array()) return v.get<std::vector<T>>();
    return {v.get<T>()};
}

learn::ParamValue json_param(const ojson& v) {
    if (v.is_number()) return v.get<double>();
    if (v.is_boolean()) return std::string(v.get<bool>() ? "true" : "false");
    if (v.is_string()) return learn::parse_param_value(v.get<std::string>());
    if (v.is_null()) return std::string("none");
    throw ConfigError("hyperparameter values must be numbers or strings");
}

ojson param_json(const learn::ParamValue& v) {
    if (const auto* d = std::get_if<double>(&v)) return *d;
    return std::get<std::string>(v);
}

/// Removes every tracked output unless commit() was reached.
class OutputTracker {
public:
    OutputTracker() = default;
    OutputTracker(const OutputTracker&) = delete;
    OutputTracker& operator=(const OutputTracker&) = delete;
    ~OutputTracker() {
        if (committed_) return;
        for (const auto& p : outputs_) {
            std::error_code ec;
            fs::remove(p, ec);
        }
    }

    const fs::path& add(fs::path p) {
        outputs_.push_back(std::move(p));
        return outputs_.back();
    }
    void add_all(const std::vector<fs::path>& ps) {
        for (const auto& p : ps) add(p);
    }
    const std::vector<fs::path>& outputs() const { return outputs_; }
    void commit() { committed_ = true; }

private:
    std::vector<fs::path> outputs_;
    bool committed_ = false;
};

std::string display_path(const fs::path& p, const fs::path& root) {
    const auto rel = p.lexically_normal().lexically_relative(root.lexically_normal());
    if (!rel.empty() && *rel.begin() != "..") return rel.generic_string();
    return p.generic_string();
}

RunOutcome finish(const std::string& command, const RunConfig& config, const std::vector<fs::path>& inputs,
                  OutputTracker& tracker, ojson extra = ojson::object()) {
    ojson manifest;
    manifest["command"] = command;
    manifest["config"] = to_json(config);
    manifest["inputs"] = ojson::array();
    for (const auto& p : inputs)
        manifest["inputs"].push_back({{"path", p.generic_string()}, {"sha256", sha256_file(p)}});
    manifest["outputs"] = ojson::array();
    for (const auto& p : tracker.outputs())
        manifest["outputs"].push_back({{"path", display_path(p, config.output_dir)}, {"sha256", sha256_file(p)}});
    for (auto& [k, v] : extra.items()) manifest[k] = v;
    const fs::path path = config.output_dir / fmt::format("manifest_{}.json", command);
    write_text_atomic(path, manifest.dump(2) + "\n");
    tracker.commit();
    return {tracker.outputs(), path};
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory '" + dir.string() + "': " + ec.message());
}

std::vector<fs::path> dataset_files(const fs::path& csv) { return {csv, sidecar_path(csv)}; }

Dataset load_data(const RunConfig& config) {
    if (config.data.empty()) throw ConfigError("no input dataset given (set 'data' or --data)");
    std::vector<Dataset> parts;
    for (const auto& p : config.data) {
        if (!fs::exists(p)) throw ConfigError("dataset '" + p.string() + "' does not exist");
        parts.push_back(read_dataset(p));
    }
    if (parts.size() == 1) return std::move(parts.front());
    return concat_datasets(parts);
}

std::vector<fs::path> data_inputs(const RunConfig& config) {
    std::vector<fs::path> in;
    for (const auto& p : config.data) {
        in.push_back(p);
        in.push_back(sidecar_path(p));
    }
    return in;
}

std::vector<std::string> row_keys(const Dataset& ds) {
    std::vector<std::string> keys;
    for (std::size_t i = 0; i < ds.size(); ++i) keys.push_back(ds.sample_key(i));
    return keys;
}

struct FitEval {
    eval::EvalReport report;
    Matrix truth;
    Matrix pred;
};

FitEval fit_and_evaluate(const learn::ModelSpec& spec, const Dataset& ds, const learn::SplitSpec& split,
                         const std::string& name, unsigned workers, learn::Pipeline* keep = nullptr) {
    const auto [train, val] = learn::train_val_split(ds, split);
    if (val.size() == 0) throw ConfigError("validation split is empty; use more samples");
    auto pipe = learn::Pipeline::fit(spec, learn::feature_matrix(train), learn::label_matrix(train), workers);
    Matrix truth = learn::label_matrix(val);
    Matrix pred = pipe.predict(learn::feature_matrix(val));
    auto rep = eval::evaluate(name, truth, pred);
    if (keep) *keep = std::move(pipe);
    return {std::move(rep), std::move(truth), std::move(pred)};
}

ojson split_json(const learn::SplitSpec& s) { return {{"train_fraction", s.train_fraction}, {"seed", s.seed}}; }

}  // namespace

learn::ModelSpec RunConfig::default_spec() {
    learn::ModelSpec s;
    s.tree = {25, 1};
    s.forest.n_estimators = 100;
    s.forest.tree = {25, 1};
    s.gbt = {200, 4, 0.1, 1};
    s.knn = {4, learn::Weighting::distance};
    return s;
}

RunConfig parse_config(const ojson& j) {
    if (!j.is_object()) throw ConfigError("configuration must be a JSON object");
    RunConfig c;
    try {
        if (j.contains("paper_scale") && j.at("paper_scale").get<bool>()) {
            c.paper_scale = true;
            c.n_samples = 5000;
            c.base_spec.forest.n_estimators = 800;
        }
        if (j.contains("model_spec")) {
            try {
                c.base_spec = learn::ModelSpec::from_json(nlohmann::json::parse(j.at("model_spec").dump()));
            } catch (const InvalidArgument& e) {
                throw ConfigError(e.what());
            }
        }
        for (const auto& [key, v] : j.items()) {
            if (key == "paper_scale" || key == "model_spec") continue;
            if (key == "recipe") {
                c.recipe = v.get<std::string>();
                if (std::find(std::begin(kRecipes), std::end(kRecipes), c.recipe) == std::end(kRecipes))
                    throw ConfigError("unknown recipe '" + c.recipe + "'");
            } else if (key == "output_dir") c.output_dir = v.get<std::string>();
            else if (key == "seed") c.seed = v.get<std::uint64_t>();
            else if (key == "n_samples") {
                c.n_samples = v.get<std::size_t>();
                if (c.n_samples < 1) throw ConfigError("n_samples must be >= 1");
            } else if (key == "eps") c.eps = as_list<double>(v);
            else if (key == "meshes") {
                c.meshes.clear();
                for (const auto& m : as_list<std::string>(v)) c.meshes.push_back(parse_mesh(m));
            } else if (key == "sensors") {
                c.sensors.clear();
                for (const auto& s : as_list<std::string>(v)) c.sensors.push_back(parse_sensor_kind(s));
            } else if (key == "degree") c.degree = v.get<int>();
            else if (key == "material") {
                for (const auto& [mk, mv] : v.items()) {
                    if (mk == "young_modulus") c.material.young_modulus = mv.get<double>();
                    else if (mk == "poisson_ratio") c.material.poisson_ratio = mv.get<double>();
                    else throw ConfigError("unknown material key '" + mk + "'");
                }
                try {
                    c.material.validate();
                } catch (const InvalidArgument& e) {
                    throw ConfigError(e.what());
                }
            } else if (key == "amplitude") c.amplitude = v.get<double>();
            else if (key == "rel_tol") c.rel_tol = v.get<double>();
            else if (key == "workers") c.workers = std::max(1u, v.get<unsigned>());
            else if (key == "split") {
                for (const auto& [sk, sv] : v.items()) {
                    if (sk == "train_fraction") c.split.train_fraction = sv.get<double>();
                    else if (sk == "seed") c.split.seed = sv.get<std::uint64_t>();
                    else throw ConfigError("unknown split key '" + sk + "'");
                }
                if (!(c.split.train_fraction > 0.0 && c.split.train_fraction < 1.0))
                    throw ConfigError("split.train_fraction must lie in (0, 1)");
            } else if (key == "models") {
                c.models.clear();
                for (const auto& m : as_list<std::string>(v)) c.models.push_back(learn::parse_family(m));
            } else if (key == "params") {
                for (const auto& [pk, pv] : v.items()) {
                    if (pv.is_object()) {
                        learn::parse_family(pk);
                        for (const auto& [name, val] : pv.items()) c.base_spec.set(pk + "." + name, json_param(val));
                    } else {
                        c.base_spec.set(pk, json_param(pv));
                    }
                }
            } else if (key == "grid") {
                tune::ParamGrid g;
                for (const auto& [gk, gv] : v.items()) {
                    if (gk == "family") g.family = learn::parse_family(gv.get<std::string>());
                    else if (gk == "params") {
                        for (const auto& [name, vals] : gv.items()) {
                            std::vector<learn::ParamValue> list;
                            for (const auto& x : vals.is_array() ? vals : ojson::array({vals})) list.push_back(json_param(x));
                            g.params.emplace_back(name, std::move(list));
                        }
                    } else throw ConfigError("unknown grid key '" + gk + "'");
                }
                try {
                    g.validate();
                } catch (const InvalidArgument& e) {
                    throw ConfigError(e.what());
                }
                c.grid = std::move(g);
            } else if (key == "folds") {
                c.folds = v.get<std::size_t>();
                if (c.folds < 2) throw ConfigError("folds must be >= 2");
            } else if (key == "tune_seed") c.tune_seed = v.get<std::uint64_t>();
            else if (key == "data") {
                c.data.clear();
                for (const auto& p : as_list<std::string>(v)) c.data.emplace_back(p);
            } else if (key == "model_files") {
                c.model_files.clear();
                for (const auto& p : as_list<std::string>(v)) c.model_files.emplace_back(p);
            } else if (key == "reports") {
                c.reports.clear();
                for (const auto& p : as_list<std::string>(v)) c.reports.emplace_back(p);
            } else if (key == "family") c.family = learn::parse_family(v.get<std::string>());
            else throw ConfigError("unknown config key '" + key + "'");
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("configuration has a value of the wrong type: ") + e.what());
    }
    if (c.degree != 1) throw ConfigError("only element degree r = 1 is implemented");
    for (double e : c.eps)
        if (!(e > 0.0)) throw ConfigError("eps values must be positive");
    if (!(c.rel_tol > 0.0 && c.rel_tol < 1.0)) throw ConfigError("rel_tol must lie in (0, 1)");
    return c;
}

ojson to_json(const RunConfig& c) {
    ojson j;
    j["recipe"] = c.recipe;
    j["output_dir"] = c.output_dir.generic_string();
    j["seed"] = c.seed;
    j["n_samples"] = c.n_samples;
    j["eps"] = c.eps;
    j["meshes"] = ojson::array();
    for (const auto& m : c.meshes) j["meshes"].push_back(mesh_text(m));
    j["sensors"] = ojson::array();
    for (auto s : c.sensors) j["sensors"].push_back(to_string(s));
    j["degree"] = c.degree;
    j["material"] = {{"young_modulus", c.material.young_modulus}, {"poisson_ratio", c.material.poisson_ratio}};
    j["amplitude"] = c.amplitude;
    j["rel_tol"] = c.rel_tol;
    j["workers"] = c.workers;
    j["split"] = split_json(c.split);
    j["models"] = ojson::array();
    for (auto m : c.models) j["models"].push_back(learn::to_string(m));
    j["model_spec"] = ojson::parse(c.base_spec.to_json().dump());
    if (c.grid) {
        ojson params = ojson::object();
        for (const auto& [name, vals] : c.grid->params) {
            ojson list = ojson::array();
            for (const auto& v : vals) list.push_back(param_json(v));
            params[name] = list;
        }
        j["grid"] = {{"family", learn::to_string(c.grid->family)}, {"params", params}};
    }
    j["folds"] = c.folds;
    j["tune_seed"] = c.tune_seed;
    auto paths = [](const std::vector<fs::path>& ps) {
        ojson a = ojson::array();
        for (const auto& p : ps) a.push_back(p.generic_string());
        return a;
    };
    j["data"] = paths(c.data);
    j["model_files"] = paths(c.model_files);
    j["reports"] = paths(c.reports);
    j["family"] = learn::to_string(c.family);
    j["paper_scale"] = c.paper_scale;
    return j;
}

std::vector<GenerationJob> plan_generation(const RunConfig& c) {
    std::vector<double> eps{0.01, 0.001};
    std::vector<Divisions> meshes{{10, 5, 4}, {20, 10, 8}};
    std::vector<SensorKind> sensors{SensorKind::microphone, SensorKind::accelerometer};
    if (c.recipe == "single") {
        eps = {0.01};
        meshes = {{10, 5, 4}};
        sensors = {SensorKind::microphone};
    } else if (c.recipe == "universal-mic" || c.recipe == "ablation") {
        sensors = {SensorKind::microphone};
    } else if (c.recipe == "universal-acc") {
        sensors = {SensorKind::accelerometer};
    }
    if (!c.eps.empty()) eps = c.eps;
    if (!c.meshes.empty()) meshes = c.meshes;
    if (!c.sensors.empty()) sensors = c.sensors;
    for (auto s : sensors)
        if (s == SensorKind::custom) throw ConfigError("recipes support microphone and accelerometer layouts only");

    std::vector<GenerationJob> jobs;
    for (double e : eps)
        for (const auto& m : meshes) {
            GenerationJob job;
            job.config.eps = e;
            job.config.divisions = m;
            job.config.degree = c.degree;
            job.config.n_samples = c.n_samples;
            job.config.material = c.material;
            job.config.amplitude = c.amplitude;
            job.config.rel_tol = c.rel_tol;
            job.config.layout = SensorLayout::of(sensors.front());
            job.config.seed = derive_seed(c.seed, fnv1a(job.config.provenance()));
            job.sensors = sensors;
            job.config.validate();
            jobs.push_back(std::move(job));
        }
    return jobs;
}

RunOutcome cmd_generate(const RunConfig& c) {
    const auto jobs = plan_generation(c);
    const fs::path dir = c.output_dir / "data";
    ensure_dir(dir);
    OutputTracker tracker;

    struct Generated {
        DatasetConfig config;
        SensorKind sensor;
        Dataset data;
    };
    std::vector<Generated> all;
    for (const auto& job : jobs) {
        std::vector<SensorLayout> layouts;
        for (auto s : job.sensors) layouts.push_back(SensorLayout::of(s));
        auto sets = generate_datasets(job.config, layouts, c.workers);
        for (std::size_t l = 0; l < sets.size(); ++l) {
            const auto name = fmt::format("eps{:g}_m{}_r{}_{}.csv", job.config.eps, mesh_text(job.config.divisions),
                                          job.config.degree, to_string(job.sensors[l]));
            const auto path = dir / name;
            tracker.add_all(dataset_files(path));
            write_dataset(sets[l], path);
            all.push_back({job.config, job.sensors[l], std::move(sets[l])});
        }
    }

    // Row-concatenated datasets, one per sensor kind (and per eps for per-eps).
    auto write_combined = [&](const std::string& name, SensorKind sensor, auto&& keep) {
        std::vector<Dataset> parts;
        for (const auto& g : all)
            if (g.sensor == sensor && keep(g.config)) parts.push_back(g.data);
        if (parts.size() < 2) return;
        const auto path = dir / fmt::format("{}_{}.csv", name, to_string(sensor));
        tracker.add_all(dataset_files(path));
        write_dataset(concat_datasets(parts), path);
    };
    const std::set<SensorKind> kinds = [&] {
        std::set<SensorKind> k;
        for (const auto& g : all) k.insert(g.sensor);
        return k;
    }();
    if (c.recipe == "per-eps") {
        std::set<double> eps_values;
        for (const auto& g : all) eps_values.insert(g.config.eps);
        for (double e : eps_values)
            for (auto s : kinds)
                write_combined(fmt::format("per-eps_eps{:g}", e), s, [e](const DatasetConfig& dc) { return dc.eps == e; });
    } else if (c.recipe != "single") {
        for (auto s : kinds) write_combined("universal", s, [](const DatasetConfig&) { return true; });
    }
    return finish("generate", c, {}, tracker);
}

RunOutcome cmd_train(const RunConfig& c) {
    const Dataset ds = load_data(c);
    const auto models = c.models.empty() ? learn::all_families() : c.models;
    ensure_dir(c.output_dir / "models");
    ensure_dir(c.output_dir / "reports");
    ensure_dir(c.output_dir / "figures");
    OutputTracker tracker;

    const auto [train, val] = learn::train_val_split(ds, c.split);
    if (val.size() == 0) throw ConfigError("validation split is empty; use more samples");
    const Matrix xt = learn::feature_matrix(train), yt = learn::label_matrix(train);
    const Matrix xv = learn::feature_matrix(val), yv = learn::label_matrix(val);
    const DomainBounds bounds = ds.parts.front().bounds;

    std::vector<eval::EvalReport> rows;
    for (learn::Family family : models) {
        learn::ModelSpec spec = c.base_spec;
        spec.family = family;
        auto pipe = learn::Pipeline::fit(spec, xt, yt, c.workers);
        pipe.meta() = {{"data", ojson(to_json(c)["data"])},
                       {"split", split_json(c.split)},
                       {"sensor_kind", to_string(ds.layout.kind)}};
        const auto model_path = c.output_dir / "models" / (learn::to_string(family) + ".model");
        tracker.add(model_path);
        pipe.save(model_path);
        const Matrix pred = pipe.predict(xv);
        rows.push_back(eval::evaluate(learn::to_string(family), yv, pred));
        const auto fig = c.output_dir / "figures" / (learn::to_string(family) + "_truth_vs_prediction.svg");
        tracker.add(fig);
        write_text_atomic(fig, report::truth_vs_prediction_svg(yv, pred, bounds,
                                                               learn::to_string(family) + ": truth vs prediction"));
    }
    tracker.add_all(report::emit_report(rows, c.output_dir / "reports", "comparison",
                                        "Validation mean absolute deviation per model"));
    return finish("train", c, data_inputs(c), tracker);
}

RunOutcome cmd_tune(const RunConfig& c) {
    if (!c.grid) throw ConfigError("tune needs a parameter grid (set 'grid' or --grid)");
    const Dataset ds = load_data(c);
    ensure_dir(c.output_dir / "tune");
    OutputTracker tracker;
    const auto train = learn::train_val_split(ds, c.split).first;
    if (train.size() < c.folds) throw ConfigError("fewer training rows than folds");
    const auto result = tune::grid_search(c.base_spec, *c.grid, learn::feature_matrix(train),
                                          learn::label_matrix(train), c.folds, c.tune_seed, c.workers);
    const auto path = c.output_dir / "tune" / (learn::to_string(c.grid->family) + "_grid.csv");
    tracker.add(path);
    tune::write_tune_csv(result, path);
    ojson best = ojson::object();
    for (std::size_t p = 0; p < result.names.size(); ++p) best[result.names[p]] = param_json(result.best_row().values[p]);
    return finish("tune", c, data_inputs(c), tracker, {{"best", best}, {"best_mean_mse", result.best_row().mean_mse}});
}

RunOutcome cmd_evaluate(const RunConfig& c) {
    if (c.data.empty() || c.data.size() != c.model_files.size() || c.data.size() > 2)
        throw ConfigError("evaluate takes one or two (data, model) pairs; with two, their predictions are also averaged");
    ensure_dir(c.output_dir / "reports");
    ensure_dir(c.output_dir / "figures");
    OutputTracker tracker;

    std::vector<eval::EvalReport> rows;
    std::vector<eval::Predictions> preds;
    Matrix truth;
    DomainBounds bounds;
    for (std::size_t i = 0; i < c.data.size(); ++i) {
        if (!fs::exists(c.data[i])) throw ConfigError("dataset '" + c.data[i].string() + "' does not exist");
        if (!fs::exists(c.model_files[i])) throw ConfigError("model '" + c.model_files[i].string() + "' does not exist");
        const Dataset ds = read_dataset(c.data[i]);
        const auto pipe = learn::Pipeline::load(c.model_files[i]);
        learn::SplitSpec split = c.split;
        if (pipe.meta().contains("split")) {
            split.train_fraction = pipe.meta()["split"].at("train_fraction").get<double>();
            split.seed = pipe.meta()["split"].at("seed").get<std::uint64_t>();
        }
        const Dataset val = learn::train_val_split(ds, split).second;
        if (val.size() == 0) throw ConfigError("validation split is empty; use more samples");
        const Matrix yv = learn::label_matrix(val);
        const Matrix pred = pipe.predict(learn::feature_matrix(val));
        rows.push_back(eval::evaluate(
            learn::to_string(pipe.model().family()) + "-" + to_string(ds.layout.kind), yv, pred));
        preds.push_back({row_keys(val), pred});
        if (i == 0) {
            truth = yv;
            bounds = ds.parts.front().bounds;
        }
    }
    Matrix shown = preds.front().values;
    std::string label = rows.front().model;
    if (preds.size() == 2) {
        const auto avg = eval::average_predictions(preds[0], preds[1]);
        rows.push_back(eval::evaluate("averaged", truth, avg.values));
        shown = avg.values;
        label = "averaged";
    }
    tracker.add_all(report::emit_report(rows, c.output_dir / "reports", "evaluation",
                                        "Validation mean absolute deviation"));
    const auto fig = c.output_dir / "figures" / "evaluation_truth_vs_prediction.svg";
    tracker.add(fig);
    write_text_atomic(fig, report::truth_vs_prediction_svg(truth, shown, bounds, label + ": truth vs prediction"));

    std::vector<fs::path> inputs = data_inputs(c);
    inputs.insert(inputs.end(), c.model_files.begin(), c.model_files.end());
    return finish("evaluate", c, inputs, tracker);
}

RunOutcome cmd_ablate_sensors(const RunConfig& c) {
    const Dataset ds = load_data(c);
    if (!(ds.layout == SensorLayout::microphones()))
        throw ConfigError("ablate-sensors needs a dataset with the five-microphone layout");
    ensure_dir(c.output_dir / "reports");
    OutputTracker tracker;
    learn::ModelSpec spec = c.base_spec;
    spec.family = c.family;

    std::vector<eval::EvalReport> rows;
    for (std::size_t k = 1; k <= std::size(kAblationOrder); ++k) {
        const std::vector<std::size_t> keep(std::begin(kAblationOrder), std::begin(kAblationOrder) + k);
        const Dataset sub = restrict_sensors(ds, keep);
        rows.push_back(fit_and_evaluate(spec, sub, c.split, fmt::format("sensors={}", k), c.workers).report);
    }
    tracker.add_all(report::emit_report(rows, c.output_dir / "reports", "ablation",
                                        "Mean absolute deviation by number of microphones"));
    return finish("ablate-sensors", c, data_inputs(c), tracker);
}

RunOutcome cmd_report(const RunConfig& c) {
    if (c.reports.empty()) throw ConfigError("report needs at least one report CSV (set 'reports' or --reports)");
    ensure_dir(c.output_dir / "reports");
    OutputTracker tracker;
    std::vector<eval::EvalReport> rows;
    for (const auto& p : c.reports) {
        if (!fs::exists(p)) throw ConfigError("report '" + p.string() + "' does not exist");
        const auto part = report::read_report_csv(p);
        const std::string prefix = p.stem().string();
        for (auto r : part) {
            if (c.reports.size() > 1) r.model = prefix + ":" + r.model;
            rows.push_back(std::move(r));
        }
    }
    tracker.add_all(report::emit_report(rows, c.output_dir / "reports", "summary", "Mean absolute deviation"));
    return finish("report", c, c.reports, tracker);
}

}  // namespace elastoloc::experiment
