// elastoloc command-line front end. Every subcommand reads an optional JSON
// config; flags given on the command line replace the matching config keys.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "elastoloc/errors.hpp"
#include "elastoloc/experiment.hpp"

namespace {

using ojson = nlohmann::ordered_json;
namespace ex = elastoloc::experiment;

constexpr int kConfigError = 2;
constexpr int kRuntimeError = 3;

struct Flags {
    std::string config;
    std::optional<std::string> output_dir, recipe, family;
    std::optional<std::uint64_t> seed, split_seed, tune_seed;
    std::optional<std::size_t> n_samples, folds;
    std::optional<unsigned> workers;
    std::optional<double> train_fraction;
    std::vector<double> eps;
    std::vector<std::string> meshes, sensors, data, model_files, reports, models, params, grid;
    std::optional<std::string> grid_family;
    bool paper_scale = false;
};

ojson load_config(const std::string& path) {
    if (path.empty()) return ojson::object();
    std::ifstream in(path);
    if (!in) throw elastoloc::ConfigError("cannot open config '" + path + "'");
    try {
        return ojson::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw elastoloc::ConfigError("config '" + path + "' is not valid JSON: " + e.what());
    }
}

std::pair<std::string, std::string> split_assignment(const std::string& text, const char* flag) {
    const auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0)
        throw elastoloc::ConfigError(fmt::format("{} expects name=value, got '{}'", flag, text));
    return {text.substr(0, eq), text.substr(eq + 1)};
}

ex::RunConfig resolve(const Flags& f) {
    ojson j = load_config(f.config);
    if (!j.is_object()) throw elastoloc::ConfigError("config must be a JSON object");
    auto put = [&](const char* key, const auto& opt) {
        if (opt) j[key] = *opt;
    };
    auto put_list = [&](const char* key, const auto& list) {
        if (!list.empty()) j[key] = list;
    };
    put("output_dir", f.output_dir);
    put("recipe", f.recipe);
    put("family", f.family);
    put("seed", f.seed);
    put("tune_seed", f.tune_seed);
    put("n_samples", f.n_samples);
    put("folds", f.folds);
    put("workers", f.workers);
    put_list("eps", f.eps);
    put_list("meshes", f.meshes);
    put_list("sensors", f.sensors);
    put_list("data", f.data);
    put_list("model_files", f.model_files);
    put_list("reports", f.reports);
    put_list("models", f.models);
    if (f.paper_scale) j["paper_scale"] = true;
    if (f.split_seed || f.train_fraction) {
        if (!j.contains("split")) j["split"] = ojson::object();
        if (f.split_seed) j["split"]["seed"] = *f.split_seed;
        if (f.train_fraction) j["split"]["train_fraction"] = *f.train_fraction;
    }
    if (!f.params.empty()) {
        if (!j.contains("params")) j["params"] = ojson::object();
        for (const auto& p : f.params) {
            auto [name, value] = split_assignment(p, "--param");
            j["params"][name] = value;
        }
    }
    if (!f.grid.empty() || f.grid_family) {
        if (!j.contains("grid")) j["grid"] = ojson::object();
        if (f.grid_family) j["grid"]["family"] = *f.grid_family;
        if (!f.grid.empty()) {
            ojson params = ojson::object();
            for (const auto& g : f.grid) {
                auto [name, values] = split_assignment(g, "--grid");
                ojson list = ojson::array();
                std::stringstream ss(values);
                for (std::string v; std::getline(ss, v, ',');) list.push_back(v);
                params[name] = list;
            }
            j["grid"]["params"] = params;
        }
    }
    return ex::parse_config(j);
}

void add_common(CLI::App* cmd, Flags& f) {
    cmd->add_option("-c,--config", f.config, "JSON configuration file")->check(CLI::ExistingFile);
    cmd->add_option("-o,--output-dir", f.output_dir, "Output directory");
    cmd->add_option("--seed", f.seed, "Master seed");
    cmd->add_option("-j,--workers", f.workers, "Worker threads");
}

void add_training(CLI::App* cmd, Flags& f) {
    cmd->add_option("--data", f.data, "Dataset CSV file(s)")->expected(1, -1);
    cmd->add_option("--param", f.params, "Hyperparameter override, e.g. forest.n_estimators=50");
    cmd->add_option("--split-seed", f.split_seed, "Seed of the train/validation shuffle");
    cmd->add_option("--train-fraction", f.train_fraction, "Training fraction of the split");
    cmd->add_flag("--paper-scale", f.paper_scale, "Use the full-size ensemble (800 trees)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Source localization in an elastic body from surface sensor readings"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "elastoloc 0.1.0");
    Flags f;

    auto* gen = app.add_subcommand("generate", "Simulate datasets with the finite element forward model");
    add_common(gen, f);
    gen->add_option("--recipe", f.recipe, "single, per-eps, universal, universal-mic, universal-acc or ablation");
    gen->add_option("-n,--n-samples", f.n_samples, "Samples per configuration");
    gen->add_option("--eps", f.eps, "Source widths");
    gen->add_option("--mesh", f.meshes, "Mesh divisions, e.g. 10x5x4");
    gen->add_option("--sensors", f.sensors, "microphone and/or accelerometer");
    gen->add_flag("--paper-scale", f.paper_scale, "5000 samples per configuration");

    auto* train = app.add_subcommand("train", "Fit models and report validation errors");
    add_common(train, f);
    add_training(train, f);
    train->add_option("--models", f.models, "Families to fit (default: all)");

    auto* tune = app.add_subcommand("tune", "Grid search with k-fold cross-validation");
    add_common(tune, f);
    add_training(tune, f);
    tune->add_option("--grid-family", f.grid_family, "Family to tune");
    tune->add_option("--grid", f.grid, "Candidate values, e.g. n_neighbors=2,4,8");
    tune->add_option("--folds", f.folds, "Number of folds");
    tune->add_option("--tune-seed", f.tune_seed, "Seed of the fold shuffle");

    auto* evaluate = app.add_subcommand("evaluate", "Evaluate saved models; two models are also averaged");
    add_common(evaluate, f);
    evaluate->add_option("--data", f.data, "Dataset CSV file(s)")->expected(1, 2);
    evaluate->add_option("--model", f.model_files, "Model file(s), paired with --data")->expected(1, 2);

    auto* ablate = app.add_subcommand("ablate-sensors", "Retrain with 1 to 5 microphones");
    add_common(ablate, f);
    add_training(ablate, f);
    ablate->add_option("--family", f.family, "Model family");

    auto* rep = app.add_subcommand("report", "Merge report CSVs into one table and chart");
    add_common(rep, f);
    rep->add_option("--reports", f.reports, "Report CSV files")->expected(1, -1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kConfigError;
    }

    try {
        const auto config = resolve(f);
        ex::RunOutcome out;
        if (gen->parsed()) out = ex::cmd_generate(config);
        else if (train->parsed()) out = ex::cmd_train(config);
        else if (tune->parsed()) out = ex::cmd_tune(config);
        else if (evaluate->parsed()) out = ex::cmd_evaluate(config);
        else if (ablate->parsed()) out = ex::cmd_ablate_sensors(config);
        else out = ex::cmd_report(config);
        for (const auto& p : out.outputs) std::cout << p.generic_string() << '\n';
        std::cout << out.manifest.generic_string() << '\n';
        return 0;
    } catch (const elastoloc::ConfigError& e) {
        std::cerr << "elastoloc: configuration error: " << e.what() << '\n';
        return kConfigError;
    } catch (const elastoloc::InvalidArgument& e) {
        std::cerr << "elastoloc: invalid argument: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "elastoloc: " << e.what() << '\n';
        return kRuntimeError;
    }
}
