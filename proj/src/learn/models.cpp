#include "elastoloc/learn/models.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "elastoloc/errors.hpp"

namespace elastoloc::learn {

namespace {

constexpr const char* kModelFormat = "elastoloc-model";
constexpr int kModelVersion = 1;

double as_number(const std::string& name, const ParamValue& v) {
    if (const auto* d = std::get_if<double>(&v)) return *d;
    throw ConfigError("parameter '" + name + "' expects a number, got '" + std::get<std::string>(v) + "'");
}

std::size_t as_count(const std::string& name, const ParamValue& v, std::size_t min) {
    const double d = as_number(name, v);
    if (d != std::floor(d) || d < static_cast<double>(min))
        throw ConfigError(fmt::format("parameter '{}' expects an integer >= {}", name, min));
    return static_cast<std::size_t>(d);
}

int as_depth(const std::string& name, const ParamValue& v) {
    if (const auto* s = std::get_if<std::string>(&v)) {
        if (*s == "none" || *s == "unlimited") return -1;
        throw ConfigError("parameter '" + name + "' expects an integer or 'none'");
    }
    return static_cast<int>(as_count(name, v, 0));
}

bool as_bool(const std::string& name, const ParamValue& v) {
    if (const auto* s = std::get_if<std::string>(&v)) {
        if (*s == "true") return true;
        if (*s == "false") return false;
    } else if (std::get<double>(v) == 0.0 || std::get<double>(v) == 1.0) {
        return std::get<double>(v) == 1.0;
    }
    throw ConfigError("parameter '" + name + "' expects true or false");
}

// Returns false when `family` has no parameter called `name`.
bool set_on(ModelSpec& spec, Family family, const std::string& name, const ParamValue& v) {
    switch (family) {
        case Family::linear: return false;
        case Family::tree:
            if (name == "max_depth") spec.tree.max_depth = as_depth(name, v);
            else if (name == "min_samples_leaf") spec.tree.min_samples_leaf = as_count(name, v, 1);
            else return false;
            return true;
        case Family::forest:
            if (name == "n_estimators") spec.forest.n_estimators = as_count(name, v, 1);
            else if (name == "max_depth") spec.forest.tree.max_depth = as_depth(name, v);
            else if (name == "min_samples_leaf") spec.forest.tree.min_samples_leaf = as_count(name, v, 1);
            else if (name == "features_per_split") spec.forest.features_per_split = as_count(name, v, 0);
            else if (name == "bootstrap") spec.forest.bootstrap = as_bool(name, v);
            else return false;
            return true;
        case Family::gbt:
            if (name == "n_estimators") spec.gbt.n_estimators = as_count(name, v, 1);
            else if (name == "max_depth") spec.gbt.max_depth = as_depth(name, v);
            else if (name == "min_samples_leaf") spec.gbt.min_samples_leaf = as_count(name, v, 1);
            else if (name == "learning_rate") {
                const double lr = as_number(name, v);
                if (!(lr > 0.0 && lr <= 1.0)) throw ConfigError("learning_rate must lie in (0, 1]");
                spec.gbt.learning_rate = lr;
            } else return false;
            return true;
        case Family::knn:
            if (name == "n_neighbors" || name == "k") spec.knn.k = as_count(name, v, 1);
            else if (name == "weights") {
                const auto* s = std::get_if<std::string>(&v);
                if (!s) throw ConfigError("weights expects 'uniform' or 'distance'");
                spec.knn.weights = parse_weighting(*s);
            } else return false;
            return true;
        case Family::ensemble: return false;
    }
    return false;
}

}  // namespace

std::string to_string(Family family) {
    switch (family) {
        case Family::linear: return "linear";
        case Family::tree: return "tree";
        case Family::forest: return "forest";
        case Family::gbt: return "gbt";
        case Family::knn: return "knn";
        case Family::ensemble: return "ensemble";
    }
    return "?";
}

Family parse_family(const std::string& name) {
    for (Family f : all_families())
        if (to_string(f) == name) return f;
    throw ConfigError("unknown model family '" + name + "' (expected linear, tree, forest, gbt, knn or ensemble)");
}

const std::vector<Family>& all_families() {
    static const std::vector<Family> families{Family::linear, Family::tree, Family::forest,
                                              Family::gbt,    Family::knn,  Family::ensemble};
    return families;
}

void Regressor::check_width(std::size_t got) const {
    if (got != feature_count())
        throw InvalidArgument(fmt::format("{} model expects {} features, got {}", to_string(family()), feature_count(), got));
}

Matrix Regressor::predict(const Matrix& x) const {
    check_width(static_cast<std::size_t>(x.cols()));
    Matrix out(x.rows(), 3);
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        const Vec3 p = predict_one({x.row(i).data(), static_cast<std::size_t>(x.cols())});
        for (int k = 0; k < 3; ++k) out(i, k) = p[k];
    }
    return out;
}

std::unique_ptr<Regressor> regressor_from_json(const nlohmann::json& j) {
    switch (parse_family(j.at("family").get<std::string>())) {
        case Family::linear: return std::make_unique<LinearModel>(LinearModel::from_json(j));
        case Family::tree: return std::make_unique<RegressionTree>(RegressionTree::from_json(j));
        case Family::forest: return std::make_unique<Forest>(Forest::from_json(j));
        case Family::gbt: return std::make_unique<GbtModel>(GbtModel::from_json(j));
        case Family::knn: return std::make_unique<KnnModel>(KnnModel::from_json(j));
        case Family::ensemble: return std::make_unique<EnsembleModel>(EnsembleModel::from_json(j));
    }
    throw InvalidArgument("unknown model record");
}

ParamValue parse_param_value(const std::string& text) {
    std::istringstream is(text);
    double v = 0.0;
    if (!text.empty() && (is >> v) && is.peek() == std::char_traits<char>::eof()) return v;
    return text;
}

std::string to_string(const ParamValue& value) {
    if (const auto* d = std::get_if<double>(&value)) return fmt::format("{:.17g}", *d);
    return std::get<std::string>(value);
}

void ModelSpec::set(const std::string& name, const ParamValue& value) {
    if (name == "seed") {
        seed = as_count(name, value, 0);
        return;
    }
    if (const auto dot = name.find('.'); dot != std::string::npos) {
        const Family target = parse_family(name.substr(0, dot));
        if (!set_on(*this, target, name.substr(dot + 1), value))
            throw ConfigError("family " + to_string(target) + " has no parameter '" + name.substr(dot + 1) + "'");
        return;
    }
    if (family != Family::ensemble) {
        if (!set_on(*this, family, name, value))
            throw ConfigError("family " + to_string(family) + " has no parameter '" + name + "'");
        return;
    }
    bool any = false;
    for (Family m : ensemble_members) any = set_on(*this, m, name, value) || any;
    if (!any) throw ConfigError("no ensemble member has a parameter '" + name + "'");
}

nlohmann::json ModelSpec::to_json() const {
    nlohmann::json members = nlohmann::json::array();
    for (Family f : ensemble_members) members.push_back(to_string(f));
    return {{"family", to_string(family)},
            {"seed", seed},
            {"tree", {{"max_depth", tree.max_depth}, {"min_samples_leaf", tree.min_samples_leaf}}},
            {"forest",
             {{"n_estimators", forest.n_estimators},
              {"max_depth", forest.tree.max_depth},
              {"min_samples_leaf", forest.tree.min_samples_leaf},
              {"features_per_split", forest.features_per_split},
              {"bootstrap", forest.bootstrap}}},
            {"gbt",
             {{"n_estimators", gbt.n_estimators},
              {"max_depth", gbt.max_depth},
              {"learning_rate", gbt.learning_rate},
              {"min_samples_leaf", gbt.min_samples_leaf}}},
            {"knn", {{"n_neighbors", knn.k}, {"weights", to_string(knn.weights)}}},
            {"ensemble_members", members}};
}

ModelSpec ModelSpec::from_json(const nlohmann::json& j) {
    ModelSpec s;
    s.family = parse_family(j.at("family").get<std::string>());
    s.seed = j.at("seed").get<std::uint64_t>();
    const auto& t = j.at("tree");
    s.tree = {t.at("max_depth").get<int>(), t.at("min_samples_leaf").get<std::size_t>()};
    const auto& f = j.at("forest");
    s.forest.n_estimators = f.at("n_estimators").get<std::size_t>();
    s.forest.tree = {f.at("max_depth").get<int>(), f.at("min_samples_leaf").get<std::size_t>()};
    s.forest.features_per_split = f.at("features_per_split").get<std::size_t>();
    s.forest.bootstrap = f.at("bootstrap").get<bool>();
    const auto& g = j.at("gbt");
    s.gbt = {g.at("n_estimators").get<std::size_t>(), g.at("max_depth").get<int>(), g.at("learning_rate").get<double>(),
             g.at("min_samples_leaf").get<std::size_t>()};
    const auto& k = j.at("knn");
    s.knn = {k.at("n_neighbors").get<std::size_t>(), parse_weighting(k.at("weights").get<std::string>())};
    s.ensemble_members.clear();
    for (const auto& m : j.at("ensemble_members")) s.ensemble_members.push_back(parse_family(m.get<std::string>()));
    return s;
}

std::unique_ptr<Regressor> fit_model(const ModelSpec& spec, const Matrix& x, const Matrix& y, unsigned workers) {
    switch (spec.family) {
        case Family::linear: return std::make_unique<LinearModel>(fit_linear(x, y));
        case Family::tree: return std::make_unique<RegressionTree>(fit_tree(x, y, spec.tree));
        case Family::forest: {
            ForestParams params = spec.forest;
            params.seed = spec.seed;
            return std::make_unique<Forest>(fit_forest(x, y, params, workers));
        }
        case Family::gbt: return std::make_unique<GbtModel>(fit_gbt(x, y, spec.gbt));
        case Family::knn: return std::make_unique<KnnModel>(fit_knn(x, y, spec.knn));
        case Family::ensemble: {
            std::vector<std::shared_ptr<const Regressor>> members;
            for (Family m : spec.ensemble_members) {
                if (m == Family::ensemble) throw ConfigError("an ensemble cannot contain another ensemble");
                ModelSpec sub = spec;
                sub.family = m;
                members.push_back(fit_model(sub, x, y, workers));
            }
            return std::make_unique<EnsembleModel>(std::move(members));
        }
    }
    throw InvalidArgument("fit_model: unknown family");
}

Pipeline::Pipeline(ModelSpec spec, StandardScaler scaler, std::shared_ptr<const Regressor> model, nlohmann::json meta)
    : spec_(std::move(spec)), scaler_(std::move(scaler)), model_(std::move(model)), meta_(std::move(meta)) {
    if (!model_) throw InvalidArgument("Pipeline: null model");
    if (static_cast<std::size_t>(scaler_.feature_count()) != model_->feature_count())
        throw InvalidArgument("Pipeline: scaler and model disagree on the feature count");
}

Pipeline Pipeline::fit(const ModelSpec& spec, const Matrix& x_raw, const Matrix& y, unsigned workers) {
    StandardScaler scaler = StandardScaler::fit(x_raw);
    std::shared_ptr<const Regressor> model = fit_model(spec, scaler.transform(x_raw), y, workers);
    return Pipeline(spec, std::move(scaler), std::move(model));
}

Matrix Pipeline::predict(const Matrix& x_raw) const { return model_->predict(scaler_.transform(x_raw)); }

Vec3 Pipeline::predict_one(std::span<const double> x_raw) const {
    std::vector<double> z(x_raw.size());
    scaler_.transform_row(x_raw, z);
    return model_->predict_one(z);
}

nlohmann::json Pipeline::to_json() const {
    const Vector& m = scaler_.mean();
    const Vector& s = scaler_.stddev();
    return {{"format", kModelFormat},
            {"version", kModelVersion},
            {"spec", spec_.to_json()},
            {"scaler", {{"mean", std::vector<double>(m.data(), m.data() + m.size())},
                        {"std", std::vector<double>(s.data(), s.data() + s.size())}}},
            {"model", model_->to_json()},
            {"meta", meta_}};
}

Pipeline Pipeline::from_json(const nlohmann::json& j) {
    if (j.value("format", "") != kModelFormat) throw IoError("not an elastoloc model file");
    if (j.value("version", 0) != kModelVersion) throw IoError("unsupported model file version");
    const auto mean = j.at("scaler").at("mean").get<std::vector<double>>();
    const auto sd = j.at("scaler").at("std").get<std::vector<double>>();
    StandardScaler scaler(Eigen::Map<const Vector>(mean.data(), static_cast<Eigen::Index>(mean.size())),
                          Eigen::Map<const Vector>(sd.data(), static_cast<Eigen::Index>(sd.size())));
    return Pipeline(ModelSpec::from_json(j.at("spec")), std::move(scaler), regressor_from_json(j.at("model")),
                    j.value("meta", nlohmann::json::object()));
}

void Pipeline::save(const std::filesystem::path& path) const {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
    os << to_json().dump() << '\n';
    if (!os) throw IoError("write failed for '" + path.string() + "'");
}

Pipeline Pipeline::load(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open model file '" + path.string() + "'");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(is);
    } catch (const nlohmann::json::exception& e) {
        throw IoError("model file '" + path.string() + "' is not valid JSON: " + e.what());
    }
    try {
        return from_json(j);
    } catch (const nlohmann::json::exception& e) {
        throw IoError("model file '" + path.string() + "' is malformed: " + e.what());
    }
}

}  // namespace elastoloc::learn
