// Acceptance checks. One PASS/FAIL line per criterion; INFO lines carry
// measurements that are reported but not asserted.
//
//   elastoloc_acceptance [criterion ...]
//
// Criteria: 1 2 3 4 5 5-table 6 7 desk (8-11 share one desk-scale data set).
// Without arguments everything runs. Exit status 1 when any criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "elastoloc/datagen.hpp"
#include "elastoloc/eval.hpp"
#include "elastoloc/experiment.hpp"
#include "elastoloc/fem.hpp"
#include "elastoloc/io.hpp"
#include "elastoloc/learn/ensemble.hpp"
#include "elastoloc/learn/gbt.hpp"
#include "elastoloc/learn/knn.hpp"
#include "elastoloc/learn/models.hpp"
#include "elastoloc/learn/preprocess.hpp"
#include "elastoloc/learn/tree.hpp"
#include "elastoloc/report.hpp"
#include "elastoloc/rng.hpp"
#include "elastoloc/tune.hpp"
#include "support.hpp"

using namespace elastoloc;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void verdict(const std::string& id, bool pass, const std::string& detail) {
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << id << ": " << detail << std::endl;
    if (!pass) ++failures;
}

void info(const std::string& id, const std::string& detail) {
    std::cout << "INFO criterion " << id << ": " << detail << std::endl;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::shared_ptr<const HexMesh> coarse_mesh() {
    return std::make_shared<const HexMesh>(Divisions{10, 5, 4}, DomainBounds{});
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

// y -> -y image of a microphone feature vector: sites swap across y = 0 and
// each entry picks up (-1)^(number of y indices).
std::vector<double> mirror_mic(const std::vector<double>& f) {
    const int site[5] = {3, 4, 2, 0, 1};
    const int sy[3] = {1, -1, 1};
    std::vector<double> out(f.size());
    for (int s = 0; s < 5; ++s)
        for (int i = 0; i < 3; ++i) {
            out[12 * s + i] = sy[i] * f[12 * site[s] + i];
            for (int j = 0; j < 3; ++j) out[12 * s + 3 + 3 * i + j] = sy[i] * sy[j] * f[12 * site[s] + 3 + 3 * i + j];
        }
    return out;
}

void criterion_1() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto m = coarse_mesh();
    const double g[3][3] = {{1e-3, -2e-4, 5e-4}, {3e-4, 2e-3, -1e-4}, {-6e-4, 4e-4, 1.5e-3}};
    const double c[3] = {1e-4, -2e-4, 3e-4};
    auto exact = [&](const Vec3& p, int i) { return c[i] + g[i][0] * p[0] + g[i][1] * p[1] + g[i][2] * p[2]; };
    std::vector<DirichletCondition> bc;
    const auto& b = m->bounds();
    for (std::size_t n = 0; n < m->node_count(); ++n) {
        const auto& p = m->nodes()[n];
        bool boundary = false;
        for (int d = 0; d < 3; ++d) boundary = boundary || p[d] == b.axis(d).lo || p[d] == b.axis(d).hi;
        if (boundary)
            for (int i = 0; i < 3; ++i) bc.push_back({3 * n + i, exact(p, i)});
    }
    const auto sys = make_system(m, assemble_stiffness(*m, Material{}), std::vector<double>(3 * m->node_count(), 0.0), bc);
    const auto sol = solve(sys, 1e-13);
    double err = 0.0, scale = 0.0;
    for (std::size_t n = 0; n < m->node_count(); ++n)
        for (int i = 0; i < 3; ++i) {
            err = std::max(err, std::abs(sol.field.nodal()[3 * n + i] - exact(m->nodes()[n], i)));
            scale = std::max(scale, std::abs(exact(m->nodes()[n], i)));
        }
    const double secs = seconds_since(t0);
    verdict("1", err <= 1e-9 * scale && secs < 1.0,
            fmt::format("patch test max relative error {:.3e} (tol 1e-9), {:.3f} s (limit 1 s)", err / scale, secs));
}

void criterion_2() {
    const auto m = coarse_mesh();
    const auto sol = ForwardModel(m, Material{}).solve({{0.16, -0.012, 0.028}, 1.0, 0.01});
    Rng rng(2024);
    const auto h = m->spacing();
    double worst = 0.0, gmax = 0.0;
    int tested = 0;
    while (tested < 20) {
        Vec3 p;
        for (int d = 0; d < 3; ++d) p[d] = m->bounds().axis(d).lo + m->bounds().axis(d).length() * rng.uniform_open();
        const auto loc = m->locate(p);
        if (std::any_of(loc.xi.begin(), loc.xi.end(), [](double v) { return std::abs(v) > 0.98; })) continue;
        ++tested;
        const auto grad = eval_gradient(sol.field, p);
        for (int j = 0; j < 3; ++j) {
            const double step = 1e-3 * h[j];
            Vec3 pp = p, pm = p;
            pp[j] += step;
            pm[j] -= step;
            const auto up = eval_displacement(sol.field, pp), um = eval_displacement(sol.field, pm);
            for (int i = 0; i < 3; ++i) {
                worst = std::max(worst, std::abs((up[i] - um[i]) / (2 * step) - grad[i][j]));
                gmax = std::max(gmax, std::abs(grad[i][j]));
            }
        }
    }
    verdict("2", worst <= 1e-4,
            fmt::format("max |FD - gradient| {:.3e} over 20 interior points (tol 1e-4 absolute; max |grad u| {:.3e})",
                        worst, gmax));
}

void criterion_3() {
    const ForwardModel fm(coarse_mesh(), Material{});
    const auto mic = SensorLayout::microphones();
    Rng rng(3);
    double literal = 0.0, mirrored_force = 0.0;
    for (int t = 0; t < 5; ++t) {
        const Vec3 p{0.3 * rng.uniform_open(), -0.05 + 0.1 * rng.uniform_open(), 0.05 * rng.uniform_open()};
        const Vec3 q{p[0], -p[1], p[2]};
        const auto a = extract_features(fm.solve({p, 1.0, 0.01}).field, mic);
        const auto b = mirror_mic(extract_features(fm.solve({q, 1.0, 0.01}).field, mic));
        const auto c = mirror_mic(extract_features(fm.solve({q, 1.0, 0.01, {1.0, -1.0, 1.0}}).field, mic));
        const double scale = max_abs(a);
        for (std::size_t k = 0; k < a.size(); ++k) {
            literal = std::max(literal, std::abs(a[k] - b[k]) / scale);
            mirrored_force = std::max(mirrored_force, std::abs(a[k] - c[k]) / scale);
        }
    }
    verdict("3", literal <= 1e-6,
            fmt::format("y-mirrored sources, force A(1,1,1): max feature mismatch {:.3e} of max |feature| (tol 1e-6)",
                        literal));
    info("3", fmt::format("with the force direction mirrored too, (1,-1,1): mismatch {:.3e}; the (1,1,1) force is "
                          "not y-symmetric, so the literal relation cannot hold",
                          mirrored_force));
}

void criterion_4() {
    DatasetConfig c;
    c.n_samples = 5;
    c.seed = 4;
    const auto a = generate_dataset(c);
    c.amplitude = 2.0;
    const auto b = generate_dataset(c);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double scale = max_abs(b.samples[i].features);
        for (std::size_t k = 0; k < a.samples[i].features.size(); ++k)
            worst = std::max(worst, std::abs(b.samples[i].features[k] - 2 * a.samples[i].features[k]) / scale);
    }
    verdict("4", worst <= 1e-9, fmt::format("doubling A: max relative deviation from 2x features {:.3e} (tol 1e-9)", worst));
}

void criterion_5_identity() {
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const Matrix t = testing::random_matrix(50, 3, seed, 0, 0.3);
        const Matrix p = testing::random_matrix(50, 3, seed + 1000, 0, 0.3);
        const auto pc = eval::per_coordinate_mse(t, p);
        worst = std::max(worst, std::abs(eval::mse(t, p) - (pc[0] + pc[1] + pc[2]) / 3.0));
    }
    verdict("5", worst <= 1e-12, fmt::format("|mse - mean(per-coordinate mse)| max {:.3e} over 100 sets (tol 1e-12)", worst));
}

// Is `reported` what the mean of the printed components rounds to? Both sides
// carry rounding from the printed digits, so allow half a unit in the last
// place of the reported value plus the mean of the components' half units.
bool row_consistent(double reported, double ulp_reported, std::array<double, 3> v, std::array<double, 3> ulp) {
    const double mean = (v[0] + v[1] + v[2]) / 3.0;
    const double slack = 0.5 * ulp_reported + 0.5 * (ulp[0] + ulp[1] + ulp[2]) / 3.0;
    return std::abs(mean - reported) <= slack + 1e-12;
}

void criterion_5_table() {
    struct Row {
        const char* name;
        double overall, ulp;
        std::array<double, 3> v, ulps;
    };
    // Reference model comparison, units of 1e-5 m^2.
    const Row table1[] = {
        {"Linear Regression", 27.1, 0.1, {66.1, 9.66, 5.53}, {0.1, 0.01, 0.01}},
        {"XGBoost", 6.77, 0.01, {8.02, 3.73, 8.56}, {0.01, 0.01, 0.01}},
        {"Decision Tree", 5.86, 0.01, {8.10, 2.49, 6.99}, {0.01, 0.01, 0.01}},
        {"Neural Network", 3.14, 0.01, {1450, 172, 46.6}, {1, 1, 0.1}},
        {"kNN", 1.62, 0.01, {1.01, 0.57, 3.27}, {0.01, 0.01, 0.01}},
        {"Random Forest", 2.53, 0.01, {3.72, 0.72, 3.15}, {0.01, 0.01, 0.01}},
        {"Ensemble", 1.69, 0.01, {1.85, 0.37, 2.84}, {0.01, 0.01, 0.01}},
    };
    std::vector<std::string> bad;
    for (const auto& r : table1) {
        const double mean = (r.v[0] + r.v[1] + r.v[2]) / 3.0;
        if (!row_consistent(r.overall, r.ulp, r.v, r.ulps))
            bad.push_back(fmt::format("{} ({:.4g} printed, mean of components {:.4g})", r.name, r.overall, mean));
    }
    verdict("5-table", bad.empty(),
            bad.empty() ? "all seven model-comparison rows satisfy overall = mean of x, y, z"
                        : fmt::format("{} of 7 model-comparison rows inconsistent: {}", bad.size(), bad.front()));
    const Row others[] = {
        {"per-eps universal eps=0.01 mic", 1.44, 0.01, {0.49, 0.29, 3.55}, {0.01, 0.01, 0.01}},
        {"per-eps universal eps=0.01 acc", 1.33, 0.01, {0.45, 0.28, 3.26}, {0.01, 0.01, 0.01}},
        {"per-eps universal eps=0.001 mic", 1.53, 0.01, {0.59, 0.29, 3.71}, {0.01, 0.01, 0.01}},
        {"per-eps universal eps=0.001 acc", 1.36, 0.01, {0.43, 0.26, 3.40}, {0.01, 0.01, 0.01}},
        {"universal mic", 1.00, 0.01, {0.31, 0.18, 2.53}, {0.01, 0.01, 0.01}},
        {"universal acc", 0.92, 0.01, {0.27, 0.17, 2.31}, {0.01, 0.01, 0.01}},
    };
    int ok = 0;
    for (const auto& r : others) ok += row_consistent(r.overall, r.ulp, r.v, r.ulps);
    info("5-table", fmt::format("{} of 6 reference per-eps/universal rows consistent within printed rounding", ok));
}

void criterion_6() {
    std::vector<std::string> bad;
    Matrix x = testing::random_matrix(60, 4, 6);
    Matrix y(60, 3);
    for (Eigen::Index i = 0; i < 60; ++i) y.row(i) << std::sin(3 * x(i, 0)), x(i, 1) * x(i, 2), std::abs(x(i, 3));

    // kNN, k = 1, uniform, on its own training set.
    const auto knn1 = learn::fit_knn(x, y, {1, learn::Weighting::uniform});
    if (eval::mse(y, knn1.predict(x)) != 0.0) bad.push_back("kNN k=1 training error nonzero");

    // Ensemble equals the exact mean of its members.
    learn::ForestParams fp;
    fp.n_estimators = 10;
    auto forest = std::make_shared<learn::Forest>(learn::fit_forest(x, y, fp));
    auto knn = std::make_shared<learn::KnnModel>(learn::fit_knn(x, y, {4, learn::Weighting::distance}));
    const learn::EnsembleModel ens({forest, knn});
    const Matrix q = testing::random_matrix(40, 4, 66);
    const Matrix mean = (forest->predict(q) + knn->predict(q)) / 2.0;
    if (ens.predict(q) != mean) bad.push_back("ensemble differs from the member mean");

    // GBT training loss per coordinate never increases.
    const auto gbt = learn::fit_gbt(x, y, {60, 3, 0.1, 1});
    Eigen::RowVector3d prev = Eigen::RowVector3d::Constant(std::numeric_limits<double>::infinity());
    for (std::size_t r = 0; r <= gbt.rounds(); ++r) {
        const Eigen::RowVector3d cur = (gbt.predict(x, r) - y).array().square().colwise().mean();
        if ((cur.array() > prev.array() * (1 + 1e-12)).any()) bad.push_back(fmt::format("GBT loss rose at round {}", r));
        prev = cur;
    }

    // Grid search against brute force on a 2 x 2 grid.
    learn::ModelSpec base;
    tune::ParamGrid grid{learn::Family::knn,
                         {{"n_neighbors", {2.0, 6.0}}, {"weights", {std::string("uniform"), std::string("distance")}}}};
    const auto result = tune::grid_search(base, grid, x, y, 5, 17);
    const auto folds = tune::kfold_partition(60, 5, 17);
    std::size_t best = 0;
    std::vector<double> means;
    for (std::size_t c = 0; c < 4; ++c) {
        double sum = 0.0;
        for (const auto& fold : folds) {
            std::set<std::size_t> held(fold.begin(), fold.end());
            std::vector<std::size_t> train;
            for (std::size_t i = 0; i < 60; ++i)
                if (!held.count(i)) train.push_back(i);
            const Matrix xt = learn::select_rows(x, train), yt = learn::select_rows(y, train);
            const Matrix xv = learn::select_rows(x, fold), yv = learn::select_rows(y, fold);
            const auto sc = learn::StandardScaler::fit(xt);
            const auto m = learn::fit_knn(sc.transform(xt), yt,
                                          {c < 2 ? 2u : 6u, c % 2 ? learn::Weighting::distance : learn::Weighting::uniform});
            sum += eval::mse(yv, m.predict(sc.transform(xv)));
        }
        means.push_back(sum / 5.0);
        if (std::abs(means[c] - result.rows[c].mean_mse) > 1e-12 * means[c]) bad.push_back("grid mean MSE mismatch");
        if (means[c] < means[best]) best = c;
    }
    if (best != result.best) bad.push_back("grid search picked a different winner");

    // Tree split on the 4-point example against exhaustive search.
    Matrix x4(4, 1), y4(4, 3);
    x4 << 0, 1, 2, 3;
    y4 << 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1;
    double best_sse = std::numeric_limits<double>::infinity(), best_thr = 0.0;
    for (double thr : {0.5, 1.5, 2.5}) {
        double sse = 0.0;
        for (int side = 0; side < 2; ++side) {
            std::vector<int> rows;
            for (int i = 0; i < 4; ++i)
                if ((x4(i, 0) <= thr) == (side == 0)) rows.push_back(i);
            for (int col = 0; col < 3; ++col) {
                double m = 0.0;
                for (int r : rows) m += y4(r, col) / rows.size();
                for (int r : rows) sse += (y4(r, col) - m) * (y4(r, col) - m);
            }
        }
        if (sse < best_sse) best_sse = sse, best_thr = thr;
    }
    const auto stump = learn::fit_tree(x4, y4, {1, 1});
    if (stump.nodes().size() != 3 || stump.nodes()[0].threshold != best_thr ||
        stump.predict_one(std::vector<double>{0.0}) != Vec3{0, 0, 0} ||
        stump.predict_one(std::vector<double>{3.0}) != Vec3{1, 1, 1})
        bad.push_back("4-point tree split differs from exhaustive search");

    verdict("6", bad.empty(),
            bad.empty() ? "kNN k=1 memorises, ensemble = member mean, GBT loss monotone, grid = brute force, "
                          "4-point split at 1.5"
                        : bad.front());
}

std::string pipeline_run(const fs::path& dir) {
    using namespace experiment;
    nlohmann::ordered_json j = {{"output_dir", dir.string()}, {"recipe", "single"}, {"n_samples", 200}, {"seed", 7}};
    cmd_generate(parse_config(j));
    j["data"] = {(dir / "data/eps0.01_m10x5x4_r1_microphone.csv").string()};
    cmd_train(parse_config(j));
    j["model_files"] = {(dir / "models/ensemble.model").string()};
    cmd_evaluate(parse_config(j));
    return read_text(dir / "reports/comparison.csv") + read_text(dir / "reports/comparison_deviation.svg") +
           read_text(dir / "reports/evaluation.csv") + read_text(dir / "models/forest.model") +
           read_text(dir / "data/eps0.01_m10x5x4_r1_microphone.csv") + read_text(dir / "manifest_train.json") +
           read_text(dir / "manifest_evaluate.json");
}

void criterion_7() {
    testing::TempDir tmp("accept7");
    const auto dir = tmp.path() / "run";
    const auto t0 = std::chrono::steady_clock::now();
    const auto first = pipeline_run(dir);
    const double secs = seconds_since(t0);
    fs::remove_all(dir);
    const auto second = pipeline_run(dir);
    verdict("7", first == second && secs < 300.0,
            fmt::format("generate(200) + train(6 families) + evaluate twice: outputs {}; one run {:.1f} s (limit 300 s)",
                        first == second ? "byte-identical" : "DIFFER", secs));
}

// ---------------------------------------------------------------- desk scale

struct Fitted {
    eval::EvalReport report;
    Matrix truth, pred;
    std::vector<std::string> keys;
};

Fitted fit_eval(const learn::ModelSpec& spec, const Dataset& ds, const std::string& name) {
    const auto [train, val] = learn::train_val_split(ds, {0.7, 0});
    const auto pipe = learn::Pipeline::fit(spec, learn::feature_matrix(train), learn::label_matrix(train));
    Fitted f;
    f.truth = learn::label_matrix(val);
    f.pred = pipe.predict(learn::feature_matrix(val));
    f.report = eval::evaluate(name, f.truth, f.pred);
    for (std::size_t i = 0; i < val.size(); ++i) f.keys.push_back(val.sample_key(i));
    return f;
}

std::string mse_text(const eval::EvalReport& r) {
    return fmt::format("{} {:.3e} (x {:.3e}, y {:.3e}, z {:.3e})", r.model, r.mse_overall, r.mse[0], r.mse[1], r.mse[2]);
}

void desk_scale(const fs::path& out) {
    fs::create_directories(out);
    const SensorLayout both[] = {SensorLayout::microphones(), SensorLayout::accelerometers()};
    auto make = [&](double eps, Divisions div, std::size_t n, std::uint64_t seed) {
        DatasetConfig c;
        c.eps = eps;
        c.divisions = div;
        c.n_samples = n;
        c.seed = seed;
        const auto t0 = std::chrono::steady_clock::now();
        auto sets = generate_datasets(c, both);
        info("desk", fmt::format("generated {} samples for {} in {:.1f} s", n, c.provenance(), seconds_since(t0)));
        return sets;
    };
    const auto base = experiment::RunConfig::default_spec();

    // 8: model ranking on the single-file desk set.
    const auto single = make(0.01, {10, 5, 4}, 2000, 101);
    std::map<learn::Family, Fitted> fits;
    std::vector<eval::EvalReport> rows;
    for (auto fam : learn::all_families()) {
        auto spec = base;
        spec.family = fam;
        const auto t0 = std::chrono::steady_clock::now();
        fits[fam] = fit_eval(spec, single[0], learn::to_string(fam));
        rows.push_back(fits[fam].report);
        info("8", fmt::format("{} ({:.1f} s)", mse_text(fits[fam].report), seconds_since(t0)));
    }
    report::emit_report(rows, out, "desk_comparison", "Desk scale: validation mean absolute deviation");
    const double lr = fits[learn::Family::linear].report.mse_overall;
    const double tree = fits[learn::Family::tree].report.mse_overall;
    const double ensm = fits[learn::Family::ensemble].report.mse_overall;
    const double knnm = fits[learn::Family::knn].report.mse_overall;
    const bool ranked = ensm <= lr / 3 && knnm <= lr / 3 && ensm <= tree && knnm <= tree;
    verdict("8", ranked,
            fmt::format("ensemble {:.3e}, kNN {:.3e} vs linear/3 {:.3e} and tree {:.3e}", ensm, knnm, lr / 3, tree));

    // 9 and 10: universal recipe, >= 4000 samples over both eps and both meshes.
    const auto c2 = make(0.001, {10, 5, 4}, 1500, 102);
    const auto f1 = make(0.01, {20, 10, 8}, 250, 103);
    const auto f2 = make(0.001, {20, 10, 8}, 250, 104);
    std::array<Dataset, 2> universal;
    for (int l = 0; l < 2; ++l) {
        const Dataset parts[] = {single[l], c2[l], f1[l], f2[l]};
        universal[l] = concat_datasets(parts);
    }
    auto spec = base;
    spec.family = learn::Family::ensemble;
    const auto umic = fit_eval(spec, universal[0], "universal-mic");
    const auto uacc = fit_eval(spec, universal[1], "universal-acc");
    const auto& one = fits[learn::Family::ensemble].report;
    const bool better = umic.report.mse[0] <= 1.1 * one.mse[0] && umic.report.mse[1] <= 1.1 * one.mse[1];
    verdict("9", better && universal[0].size() >= 4000,
            fmt::format("{} samples; ensemble x/y MSE universal {:.3e}/{:.3e} vs single file {:.3e}/{:.3e} (10% slack)",
                        universal[0].size(), umic.report.mse[0], umic.report.mse[1], one.mse[0], one.mse[1]));
    info("9", fmt::format("z MSE universal {:.3e} vs single file {:.3e}", umic.report.mse[2], one.mse[2]));

    const auto avg = eval::average_predictions(eval::Predictions{umic.keys, umic.pred},
                                               eval::Predictions{uacc.keys, uacc.pred});
    const auto avg_report = eval::evaluate("averaged", umic.truth, avg.values);
    const eval::EvalReport avg_rows[] = {umic.report, uacc.report, avg_report};
    const auto files = report::emit_report(avg_rows, out, "desk_averaged", "Universal ensemble: mic, acc, averaged");
    const bool convex = avg_report.mse_overall <= std::max(umic.report.mse_overall, uacc.report.mse_overall);
    const auto written = report::read_report_csv(files[0]);
    const bool has_row = written.size() == 3 && written[2].model == "averaged";
    verdict("10", convex && has_row,
            fmt::format("averaged {:.3e} <= max(mic {:.3e}, acc {:.3e}); report row 'averaged' {}",
                        avg_report.mse_overall, umic.report.mse_overall, uacc.report.mse_overall,
                        has_row ? "present" : "missing"));

    // 11: sensor ablation on the single-file microphone set.
    std::vector<eval::EvalReport> ab;
    for (std::size_t k = 1; k <= 5; ++k) {
        const std::vector<std::size_t> keep(std::begin(experiment::kAblationOrder),
                                            std::begin(experiment::kAblationOrder) + k);
        ab.push_back(fit_eval(spec, restrict_sensors(single[0], keep), fmt::format("sensors={}", k)).report);
        info("11", fmt::format("{} sensors: mean distance {:.3e} m, MAD x/y/z {:.3e}/{:.3e}/{:.3e} m", k,
                               ab.back().mean_distance, ab.back().mad[0], ab.back().mad[1], ab.back().mad[2]));
    }
    report::emit_report(ab, out, "desk_ablation", "Mean absolute deviation by number of microphones");
    verdict("11", ab[0].mean_distance >= 0.9 * ab[2].mean_distance,
            fmt::format("mean distance 1 sensor {:.3e} m vs 3 sensors {:.3e} m (10% slack)", ab[0].mean_distance,
                        ab[2].mean_distance));
    const auto& full = ab[4].mad;
    const bool y_best = full[1] <= full[0] && full[1] <= full[2];
    const bool z_worst = full[2] >= full[0] && full[2] >= full[1];
    info("11", fmt::format("5-sensor anisotropy: y best {}, z worst {} (not asserted)", y_best ? "yes" : "no",
                           z_worst ? "yes" : "no"));
}

}  // namespace

int main(int argc, char** argv) {
    const std::map<std::string, std::function<void()>> checks = {
        {"1", criterion_1},
        {"2", criterion_2},
        {"3", criterion_3},
        {"4", criterion_4},
        {"5", criterion_5_identity},
        {"5-table", criterion_5_table},
        {"6", criterion_6},
        {"7", criterion_7},
        {"desk", [] { desk_scale(fs::current_path() / "acceptance_reports"); }},
    };
    std::vector<std::string> wanted(argv + 1, argv + argc);
    if (wanted.empty()) wanted = {"1", "2", "3", "4", "5", "5-table", "6", "7", "desk"};
    for (const auto& id : wanted) {
        const auto it = checks.find(id);
        if (it == checks.end()) {
            std::cerr << "unknown criterion '" << id << "'\n";
            return 2;
        }
        try {
            it->second();
        } catch (const std::exception& e) {
            verdict(id, false, std::string("threw: ") + e.what());
        }
    }
    return failures == 0 ? 0 : 1;
}
