#include "elastoloc/tune.hpp"

#include <algorithm>
#include <exception>
#include <numeric>
#include <thread>

#include <fmt/format.h>

#include "elastoloc/errors.hpp"
#include "elastoloc/eval.hpp"
#include "elastoloc/io.hpp"
#include "elastoloc/rng.hpp"

namespace elastoloc::tune {

void ParamGrid::validate() const {
    if (params.empty()) throw InvalidArgument("grid_search: empty parameter grid");
    for (const auto& [name, values] : params)
        if (values.empty()) throw InvalidArgument("grid_search: parameter '" + name + "' has no candidate values");
}

std::size_t ParamGrid::combination_count() const {
    std::size_t n = 1;
    for (const auto& p : params) n *= p.second.size();
    return params.empty() ? 0 : n;
}

std::vector<std::vector<learn::ParamValue>> ParamGrid::combinations() const {
    validate();
    std::vector<std::vector<learn::ParamValue>> out;
    std::vector<std::size_t> digit(params.size(), 0);
    for (;;) {
        std::vector<learn::ParamValue> combo;
        for (std::size_t p = 0; p < params.size(); ++p) combo.push_back(params[p].second[digit[p]]);
        out.push_back(std::move(combo));
        std::size_t p = params.size();
        while (p > 0) {
            --p;
            if (++digit[p] < params[p].second.size()) break;
            digit[p] = 0;
            if (p == 0) return out;
        }
    }
}

learn::ModelSpec TuneResult::best_spec(learn::ModelSpec base) const {
    base.family = family;
    const auto& row = best_row();
    for (std::size_t p = 0; p < names.size(); ++p) base.set(names[p], row.values[p]);
    return base;
}

std::vector<std::vector<std::size_t>> kfold_partition(std::size_t n, std::size_t k, std::uint64_t seed) {
    if (k < 2) throw InvalidArgument("kfold_partition: need at least two folds");
    if (n < k) throw InvalidArgument("kfold_partition: fewer rows than folds");
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    Rng rng(seed);
    rng.shuffle(order.begin(), order.end());
    std::vector<std::vector<std::size_t>> folds(k);
    std::size_t pos = 0;
    for (std::size_t f = 0; f < k; ++f) {
        const std::size_t size = n / k + (f < n % k ? 1 : 0);
        folds[f].assign(order.begin() + static_cast<std::ptrdiff_t>(pos),
                        order.begin() + static_cast<std::ptrdiff_t>(pos + size));
        pos += size;
    }
    return folds;
}

double fold_mse(const learn::ModelSpec& spec, const Matrix& x, const Matrix& y,
                const std::vector<std::size_t>& validation_rows) {
    std::vector<char> held(static_cast<std::size_t>(x.rows()), 0);
    for (std::size_t r : validation_rows) held.at(r) = 1;
    std::vector<std::size_t> train;
    for (std::size_t r = 0; r < held.size(); ++r)
        if (!held[r]) train.push_back(r);
    const auto model = learn::Pipeline::fit(spec, learn::select_rows(x, train), learn::select_rows(y, train));
    const Matrix xv = learn::select_rows(x, validation_rows);
    return eval::mse(learn::select_rows(y, validation_rows), model.predict(xv));
}

TuneResult grid_search(const learn::ModelSpec& base, const ParamGrid& grid, const Matrix& x, const Matrix& y,
                       std::size_t k_folds, std::uint64_t seed, unsigned workers) {
    grid.validate();
    if (x.rows() != y.rows()) throw InvalidArgument("grid_search: X and Y row counts differ");
    const auto folds = kfold_partition(static_cast<std::size_t>(x.rows()), k_folds, seed);

    TuneResult result;
    result.family = grid.family;
    result.folds = k_folds;
    result.seed = seed;
    for (const auto& p : grid.params) result.names.push_back(p.first);

    // Specs are built up front so a bad parameter name fails before any fitting.
    std::vector<learn::ModelSpec> specs;
    for (auto& combo : grid.combinations()) {
        learn::ModelSpec spec = base;
        spec.family = grid.family;
        for (std::size_t p = 0; p < combo.size(); ++p) spec.set(result.names[p], combo[p]);
        specs.push_back(spec);
        result.rows.push_back({std::move(combo), {}, 0.0});
    }

    std::vector<std::exception_ptr> errors(specs.size());
    auto run = [&](std::size_t first, std::size_t stride) {
        for (std::size_t c = first; c < specs.size(); c += stride) {
            try {
                auto& row = result.rows[c];
                for (const auto& fold : folds) row.fold_mse.push_back(fold_mse(specs[c], x, y, fold));
                row.mean_mse = std::accumulate(row.fold_mse.begin(), row.fold_mse.end(), 0.0) /
                               static_cast<double>(row.fold_mse.size());
            } catch (...) {
                errors[c] = std::current_exception();
            }
        }
    };
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(specs.size())));
    if (workers == 1) {
        run(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w, workers);
        for (auto& t : pool) t.join();
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    for (std::size_t c = 1; c < result.rows.size(); ++c)
        if (result.rows[c].mean_mse < result.rows[result.best].mean_mse) result.best = c;
    return result;
}

std::string tune_csv(const TuneResult& result) {
    std::string out;
    for (const auto& n : result.names) out += n + ",";
    for (std::size_t f = 0; f < result.folds; ++f) out += fmt::format("fold_{},", f + 1);
    out += "mean_mse,best\n";
    for (std::size_t c = 0; c < result.rows.size(); ++c) {
        const auto& row = result.rows[c];
        for (const auto& v : row.values) out += learn::to_string(v) + ",";
        for (double m : row.fold_mse) out += format_double(m) + ",";
        out += format_double(row.mean_mse) + (c == result.best ? ",1\n" : ",0\n");
    }
    return out;
}

void write_tune_csv(const TuneResult& result, const std::filesystem::path& path) {
    write_text_atomic(path, tune_csv(result));
}

}  // namespace elastoloc::tune
