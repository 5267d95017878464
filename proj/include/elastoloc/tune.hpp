#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "elastoloc/learn/models.hpp"

namespace elastoloc::tune {

/// Candidate values per named hyperparameter. Combinations are enumerated
/// like nested loops in listing order: the last parameter varies fastest.
struct ParamGrid {
    learn::Family family = learn::Family::forest;
    std::vector<std::pair<std::string, std::vector<learn::ParamValue>>> params;

    void validate() const;
    std::size_t combination_count() const;
    std::vector<std::vector<learn::ParamValue>> combinations() const;
};

struct CombinationScore {
    std::vector<learn::ParamValue> values;
    std::vector<double> fold_mse;
    double mean_mse = 0.0;
};

struct TuneResult {
    learn::Family family = learn::Family::forest;
    std::vector<std::string> names;
    std::vector<CombinationScore> rows;  ///< enumeration order
    std::size_t best = 0;                ///< first row attaining the minimum mean
    std::size_t folds = 0;
    std::uint64_t seed = 0;

    const CombinationScore& best_row() const { return rows.at(best); }
    /// `base` with the family and the winning values applied.
    learn::ModelSpec best_spec(learn::ModelSpec base) const;
};

/// Shuffled k-fold partition of 0..n-1; fold sizes differ by at most one.
std::vector<std::vector<std::size_t>> kfold_partition(std::size_t n, std::size_t k, std::uint64_t seed);

/// Validation MSE of `spec` on one fold: scaler and model are fitted on the
/// remaining rows only.
double fold_mse(const learn::ModelSpec& spec, const Matrix& x, const Matrix& y,
                const std::vector<std::size_t>& validation_rows);

/// Exhaustive search scored by mean k-fold MSE. Combinations are independent
/// and may run on `workers` threads; the result does not depend on it.
/// Throws InvalidArgument for an empty grid, k < 2 or N < k.
TuneResult grid_search(const learn::ModelSpec& base, const ParamGrid& grid, const Matrix& x, const Matrix& y,
                       std::size_t k_folds = 5, std::uint64_t seed = 0, unsigned workers = 1);

/// One row per combination: parameter columns, fold_1..fold_k, mean_mse.
std::string tune_csv(const TuneResult& result);
void write_tune_csv(const TuneResult& result, const std::filesystem::path& path);

}  // namespace elastoloc::tune
