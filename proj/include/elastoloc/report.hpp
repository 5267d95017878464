#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "elastoloc/eval.hpp"
#include "elastoloc/mesh.hpp"

namespace elastoloc::report {

/// Header of every report table. SI units, 17 significant digits.
inline constexpr const char* kReportHeader = "model,n_samples,mse_overall,mse_x,mse_y,mse_z,mean_dist,mad_x,mad_y,mad_z";

/// Throws InvalidArgument for an empty list.
std::string report_csv(std::span<const eval::EvalReport> rows);
void write_report_csv(std::span<const eval::EvalReport> rows, const std::filesystem::path& path);
std::vector<eval::EvalReport> read_report_csv(const std::filesystem::path& path);

/// Grouped bars: one group per report row, bars for the x, y and z mean
/// absolute deviation in millimetres. Fixed 800 x 450 canvas.
std::string deviation_bar_chart_svg(std::span<const eval::EvalReport> rows, const std::string& title);

/// Truth (circles) against prediction (squares), joined by a segment, on the
/// xy, xz and yz projections of the body. At most `max_points` rows are
/// drawn. Fixed 900 x 340 canvas.
std::string truth_vs_prediction_svg(const Matrix& truth, const Matrix& pred, const DomainBounds& bounds,
                                    const std::string& title, std::size_t max_points = 200);

/// Writes the CSV table and the bar chart next to each other
/// (`<stem>.csv`, `<stem>_deviation.svg`). Throws InvalidArgument for an empty
/// list, before anything is written.
std::vector<std::filesystem::path> emit_report(std::span<const eval::EvalReport> rows,
                                               const std::filesystem::path& dir, const std::string& stem,
                                               const std::string& title);

}  // namespace elastoloc::report
