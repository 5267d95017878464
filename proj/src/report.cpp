#include "elastoloc/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <fmt/format.h>

#include "elastoloc/errors.hpp"
#include "elastoloc/io.hpp"

namespace elastoloc::report {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ',')) out.push_back(cell);
    return out;
}

// Smallest 1/2/5 x 10^k at or above v.
double nice_ceiling(double v) {
    if (!(v > 0.0)) return 1.0;
    const double p = std::pow(10.0, std::floor(std::log10(v)));
    for (double m : {1.0, 2.0, 5.0, 10.0})
        if (m * p >= v) return m * p;
    return 10.0 * p;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '&') out += "&amp;";
        else if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else out += c;
    }
    return out;
}

std::string px(double v) { return fmt::format("{:.2f}", v); }

constexpr const char* kAxisColor[3] = {"#1f77b4", "#2ca02c", "#d62728"};

}  // namespace

std::string report_csv(std::span<const eval::EvalReport> rows) {
    if (rows.empty()) throw InvalidArgument("report: no model rows to write");
    std::string out = std::string(kReportHeader) + "\n";
    for (const auto& r : rows) {
        if (r.model.find(',') != std::string::npos) throw InvalidArgument("report: model name contains a comma");
        out += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", r.model, r.n_samples, format_double(r.mse_overall),
                           format_double(r.mse[0]), format_double(r.mse[1]), format_double(r.mse[2]),
                           format_double(r.mean_distance), format_double(r.mad[0]), format_double(r.mad[1]),
                           format_double(r.mad[2]));
    }
    return out;
}

void write_report_csv(std::span<const eval::EvalReport> rows, const std::filesystem::path& path) {
    write_text_atomic(path, report_csv(rows));
}

std::vector<eval::EvalReport> read_report_csv(const std::filesystem::path& path) {
    std::istringstream is(read_text(path));
    std::string line;
    if (!std::getline(is, line) || line != kReportHeader)
        throw IoError("'" + path.string() + "' does not carry the report header");
    std::vector<eval::EvalReport> rows;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto c = split_csv(line);
        if (c.size() != 10) throw IoError("report row with " + std::to_string(c.size()) + " columns");
        try {
            rows.push_back({c[0],
                            std::stoull(c[1]),
                            std::stod(c[2]),
                            {std::stod(c[3]), std::stod(c[4]), std::stod(c[5])},
                            std::stod(c[6]),
                            {std::stod(c[7]), std::stod(c[8]), std::stod(c[9])}});
        } catch (const std::exception&) {
            throw IoError("unparseable report row '" + line + "'");
        }
    }
    return rows;
}

std::string deviation_bar_chart_svg(std::span<const eval::EvalReport> rows, const std::string& title) {
    if (rows.empty()) throw InvalidArgument("bar chart: no rows");
    constexpr double kW = 800, kH = 450, kLeft = 80, kRight = 130, kTop = 50, kBottom = 90;
    const double plot_w = kW - kLeft - kRight;
    const double plot_h = kH - kTop - kBottom;
    double vmax = 0.0;
    for (const auto& r : rows)
        for (double v : r.mad) vmax = std::max(vmax, v * 1e3);
    const double ymax = nice_ceiling(vmax * 1.05);

    std::string s = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\" "
        "font-family=\"sans-serif\" font-size=\"12\">\n<rect width=\"{0}\" height=\"{1}\" fill=\"white\"/>\n",
        kW, kH);
    s += fmt::format("<text x=\"{}\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">{}</text>\n", px(kW / 2),
                     escape(title));
    for (int t = 0; t <= 5; ++t) {
        const double v = ymax * t / 5.0;
        const double y = kTop + plot_h - plot_h * t / 5.0;
        s += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#dddddd\"/>\n", px(kLeft), px(y),
                         px(kLeft + plot_w), px(y));
        s += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{:.3g}</text>\n", px(kLeft - 6), px(y + 4), v);
    }
    s += fmt::format(
        "<text transform=\"translate(22 {}) rotate(-90)\" text-anchor=\"middle\">mean absolute deviation (mm)</text>\n",
        px(kTop + plot_h / 2));
    const double group_w = plot_w / static_cast<double>(rows.size());
    const double bar_w = group_w * 0.8 / 3.0;
    for (std::size_t g = 0; g < rows.size(); ++g) {
        const double x0 = kLeft + group_w * static_cast<double>(g) + group_w * 0.1;
        for (int k = 0; k < 3; ++k) {
            const double h = plot_h * (rows[g].mad[k] * 1e3) / ymax;
            s += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\"/>\n", px(x0 + bar_w * k),
                             px(kTop + plot_h - h), px(bar_w), px(h), kAxisColor[k]);
        }
        s += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", px(x0 + bar_w * 1.5),
                         px(kTop + plot_h + 18), escape(rows[g].model));
    }
    s += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"black\"/>\n", px(kLeft), px(kTop),
                     px(kTop + plot_h));
    s += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"black\"/>\n", px(kLeft),
                     px(kTop + plot_h), px(kLeft + plot_w));
    constexpr const char* kNames[3] = {"x", "y", "z"};
    for (int k = 0; k < 3; ++k) {
        const double y = kTop + 10 + 20 * k;
        s += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"12\" height=\"12\" fill=\"{}\"/>\n", px(kW - kRight + 20),
                         px(y), kAxisColor[k]);
        s += fmt::format("<text x=\"{}\" y=\"{}\">{}-coordinate</text>\n", px(kW - kRight + 38), px(y + 10), kNames[k]);
    }
    s += "</svg>\n";
    return s;
}

std::string truth_vs_prediction_svg(const Matrix& truth, const Matrix& pred, const DomainBounds& bounds,
                                    const std::string& title, std::size_t max_points) {
    if (truth.rows() != pred.rows() || truth.cols() != 3 || pred.cols() != 3)
        throw InvalidArgument("scatter: truth and prediction must both be N x 3");
    constexpr double kW = 900, kH = 340, kPane = 250, kTop = 50, kGap = 50;
    constexpr int kPanes[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    constexpr const char* kAxis[3] = {"x (m)", "y (m)", "z (m)"};
    const auto n = std::min<std::size_t>(max_points, static_cast<std::size_t>(truth.rows()));

    std::string s = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\" "
        "font-family=\"sans-serif\" font-size=\"12\">\n<rect width=\"{0}\" height=\"{1}\" fill=\"white\"/>\n",
        kW, kH);
    s += fmt::format("<text x=\"{}\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">{}</text>\n", px(kW / 2),
                     escape(title));
    for (int p = 0; p < 3; ++p) {
        const int a = kPanes[p][0];
        const int b = kPanes[p][1];
        const double left = kGap + p * (kPane + kGap);
        const Interval& ia = bounds.axis(a);
        const Interval& ib = bounds.axis(b);
        auto sx = [&](double v) { return left + kPane * (v - ia.lo) / ia.length(); };
        auto sy = [&](double v) { return kTop + kPane - kPane * (v - ib.lo) / ib.length(); };
        s += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n",
                         px(left), px(kTop), px(kPane), px(kPane));
        s += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", px(left + kPane / 2),
                         px(kTop + kPane + 28), kAxis[a]);
        s += fmt::format("<text transform=\"translate({} {}) rotate(-90)\" text-anchor=\"middle\">{}</text>\n",
                         px(left - 12), px(kTop + kPane / 2), kAxis[b]);
        for (std::size_t i = 0; i < n; ++i) {
            const auto r = static_cast<Eigen::Index>(i);
            const double tx = sx(truth(r, a)), ty = sy(truth(r, b));
            const double qx = sx(pred(r, a)), qy = sy(pred(r, b));
            s += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#999999\" stroke-width=\"0.6\"/>\n",
                             px(tx), px(ty), px(qx), px(qy));
            s += fmt::format("<circle cx=\"{}\" cy=\"{}\" r=\"2.2\" fill=\"#1f77b4\"/>\n", px(tx), px(ty));
            s += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"4\" height=\"4\" fill=\"#ff7f0e\"/>\n", px(qx - 2),
                             px(qy - 2));
        }
    }
    s += fmt::format("<circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"#1f77b4\"/><text x=\"{}\" y=\"{}\">truth</text>\n",
                     px(kW - 200), px(kH - 12), px(kW - 192), px(kH - 8));
    s += fmt::format(
        "<rect x=\"{}\" y=\"{}\" width=\"6\" height=\"6\" fill=\"#ff7f0e\"/><text x=\"{}\" y=\"{}\">prediction</text>\n",
        px(kW - 120), px(kH - 15), px(kW - 110), px(kH - 8));
    s += "</svg>\n";
    return s;
}

std::vector<std::filesystem::path> emit_report(std::span<const eval::EvalReport> rows,
                                               const std::filesystem::path& dir, const std::string& stem,
                                               const std::string& title) {
    if (rows.empty()) throw InvalidArgument("report: no model rows to write");
    // Render everything first so a failure leaves no partial set behind.
    const std::string csv = report_csv(rows);
    const std::string svg = deviation_bar_chart_svg(rows, title);
    const auto csv_path = dir / (stem + ".csv");
    const auto svg_path = dir / (stem + "_deviation.svg");
    write_text_atomic(csv_path, csv);
    try {
        write_text_atomic(svg_path, svg);
    } catch (...) {
        std::error_code ec;
        std::filesystem::remove(csv_path, ec);
        throw;
    }
    return {csv_path, svg_path};
}

}  // namespace elastoloc::report
