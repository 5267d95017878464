#include "elastoloc/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include <fmt/format.h>

#include "elastoloc/errors.hpp"
#include "elastoloc/rng.hpp"

namespace elastoloc {

namespace {

constexpr const char* kDatasetFormat = "elastoloc-dataset";
constexpr int kDatasetVersion = 1;

std::string num(double v) { return fmt::format("{:.17g}", v); }

double parse_double(const std::string& text, const std::string& what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw IoError("cannot parse " + what + " from '" + text + "'");
    }
    if (used != text.size()) throw IoError("trailing characters in " + what + ": '" + text + "'");
    return v;
}

std::uint64_t parse_u64(const std::string& text, const std::string& what) {
    std::size_t used = 0;
    std::uint64_t v = 0;
    try {
        v = std::stoull(text, &used);
    } catch (const std::exception&) {
        throw IoError("cannot parse " + what + " from '" + text + "'");
    }
    if (used != text.size()) throw IoError("trailing characters in " + what + ": '" + text + "'");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string divisions_text(const Divisions& d) { return fmt::format("{}x{}x{}", d.nx, d.ny, d.nz); }

Divisions parse_divisions(const std::string& text) {
    const auto parts = split(text, 'x');
    if (parts.size() != 3) throw IoError("bad mesh divisions '" + text + "'");
    return {static_cast<int>(parse_u64(parts[0], "nx")), static_cast<int>(parse_u64(parts[1], "ny")),
            static_cast<int>(parse_u64(parts[2], "nz"))};
}

void write_part(std::ostream& os, const std::string& prefix, const DatasetConfig& c) {
    const DomainBounds& b = c.bounds;
    os << prefix << "eps = " << num(c.eps) << '\n'
       << prefix << "divisions = " << divisions_text(c.divisions) << '\n'
       << prefix << "degree = " << c.degree << '\n'
       << prefix << "n_samples = " << c.n_samples << '\n'
       << prefix << "seed = " << c.seed << '\n'
       << prefix << "young_modulus = " << num(c.material.young_modulus) << '\n'
       << prefix << "poisson_ratio = " << num(c.material.poisson_ratio) << '\n'
       << prefix << "amplitude = " << num(c.amplitude) << '\n'
       << prefix << "bounds = " << num(b.x.lo) << ' ' << num(b.x.hi) << ' ' << num(b.y.lo) << ' ' << num(b.y.hi)
       << ' ' << num(b.z.lo) << ' ' << num(b.z.hi) << '\n'
       << prefix << "rel_tol = " << num(c.rel_tol) << '\n';
    if (c.fixed_source) {
        const Vec3& p = *c.fixed_source;
        os << prefix << "sampling = fixed " << num(p[0]) << ' ' << num(p[1]) << ' ' << num(p[2]) << '\n';
    } else {
        os << prefix << "sampling = uniform\n";
    }
}

DatasetConfig read_part(const std::map<std::string, std::string>& kv, const std::string& prefix) {
    auto get = [&](const std::string& key) {
        const auto it = kv.find(prefix + key);
        if (it == kv.end()) throw IoError("dataset metadata is missing '" + prefix + key + "'");
        return it->second;
    };
    DatasetConfig c;
    c.eps = parse_double(get("eps"), "eps");
    c.divisions = parse_divisions(get("divisions"));
    c.degree = static_cast<int>(parse_u64(get("degree"), "degree"));
    c.n_samples = parse_u64(get("n_samples"), "n_samples");
    c.seed = parse_u64(get("seed"), "seed");
    c.material.young_modulus = parse_double(get("young_modulus"), "young_modulus");
    c.material.poisson_ratio = parse_double(get("poisson_ratio"), "poisson_ratio");
    c.amplitude = parse_double(get("amplitude"), "amplitude");
    const auto b = split(get("bounds"), ' ');
    if (b.size() != 6) throw IoError("dataset metadata: bounds needs 6 numbers");
    c.bounds = {{parse_double(b[0], "bounds"), parse_double(b[1], "bounds")},
                {parse_double(b[2], "bounds"), parse_double(b[3], "bounds")},
                {parse_double(b[4], "bounds"), parse_double(b[5], "bounds")}};
    c.rel_tol = parse_double(get("rel_tol"), "rel_tol");
    const auto sampling = split(get("sampling"), ' ');
    if (sampling.size() == 4 && sampling[0] == "fixed") {
        c.fixed_source = Vec3{parse_double(sampling[1], "sampling"), parse_double(sampling[2], "sampling"),
                              parse_double(sampling[3], "sampling")};
    } else if (!(sampling.size() == 1 && sampling[0] == "uniform")) {
        throw IoError("dataset metadata: unknown sampling '" + get("sampling") + "'");
    }
    return c;
}

}  // namespace

std::string to_string(SensorKind kind) {
    switch (kind) {
        case SensorKind::microphone: return "microphone";
        case SensorKind::accelerometer: return "accelerometer";
        case SensorKind::custom: return "custom";
    }
    return "custom";
}

SensorKind parse_sensor_kind(const std::string& text) {
    if (text == "microphone" || text == "mic") return SensorKind::microphone;
    if (text == "accelerometer" || text == "acc") return SensorKind::accelerometer;
    if (text == "custom") return SensorKind::custom;
    throw ConfigError("unknown sensor kind '" + text + "' (expected microphone, accelerometer or custom)");
}

bool SensorLayout::operator==(const SensorLayout& other) const {
    if (kind != other.kind || sites.size() != other.sites.size()) return false;
    for (std::size_t i = 0; i < sites.size(); ++i) {
        const auto& a = sites[i];
        const auto& b = other.sites[i];
        if (a.id != b.id || a.x != b.x || a.y != b.y) return false;
    }
    return true;
}

SensorLayout SensorLayout::microphones() {
    return {SensorKind::microphone,
            {{0, 0.12, 0.01}, {1, 0.18, 0.01}, {2, 0.15, 0.00}, {3, 0.12, -0.01}, {4, 0.18, -0.01}}};
}

SensorLayout SensorLayout::accelerometers() {
    return {SensorKind::accelerometer, {{0, 0.15, 0.01}, {1, 0.12, 0.00}, {2, 0.18, 0.00}, {3, 0.15, -0.01}}};
}

SensorLayout SensorLayout::of(SensorKind kind) {
    switch (kind) {
        case SensorKind::microphone: return microphones();
        case SensorKind::accelerometer: return accelerometers();
        case SensorKind::custom: break;
    }
    throw ConfigError("a custom sensor layout needs explicit sites");
}

std::vector<std::string> feature_names(const SensorLayout& layout) {
    static constexpr const char* kSuffix[kFeaturesPerSite] = {"u1",    "u2",    "u3",    "du1dx", "du1dy", "du1dz",
                                                              "du2dx", "du2dy", "du2dz", "du3dx", "du3dy", "du3dz"};
    std::vector<std::string> names;
    names.reserve(layout.size() * kFeaturesPerSite);
    for (const auto& site : layout.sites)
        for (const char* s : kSuffix) names.push_back(fmt::format("s{}_{}", site.id, s));
    return names;
}

void DatasetConfig::validate() const {
    if (!(eps > 0.0)) throw ConfigError("dataset config: eps must be positive");
    if (degree != 1) throw ConfigError("dataset config: only element degree r = 1 is implemented");
    if (n_samples < 1) throw ConfigError("dataset config: n_samples must be >= 1");
    if (divisions.nx < 1 || divisions.ny < 1 || divisions.nz < 1)
        throw ConfigError("dataset config: mesh divisions must be >= 1");
    if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw ConfigError("dataset config: rel_tol must lie in (0, 1)");
    try {
        bounds.validate();
        material.validate();
    } catch (const InvalidArgument& e) {
        throw ConfigError(std::string("dataset config: ") + e.what());
    }
    if (!std::isfinite(amplitude)) throw ConfigError("dataset config: amplitude must be finite");
    if (layout.sites.empty()) throw ConfigError("dataset config: sensor layout has no sites");
    for (const auto& s : layout.sites)
        if (!bounds.contains({s.x, s.y, bounds.z.hi}))
            throw ConfigError(fmt::format("dataset config: sensor site {} ({}, {}) is off the top face", s.id, s.x, s.y));
    if (fixed_source && !bounds.contains(*fixed_source))
        throw ConfigError("dataset config: fixed source lies outside the body");
}

std::string DatasetConfig::provenance() const {
    return fmt::format("eps={};mesh={};r={}", num(eps), divisions_text(divisions), degree);
}

std::string Dataset::sample_key(std::size_t row) const {
    const Sample& s = samples.at(row);
    return s.provenance + "#" + std::to_string(s.id);
}

void Dataset::validate() const {
    const std::size_t d = feature_count();
    if (parts.empty()) throw InvalidArgument("dataset has no generating configuration");
    for (const auto& s : samples) {
        if (s.features.size() != d) throw InvalidArgument("dataset rows disagree with the sensor layout width");
        for (double v : s.features)
            if (!std::isfinite(v)) throw InvalidArgument("dataset contains a non-finite feature");
    }
}

std::vector<Vec3> sample_sources(std::size_t n, const DomainBounds& bounds, std::uint64_t seed) {
    if (n == 0) throw InvalidArgument("sample_sources: n must be >= 1");
    bounds.validate();
    Rng rng(seed);
    std::vector<Vec3> out(n);
    for (auto& p : out)
        for (int a = 0; a < 3; ++a) p[a] = bounds.axis(a).lo + bounds.axis(a).length() * rng.uniform_open();
    return out;
}

std::vector<double> extract_features(const DisplacementField& field, const SensorLayout& layout) {
    const DomainBounds& b = field.mesh().bounds();
    std::vector<double> out;
    out.reserve(layout.size() * kFeaturesPerSite);
    for (const auto& site : layout.sites) {
        const Vec3 p{site.x, site.y, b.z.hi};
        if (!b.contains(p))
            throw ConfigError(fmt::format("sensor site {} ({}, {}) lies outside the body", site.id, site.x, site.y));
        const Vec3 u = field.displacement(p);
        const Mat3 g = field.gradient_averaged(p);
        out.insert(out.end(), u.begin(), u.end());
        for (const auto& row : g) out.insert(out.end(), row.begin(), row.end());
    }
    return out;
}

std::vector<Dataset> generate_datasets(const DatasetConfig& config, std::span<const SensorLayout> layouts,
                                       unsigned workers) {
    config.validate();
    if (layouts.empty()) throw InvalidArgument("generate_datasets: no sensor layouts given");
    for (const auto& layout : layouts) {
        DatasetConfig probe = config;
        probe.layout = layout;
        probe.validate();
    }
    const std::size_t n = config.n_samples;
    const std::vector<Vec3> sources =
        config.fixed_source ? std::vector<Vec3>(n, *config.fixed_source) : sample_sources(n, config.bounds, config.seed);

    auto mesh = std::make_shared<const HexMesh>(config.divisions, config.bounds);
    const ForwardModel model(mesh, config.material);
    const std::string provenance = config.provenance();

    // rows[l][i]: sample i for layout l
    std::vector<std::vector<Sample>> rows(layouts.size(), std::vector<Sample>(n));
    std::vector<std::exception_ptr> errors(n);

    auto run = [&](std::size_t first, std::size_t stride) {
        for (std::size_t i = first; i < n; i += stride) {
            try {
                const Solution sol = model.solve({sources[i], config.amplitude, config.eps}, config.rel_tol);
                for (std::size_t l = 0; l < layouts.size(); ++l)
                    rows[l][i] = {extract_features(sol.field, layouts[l]), sources[i], i, provenance};
            } catch (const SolverFailure& e) {
                errors[i] = std::make_exception_ptr(
                    SolverFailure(fmt::format("sample {}: {}", i, e.what()), e.residual(), e.iterations()));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(n)));
    if (workers == 1) {
        run(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w, workers);
        for (auto& t : pool) t.join();
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    std::vector<Dataset> out;
    for (std::size_t l = 0; l < layouts.size(); ++l) {
        DatasetConfig part = config;
        part.layout = layouts[l];
        out.push_back({{part}, layouts[l], std::move(rows[l])});
    }
    return out;
}

Dataset generate_dataset(const DatasetConfig& config, unsigned workers) {
    const SensorLayout layouts[] = {config.layout};
    return std::move(generate_datasets(config, layouts, workers).front());
}

Dataset restrict_sensors(const Dataset& dataset, std::span<const std::size_t> keep) {
    std::set<std::size_t> unique(keep.begin(), keep.end());
    if (unique.size() != keep.size()) throw InvalidArgument("restrict_sensors: duplicate site index");
    if (unique.empty()) throw InvalidArgument("restrict_sensors: at least one site must be kept");
    if (*unique.rbegin() >= dataset.layout.size()) throw InvalidArgument("restrict_sensors: site index out of range");

    Dataset out;
    out.layout.kind = dataset.layout.kind;
    for (std::size_t s : unique) out.layout.sites.push_back(dataset.layout.sites[s]);
    out.parts = dataset.parts;
    for (auto& p : out.parts) p.layout = out.layout;
    out.samples.reserve(dataset.size());
    for (const Sample& src : dataset.samples) {
        Sample s{{}, src.label, src.id, src.provenance};
        s.features.reserve(unique.size() * kFeaturesPerSite);
        for (std::size_t site : unique) {
            const auto first = src.features.begin() + static_cast<std::ptrdiff_t>(site * kFeaturesPerSite);
            s.features.insert(s.features.end(), first, first + kFeaturesPerSite);
        }
        out.samples.push_back(std::move(s));
    }
    return out;
}

Dataset concat_datasets(std::span<const Dataset> parts) {
    if (parts.empty()) throw InvalidArgument("concat_datasets: nothing to concatenate");
    Dataset out;
    out.layout = parts.front().layout;
    for (const Dataset& d : parts) {
        if (!(d.layout == out.layout))
            throw InvalidArgument("concat_datasets: sensor layouts differ; feature dimensions would not line up");
        out.parts.insert(out.parts.end(), d.parts.begin(), d.parts.end());
        out.samples.insert(out.samples.end(), d.samples.begin(), d.samples.end());
    }
    return out;
}

std::filesystem::path sidecar_path(const std::filesystem::path& csv) {
    auto p = csv;
    p.replace_extension(".meta");
    return p;
}

void write_dataset(const Dataset& dataset, const std::filesystem::path& csv) {
    dataset.validate();
    const bool combined = dataset.combined();
    {
        std::ofstream os(csv, std::ios::binary);
        if (!os) throw IoError("cannot open '" + csv.string() + "' for writing");
        for (const auto& name : feature_names(dataset.layout)) os << name << ',';
        os << "xc,yc,zc" << (combined ? ",provenance" : "") << '\n';
        for (const Sample& s : dataset.samples) {
            for (double v : s.features) os << num(v) << ',';
            os << num(s.label[0]) << ',' << num(s.label[1]) << ',' << num(s.label[2]);
            if (combined) os << ',' << s.provenance;
            os << '\n';
        }
        if (!os) throw IoError("write failed for '" + csv.string() + "'");
    }
    const auto meta = sidecar_path(csv);
    std::ofstream os(meta, std::ios::binary);
    if (!os) throw IoError("cannot open '" + meta.string() + "' for writing");
    os << "format = " << kDatasetFormat << '\n'
       << "version = " << kDatasetVersion << '\n'
       << "sensor_kind = " << to_string(dataset.layout.kind) << '\n'
       << "sites =";
    for (const auto& s : dataset.layout.sites) os << ' ' << s.id << ':' << num(s.x) << ':' << num(s.y);
    os << '\n' << "n_rows = " << dataset.size() << '\n' << "parts = " << dataset.parts.size() << '\n';
    for (std::size_t p = 0; p < dataset.parts.size(); ++p) write_part(os, fmt::format("part{}.", p), dataset.parts[p]);
    if (!os) throw IoError("write failed for '" + meta.string() + "'");
}

Dataset read_dataset(const std::filesystem::path& csv) {
    const auto meta = sidecar_path(csv);
    std::ifstream ms(meta);
    if (!ms) throw IoError("cannot open dataset metadata '" + meta.string() + "'");
    std::map<std::string, std::string> kv;
    for (std::string line; std::getline(ms, line);) {
        if (trim(line).empty() || trim(line)[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw IoError("bad metadata line '" + line + "'");
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    if (kv["format"] != kDatasetFormat) throw IoError("'" + meta.string() + "' is not a dataset sidecar");
    if (kv["version"] != std::to_string(kDatasetVersion)) throw IoError("unsupported dataset version " + kv["version"]);

    Dataset ds;
    ds.layout.kind = parse_sensor_kind(kv["sensor_kind"]);
    for (const auto& tok : split(kv["sites"], ' ')) {
        if (tok.empty()) continue;
        const auto f = split(tok, ':');
        if (f.size() != 3) throw IoError("bad site entry '" + tok + "'");
        ds.layout.sites.push_back({static_cast<int>(parse_u64(f[0], "site id")), parse_double(f[1], "site x"),
                                   parse_double(f[2], "site y")});
    }
    const std::size_t n_parts = parse_u64(kv["parts"], "parts");
    for (std::size_t p = 0; p < n_parts; ++p) {
        DatasetConfig c = read_part(kv, fmt::format("part{}.", p));
        c.layout = ds.layout;
        ds.parts.push_back(std::move(c));
    }
    if (ds.parts.empty()) throw IoError("dataset metadata lists no parts");
    const bool combined = ds.parts.size() > 1;

    std::ifstream is(csv);
    if (!is) throw IoError("cannot open dataset '" + csv.string() + "'");
    std::string line;
    std::getline(is, line);
    auto expected = feature_names(ds.layout);
    expected.insert(expected.end(), {"xc", "yc", "zc"});
    if (combined) expected.push_back("provenance");
    if (split(line, ',') != expected) throw IoError("dataset header does not match its sensor layout");

    const std::size_t d = ds.feature_count();
    std::map<std::string, std::uint64_t> next_id;
    const std::string single = ds.parts.front().provenance();
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto cells = split(line, ',');
        if (cells.size() != expected.size()) throw IoError("dataset row has the wrong number of columns");
        Sample s;
        s.features.resize(d);
        for (std::size_t j = 0; j < d; ++j) s.features[j] = parse_double(cells[j], "feature");
        for (int a = 0; a < 3; ++a) s.label[a] = parse_double(cells[d + a], "label");
        s.provenance = combined ? cells[d + 3] : single;
        s.id = next_id[s.provenance]++;
        ds.samples.push_back(std::move(s));
    }
    if (ds.samples.size() != parse_u64(kv["n_rows"], "n_rows")) throw IoError("dataset row count disagrees with metadata");
    ds.validate();
    return ds;
}

}  // namespace elastoloc
