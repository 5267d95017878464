#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "elastoloc/fem.hpp"
#include "elastoloc/mesh.hpp"

namespace elastoloc {

enum class SensorKind { microphone, accelerometer, custom };

std::string to_string(SensorKind kind);
SensorKind parse_sensor_kind(const std::string& text);

struct SensorSite {
    int id = 0;  ///< index in the originating layout; used in column names
    double x = 0.0;
    double y = 0.0;
};

/// Sensor sites on the top face of the body.
struct SensorLayout {
    SensorKind kind = SensorKind::microphone;
    std::vector<SensorSite> sites;

    std::size_t size() const { return sites.size(); }
    bool operator==(const SensorLayout& other) const;

    static SensorLayout microphones();
    static SensorLayout accelerometers();
    static SensorLayout of(SensorKind kind);
};

inline constexpr std::size_t kFeaturesPerSite = 12;

/// Column names for one layout: s{id}_u1 .. s{id}_du3dz per site.
std::vector<std::string> feature_names(const SensorLayout& layout);

struct DatasetConfig {
    double eps = 0.01;
    Divisions divisions{10, 5, 4};
    int degree = 1;  ///< element order label; only trilinear (1) is implemented
    SensorLayout layout = SensorLayout::microphones();
    std::size_t n_samples = 500;
    std::uint64_t seed = 0;
    Material material{};
    double amplitude = 1.0;
    DomainBounds bounds{};
    double rel_tol = 1e-10;
    /// When set, every sample uses this source instead of a random draw.
    std::optional<Vec3> fixed_source;

    void validate() const;
    /// "eps=0.01;mesh=10x5x4;r=1": identifies the physical configuration,
    /// independently of the sensor layout.
    std::string provenance() const;
};

struct Sample {
    std::vector<double> features;
    Vec3 label{};
    std::uint64_t id = 0;    ///< position in the source-sampling order
    std::string provenance;  ///< DatasetConfig::provenance of the generating run
};

/// Labelled feature rows. Row-concatenated datasets keep one config per part.
struct Dataset {
    std::vector<DatasetConfig> parts;
    SensorLayout layout;
    std::vector<Sample> samples;

    std::size_t size() const { return samples.size(); }
    std::size_t feature_count() const { return kFeaturesPerSite * layout.size(); }
    bool combined() const { return parts.size() > 1; }
    /// "provenance#id"; equal keys across datasets denote the same source draw.
    std::string sample_key(std::size_t row) const;
    void validate() const;
};

/// n i.i.d. points uniform over the open box. Deterministic in seed.
std::vector<Vec3> sample_sources(std::size_t n, const DomainBounds& bounds, std::uint64_t seed);

/// Per site in layout order: u1, u2, u3 then grad u row-major. Sites sit on the
/// top face of the field's mesh. Gradients are averaged over the elements
/// touching the site. Throws ConfigError for a site off the body.
std::vector<double> extract_features(const DisplacementField& field, const SensorLayout& layout);

/// One forward solve per sampled source, features taken for each layout from
/// the same solve (so the returned datasets are row-aligned). `workers`
/// threads share the solves; the output does not depend on it.
std::vector<Dataset> generate_datasets(const DatasetConfig& config, std::span<const SensorLayout> layouts,
                                       unsigned workers = 1);
Dataset generate_dataset(const DatasetConfig& config, unsigned workers = 1);

/// Keeps the 12-column blocks of the listed layout positions, in layout order.
Dataset restrict_sensors(const Dataset& dataset, std::span<const std::size_t> keep);

/// Row-concatenation of datasets sharing one sensor layout.
Dataset concat_datasets(std::span<const Dataset> parts);

/// CSV (header + rows, 17 significant digits) and a `key = value` sidecar at
/// sidecar_path(csv).
void write_dataset(const Dataset& dataset, const std::filesystem::path& csv);
Dataset read_dataset(const std::filesystem::path& csv);
std::filesystem::path sidecar_path(const std::filesystem::path& csv);

}  // namespace elastoloc
