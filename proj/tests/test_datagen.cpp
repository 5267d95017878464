#include "doctest.h"

#include <cmath>
#include <fstream>

#include "elastoloc/datagen.hpp"
#include "elastoloc/errors.hpp"
#include "elastoloc/io.hpp"
#include "support.hpp"

using namespace elastoloc;

namespace {

DatasetConfig small_config(std::size_t n, std::uint64_t seed = 42) {
    DatasetConfig c;
    c.n_samples = n;
    c.seed = seed;
    return c;
}

std::vector<double> linear_nodal(const HexMesh& m, const double (&a)[3][3]) {
    std::vector<double> nodal(3 * m.node_count());
    for (std::size_t n = 0; n < m.node_count(); ++n)
        for (int i = 0; i < 3; ++i) {
            const auto& p = m.nodes()[n];
            nodal[3 * n + i] = a[i][0] * p[0] + a[i][1] * p[1] + a[i][2] * p[2];
        }
    return nodal;
}

}  // namespace

TEST_CASE("sensor layouts are the fixed top-face sites") {
    const auto mic = SensorLayout::microphones();
    REQUIRE(mic.size() == 5);
    const double mx[5][2] = {{0.12, 0.01}, {0.18, 0.01}, {0.15, 0.0}, {0.12, -0.01}, {0.18, -0.01}};
    for (int s = 0; s < 5; ++s) {
        CHECK(mic.sites[s].id == s);
        CHECK(mic.sites[s].x == mx[s][0]);
        CHECK(mic.sites[s].y == mx[s][1]);
    }
    const auto acc = SensorLayout::accelerometers();
    REQUIRE(acc.size() == 4);
    const double ax[4][2] = {{0.15, 0.01}, {0.12, 0.0}, {0.18, 0.0}, {0.15, -0.01}};
    for (int s = 0; s < 4; ++s) {
        CHECK(acc.sites[s].x == ax[s][0]);
        CHECK(acc.sites[s].y == ax[s][1]);
    }
    CHECK(SensorLayout::of(SensorKind::accelerometer) == acc);
    CHECK(parse_sensor_kind("mic") == SensorKind::microphone);
    CHECK(parse_sensor_kind("accelerometer") == SensorKind::accelerometer);
    CHECK_THROWS_AS(parse_sensor_kind("laser"), ConfigError);
    const auto names = feature_names(mic);
    REQUIRE(names.size() == 60);
    CHECK(names[0] == "s0_u1");
    CHECK(names[3] == "s0_du1dx");
    CHECK(names[11] == "s0_du3dz");
    CHECK(names[59] == "s4_du3dz");
}

TEST_CASE("sample_sources: bounds, mean, determinism") {
    const DomainBounds b;
    const auto pts = sample_sources(1000, b, 17);
    REQUIRE(pts.size() == 1000);
    double mean_x = 0.0;
    for (const auto& p : pts) {
        for (int d = 0; d < 3; ++d) {
            CHECK(p[d] > b.axis(d).lo);
            CHECK(p[d] < b.axis(d).hi);
        }
        mean_x += p[0] / 1000.0;
    }
    CHECK(std::abs(mean_x - 0.15) < 0.01);
    CHECK(sample_sources(1000, b, 17) == pts);
    CHECK(sample_sources(1000, b, 18) != pts);
    const auto one = sample_sources(1, b, 3);
    REQUIRE(one.size() == 1);
    CHECK(b.contains(one[0]));
    CHECK_THROWS_AS(sample_sources(0, b, 3), InvalidArgument);
}

TEST_CASE("extract_features: zero and linear fields") {
    const auto m = std::make_shared<const HexMesh>(Divisions{10, 5, 4}, DomainBounds{});
    const DisplacementField zero(m, std::vector<double>(3 * m->node_count(), 0.0));
    const auto fm = extract_features(zero, SensorLayout::microphones());
    CHECK(fm == std::vector<double>(60, 0.0));
    CHECK(extract_features(zero, SensorLayout::accelerometers()) == std::vector<double>(48, 0.0));

    const double a[3][3] = {{0.5, -1.0, 2.0}, {3.0, 0.25, -0.5}, {-2.0, 1.5, 1.0}};
    const DisplacementField lin(m, linear_nodal(*m, a));
    const auto layout = SensorLayout::microphones();
    const auto f = extract_features(lin, layout);
    for (std::size_t s = 0; s < layout.size(); ++s) {
        const double x = layout.sites[s].x, y = layout.sites[s].y, z = 0.05;
        for (int i = 0; i < 3; ++i) {
            CHECK(f[12 * s + i] == doctest::Approx(a[i][0] * x + a[i][1] * y + a[i][2] * z).epsilon(1e-12));
            for (int j = 0; j < 3; ++j) CHECK(std::abs(f[12 * s + 3 + 3 * i + j] - a[i][j]) < 1e-12);
        }
    }

    SensorLayout off{SensorKind::custom, {{0, 0.45, 0.0}}};
    CHECK_THROWS_AS(extract_features(lin, off), ConfigError);
}

TEST_CASE("config validation") {
    auto c = small_config(10);
    CHECK_NOTHROW(c.validate());
    CHECK(c.provenance() == "eps=0.01;mesh=10x5x4;r=1");
    c.degree = 2;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = small_config(0);
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = small_config(5);
    c.eps = -0.1;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = small_config(5);
    c.fixed_source = Vec3{1.0, 0.0, 0.0};
    CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("generate_dataset: shape and exact labels") {
    const auto c = small_config(10);
    const auto ds = generate_dataset(c);
    REQUIRE(ds.size() == 10);
    CHECK(ds.feature_count() == 60);
    const auto src = sample_sources(10, c.bounds, c.seed);
    for (std::size_t i = 0; i < ds.size(); ++i) {
        CHECK(ds.samples[i].features.size() == 60);
        CHECK(ds.samples[i].label == src[i]);
        CHECK(ds.samples[i].id == i);
        for (double v : ds.samples[i].features) CHECK(std::isfinite(v));
    }
    CHECK(ds.sample_key(3) == "eps=0.01;mesh=10x5x4;r=1#3");
    CHECK_NOTHROW(ds.validate());
}

TEST_CASE("generate_dataset: fixed source repeats one row") {
    auto c = small_config(100);
    c.fixed_source = Vec3{0.15, 0.0, 0.025};
    const auto ds = generate_dataset(c);
    REQUIRE(ds.size() == 100);
    for (const auto& s : ds.samples) {
        CHECK(s.features == ds.samples[0].features);
        CHECK(s.label == *c.fixed_source);
    }
}

TEST_CASE("generate_datasets: layouts share solves; worker count does not matter") {
    const auto c = small_config(12, 5);
    const SensorLayout layouts[] = {SensorLayout::microphones(), SensorLayout::accelerometers()};
    const auto one = generate_datasets(c, layouts, 1);
    const auto three = generate_datasets(c, layouts, 3);
    REQUIRE(one.size() == 2);
    CHECK(one[1].feature_count() == 48);
    for (std::size_t l = 0; l < 2; ++l)
        for (std::size_t i = 0; i < 12; ++i) {
            CHECK(one[l].samples[i].features == three[l].samples[i].features);
            CHECK(one[l].samples[i].label == one[0].samples[i].label);
            CHECK(one[l].sample_key(i) == one[0].sample_key(i));
        }
    // The central mic (site 2) and the centre accelerometer... share no site, but
    // the top-face value at (0.15, 0.01) is mic-free; check against a direct solve instead.
    const auto mesh = std::make_shared<const HexMesh>(c.divisions, c.bounds);
    const auto sol = ForwardModel(mesh, c.material).solve({one[0].samples[4].label, c.amplitude, c.eps}, c.rel_tol);
    CHECK(extract_features(sol.field, layouts[1]) == one[1].samples[4].features);
}

namespace {

std::vector<double> mic_features(const ForwardModel& fm, const SourceSpec& s) {
    return extract_features(fm.solve(s).field, SensorLayout::microphones());
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

// Mirror image of a microphone feature vector under y -> -y: sites swap
// across y = 0 and every entry picks up (-1)^(number of y indices).
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

}  // namespace

TEST_CASE("mirrored source with mirrored force direction gives mirrored features") {
    const ForwardModel fm(std::make_shared<const HexMesh>(Divisions{10, 5, 4}, DomainBounds{}), Material{});
    const Vec3 p{0.13, 0.021, 0.031};
    const auto a = mic_features(fm, {p, 1.0, 0.01, {1.0, 1.0, 1.0}});
    const auto b = mic_features(fm, {{p[0], -p[1], p[2]}, 1.0, 0.01, {1.0, -1.0, 1.0}});
    const auto mb = mirror_mic(b);
    const double scale = max_abs(a);
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(std::abs(a[k] - mb[k]) <= 1e-6 * scale);
}

TEST_CASE("features split linearly over force components") {
    const ForwardModel fm(std::make_shared<const HexMesh>(Divisions{10, 5, 4}, DomainBounds{}), Material{});
    const Vec3 p{0.2, -0.013, 0.012};
    const auto all = mic_features(fm, {p, 1.0, 0.01});
    const auto xz = mic_features(fm, {p, 1.0, 0.01, {1.0, 0.0, 1.0}});
    const auto y = mic_features(fm, {p, 1.0, 0.01, {0.0, 1.0, 0.0}});
    const double scale = max_abs(all);
    for (std::size_t k = 0; k < all.size(); ++k) CHECK(std::abs(all[k] - xz[k] - y[k]) <= 1e-8 * scale);
}

TEST_CASE("restrict_sensors: identity, single site, projection") {
    const auto ds = generate_dataset(small_config(6));
    const std::size_t all[] = {0, 1, 2, 3, 4};
    const auto same = restrict_sensors(ds, all);
    CHECK(same.layout == ds.layout);
    for (std::size_t i = 0; i < ds.size(); ++i) CHECK(same.samples[i].features == ds.samples[i].features);

    const std::size_t just[] = {2};
    CHECK(restrict_sensors(ds, just).feature_count() == 12);
    CHECK(restrict_sensors(ds, just).samples[0].features.size() == 12);

    const std::size_t pair[] = {0, 2};
    const auto sub = restrict_sensors(ds, pair);
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const auto& f = ds.samples[i].features;
        std::vector<double> expect(f.begin(), f.begin() + 12);
        expect.insert(expect.end(), f.begin() + 24, f.begin() + 36);
        CHECK(sub.samples[i].features == expect);
        CHECK(sub.samples[i].label == ds.samples[i].label);
    }
    CHECK(sub.layout.sites[1].id == 2);

    const std::size_t swapped[] = {2, 0};
    CHECK(restrict_sensors(ds, swapped).samples[0].features == sub.samples[0].features);
    const std::size_t bad[] = {5};
    CHECK_THROWS_AS(restrict_sensors(ds, bad), InvalidArgument);
    const std::size_t dup[] = {1, 1};
    CHECK_THROWS_AS(restrict_sensors(ds, dup), InvalidArgument);
}

TEST_CASE("write/read round-trip and byte-identical reruns") {
    testing::TempDir dir("datagen");
    const auto c = small_config(8, 99);
    const auto ds = generate_dataset(c);
    write_dataset(ds, dir / "a.csv");
    write_dataset(generate_dataset(c, 2), dir / "b.csv");
    CHECK(read_text(dir / "a.csv") == read_text(dir / "b.csv"));
    CHECK(std::filesystem::exists(dir / "a.meta"));
    CHECK(sidecar_path(dir / "a.csv") == dir / "a.meta");

    const auto back = read_dataset(dir / "a.csv");
    REQUIRE(back.size() == ds.size());
    CHECK(back.layout == ds.layout);
    for (std::size_t i = 0; i < ds.size(); ++i) {
        CHECK(back.samples[i].features == ds.samples[i].features);
        CHECK(back.samples[i].label == ds.samples[i].label);
        CHECK(back.sample_key(i) == ds.sample_key(i));
    }
    REQUIRE(back.parts.size() == 1);
    CHECK(back.parts[0].seed == 99);
    CHECK(back.parts[0].provenance() == c.provenance());

    const auto header = read_text(dir / "a.csv").substr(0, 40);
    CHECK(header.rfind("s0_u1,s0_u2,s0_u3,s0_du1dx", 0) == 0);
}

TEST_CASE("concatenated datasets keep provenance") {
    testing::TempDir dir("concat");
    auto c1 = small_config(4, 1);
    auto c2 = small_config(3, 2);
    c2.eps = 0.001;
    const Dataset parts[] = {generate_dataset(c1), generate_dataset(c2)};
    const auto all = concat_datasets(parts);
    CHECK(all.size() == 7);
    CHECK(all.combined());
    CHECK(all.sample_key(4) == "eps=0.001;mesh=10x5x4;r=1#0");
    write_dataset(all, dir / "u.csv");
    const auto text = read_text(dir / "u.csv");
    CHECK(text.substr(0, text.find('\n')).find(",provenance") != std::string::npos);
    const auto back = read_dataset(dir / "u.csv");
    REQUIRE(back.parts.size() == 2);
    for (std::size_t i = 0; i < all.size(); ++i) CHECK(back.sample_key(i) == all.sample_key(i));

    auto c3 = small_config(2, 3);
    c3.layout = SensorLayout::accelerometers();
    const Dataset mixed[] = {generate_dataset(c1), generate_dataset(c3)};
    CHECK_THROWS_AS(concat_datasets(mixed), InvalidArgument);
}

TEST_CASE("reading a malformed dataset fails cleanly") {
    testing::TempDir dir("bad");
    std::ofstream(dir / "x.csv") << "a,b\n1,2\n";
    CHECK_THROWS_AS(read_dataset(dir / "x.csv"), IoError);
    CHECK_THROWS_AS(read_dataset(dir / "missing.csv"), IoError);
}
