#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "pttbp/config.hpp"
#include "pttbp/errors.hpp"
#include "pttbp/io.hpp"

using namespace pttbp;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("pttbp_test_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

Recording random_recording(std::size_t n, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> value(0.0, 1.7);
    Recording rec;
    rec.subject_id = "rt";
    for (TimeSeries* ch : {&rec.pcg, &rec.ppg, &rec.fsr}) {
        ch->sample_rate_hz = 1000.0;
        ch->samples.resize(n);
        for (double& v : ch->samples) v = value(rng);
    }
    return rec;
}

}  // namespace

TEST_CASE("recording CSV round-trip is lossless") {
    TempDir dir;
    const Recording rec = random_recording(2000, 11);
    const auto path = dir.path / "rec.csv";
    write_recording_csv(path, rec);
    const Recording back = read_recording_csv(path, "rt");
    CHECK(back.pcg.samples == rec.pcg.samples);
    CHECK(back.ppg.samples == rec.ppg.samples);
    CHECK(back.fsr.samples == rec.fsr.samples);
    CHECK(back.pcg.sample_rate_hz == 1000.0);
}

TEST_CASE("recording CSV rejects gaps in the time grid") {
    TempDir dir;
    const auto path = dir.path / "gap.csv";
    {
        std::ofstream out(path);
        out << "t_ms,pcg,ppg,fsr\n0,1,2,3\n1,1,2,3\n3,1,2,3\n";
    }
    CHECK_THROWS_AS(read_recording_csv(path, "x"), io_error);
}

TEST_CASE("manifest round-trip with relative recording paths") {
    TempDir dir;
    std::vector<SubjectManifest> manifest;
    manifest.push_back({"s01", "s01.csv", {{152.5, 88.25}, {143.0, 84.0}, {131.0, 79.5}}});
    manifest.push_back({"s02", "s02.csv", {{160.0, 95.0}, {150.0, 90.0}, {140.0, 85.0}}});

    const auto path = dir.path / "manifest.txt";
    write_manifest(path, manifest);
    const auto back = read_manifest(path);
    REQUIRE(back.size() == 2);
    CHECK(back[0].subject_id == "s01");
    CHECK(back[0].recording_path == (dir.path / "s01.csv").string());
    CHECK(back[0].readings == manifest[0].readings);
    CHECK(back[1].readings == manifest[1].readings);
}

TEST_CASE("manifest validation: readings count and ordering") {
    TempDir dir;
    const auto path = dir.path / "bad.txt";
    {
        std::ofstream out(path);
        out << "subject s01\nrecording s01.csv\nreading 150 90\nreading 140 85\n";
    }
    CHECK_THROWS_AS(read_manifest(path), io_error);  // fewer than 3 readings
    {
        std::ofstream out(path);
        out << "subject s01\nrecording s01.csv\n"
            << "reading 150 90\nreading 140 85\nreading 80 85\n";
    }
    CHECK_THROWS_AS(read_manifest(path), io_error);  // sbp <= dbp
}

TEST_CASE("aggregates CSV round-trip") {
    TempDir dir;
    std::vector<IntervalAggregateRow> rows;
    for (int i = 0; i < 5; ++i) {
        IntervalAggregateRow r;
        r.subject_id = "s0" + std::to_string(i % 2 + 1);
        r.interval_index = i;
        r.ptt_f_s = 0.1 + 0.01 * i;
        r.ptt_d_s = 0.15 + 0.01 * i;
        r.ptt_p_s = 0.2 + 0.01 * i;
        r.sbp_mmhg = 150.0 - i;
        r.dbp_mmhg = 90.0 - i;
        rows.push_back(r);
    }
    const auto path = dir.path / "agg.csv";
    write_aggregates_csv(path, rows);
    const auto back = read_aggregates_csv(path);
    REQUIRE(back.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(back[i].subject_id == rows[i].subject_id);
        CHECK(back[i].interval_index == rows[i].interval_index);
        CHECK(back[i].ptt_p_s == doctest::Approx(rows[i].ptt_p_s).epsilon(1e-12));
        CHECK(back[i].sbp_mmhg == rows[i].sbp_mmhg);
    }
}

TEST_CASE("models round-trip preserves coefficients bitwise") {
    TempDir dir;
    std::vector<std::pair<std::string, CalibrationModel>> models;
    models.emplace_back("s01", CalibrationModel{BpTarget::sbp, 49.123456789012345,
                                                20.987654321098765, 8});
    models.emplace_back("s01", CalibrationModel{BpTarget::dbp, 35.5, 9.25, 8});

    const auto path = dir.path / "models.txt";
    write_models_txt(path, models);
    const auto back = read_models_txt(path);
    REQUIRE(back.size() == 2);
    CHECK(back[0].second.b0_mmhg == models[0].second.b0_mmhg);
    CHECK(back[0].second.b1_mmhg_s == models[0].second.b1_mmhg_s);
    CHECK(back[0].second.target == BpTarget::sbp);
    CHECK(back[1].second.target == BpTarget::dbp);
    CHECK(back[1].second.n_points == 8);
}

TEST_CASE("config: defaults reproduce the preprocessing table") {
    const PipelineConfig config;
    CHECK(config.fsr_filter.kind == FilterKind::low_pass);
    CHECK(config.fsr_filter.low_cutoff_hz == 0.3);
    CHECK(config.fsr_filter.order == 3);
    CHECK(config.ppg_filter.kind == FilterKind::band_pass);
    CHECK(config.ppg_filter.low_cutoff_hz == 0.5);
    CHECK(config.ppg_filter.high_cutoff_hz == 20.0);
    CHECK(config.ppg_filter.order == 3);
    CHECK(config.pcg_filter.kind == FilterKind::band_pass);
    CHECK(config.pcg_filter.low_cutoff_hz == 20.0);
    CHECK(config.pcg_filter.high_cutoff_hz == 240.0);
    CHECK(config.pcg_filter.order == 3);
    CHECK(config.median_window_samples == 5);
    CHECK(config.ptt_kind == PttKind::peak);
    CHECK(config.ptt.aggregation_sigma_s == 15.0);
    CHECK(config.ptt.min_beats == 3);
    CHECK(config.ptt.min_ptt_s == 0.05);
    CHECK(config.ptt.max_ptt_s == 0.6);
    CHECK(config.segmentation.min_gap_s == 10.0);
}

TEST_CASE("config: dotted keys override defaults") {
    TempDir dir;
    const auto path = dir.path / "config.txt";
    {
        std::ofstream out(path);
        out << "# comment line\n"
            << "filters.pcg.low_hz = 25\n"
            << "filters.pcg.high_hz = 200\n"
            << "median.window_samples = 7\n"
            << "ptt.kind = dslope\n"
            << "ptt.sigma_s = 10.5\n"
            << "segmentation.min_gap_s = 12 # trailing comment\n";
    }
    const PipelineConfig config = load_config(path);
    CHECK(config.pcg_filter.low_cutoff_hz == 25.0);
    CHECK(config.pcg_filter.high_cutoff_hz == 200.0);
    CHECK(config.median_window_samples == 7);
    CHECK(config.ptt_kind == PttKind::dslope);
    CHECK(config.ptt.aggregation_sigma_s == 10.5);
    CHECK(config.segmentation.min_gap_s == 12.0);
    // Untouched keys keep defaults.
    CHECK(config.ppg_filter.high_cutoff_hz == 20.0);
}

TEST_CASE("config: unknown keys and bad values are usage errors") {
    TempDir dir;
    const auto path = dir.path / "config.txt";
    {
        std::ofstream out(path);
        out << "filters.pcg.low_hxz = 25\n";
    }
    CHECK_THROWS_AS(load_config(path), std::invalid_argument);
    {
        std::ofstream out(path);
        out << "median.window_samples = seven\n";
    }
    CHECK_THROWS_AS(load_config(path), std::invalid_argument);
    {
        std::ofstream out(path);
        out << "median.window_samples = 4\n";  // even window
    }
    CHECK_THROWS_AS(load_config(path), std::invalid_argument);
    {
        std::ofstream out(path);
        out << "ptt.kind = knee\n";
    }
    CHECK_THROWS_AS(load_config(path), std::invalid_argument);
    CHECK_THROWS_AS(load_config(dir.path / "missing.txt"), io_error);
}
