#include <doctest.h>

#include <cmath>
#include <random>

#include "pttbp/config.hpp"
#include "pttbp/errors.hpp"
#include "pttbp/preprocess.hpp"
#include "pttbp/synthgen.hpp"

using namespace pttbp;

namespace {

SubjectProfile constant_profile() {
    SubjectProfile p;
    p.subject_id = "flat";
    p.b0_sbp = 50.0;
    p.b1_sbp = 20.0;
    p.hr_start_bpm = 72.0;
    p.hr_end_bpm = 72.0;
    p.sbp_start_mmhg = 150.0;
    p.sbp_end_mmhg = 150.0;
    p.dbp_start_mmhg = 85.0;
    p.dbp_end_mmhg = 85.0;
    p.n_measurements = 3;
    p.duration_s = 102.0;
    p.noise_snr_db = std::numeric_limits<double>::infinity();
    p.rng_seed = 9;
    return p;
}

}  // namespace

TEST_CASE("generate: constant trajectory means constant transit times") {
    const auto subject = generate(constant_profile());
    REQUIRE(!subject.truth.beats.empty());
    for (const TruthBeat& beat : subject.truth.beats) {
        // Direct inversion: ptt = 20 / (150 - 50) = 0.2 s.
        CHECK(beat.ptt_p_s == doctest::Approx(0.2).epsilon(1e-12));
        CHECK(beat.peak_s - beat.s1_s == doctest::Approx(0.2).epsilon(1e-12));
    }
}

TEST_CASE("generate: channel lengths follow the duration exactly") {
    const auto subject = generate(constant_profile());
    const auto expected = static_cast<std::size_t>(102.0 * 1000.0);
    CHECK(subject.recording.pcg.size() == expected);
    CHECK(subject.recording.ppg.size() == expected);
    CHECK(subject.recording.fsr.size() == expected);
}

TEST_CASE("generate: reference readings sit on the trajectories at t3") {
    SubjectProfile p = constant_profile();
    p.sbp_end_mmhg = 125.0;
    p.dbp_end_mmhg = 72.0;
    p.n_measurements = 4;
    p.duration_s = 136.0;
    const auto subject = generate(p);

    REQUIRE(subject.truth.readings.size() == 4);
    REQUIRE(subject.truth.cuff_moments.size() == 4);
    for (std::size_t k = 0; k < 4; ++k) {
        const double t3 = subject.truth.cuff_moments[k].t3_s;
        const double sbp_expected =
            p.sbp_start_mmhg + (p.sbp_end_mmhg - p.sbp_start_mmhg) * t3 / p.duration_s;
        const double dbp_expected =
            p.dbp_start_mmhg + (p.dbp_end_mmhg - p.dbp_start_mmhg) * t3 / p.duration_s;
        CHECK(subject.truth.readings[k].first ==
              doctest::Approx(sbp_expected).epsilon(1e-12));
        CHECK(subject.truth.readings[k].second ==
              doctest::Approx(dbp_expected).epsilon(1e-12));
    }
}

TEST_CASE("generate: same seed is bit-identical, new seed only moves noise") {
    SubjectProfile p = constant_profile();
    p.noise_snr_db = 25.0;
    const auto a = generate(p);
    const auto b = generate(p);
    CHECK(a.recording.ppg.samples == b.recording.ppg.samples);
    CHECK(a.recording.pcg.samples == b.recording.pcg.samples);
    CHECK(a.recording.fsr.samples == b.recording.fsr.samples);

    p.rng_seed = 10;
    const auto c = generate(p);
    CHECK(a.recording.ppg.samples != c.recording.ppg.samples);
    REQUIRE(a.truth.beats.size() == c.truth.beats.size());
    for (std::size_t i = 0; i < a.truth.beats.size(); ++i) {
        CHECK(a.truth.beats[i].s1_s == c.truth.beats[i].s1_s);
        CHECK(a.truth.beats[i].peak_s == c.truth.beats[i].peak_s);
    }
    REQUIRE(a.truth.cuff_moments.size() == c.truth.cuff_moments.size());
    for (std::size_t i = 0; i < a.truth.cuff_moments.size(); ++i)
        CHECK(a.truth.cuff_moments[i].t3_s == c.truth.cuff_moments[i].t3_s);
}

TEST_CASE("generate: profiles that break the transit band are rejected") {
    SubjectProfile p = constant_profile();
    p.sbp_start_mmhg = 500.0;  // ptt = 20/450, far below 0.05 s
    p.sbp_end_mmhg = 500.0;
    CHECK_THROWS_AS(generate(p), profile_error);

    SubjectProfile q = constant_profile();
    q.b0_sbp = 120.0;
    q.b1_sbp = 80.0;  // ptt = 80/30 >> 0.6 s
    CHECK_THROWS_AS(generate(q), profile_error);
}

TEST_CASE("consistent_profile: implied DBP model is exact along the recording") {
    SubjectProfile p = constant_profile();
    p.sbp_end_mmhg = 122.0;
    p.dbp_start_mmhg = 92.0;
    p.dbp_end_mmhg = 73.0;
    const SubjectProfile filled = consistent_profile(p);

    for (double frac : {0.0, 0.17, 0.5, 0.83, 1.0}) {
        const double t = frac * p.duration_s;
        const double sbp = p.sbp_start_mmhg +
                           (p.sbp_end_mmhg - p.sbp_start_mmhg) * frac;
        const double dbp = p.dbp_start_mmhg +
                           (p.dbp_end_mmhg - p.dbp_start_mmhg) * frac;
        const double ptt = p.b1_sbp / (sbp - p.b0_sbp);
        CHECK(filled.b0_dbp + filled.b1_dbp / ptt ==
              doctest::Approx(dbp).epsilon(1e-12));
        (void)t;
    }
}

TEST_CASE("detect_key_moments recovers every synthetic cuff event") {
    // Randomized profiles; episode placement is deterministic per profile but
    // the count-equality invariant must hold across all of them.
    std::mt19937 rng(606);
    const PipelineConfig config;
    for (int trial = 0; trial < 5; ++trial) {
        SubjectProfile p = constant_profile();
        p.sbp_end_mmhg = 120.0 + static_cast<double>(rng() % 10);
        p.dbp_end_mmhg = 70.0;
        p.n_measurements = 3 + static_cast<int>(rng() % 4);
        p.duration_s = 34.0 * p.n_measurements;
        p.noise_snr_db = 25.0;
        p.rng_seed = rng();
        const auto subject = generate(p);

        const Recording clean = preprocess_recording(subject.recording, config);
        const auto moments = detect_key_moments(clean.fsr, config.segmentation);
        REQUIRE(moments.size() == subject.truth.cuff_moments.size());
        for (std::size_t k = 0; k < moments.size(); ++k)
            CHECK(std::abs(moments[k].t3_s - subject.truth.cuff_moments[k].t3_s) <
                  0.5);
    }
}
