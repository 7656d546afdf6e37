#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "pttbp/errors.hpp"
#include "pttbp/filtering.hpp"

using namespace pttbp;

namespace {

TimeSeries make_series(std::vector<double> samples, double rate = 1000.0) {
    return {std::move(samples), rate, 0.0};
}

TimeSeries sine_wave(double freq_hz, double duration_s, double rate = 1000.0) {
    const auto n = static_cast<std::size_t>(duration_s * rate);
    TimeSeries out;
    out.sample_rate_hz = rate;
    out.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        out.samples[i] =
            std::sin(2.0 * std::numbers::pi * freq_hz * static_cast<double>(i) / rate);
    return out;
}

const FilterSpec kFsrSpec{FilterKind::low_pass, 0.3, std::nullopt, 3};
const FilterSpec kPpgSpec{FilterKind::band_pass, 0.5, 20.0, 3};
const FilterSpec kPcgSpec{FilterKind::band_pass, 20.0, 240.0, 3};

}  // namespace

TEST_CASE("median_filter: constants and identity window") {
    const auto constant = median_filter(make_series({5, 5, 5, 5}), 3);
    for (double v : constant.samples) CHECK(v == 5.0);

    const TimeSeries x = make_series({3.0, -1.0, 7.5, 0.0, 2.0});
    const auto identity = median_filter(x, 1);
    CHECK(identity.samples == x.samples);
}

TEST_CASE("median_filter: spike removal matches the sort-window oracle") {
    const TimeSeries x = make_series({1, 9, 1, 1, 1});
    const auto filtered = median_filter(x, 3);
    const auto expected = oracles::brute_force_median(x.samples, 3);
    CHECK(filtered.samples == expected);
    // Interior: spike gone.
    CHECK(filtered.samples[1] == 1.0);
    CHECK(filtered.samples[2] == 1.0);
    CHECK(filtered.samples[3] == 1.0);
    // Left edge sees the truncated window {1, 9}.
    CHECK(filtered.samples[0] == 5.0);
}

TEST_CASE("median_filter: equals the oracle on 1000 random cases") {
    std::mt19937 rng(7041);
    std::uniform_real_distribution<double> value(-10.0, 10.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 60);
        std::vector<double> samples(n);
        for (double& v : samples) v = value(rng);
        int window = 1 + 2 * static_cast<int>(rng() % 8);
        if (window > n) window = (n % 2 == 1) ? n : n - 1;
        const auto filtered = median_filter(make_series(samples), window);
        CHECK(filtered.samples == oracles::brute_force_median(samples, window));
    }
}

TEST_CASE("median_filter: rejects even or oversized windows") {
    CHECK_THROWS_AS(median_filter(make_series({1, 2, 3}), 2), std::invalid_argument);
    CHECK_THROWS_AS(median_filter(make_series({1, 2, 3}), 0), std::invalid_argument);
    CHECK_THROWS_AS(median_filter(make_series({1, 2, 3}), 5), std::invalid_argument);
}

TEST_CASE("z_normalize: two-point case and idempotence") {
    const auto out = z_normalize(make_series({0.0, 2.0}));
    CHECK(out.samples[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(out.samples[1] == doctest::Approx(1.0).epsilon(1e-12));

    const auto twice = z_normalize(out);
    for (std::size_t i = 0; i < out.size(); ++i)
        CHECK(twice.samples[i] == doctest::Approx(out.samples[i]).epsilon(1e-9));
}

TEST_CASE("z_normalize: random series checked against two-pass statistics") {
    std::mt19937 rng(99);
    std::normal_distribution<double> value(3.0, 2.5);
    std::vector<double> samples(1000);
    for (double& v : samples) v = value(rng);

    const auto out = z_normalize(make_series(samples));
    const auto [mean, stddev] = oracles::two_pass_mean_std(out.samples);
    CHECK(mean == doctest::Approx(0.0).epsilon(0.0));
    CHECK(std::abs(mean) < 1e-9);
    CHECK(stddev == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("z_normalize: zero variance is a dead channel") {
    CHECK_THROWS_AS(z_normalize(make_series({4, 4, 4, 4})), degenerate_signal_error);
    CHECK_THROWS_AS(z_normalize(make_series({4})), std::invalid_argument);
}

TEST_CASE("design_filter: low-pass passes DC with unit gain") {
    const auto coeffs = design_filter(kFsrSpec, 1000.0);
    const double dc_gain =
        std::abs(oracles::frequency_response(coeffs.numerator, coeffs.denominator,
                                             0.0, 1000.0));
    CHECK(dc_gain == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("design_filter: band edges land at -3 dB") {
    const auto coeffs = design_filter(kPcgSpec, 1000.0);
    for (double edge : {20.0, 240.0}) {
        const double db =
            oracles::magnitude_db(coeffs.numerator, coeffs.denominator, edge, 1000.0);
        CHECK(db == doctest::Approx(-3.0).epsilon(0.0667));  // +/- 0.2 dB
    }
}

TEST_CASE("design_filter: stop-band attenuation of the narrow band-pass") {
    const auto coeffs = design_filter(kPpgSpec, 1000.0);
    double passband_peak_db = -1e9;
    for (double f = 0.5; f <= 20.0; f += 0.1)
        passband_peak_db = std::max(
            passband_peak_db,
            oracles::magnitude_db(coeffs.numerator, coeffs.denominator, f, 1000.0));
    const double at_100 =
        oracles::magnitude_db(coeffs.numerator, coeffs.denominator, 100.0, 1000.0);
    CHECK(passband_peak_db - at_100 >= 40.0);
}

TEST_CASE("design_filter: every preprocessing spec is stable") {
    for (const FilterSpec& spec : {kFsrSpec, kPpgSpec, kPcgSpec}) {
        const auto coeffs = design_filter(spec, 1000.0);
        CHECK(coeffs.denominator.front() == doctest::Approx(1.0).epsilon(1e-12));
        for (const auto& root : oracles::polynomial_roots(coeffs.denominator))
            CHECK(std::abs(root) < 1.0);
    }
}

TEST_CASE("design_filter: cutoffs at or beyond Nyquist are rejected") {
    CHECK_THROWS_AS(design_filter({FilterKind::low_pass, 500.0, std::nullopt, 3}, 1000.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(design_filter({FilterKind::band_pass, 20.0, 600.0, 3}, 1000.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(design_filter({FilterKind::band_pass, 30.0, 20.0, 3}, 1000.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(design_filter({FilterKind::band_pass, 20.0, std::nullopt, 3}, 1000.0),
                    std::invalid_argument);
}

TEST_CASE("filtfilt: constants pass through the FSR low-pass") {
    const auto coeffs = design_filter(kFsrSpec, 1000.0);
    TimeSeries x = make_series(std::vector<double>(2000, 3.25));
    const auto y = filtfilt(coeffs, x);
    for (double v : y.samples) CHECK(v == doctest::Approx(3.25).epsilon(1e-6));
}

TEST_CASE("filtfilt: zero phase and small attenuation for an in-band tone") {
    const auto coeffs = design_filter(kPpgSpec, 1000.0);
    const TimeSeries x = sine_wave(5.0, 4.0);
    const auto y = filtfilt(coeffs, x);

    CHECK(oracles::cross_correlation_peak_lag(x.samples, y.samples, 100) == 0);

    // Compare RMS amplitude over the interior to dodge edge transients.
    double in_rms = 0.0, out_rms = 0.0;
    for (std::size_t i = 500; i + 500 < x.size(); ++i) {
        in_rms += x.samples[i] * x.samples[i];
        out_rms += y.samples[i] * y.samples[i];
    }
    CHECK(std::sqrt(out_rms / in_rms) == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("filtfilt: impulse response is symmetric about the impulse") {
    for (const FilterSpec& spec : {kFsrSpec, kPpgSpec, kPcgSpec}) {
        const auto coeffs = design_filter(spec, 1000.0);
        // Long enough for the slowest filter's response to die off before the
        // edges, so boundary handling cannot bleed into the comparison.
        const std::size_t half =
            static_cast<std::size_t>(40.0 / *spec.low_cutoff_hz * 1000.0);
        std::vector<double> samples(2 * half + 1, 0.0);
        samples[half] = 1.0;
        const auto y = filtfilt(coeffs, make_series(std::move(samples)));
        for (std::size_t k = 1; k <= half / 2; ++k)
            CHECK(std::abs(y.samples[half + k] - y.samples[half - k]) < 1e-6);
    }
}

TEST_CASE("filtfilt: refuses series shorter than the padding needs") {
    const auto coeffs = design_filter(kPpgSpec, 1000.0);
    // Band-pass order 3 realizes 7 coefficients; need strictly more than 21.
    CHECK_THROWS_AS(filtfilt(coeffs, make_series(std::vector<double>(21, 1.0))),
                    std::invalid_argument);
    CHECK_NOTHROW(filtfilt(coeffs, make_series(std::vector<double>(22, 1.0))));
}
