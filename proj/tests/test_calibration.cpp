#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pttbp/calibration.hpp"
#include "pttbp/errors.hpp"

using namespace pttbp;

TEST_CASE("fit_calibration: exact interpolation of the model family") {
    // bp = 50 + 20 / ptt at three transit times.
    const std::vector<std::pair<double, double>> points = {
        {0.20, 150.0}, {0.25, 130.0}, {0.40, 100.0}};
    const auto model = fit_calibration(points, BpTarget::sbp);
    CHECK(model.b0_mmhg == doctest::Approx(50.0).epsilon(1e-9));
    CHECK(model.b1_mmhg_s == doctest::Approx(20.0).epsilon(1e-9));
    CHECK(model.n_points == 3);
}

TEST_CASE("fit_calibration: two points fit exactly") {
    const std::vector<std::pair<double, double>> points = {{0.2, 140.0}, {0.3, 110.0}};
    const auto model = fit_calibration(points, BpTarget::dbp);
    CHECK(predict(model, 0.2) == doctest::Approx(140.0).epsilon(1e-12));
    CHECK(predict(model, 0.3) == doctest::Approx(110.0).epsilon(1e-12));
}

TEST_CASE("fit_calibration: noisy data matches the normal-equations oracle") {
    std::mt19937 rng(2024);
    std::normal_distribution<double> noise(0.0, 2.0);
    std::uniform_real_distribution<double> ptt(0.15, 0.45);
    const double b0 = 55.0, b1 = 18.0;

    std::vector<std::pair<double, double>> points;       // (ptt, bp)
    std::vector<std::pair<double, double>> design;       // (1/ptt, bp)
    for (int i = 0; i < 50; ++i) {
        const double p = ptt(rng);
        const double bp = b0 + b1 / p + noise(rng);
        points.emplace_back(p, bp);
        design.emplace_back(1.0 / p, bp);
    }
    const auto model = fit_calibration(points, BpTarget::sbp);
    const auto [oracle_b0, oracle_b1] = oracles::normal_equations_fit(design);
    CHECK(model.b0_mmhg == doctest::Approx(oracle_b0).epsilon(1e-9));
    CHECK(model.b1_mmhg_s == doctest::Approx(oracle_b1).epsilon(1e-9));

    // Rough standard errors of the simple regression, for a sanity band.
    double sxx = 0.0, x_mean = 0.0;
    for (const auto& [x, y] : design) x_mean += x;
    x_mean /= static_cast<double>(design.size());
    for (const auto& [x, y] : design) sxx += (x - x_mean) * (x - x_mean);
    const double se_b1 = 2.0 / std::sqrt(sxx);
    CHECK(std::abs(model.b1_mmhg_s - b1) < 3.0 * se_b1);
    const double se_b0 =
        2.0 * std::sqrt(1.0 / design.size() + x_mean * x_mean / sxx);
    CHECK(std::abs(model.b0_mmhg - b0) < 3.0 * se_b0);
}

TEST_CASE("fit_calibration: residuals are orthogonal to the design columns") {
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> ptt(0.1, 0.5);
    std::normal_distribution<double> noise(0.0, 5.0);
    std::vector<std::pair<double, double>> points;
    for (int i = 0; i < 30; ++i) {
        const double p = ptt(rng);
        points.emplace_back(p, 60.0 + 15.0 / p + noise(rng));
    }
    const auto model = fit_calibration(points, BpTarget::sbp);

    double dot_ones = 0.0, dot_x = 0.0, scale = 0.0;
    for (const auto& [p, bp] : points) {
        const double resid = bp - predict(model, p);
        dot_ones += resid;
        dot_x += resid / p;
        scale += std::abs(bp);
    }
    CHECK(std::abs(dot_ones) / scale < 1e-6);
    CHECK(std::abs(dot_x) / scale < 1e-6);
}

TEST_CASE("fit_calibration: scale and shift equivariance") {
    const std::vector<std::pair<double, double>> base = {
        {0.2, 150.0}, {0.26, 128.0}, {0.33, 117.0}, {0.41, 103.0}};
    const auto model = fit_calibration(base, BpTarget::sbp);

    std::vector<std::pair<double, double>> scaled = base;
    for (auto& [p, bp] : scaled) bp *= 1.7;
    const auto scaled_model = fit_calibration(scaled, BpTarget::sbp);
    CHECK(scaled_model.b0_mmhg == doctest::Approx(1.7 * model.b0_mmhg).epsilon(1e-12));
    CHECK(scaled_model.b1_mmhg_s == doctest::Approx(1.7 * model.b1_mmhg_s).epsilon(1e-12));

    std::vector<std::pair<double, double>> shifted = base;
    for (auto& [p, bp] : shifted) bp += 11.0;
    const auto shifted_model = fit_calibration(shifted, BpTarget::sbp);
    CHECK(shifted_model.b0_mmhg == doctest::Approx(model.b0_mmhg + 11.0).epsilon(1e-12));
    CHECK(shifted_model.b1_mmhg_s == doctest::Approx(model.b1_mmhg_s).epsilon(1e-12));
}

TEST_CASE("fit_calibration: degenerate designs are rejected") {
    CHECK_THROWS_AS(fit_calibration({{0.2, 120.0}}, BpTarget::sbp),
                    std::invalid_argument);
    CHECK_THROWS_AS(fit_calibration({{0.2, 120.0}, {0.2, 130.0}, {0.2, 110.0}},
                                    BpTarget::sbp),
                    singular_design_error);
    CHECK_THROWS_AS(fit_calibration({{0.2, 120.0}, {-0.1, 130.0}}, BpTarget::sbp),
                    std::invalid_argument);
    CHECK_THROWS_AS(fit_calibration({{0.2, 120.0}, {0.0, 130.0}}, BpTarget::sbp),
                    std::invalid_argument);
}

TEST_CASE("predict: direct substitution and degenerate slope") {
    const CalibrationModel model{BpTarget::sbp, 50.0, 20.0, 3};
    CHECK(predict(model, 0.20) == doctest::Approx(150.0).epsilon(1e-12));

    const CalibrationModel flat{BpTarget::dbp, 80.0, 0.0, 5};
    CHECK(predict(flat, 0.1) == 80.0);
    CHECK(predict(flat, 0.5) == 80.0);

    CHECK_THROWS_AS(predict(model, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(predict(model, -0.2), std::invalid_argument);
}

TEST_CASE("predict: held-out point on an exact synthetic curve") {
    const double b0 = 62.0, b1 = 17.5;
    std::vector<std::pair<double, double>> points;
    for (double p : {0.18, 0.22, 0.27, 0.35, 0.45})
        points.emplace_back(p, b0 + b1 / p);
    const auto model = fit_calibration(points, BpTarget::sbp);
    const double held_out = 0.31;
    CHECK(predict(model, held_out) == doctest::Approx(b0 + b1 / held_out).epsilon(1e-6));
}

TEST_CASE("predict: strictly decreasing in ptt when b1 > 0") {
    const CalibrationModel model{BpTarget::sbp, 48.0, 21.0, 4};
    double prev = predict(model, 0.05);
    for (double p = 0.06; p < 0.6; p += 0.01) {
        const double cur = predict(model, p);
        CHECK(cur < prev);
        prev = cur;
    }
}
