#pragma once

#include <string>
#include <utility>
#include <vector>

namespace pttbp {

enum class BpTarget { sbp, dbp };

std::string to_string(BpTarget target);
BpTarget bp_target_from_string(const std::string& name);

/// Per-subject, per-target model BP = b0 + b1 / PTT, with PTT in seconds.
struct CalibrationModel {
    BpTarget target = BpTarget::sbp;
    double b0_mmhg = 0.0;
    double b1_mmhg_s = 0.0;
    int n_points = 0;
};

/// Ordinary least squares of bp on 1/ptt (centered two-parameter closed form).
/// points holds (ptt_s, bp_mmhg). Throws std::invalid_argument for fewer than
/// two points or non-positive ptt, singular_design_error when all ptt are equal.
CalibrationModel fit_calibration(
    const std::vector<std::pair<double, double>>& points, BpTarget target);

/// b0 + b1 / ptt_s. Throws std::invalid_argument for non-positive ptt.
double predict(const CalibrationModel& model, double ptt_s);

}  // namespace pttbp
