#include "pttbp/calibration.hpp"

#include <cmath>
#include <stdexcept>

#include "pttbp/errors.hpp"

namespace pttbp {

std::string to_string(BpTarget target) {
    return target == BpTarget::sbp ? "SBP" : "DBP";
}

BpTarget bp_target_from_string(const std::string& name) {
    if (name == "SBP" || name == "sbp") return BpTarget::sbp;
    if (name == "DBP" || name == "dbp") return BpTarget::dbp;
    throw std::invalid_argument("unknown BP target '" + name + "'");
}

CalibrationModel fit_calibration(
    const std::vector<std::pair<double, double>>& points, BpTarget target) {
    const auto n = points.size();
    if (n < 2)
        throw std::invalid_argument("fit_calibration: need at least 2 points");

    double x_mean = 0.0;
    double y_mean = 0.0;
    for (const auto& [ptt, bp] : points) {
        if (!(ptt > 0.0))
            throw std::invalid_argument("fit_calibration: ptt must be positive");
        x_mean += 1.0 / ptt;
        y_mean += bp;
    }
    x_mean /= static_cast<double>(n);
    y_mean /= static_cast<double>(n);

    double sxx = 0.0;
    double sxy = 0.0;
    for (const auto& [ptt, bp] : points) {
        const double dx = 1.0 / ptt - x_mean;
        sxx += dx * dx;
        sxy += dx * (bp - y_mean);
    }
    if (sxx == 0.0)
        throw singular_design_error(
            "fit_calibration: all ptt values equal, slope undetermined");

    CalibrationModel model;
    model.target = target;
    model.b1_mmhg_s = sxy / sxx;
    model.b0_mmhg = y_mean - model.b1_mmhg_s * x_mean;
    model.n_points = static_cast<int>(n);
    if (!std::isfinite(model.b0_mmhg) || !std::isfinite(model.b1_mmhg_s))
        throw singular_design_error("fit_calibration: non-finite coefficients");
    return model;
}

double predict(const CalibrationModel& model, double ptt_s) {
    if (!(ptt_s > 0.0))
        throw std::invalid_argument("predict: ptt must be positive");
    return model.b0_mmhg + model.b1_mmhg_s / ptt_s;
}

}  // namespace pttbp
