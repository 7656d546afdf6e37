#include "pttbp/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pttbp/errors.hpp"

namespace pttbp {

std::vector<PredictionRecord> loocv_subject(
    const std::string& subject_id, const std::vector<PttAggregate>& aggregates,
    BpTarget target) {
    if (aggregates.size() < 3)
        throw insufficient_data_error(
            "loocv_subject: subject " + subject_id + " has " +
            std::to_string(aggregates.size()) +
            " intervals, need at least 3 for leave-one-out");

    auto reference = [target](const PttAggregate& a) {
        return target == BpTarget::sbp ? a.ref_sbp_mmhg : a.ref_dbp_mmhg;
    };

    std::vector<PredictionRecord> records;
    records.reserve(aggregates.size());
    for (std::size_t held_out = 0; held_out < aggregates.size(); ++held_out) {
        std::vector<std::pair<double, double>> train;
        train.reserve(aggregates.size() - 1);
        for (std::size_t i = 0; i < aggregates.size(); ++i)
            if (i != held_out)
                train.emplace_back(aggregates[i].ptt_s, reference(aggregates[i]));

        const CalibrationModel model = fit_calibration(train, target);
        PredictionRecord rec;
        rec.subject_id = subject_id;
        rec.interval_index = aggregates[held_out].interval_index;
        rec.target = target;
        rec.estimate_mmhg = predict(model, aggregates[held_out].ptt_s);
        rec.reference_mmhg = reference(aggregates[held_out]);
        records.push_back(rec);
    }
    return records;
}

EvaluationReport compute_metrics(std::vector<PredictionRecord> records) {
    const auto n = records.size();
    if (n < 2)
        throw std::invalid_argument("compute_metrics: need at least 2 records");

    double err_mean = 0.0;
    double abs_err_mean = 0.0;
    double est_mean = 0.0;
    double ref_mean = 0.0;
    for (const auto& rec : records) {
        const double e = rec.estimate_mmhg - rec.reference_mmhg;
        err_mean += e;
        abs_err_mean += std::abs(e);
        est_mean += rec.estimate_mmhg;
        ref_mean += rec.reference_mmhg;
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    err_mean *= inv_n;
    abs_err_mean *= inv_n;
    est_mean *= inv_n;
    ref_mean *= inv_n;

    double err_var = 0.0;
    double s_ee = 0.0;
    double s_rr = 0.0;
    double s_er = 0.0;
    for (const auto& rec : records) {
        const double e = rec.estimate_mmhg - rec.reference_mmhg - err_mean;
        err_var += e * e;
        const double de = rec.estimate_mmhg - est_mean;
        const double dr = rec.reference_mmhg - ref_mean;
        s_ee += de * de;
        s_rr += dr * dr;
        s_er += de * dr;
    }
    err_var *= inv_n;

    if (s_ee == 0.0 || s_rr == 0.0)
        throw degenerate_metrics_error(
            "compute_metrics: zero variance in estimates or references, "
            "correlation undefined");

    EvaluationReport report;
    report.target = records.front().target;
    report.mae_mmhg = abs_err_mean;
    report.std_mmhg = std::sqrt(err_var);
    report.r = std::clamp(s_er / (std::sqrt(s_ee) * std::sqrt(s_rr)), -1.0, 1.0);
    report.bland_mean_mmhg = err_mean;
    const double half_width = 1.96 * report.std_mmhg;
    report.bland_loa_mmhg = {err_mean - half_width, err_mean + half_width};
    report.n = static_cast<int>(n);
    report.records = std::move(records);
    return report;
}

CohortReport pooled_report(
    const std::map<std::string, std::vector<PredictionRecord>>& per_subject,
    BpTarget target) {
    if (per_subject.empty())
        throw std::invalid_argument("pooled_report: no subjects");

    CohortReport out;
    std::vector<PredictionRecord> pooled;
    for (const auto& [subject_id, records] : per_subject) {  // map iterates sorted
        pooled.insert(pooled.end(), records.begin(), records.end());
        try {
            out.per_subject.emplace(subject_id, compute_metrics(records));
        } catch (const degenerate_metrics_error&) {
            // Flat subject: no per-subject r, records still pool below.
        }
    }
    out.pooled = compute_metrics(std::move(pooled));
    out.pooled.target = target;
    return out;
}

}  // namespace pttbp
