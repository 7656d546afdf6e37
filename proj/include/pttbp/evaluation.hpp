#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pttbp/calibration.hpp"
#include "pttbp/ptt.hpp"

namespace pttbp {

/// One held-out prediction versus its cuff reference.
struct PredictionRecord {
    std::string subject_id;
    int interval_index = 0;
    BpTarget target = BpTarget::sbp;
    double estimate_mmhg = 0.0;
    double reference_mmhg = 0.0;
};

/// Pooled agreement statistics. Errors are estimate - reference; std is the
/// population (divide-by-N) standard deviation of those errors; r is the
/// Pearson correlation between estimates and references; the limits of
/// agreement are bland_mean +/- 1.96 * std.
struct EvaluationReport {
    BpTarget target = BpTarget::sbp;
    double mae_mmhg = 0.0;
    double std_mmhg = 0.0;
    double r = 0.0;
    double bland_mean_mmhg = 0.0;
    std::pair<double, double> bland_loa_mmhg{0.0, 0.0};
    int n = 0;
    std::vector<PredictionRecord> records;
};

/// Pooled report plus per-subject sub-reports. Subjects whose own metrics are
/// degenerate (constant estimates or references) are omitted from per_subject
/// but still contribute records to the pooled report.
struct CohortReport {
    EvaluationReport pooled;
    std::map<std::string, EvaluationReport> per_subject;
};

/// Leave-one-out cross-validation over one subject's measurement points: each
/// aggregate is predicted by a model fit on all the others. Requires at least
/// 3 aggregates so every training fold keeps 2 points.
std::vector<PredictionRecord> loocv_subject(
    const std::string& subject_id, const std::vector<PttAggregate>& aggregates,
    BpTarget target);

/// MAE / STD / r / Bland-Altman statistics over at least 2 records. Throws
/// degenerate_metrics_error when either variable has zero variance.
EvaluationReport compute_metrics(std::vector<PredictionRecord> records);

/// Concatenates subjects' records (sorted by subject id) into one pooled
/// report and computes per-subject sub-reports.
CohortReport pooled_report(
    const std::map<std::string, std::vector<PredictionRecord>>& per_subject,
    BpTarget target);

}  // namespace pttbp
