#pragma once

#include <string>
#include <vector>

#include "pttbp/config.hpp"
#include "pttbp/evaluation.hpp"
#include "pttbp/io.hpp"

namespace pttbp {

struct ExtractionResult {
    std::vector<IntervalAggregateRow> rows;
    std::vector<std::string> warnings;  // skipped sparse intervals
};

/// One subject end to end through PTT aggregation: preprocess, segment by the
/// FSR cuff episodes, detect fiducials on the whole recording, then aggregate
/// each interval's beats for all three PTT kinds. Intervals where any kind
/// falls below min_beats are skipped with a warning.
ExtractionResult extract_subject(const Recording& raw,
                                 const std::vector<std::pair<double, double>>& readings,
                                 const PipelineConfig& config);

struct EvaluationOutput {
    CohortReport sbp;
    CohortReport dbp;
    std::vector<std::pair<std::string, CalibrationModel>> models;  // full fits
    std::vector<std::string> warnings;  // excluded subjects
};

/// Per-subject leave-one-out evaluation over the aggregate rows for the given
/// PTT kind, pooled across subjects. Subjects with fewer than 3 rows are
/// excluded with a warning; zero usable subjects is an error.
EvaluationOutput evaluate_rows(const std::vector<IntervalAggregateRow>& rows,
                               PttKind kind);

/// The ptt value a row carries for the given kind.
double row_ptt(const IntervalAggregateRow& row, PttKind kind);

}  // namespace pttbp
